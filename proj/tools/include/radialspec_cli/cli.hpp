#pragma once

#include "radialspec/root_system.hpp"

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace radialspec::cli {

inline constexpr const char* report_schema = "radialspec.report/1";

/// Exit codes: 0 success, 1 domain/numerical failure, 2 usage or parameter error.
enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "A3", "rank1:2", "flat:1" and products joined by 'x', e.g. "rank1:1xrank1:2".
RootSystem builtin_system(const std::string& name);

/// "re,im" or a bare real number.
std::complex<double> parse_complex(const std::string& text);

/// Comma separated reals.
std::vector<double> parse_reals(const std::string& text);

} // namespace radialspec::cli
