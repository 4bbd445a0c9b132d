#pragma once

#include <cstddef>
#include <string>

namespace radialspec {

/// Caps and tolerances, overridable from a plain key=value file.
struct Config {
    std::size_t weyl_cap = 1'000'000;
    std::size_t sign_rank_cap = 4;
    double cut_tolerance = 1e-9;         ///< sheet/cut tests use cut_tolerance * (1 + |lambda|)
    double threshold_tolerance = 1e-12;  ///< dedup of complex thresholds
    double energy_cap = 50.0;
    double eigencloud_margin = 0.5;
    double eigencloud_tolerance = 0.05;
    std::size_t max_matrix_dim = 10'000;
};

/// Lines are `key = value`; `#` starts a comment. Unknown keys and malformed
/// values raise ParameterError.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);
/// load_config($RADIALSPEC_CONFIG) when the variable is set, defaults otherwise.
Config config_from_environment();

} // namespace radialspec
