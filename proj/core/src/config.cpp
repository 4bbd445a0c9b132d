#include "radialspec/config.hpp"

#include "radialspec/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace radialspec {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_positive_double(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || !(x > 0)) throw ParameterError("config: '" + key + "' needs a positive number");
    return x;
}

std::size_t to_count(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    unsigned long long x = 0;
    if (v.empty() || v[0] == '-' || v[0] == '+') throw ParameterError("config: '" + key + "' needs a positive integer");
    try {
        x = std::stoull(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || x == 0) throw ParameterError("config: '" + key + "' needs a positive integer");
    return static_cast<std::size_t>(x);
}

} // namespace

Config parse_config(const std::string& text)
{
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "weyl_cap") c.weyl_cap = to_count(key, val);
        else if (key == "sign_rank_cap") c.sign_rank_cap = to_count(key, val);
        else if (key == "cut_tolerance") c.cut_tolerance = to_positive_double(key, val);
        else if (key == "threshold_tolerance") c.threshold_tolerance = to_positive_double(key, val);
        else if (key == "energy_cap") c.energy_cap = to_positive_double(key, val);
        else if (key == "eigencloud_margin") c.eigencloud_margin = to_positive_double(key, val);
        else if (key == "eigencloud_tolerance") c.eigencloud_tolerance = to_positive_double(key, val);
        else if (key == "max_matrix_dim") c.max_matrix_dim = to_count(key, val);
        else throw ParameterError("config: unknown key '" + key + "'");
    }
    return c;
}

Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Config config_from_environment()
{
    const char* p = std::getenv("RADIALSPEC_CONFIG");
    if (p == nullptr || *p == '\0') return Config{};
    return load_config(p);
}

} // namespace radialspec
