#include "fiscomp/config.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fiscomp {

namespace {

struct ModelField {
    const char* key;
    double ModelParams::* field;
};

constexpr std::array<ModelField, 27> kModelFields = {{
    {"beta", &ModelParams::beta},
    {"cbar", &ModelParams::cbar},
    {"m", &ModelParams::m},
    {"omega_f", &ModelParams::omega_f},
    {"omega_rho", &ModelParams::omega_rho},
    {"mu_C", &ModelParams::mu_C},
    {"mu_I", &ModelParams::mu_I},
    {"mu_p", &ModelParams::mu_p},
    {"mu_r", &ModelParams::mu_r},
    {"c_p", &ModelParams::c_p},
    {"c_r", &ModelParams::c_r},
    {"phi", &ModelParams::phi},
    {"psi", &ModelParams::psi},
    {"delta_g", &ModelParams::delta_g},
    {"zeta", &ModelParams::zeta},
    {"chi", &ModelParams::chi},
    {"tau", &ModelParams::tau},
    {"d0", &ModelParams::d0},
    {"omega_d", &ModelParams::omega_d},
    {"d_bar", &ModelParams::d_bar},
    {"rho_drag", &ModelParams::rho_drag},
    {"r", &ModelParams::r},
    {"n_x", &ModelParams::n_x},
    {"lambda_pi", &ModelParams::lambda_pi},
    {"Y0", &ModelParams::Y0},
    {"Kg0", &ModelParams::Kg0},
    {"shock", &ModelParams::shock},
}};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& value, const std::string& key) {
    const std::string t = trim(value);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    return v;
}

long long parse_int(const std::string& value, const std::string& key) {
    const std::string t = trim(value);
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' has non-integer value '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    const std::string t = trim(value);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0' || t.empty() || t[0] == '-')
        throw ConfigError("config: key '" + key + "' has invalid unsigned value '" + value + "'");
    return v;
}

bool parse_bool(const std::string& value, const std::string& key) {
    const std::string t = trim(value);
    if (t == "true") return true;
    if (t == "false") return false;
    throw ConfigError("config: key '" + key + "' must be true or false, got '" + value + "'");
}

Interval parse_interval(const std::string& value, const std::string& key) {
    std::istringstream iss(value);
    double lo, hi;
    if (!(iss >> lo >> hi))
        throw ConfigError("config: key '" + key + "' must hold two numbers 'lo hi'");
    std::string rest;
    if (iss >> rest)
        throw ConfigError("config: key '" + key + "' has trailing content '" + rest + "'");
    return {lo, hi};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = t.substr(1, t.size() - 2);
            if (section != "model" && section != "montecarlo" && section != "mc_ranges" &&
                section != "stress_ranges" && section != "output")
                throw ConfigError("config: unknown section '" + section + "'");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config: key '" + key + "' appears before any section");

        if (section == "model") {
            if (key == "horizon") {
                cfg.model.horizon = static_cast<int>(parse_int(value, key));
                continue;
            }
            bool found = false;
            for (const auto& f : kModelFields)
                if (key == f.key) {
                    cfg.model.*(f.field) = parse_double(value, key);
                    found = true;
                    break;
                }
            if (!found) throw ConfigError("config: unknown key '" + key + "' in [model]");
        } else if (section == "montecarlo") {
            if (key == "draws")
                cfg.mc.n_draws = static_cast<int>(parse_int(value, key));
            else if (key == "stress_draws")
                cfg.mc.stress_draws = static_cast<int>(parse_int(value, key));
            else if (key == "seed")
                cfg.mc.seed = parse_u64(value, key);
            else
                throw ConfigError("config: unknown key '" + key + "' in [montecarlo]");
        } else if (section == "mc_ranges" || section == "stress_ranges") {
            ParameterRanges& ranges =
                section == "mc_ranges" ? cfg.mc.ranges : cfg.mc.stress_ranges;
            bool found = false;
            for (const auto& f : kRangeFields)
                if (key == f.name) {
                    ranges.*(f.range) = parse_interval(value, key);
                    found = true;
                    break;
                }
            if (!found)
                throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
        } else {  // output
            if (key == "dir")
                cfg.out_dir = value;
            else if (key == "csv")
                cfg.write_csv = parse_bool(value, key);
            else
                throw ConfigError("config: unknown key '" + key + "' in [output]");
        }
    }

    try {
        validate(cfg.model, /*baseline_ranges=*/true);
        validate(cfg.mc, cfg.model);
    } catch (const Error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream iss(text);
    return parse_config(iss);
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path.string());
    return parse_config(in);
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "# fiscomp run configuration\n";
    out << "[model]\n";
    for (const auto& f : kModelFields)
        out << f.key << " = " << fmt_double(cfg.model.*(f.field)) << '\n';
    out << "horizon = " << cfg.model.horizon << '\n';
    out << '\n';
    out << "[montecarlo]\n";
    out << "draws = " << cfg.mc.n_draws << '\n';
    out << "stress_draws = " << cfg.mc.stress_draws << '\n';
    out << "seed = " << cfg.mc.seed << '\n';
    out << '\n';
    out << "[mc_ranges]\n";
    for (const auto& f : kRangeFields) {
        const Interval iv = cfg.mc.ranges.*(f.range);
        out << f.name << " = " << fmt_double(iv.lo) << ' ' << fmt_double(iv.hi) << '\n';
    }
    out << '\n';
    out << "[stress_ranges]\n";
    for (const auto& f : kRangeFields) {
        const Interval iv = cfg.mc.stress_ranges.*(f.range);
        out << f.name << " = " << fmt_double(iv.lo) << ' ' << fmt_double(iv.hi) << '\n';
    }
    out << '\n';
    out << "[output]\n";
    out << "dir = " << cfg.out_dir << '\n';
    out << "csv = " << (cfg.write_csv ? "true" : "false") << '\n';
    return out.str();
}

void write_config_file(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file: " + path.string());
    out << render_config(cfg);
    if (!out) throw IoError("failed while writing config file: " + path.string());
}

} // namespace fiscomp
