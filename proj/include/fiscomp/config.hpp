#pragma once
#include <filesystem>
#include <iosfwd>
#include <string>

#include "fiscomp/montecarlo.hpp"
#include "fiscomp/simulator.hpp"

namespace fiscomp {

// Full run configuration: model parameters, Monte Carlo settings including
// the documented sampling and stress intervals, and output options.
struct RunConfig {
    ModelParams model;
    MonteCarloConfig mc;
    std::string out_dir = "fiscomp_out";
    bool write_csv = false;
};

// Parses the sectioned key-value format produced by render_config. Unknown
// sections and keys are rejected by name; parsed values are validated
// (model parameters against their documented ranges). Throws ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);

// Throws IoError when the file cannot be read.
RunConfig load_config_file(const std::filesystem::path& path);

// Canonical rendering: fixed section and key order, doubles with full
// round-trip precision, so parse(render(c)) == c and render is idempotent.
std::string render_config(const RunConfig& cfg);

void write_config_file(const RunConfig& cfg, const std::filesystem::path& path);

} // namespace fiscomp
