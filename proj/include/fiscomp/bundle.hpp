#pragma once
#include <filesystem>
#include <string>
#include <vector>

#include "fiscomp/config.hpp"
#include "fiscomp/validation.hpp"

namespace fiscomp {

struct BundleResult {
    std::filesystem::path archive_path;
    std::vector<std::string> files;  // entry names, sorted
};

// Writes the replication archive for one run: the canonical config, the
// computational validation report, the baseline impact/PV table and per-
// scenario paths, the four sensitivity sweeps, the Monte Carlo summary and
// per-draw records, and a manifest. Contents are deterministic under a fixed
// seed. Creates the output directory when missing.
BundleResult write_replication_bundle(const RunConfig& cfg, const std::string& report_text,
                                      const MonteCarloSummary& summary,
                                      const std::vector<DrawRecord>& records);

struct BatteryOutcome {
    validation::TestReport report;           // all 42 entries
    MonteCarloSummary mc_summary;
    std::vector<DrawRecord> mc_records;
    BundleResult bundle;
};

// The full 42-test battery in catalog order (SYM, DET, MC, SENS, OUT). The
// final entry generates the replication bundle in cfg.out_dir; a bundle
// failure is recorded as a failed OUT-01, not thrown.
BatteryOutcome run_full_battery(const RunConfig& cfg, int threads = 1);

} // namespace fiscomp
