// fiscomp: fiscal-composition multipliers, simulation and validation harness.
//
// Subcommands: validate | baseline | mc | sweep | export. Exit codes:
//   0 success, 1 validation failure, 2 config/argument error, 3 I/O error,
//   4 internal error.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fiscomp/bundle.hpp"
#include "fiscomp/config.hpp"
#include "fiscomp/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;
constexpr int kExitInternalError = 4;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    bool csv = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int draws = 0;
    bool draws_set = false;
    int horizon = 0;
    bool horizon_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "Configuration file path");
    cmd->add_option("--out", opt.out_dir, "Output directory");
    cmd->add_flag("--csv", opt.csv, "Write CSV outputs");
    cmd->add_option("--seed", opt.seed, "Monte Carlo master seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    cmd->add_option("--draws", opt.draws, "Monte Carlo draw count")
        ->each([&](const std::string&) { opt.draws_set = true; });
    cmd->add_option("--horizon", opt.horizon, "Simulation horizon in periods")
        ->each([&](const std::string&) { opt.horizon_set = true; });
}

fiscomp::RunConfig resolve_config(const CommonOptions& opt) {
    fiscomp::RunConfig cfg;
    if (!opt.config_path.empty()) cfg = fiscomp::load_config_file(opt.config_path);
    if (opt.seed_set) cfg.mc.seed = opt.seed;
    if (opt.draws_set) cfg.mc.n_draws = opt.draws;
    if (opt.horizon_set) cfg.model.horizon = opt.horizon;
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.csv) cfg.write_csv = true;
    fiscomp::validate(cfg.model);
    fiscomp::validate(cfg.mc, cfg.model);
    return cfg;
}

std::filesystem::path ensure_out_dir(const fiscomp::RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw fiscomp::IoError("cannot create output directory " + cfg.out_dir);
    return cfg.out_dir;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fiscomp::IoError("cannot write " + path.string());
    out << text;
    if (!out) throw fiscomp::IoError("failed while writing " + path.string());
}

int cmd_validate(const CommonOptions& opt, const std::string& format_name) {
    const fiscomp::RunConfig cfg = resolve_config(opt);
    const auto format = fiscomp::validation::parse_report_format(format_name);
    const fiscomp::BatteryOutcome outcome = fiscomp::run_full_battery(cfg);
    std::cout << fiscomp::validation::emit_report(outcome.report, format);
    return outcome.report.all_passed() ? kExitOk : kExitValidationFailure;
}

int cmd_baseline(const CommonOptions& opt) {
    const fiscomp::RunConfig cfg = resolve_config(opt);
    const auto rows = fiscomp::baseline_table(cfg.model);
    std::printf("%-22s %10s %10s\n", "Composition", "Impact", "PV(Y)");
    for (const auto& r : rows) std::printf("%-22s %10.4f %10.4f\n", r.name.c_str(), r.impact, r.pv);
    if (cfg.write_csv) {
        const auto dir = ensure_out_dir(cfg);
        std::ostringstream table;
        table << "composition,impact,pv\n";
        for (const auto& r : rows) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%s,%.4f,%.4f\n", r.name.c_str(), r.impact, r.pv);
            table << buf;
        }
        write_text_file(dir / "baseline_table.csv", table.str());
        for (const fiscomp::Scenario& s : fiscomp::baseline_scenarios()) {
            std::ostringstream out;
            fiscomp::write_path_csv(fiscomp::simulate(cfg.model, s), out);
            write_text_file(dir / ("path_" + s.name + ".csv"), out.str());
        }
        std::cout << "wrote baseline_table.csv and 5 path CSVs to " << cfg.out_dir << '\n';
    }
    return kExitOk;
}

int cmd_mc(const CommonOptions& opt, int threads) {
    const fiscomp::RunConfig cfg = resolve_config(opt);
    std::vector<fiscomp::DrawRecord> records;
    const fiscomp::MonteCarloSummary summary =
        fiscomp::run_monte_carlo(cfg.mc, cfg.model, threads, &records);
    std::cout << fiscomp::mc_summary_text(summary);
    if (cfg.write_csv) {
        const auto dir = ensure_out_dir(cfg);
        std::ostringstream out;
        fiscomp::write_draw_records_csv(records, out);
        write_text_file(dir / "mc_draws.csv", out.str());
        std::cout << "wrote mc_draws.csv to " << cfg.out_dir << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, const std::string& param_name, double lo, double hi,
              int steps, bool lo_set, bool hi_set) {
    const fiscomp::RunConfig cfg = resolve_config(opt);
    const auto param = fiscomp::validation::parse_sweep_parameter(param_name);
    const fiscomp::Interval dflt = fiscomp::validation::default_sweep_interval(param);
    if (!lo_set) lo = dflt.lo;
    if (!hi_set) hi = dflt.hi;
    const auto points = fiscomp::validation::run_sweep(cfg.model, param, lo, hi, steps);
    std::ostringstream out;
    fiscomp::validation::write_sweep_csv(param, points, out);
    std::cout << out.str();
    if (cfg.write_csv) {
        const auto dir = ensure_out_dir(cfg);
        const std::string name = std::string("sweep_") + param_name + ".csv";
        write_text_file(dir / name, out.str());
        std::cout << "wrote " << name << " to " << cfg.out_dir << '\n';
    }
    return kExitOk;
}

int cmd_export(const CommonOptions& opt) {
    const fiscomp::RunConfig cfg = resolve_config(opt);
    const fiscomp::BatteryOutcome outcome = fiscomp::run_full_battery(cfg);
    const auto& out01 = outcome.report.entries.back();
    if (!out01.passed) throw fiscomp::IoError("bundle generation failed: " + out01.details);
    std::cout << "replication bundle: " << outcome.bundle.archive_path.string() << '\n';
    for (const auto& f : outcome.bundle.files) std::cout << "  " << f << '\n';
    if (!outcome.report.all_passed()) {
        std::cout << "note: " << outcome.report.entries.size() - outcome.report.passed_count()
                  << " validation tests failed; see validation_report.txt inside the bundle\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fiscal-composition multipliers, simulation engine and validation harness"};
    app.require_subcommand(1);

    CommonOptions opt_validate, opt_baseline, opt_mc, opt_sweep, opt_export;
    std::string report_format = "plain-table";
    int mc_threads = 1;
    std::string sweep_param;
    double sweep_lo = 0.0, sweep_hi = 0.0;
    bool sweep_lo_set = false, sweep_hi_set = false;
    int sweep_steps = 51;

    CLI::App* validate = app.add_subcommand("validate", "Run the full 42-test battery");
    add_common(validate, opt_validate);
    validate->add_option("--format", report_format, "Report format: plain-table or delimited");

    CLI::App* baseline = app.add_subcommand("baseline", "Impact and PV(Y) for the five compositions");
    add_common(baseline, opt_baseline);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo experiment summary");
    add_common(mc, opt_mc);
    mc->add_option("--threads", mc_threads, "Worker threads (results are thread-count invariant)");

    CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep CSV");
    add_common(sweep, opt_sweep);
    sweep->add_option("--param", sweep_param, "Sweep parameter: phi, mu_I, d0 or m")->required();
    sweep->add_option("--lo", sweep_lo, "Lower bound")
        ->each([&](const std::string&) { sweep_lo_set = true; });
    sweep->add_option("--hi", sweep_hi, "Upper bound")
        ->each([&](const std::string&) { sweep_hi_set = true; });
    sweep->add_option("--steps", sweep_steps, "Grid points (>= 2)");

    CLI::App* exp = app.add_subcommand("export", "Write the replication bundle archive");
    add_common(exp, opt_export);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt_validate, report_format);
        if (baseline->parsed()) return cmd_baseline(opt_baseline);
        if (mc->parsed()) return cmd_mc(opt_mc, mc_threads);
        if (sweep->parsed())
            return cmd_sweep(opt_sweep, sweep_param, sweep_lo, sweep_hi, sweep_steps,
                             sweep_lo_set, sweep_hi_set);
        if (exp->parsed()) return cmd_export(opt_export);
    } catch (const fiscomp::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const fiscomp::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const fiscomp::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const fiscomp::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
    return kExitInternalError;
}
