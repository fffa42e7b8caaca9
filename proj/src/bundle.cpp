#include "fiscomp/bundle.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "fiscomp/archive.hpp"

namespace fiscomp {

namespace {

std::string fmt(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

std::string baseline_table_csv(const std::vector<BaselineRow>& rows) {
    std::ostringstream out;
    out << "composition,impact,pv\n";
    for (const auto& r : rows)
        out << r.name << ',' << fmt(r.impact, 4) << ',' << fmt(r.pv, 4) << '\n';
    return out.str();
}

std::string mc_summary_csv(const MonteCarloSummary& s) {
    std::ostringstream out;
    out << "statistic,value\n";
    out << "monte_carlo_draws," << s.n_draws << '\n';
    out << "stress_test_draws," << s.stress_draws << '\n';
    out << "share_composition_dependent_pv," << fmt(s.share_composition_dependent, 4) << '\n';
    out << "investment_win_share," << fmt(s.investment_win_share, 4) << '\n';
    out << "poor_transfer_impact_win_share," << fmt(s.poor_impact_win_share, 4) << '\n';
    out << "mean_abs_scalar_g_error," << fmt(s.mean_abs_scalar_g_error, 4) << '\n';
    out << "current_spending_winners," << s.winner_counts[0] << '\n';
    out << "public_investment_winners," << s.winner_counts[1] << '\n';
    out << "poor_transfer_winners," << s.winner_counts[2] << '\n';
    out << "rich_transfer_winners," << s.winner_counts[3] << '\n';
    out << "mixed_policy_winners," << s.winner_counts[4] << '\n';
    out << "mean_phi_if_investment_wins," << fmt(s.mean_phi_if_investment_wins, 4) << '\n';
    out << "mean_phi_otherwise," << fmt(s.mean_phi_otherwise, 4) << '\n';
    out << "mean_psi_if_investment_wins," << fmt(s.mean_psi_if_investment_wins, 4) << '\n';
    out << "mean_psi_otherwise," << fmt(s.mean_psi_otherwise, 4) << '\n';
    out << "mean_mu_I_if_investment_wins," << fmt(s.mean_mu_I_if_investment_wins, 4) << '\n';
    out << "mean_mu_I_otherwise," << fmt(s.mean_mu_I_otherwise, 4) << '\n';
    return out.str();
}

} // namespace

BundleResult write_replication_bundle(const RunConfig& cfg, const std::string& report_text,
                                      const MonteCarloSummary& summary,
                                      const std::vector<DrawRecord>& records) {
    namespace fs = std::filesystem;
    using validation::SweepParameter;

    std::vector<ArchiveEntry> entries;
    entries.push_back({"config.ini", render_config(cfg)});
    entries.push_back({"validation_report.txt", report_text});

    entries.push_back({"baseline_table.csv", baseline_table_csv(baseline_table(cfg.model))});
    entries.push_back({"mc_summary.csv", mc_summary_csv(summary)});

    for (const Scenario& s : baseline_scenarios()) {
        std::ostringstream out;
        write_path_csv(simulate(cfg.model, s), out);
        entries.push_back({"path_" + s.name + ".csv", out.str()});
    }

    for (const SweepParameter param :
         {SweepParameter::phi, SweepParameter::mu_I, SweepParameter::d0, SweepParameter::m}) {
        const Interval iv = validation::default_sweep_interval(param);
        const auto pts = validation::run_sweep(cfg.model, param, iv.lo, iv.hi, 51);
        std::ostringstream out;
        validation::write_sweep_csv(param, pts, out);
        entries.push_back(
            {std::string("sweep_") + validation::sweep_parameter_name(param) + ".csv", out.str()});
    }

    {
        std::ostringstream out;
        write_draw_records_csv(records, out);
        entries.push_back({"mc_draws.csv", out.str()});
    }

    {
        std::vector<std::string> names;
        for (const auto& e : entries) names.push_back(e.name);
        std::sort(names.begin(), names.end());
        std::ostringstream manifest;
        manifest << "fiscomp replication bundle\n";
        manifest << "seed=" << cfg.mc.seed << " draws=" << summary.n_draws
                 << " stress_draws=" << summary.stress_draws << '\n';
        for (const auto& n : names) manifest << n << '\n';
        manifest << "MANIFEST.txt\n";
        entries.push_back({"MANIFEST.txt", manifest.str()});
    }

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("bundle: cannot create output directory " + cfg.out_dir);
    const fs::path archive_path = fs::path(cfg.out_dir) / "fiscomp_replication.zip";

    BundleResult result;
    result.archive_path = archive_path;
    for (const auto& e : entries) result.files.push_back(e.name);
    std::sort(result.files.begin(), result.files.end());
    write_zip(archive_path, std::move(entries));
    return result;
}

BatteryOutcome run_full_battery(const RunConfig& cfg, int threads) {
    using namespace validation;
    BatteryOutcome outcome;

    outcome.report.append(run_symbolic_suite());
    outcome.report.append(run_deterministic_suite(cfg.model));
    outcome.report.append(run_monte_carlo_suite(cfg.mc, cfg.model, threads, &outcome.mc_summary,
                                                &outcome.mc_records));
    outcome.report.append(run_sensitivity_suite(cfg.model, 51));

    TestResult out01{"OUT-01", "Output ZIP package generated", false, ""};
    try {
        const std::string report_text = emit_report(outcome.report, ReportFormat::plain_table);
        outcome.bundle =
            write_replication_bundle(cfg, report_text, outcome.mc_summary, outcome.mc_records);
        out01.passed = outcome.bundle.files.size() >= 6;
        out01.details = "ZIP package generated (" + std::to_string(outcome.bundle.files.size()) +
                        " files, " + outcome.bundle.archive_path.string() + ")";
    } catch (const Error& e) {
        out01.passed = false;
        out01.details = std::string("bundle generation failed: ") + e.what();
    }
    outcome.report.add(out01);
    return outcome;
}

} // namespace fiscomp
