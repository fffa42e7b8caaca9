#include "fiscomp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

#include "fiscomp/rng.hpp"

namespace fiscomp {

const std::array<RangeField, kNumRangeFields> kRangeFields = {{
    {"beta", &ParameterRanges::beta, &ModelParams::beta},
    {"cbar", &ParameterRanges::cbar, &ModelParams::cbar},
    {"m", &ParameterRanges::m, &ModelParams::m},
    {"omega_f", &ParameterRanges::omega_f, &ModelParams::omega_f},
    {"omega_rho", &ParameterRanges::omega_rho, &ModelParams::omega_rho},
    {"mu_C", &ParameterRanges::mu_C, &ModelParams::mu_C},
    {"mu_I", &ParameterRanges::mu_I, &ModelParams::mu_I},
    {"mu_p", &ParameterRanges::mu_p, &ModelParams::mu_p},
    {"mu_r", &ParameterRanges::mu_r, &ModelParams::mu_r},
    {"c_p", &ParameterRanges::c_p, &ModelParams::c_p},
    {"c_r", &ParameterRanges::c_r, &ModelParams::c_r},
    {"phi", &ParameterRanges::phi, &ModelParams::phi},
    {"psi", &ParameterRanges::psi, &ModelParams::psi},
    {"delta_g", &ParameterRanges::delta_g, &ModelParams::delta_g},
    {"zeta", &ParameterRanges::zeta, &ModelParams::zeta},
    {"chi", &ParameterRanges::chi, &ModelParams::chi},
    {"tau", &ParameterRanges::tau, &ModelParams::tau},
    {"d0", &ParameterRanges::d0, &ModelParams::d0},
}};

ParameterRanges ParameterRanges::baseline() {
    ParameterRanges r;
    r.beta = {0.90, 0.985};
    r.cbar = {0.48, 0.88};
    r.m = {0.02, 0.55};
    r.omega_f = {0.0, 0.70};
    r.omega_rho = {0.0, 0.40};
    r.mu_C = {0.02, 0.70};
    r.mu_I = {0.02, 0.90};
    r.mu_p = {0.02, 0.80};
    r.mu_r = {0.02, 0.80};
    r.c_p = {0.65, 0.98};
    r.c_r = {0.15, 0.70};
    r.phi = {0.0, 1.0};
    r.psi = {0.0, 0.25};
    r.delta_g = {0.02, 0.18};
    r.zeta = {0.0, 0.20};
    r.chi = {-0.02, 0.08};
    r.tau = {0.08, 0.32};
    r.d0 = {0.15, 1.50};
    return r;
}

ParameterRanges ParameterRanges::stress() {
    ParameterRanges r = baseline();
    r.cbar = {0.30, 0.95};
    r.m = {0.02, 0.80};
    r.omega_f = {0.0, 0.90};
    r.omega_rho = {0.0, 0.80};
    r.mu_C = {0.0, 1.0};
    r.mu_I = {0.0, 1.0};
    r.mu_p = {0.0, 1.0};
    r.mu_r = {0.0, 1.0};
    r.c_p = {0.0, 1.0};
    r.c_r = {0.0, 1.0};
    r.psi = {0.0, 0.30};
    r.delta_g = {0.01, 0.30};
    r.zeta = {0.0, 0.30};
    r.chi = {-0.05, 0.10};
    r.tau = {0.05, 0.40};
    return r;
}

void validate(const MonteCarloConfig& cfg, const ModelParams& baseline) {
    if (cfg.n_draws < 1)
        throw InvalidParameterError("monte carlo: n_draws must be >= 1");
    if (cfg.stress_draws < 0)
        throw InvalidParameterError("monte carlo: stress_draws must be >= 0");
    for (const auto& f : kRangeFields) {
        const Interval main = cfg.ranges.*(f.range);
        const Interval stress = cfg.stress_ranges.*(f.range);
        if (main.lo > main.hi || stress.lo > stress.hi)
            throw InvalidParameterError(std::string("monte carlo: interval for ") + f.name +
                                        " has lo > hi");
        const double v = baseline.*(f.value);
        if (v < main.lo || v > main.hi)
            throw InvalidParameterError(std::string("monte carlo: baseline ") + f.name +
                                        " lies outside its sampling interval");
    }
}

namespace {

// Sample one admissible parameter point from the draw's own stream,
// rejecting D <= 0 so n_draws stays exact.
ModelParams sample_params(const ParameterRanges& ranges, const ModelParams& base,
                          DrawRng& rng, long& rejected) {
    for (;;) {
        ModelParams p = base;
        for (const auto& f : kRangeFields) {
            const Interval iv = ranges.*(f.range);
            p.*(f.value) = rng.uniform(iv.lo, iv.hi);
        }
        if (denominator(p) > 0.0) return p;
        ++rejected;
    }
}

DrawRecord evaluate_draw(const ModelParams& p, int index) {
    DrawRecord rec;
    rec.index = index;
    for (int k = 0; k < kNumRangeFields; ++k) rec.params[k] = p.*(kRangeFields[k].value);
    rec.D = denominator(p);
    rec.scalar_g = p.shock / rec.D;

    const auto scenarios = baseline_scenarios();
    for (int sidx = 0; sidx < 5; ++sidx) {
        const SimulationPath path = simulate(p, scenarios[sidx]);
        rec.pv[sidx] = path.pv_y;
        rec.impact[sidx] = path.impact;
    }
    rec.pv_winner = static_cast<int>(std::max_element(rec.pv.begin(), rec.pv.end()) -
                                     rec.pv.begin());
    rec.impact_winner = static_cast<int>(std::max_element(rec.impact.begin(), rec.impact.end()) -
                                         rec.impact.begin());
    const auto [pv_min, pv_max] = std::minmax_element(rec.pv.begin(), rec.pv.end());
    rec.composition_dependent = (*pv_max - *pv_min) > 1e-9;
    return rec;
}

} // namespace

MonteCarloSummary run_monte_carlo(const MonteCarloConfig& cfg, const ModelParams& base,
                                  int threads, std::vector<DrawRecord>* records) {
    validate(cfg, base);
    validate(base);
    if (threads < 1) threads = 1;

    const int n = cfg.n_draws;
    std::vector<DrawRecord> draws(n);
    std::vector<long> rejected_per_thread(threads, 0);

    auto worker = [&](int tid) {
        for (int i = tid; i < n; i += threads) {
            DrawRng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
            const ModelParams p = sample_params(cfg.ranges, base, rng, rejected_per_thread[tid]);
            draws[i] = evaluate_draw(p, i);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    // Reduce in draw order so the summary is independent of scheduling.
    MonteCarloSummary s;
    s.n_draws = n;
    s.stress_draws = cfg.stress_draws;
    long dependent = 0, inv_wins = 0, poor_impact_wins = 0;
    double mae_sum = 0.0;
    double phi_w = 0.0, phi_o = 0.0, psi_w = 0.0, psi_o = 0.0, mui_w = 0.0, mui_o = 0.0;
    const int kPhi = 11, kPsi = 12, kMuI = 6;  // indices into kRangeFields order
    for (const DrawRecord& rec : draws) {
        dependent += rec.composition_dependent ? 1 : 0;
        ++s.winner_counts[static_cast<std::size_t>(rec.pv_winner)];
        const bool inv = rec.pv_winner == 1;
        inv_wins += inv ? 1 : 0;
        poor_impact_wins += rec.impact_winner == 2 ? 1 : 0;
        double err = 0.0;
        for (double pv : rec.pv) err += std::abs(pv - rec.scalar_g);
        mae_sum += err / 5.0;
        (inv ? phi_w : phi_o) += rec.params[kPhi];
        (inv ? psi_w : psi_o) += rec.params[kPsi];
        (inv ? mui_w : mui_o) += rec.params[kMuI];
    }
    const long other = n - inv_wins;
    s.share_composition_dependent = static_cast<double>(dependent) / n;
    s.investment_win_share = static_cast<double>(inv_wins) / n;
    s.poor_impact_win_share = static_cast<double>(poor_impact_wins) / n;
    s.mean_abs_scalar_g_error = mae_sum / n;
    s.mean_phi_if_investment_wins = inv_wins > 0 ? phi_w / inv_wins : 0.0;
    s.mean_phi_otherwise = other > 0 ? phi_o / other : 0.0;
    s.mean_psi_if_investment_wins = inv_wins > 0 ? psi_w / inv_wins : 0.0;
    s.mean_psi_otherwise = other > 0 ? psi_o / other : 0.0;
    s.mean_mu_I_if_investment_wins = inv_wins > 0 ? mui_w / inv_wins : 0.0;
    s.mean_mu_I_otherwise = other > 0 ? mui_o / other : 0.0;
    for (long r : rejected_per_thread) s.rejected_draws += r;

    if (records) records->insert(records->end(), draws.begin(), draws.end());
    return s;
}

double max_identity_residual(const ModelParams& p, const Scenario& s,
                             const SimulationPath& path) {
    const double D = denominator(p);
    const Spending spending = s.weights * p.shock;
    const Spending import_coef = import_coefficients(p);
    double worst = 0.0;
    const int T = static_cast<int>(path.dY.size());
    for (int t = 0; t < T; ++t) {
        const bool at_shock = (t == s.shock_period);
        const double imports = at_shock ? spending.dot(import_coef) : 0.0;
        const double fiscal_cost = at_shock ? p.shock : 0.0;
        const double invest = at_shock ? spending[1] : 0.0;
        if (t + 1 < T) {
            worst = std::max(worst, std::abs(path.dB[t + 1] - ((1.0 + p.r) * path.dB[t] +
                                                               fiscal_cost - p.tau * path.dY[t])));
            worst = std::max(worst, std::abs(path.dKg[t + 1] - ((1.0 - p.delta_g) * path.dKg[t] +
                                                                p.phi * invest)));
        }
        worst = std::max(worst, std::abs(path.nx[t] - (-imports - p.n_x * path.dY[t] +
                                                       p.chi * path.dKg[t])));
        worst = std::max(worst, std::abs(path.pi[t] - p.lambda_pi * (path.dY[t] - path.dYstar[t])));
        worst = std::max(worst, std::abs(path.dYstar[t] - p.psi * (p.Y0 / p.Kg0) * path.dKg[t]));
        (void)D;
    }
    return worst;
}

StressResult run_stress(const MonteCarloConfig& cfg, const ModelParams& base) {
    validate(base);
    StressResult res;
    res.draws = cfg.stress_draws;
    res.all_finite = true;
    const auto scenarios = baseline_scenarios();
    // Offset the stream index so stress draws never reuse main-run streams.
    const std::uint64_t offset = 0x5745ull << 32;
    for (int i = 0; i < cfg.stress_draws; ++i) {
        DrawRng rng(stream_seed(cfg.seed, offset + static_cast<std::uint64_t>(i)));
        const ModelParams p = sample_params(cfg.stress_ranges, base, rng, res.rejected_draws);
        for (const Scenario& s : scenarios) {
            const SimulationPath path = simulate(p, s);  // throws on non-finite state
            if (!path.dY.isFinite().all()) res.all_finite = false;
            res.max_identity_residual =
                std::max(res.max_identity_residual, max_identity_residual(p, s, path));
        }
    }
    return res;
}

std::string mc_summary_text(const MonteCarloSummary& s) {
    std::ostringstream out;
    char buf[128];
    auto row = [&](const char* label, const std::string& value) {
        std::snprintf(buf, sizeof(buf), "%-42s %s\n", label, value.c_str());
        out << buf;
    };
    auto num = [&](double v, int prec = 4) {
        std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
        return std::string(buf);
    };
    row("Monte Carlo draws", std::to_string(s.n_draws));
    row("Stress-test draws", std::to_string(s.stress_draws));
    row("Share with composition-dependent PV(Y)", num(s.share_composition_dependent));
    row("Investment wins share", num(s.investment_win_share));
    row("Poor transfer wins impact share", num(s.poor_impact_win_share));
    row("Mean absolute scalar-G error", num(s.mean_abs_scalar_g_error));
    row("Current-spending winners", std::to_string(s.winner_counts[0]));
    row("Public-investment winners", std::to_string(s.winner_counts[1]));
    row("Poor-transfer winners", std::to_string(s.winner_counts[2]));
    row("Rich-transfer winners", std::to_string(s.winner_counts[3]));
    row("Mixed-policy winners", std::to_string(s.winner_counts[4]));
    row("Mean phi if investment wins", num(s.mean_phi_if_investment_wins));
    row("Mean phi otherwise", num(s.mean_phi_otherwise));
    row("Mean psi if investment wins", num(s.mean_psi_if_investment_wins));
    row("Mean psi otherwise", num(s.mean_psi_otherwise));
    row("Mean mu_I if investment wins", num(s.mean_mu_I_if_investment_wins));
    row("Mean mu_I otherwise", num(s.mean_mu_I_otherwise));
    row("Rejected draws", std::to_string(s.rejected_draws));
    return out.str();
}

void write_draw_records_csv(const std::vector<DrawRecord>& records, std::ostream& out) {
    out << "draw";
    for (const auto& f : kRangeFields) out << ',' << f.name;
    out << ",D,scalar_g";
    static constexpr std::array<const char*, 5> scen = {
        "current_spending", "public_investment", "poor_transfer", "rich_transfer",
        "mixed_policy"};
    for (const char* name : scen) out << ",pv_" << name;
    for (const char* name : scen) out << ",impact_" << name;
    out << ",pv_winner,impact_winner\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), ",%.12g", v);
        out << buf;
    };
    for (const DrawRecord& r : records) {
        out << r.index;
        for (double v : r.params) put(v);
        put(r.D);
        put(r.scalar_g);
        for (double v : r.pv) put(v);
        for (double v : r.impact) put(v);
        out << ',' << scen[static_cast<std::size_t>(r.pv_winner)] << ','
            << scen[static_cast<std::size_t>(r.impact_winner)] << '\n';
    }
}

} // namespace fiscomp
