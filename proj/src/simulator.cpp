#include "fiscomp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace fiscomp {

namespace {

struct Bound {
    const char* name;
    double ModelParams::* field;
    double lo;
    double hi;
};

// Documented baseline/adversarial intervals for the behavioral block.
constexpr std::array<Bound, 18> kBaselineBounds = {{
    {"beta", &ModelParams::beta, 0.90, 0.985},
    {"cbar", &ModelParams::cbar, 0.48, 0.88},
    {"m", &ModelParams::m, 0.02, 0.55},
    {"omega_f", &ModelParams::omega_f, 0.0, 0.70},
    {"omega_rho", &ModelParams::omega_rho, 0.0, 0.40},
    {"mu_C", &ModelParams::mu_C, 0.02, 0.70},
    {"mu_I", &ModelParams::mu_I, 0.02, 0.90},
    {"mu_p", &ModelParams::mu_p, 0.02, 0.80},
    {"mu_r", &ModelParams::mu_r, 0.02, 0.80},
    {"c_p", &ModelParams::c_p, 0.65, 0.98},
    {"c_r", &ModelParams::c_r, 0.15, 0.70},
    {"phi", &ModelParams::phi, 0.0, 1.0},
    {"psi", &ModelParams::psi, 0.0, 0.25},
    {"delta_g", &ModelParams::delta_g, 0.02, 0.18},
    {"zeta", &ModelParams::zeta, 0.0, 0.20},
    {"chi", &ModelParams::chi, -0.02, 0.08},
    {"tau", &ModelParams::tau, 0.08, 0.32},
    {"d0", &ModelParams::d0, 0.15, 1.50},
}};

} // namespace

void validate(const ModelParams& p, bool baseline_ranges) {
    auto bad = [](const std::string& msg) { throw InvalidParameterError("model: " + msg); };
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!(p.beta > 0.0 && p.beta < 1.0)) bad("beta must lie in (0,1)");
    if (!(p.cbar > 0.0 && p.cbar < 1.0)) bad("cbar must lie in (0,1)");
    if (!unit(p.mu_C) || !unit(p.mu_I) || !unit(p.mu_p) || !unit(p.mu_r))
        bad("import leakages must lie in [0,1]");
    if (!unit(p.c_p) || !unit(p.c_r)) bad("MPCs must lie in [0,1]");
    if (!unit(p.phi)) bad("phi must lie in [0,1]");
    if (!(p.delta_g >= 0.0 && p.delta_g < 1.0)) bad("delta_g must lie in [0,1)");
    if (p.psi < 0.0 || p.zeta < 0.0) bad("psi and zeta must be nonnegative");
    if (p.m < 0.0 || p.omega_f < 0.0 || p.omega_rho < 0.0)
        bad("denominator terms must be nonnegative");
    if (p.omega_d < 0.0 || p.d_bar < 0.0 || p.d0 < 0.0)
        bad("debt-fragility terms must be nonnegative");
    if (p.rho_drag < 0.0) bad("rho_drag must be nonnegative");
    if (p.tau < 0.0 || p.tau > 1.0) bad("tau must lie in [0,1]");
    if (!(p.Y0 > 0.0 && p.Kg0 > 0.0)) bad("Y0 and Kg0 must be positive");
    if (p.horizon < 2) bad("horizon must be >= 2");
    if (!(p.shock > 0.0)) bad("shock must be positive");
    if (!std::isfinite(p.r) || !std::isfinite(p.n_x) || !std::isfinite(p.lambda_pi) ||
        !std::isfinite(p.chi))
        bad("closure coefficients must be finite");
    if (!(denominator(p) > 0.0))
        throw NonpositiveDenominatorError("model: demand denominator D <= 0");
    if (baseline_ranges) {
        for (const auto& b : kBaselineBounds) {
            const double v = p.*(b.field);
            if (v < b.lo || v > b.hi)
                bad(std::string(b.name) + " outside its documented range");
        }
    }
}

double denominator(const ModelParams& p) {
    return 1.0 - p.cbar + p.m + p.omega_f + p.omega_rho +
           p.omega_d * std::max(p.d0 - p.d_bar, 0.0);
}

Spending demand_coefficients(const ModelParams& p) {
    return {1.0 - p.mu_C, 1.0 - p.mu_I, p.c_p * (1.0 - p.mu_p), p.c_r * (1.0 - p.mu_r)};
}

Spending import_coefficients(const ModelParams& p) {
    return {p.mu_C, p.mu_I, p.c_p * p.mu_p, p.c_r * p.mu_r};
}

Scenario pure_scenario(Instrument which) {
    static constexpr std::array<const char*, kNumInstruments> names = {
        "current_spending", "public_investment", "poor_transfer", "rich_transfer"};
    Scenario s;
    s.name = names[static_cast<int>(which)];
    s.weights = Weights::Zero();
    s.weights[static_cast<int>(which)] = 1.0;
    return s;
}

Scenario mixed_scenario() {
    Scenario s;
    s.name = "mixed_policy";
    s.weights = Weights::Constant(0.25);
    return s;
}

std::array<Scenario, 5> baseline_scenarios() {
    return {pure_scenario(Instrument::current), pure_scenario(Instrument::investment),
            pure_scenario(Instrument::poor_transfer), pure_scenario(Instrument::rich_transfer),
            mixed_scenario()};
}

SimulationPath simulate_spending(const ModelParams& p, const Spending& spending,
                                 int shock_period, const std::string& name) {
    validate(p);
    if (shock_period < 0 || shock_period >= p.horizon)
        throw InvalidParameterError("simulate: shock period must lie inside the horizon");
    const double D = denominator(p);
    if (!(D > 0.0))
        throw NonpositiveDenominatorError("simulate: demand denominator D <= 0");

    const int T = p.horizon;
    const Spending demand_coef = demand_coefficients(p);
    const Spending import_coef = import_coefficients(p);
    const double ystar_slope = p.psi * (p.Y0 / p.Kg0);

    SimulationPath path;
    path.scenario = name;
    path.shock_period = shock_period;
    path.dY = Eigen::ArrayXd::Zero(T);
    path.dYstar = Eigen::ArrayXd::Zero(T);
    path.dKg = Eigen::ArrayXd::Zero(T);
    path.dB = Eigen::ArrayXd::Zero(T);
    path.nx = Eigen::ArrayXd::Zero(T);
    path.pi = Eigen::ArrayXd::Zero(T);

    for (int t = 0; t < T; ++t) {
        const bool at_shock = (t == shock_period);
        const double demand = at_shock ? spending.dot(demand_coef) : 0.0;
        const double imports = at_shock ? spending.dot(import_coef) : 0.0;
        const double fiscal_cost = at_shock ? spending.sum() : 0.0;

        path.dYstar[t] = ystar_slope * path.dKg[t];
        path.dY[t] = demand / D + (p.zeta * path.dKg[t] + path.dYstar[t]) / D -
                     p.rho_drag * path.dB[t];
        path.nx[t] = -imports - p.n_x * path.dY[t] + p.chi * path.dKg[t];
        path.pi[t] = p.lambda_pi * (path.dY[t] - path.dYstar[t]);

        if (t + 1 < T) {
            const double invest = at_shock ? spending[static_cast<int>(Instrument::investment)] : 0.0;
            path.dKg[t + 1] = (1.0 - p.delta_g) * path.dKg[t] + p.phi * invest;
            path.dB[t + 1] = (1.0 + p.r) * path.dB[t] + fiscal_cost - p.tau * path.dY[t];
        }
    }

    if (!(path.dY.isFinite().all() && path.dYstar.isFinite().all() &&
          path.dKg.isFinite().all() && path.dB.isFinite().all() &&
          path.nx.isFinite().all() && path.pi.isFinite().all())) {
        int first_bad = -1;
        for (int t = 0; t < T && first_bad < 0; ++t)
            if (!std::isfinite(path.dY[t]) || !std::isfinite(path.dB[t]) ||
                !std::isfinite(path.dKg[t]))
                first_bad = t;
        throw NonFinitePathError("simulate: non-finite state in scenario '" + name +
                                 "' at period " + std::to_string(first_bad));
    }

    path.pv_y = present_value(path, p.beta);
    path.impact = path.dY[shock_period];
    return path;
}

SimulationPath simulate(const ModelParams& p, const Scenario& s) {
    if (std::abs(s.weights.sum() - 1.0) > 1e-12)
        throw WeightSumError("simulate: scenario weights must sum to 1");
    return simulate_spending(p, Spending(s.weights * p.shock), s.shock_period, s.name);
}

double present_value(const SimulationPath& path, double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw InvalidParameterError("present_value: beta must lie in (0,1)");
    double pv = 0.0;
    double discount = 1.0;
    for (Eigen::Index t = 0; t < path.dY.size(); ++t) {
        pv += discount * path.dY[t];
        discount *= beta;
    }
    return pv;
}

double scalar_g_prediction(const ModelParams& p) {
    validate(p);
    const double D = denominator(p);
    if (!(D > 0.0))
        throw NonpositiveDenominatorError("scalar_g_prediction: D <= 0");
    return p.shock / D;
}

double finite_difference_impact(const ModelParams& p, Instrument which, double eps) {
    if (!(eps > 0.0))
        throw ArgumentError("finite_difference_impact: step must be positive");
    if (eps < 1e-9 * p.shock)
        throw ArgumentError("finite_difference_impact: step below 1e-9 * shock invites cancellation");
    const int j = static_cast<int>(which);
    const Scenario base = mixed_scenario();
    Spending spending = base.weights * p.shock;
    const double impact0 = simulate_spending(p, spending, base.shock_period, "fd_base").impact;
    spending[j] += eps;
    const double impact1 = simulate_spending(p, spending, base.shock_period, "fd_bumped").impact;
    return (impact1 - impact0) / eps;
}

double analytic_impact_derivative(const ModelParams& p, Instrument which) {
    const AbsorptionParams a = p.absorption();
    const double D = denominator(p);
    switch (which) {
        case Instrument::current: return current_impact(a, D);
        case Instrument::investment: return investment_impact(a, D);
        case Instrument::poor_transfer: return transfer_impact(a.c_p, a.mu_p, D);
        case Instrument::rich_transfer: return transfer_impact(a.c_r, a.mu_r, D);
    }
    throw ArgumentError("analytic_impact_derivative: unknown instrument");
}

std::vector<BaselineRow> baseline_table(const ModelParams& p) {
    std::vector<BaselineRow> rows;
    rows.reserve(5);
    for (const Scenario& s : baseline_scenarios()) {
        const SimulationPath path = simulate(p, s);
        rows.push_back({s.name, path.impact, path.pv_y});
    }
    return rows;
}

void write_path_csv(const SimulationPath& path, std::ostream& out) {
    out << "t,dY,dYstar,dKg,dB,nx,pi\n";
    char buf[160];
    for (Eigen::Index t = 0; t < path.dY.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%lld,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      static_cast<long long>(t), path.dY[t], path.dYstar[t], path.dKg[t],
                      path.dB[t], path.nx[t], path.pi[t]);
        out << buf;
    }
}

double calibrate_rho_drag(ModelParams p, double target_pv) {
    const Scenario current = pure_scenario(Instrument::current);
    auto pv_at = [&](double rho) {
        p.rho_drag = rho;
        return simulate(p, current).pv_y;
    };
    // PV is strictly decreasing in rho_drag; bracket and bisect.
    double lo = 0.0, hi = 1e-2;
    if (pv_at(lo) < target_pv)
        throw ArgumentError("calibrate_rho_drag: target above the drag-free PV");
    if (pv_at(hi) > target_pv)
        throw ArgumentError("calibrate_rho_drag: target below the PV at the bracket edge");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (pv_at(mid) > target_pv)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace fiscomp
