#pragma once
#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "fiscomp/errors.hpp"
#include "fiscomp/instruments.hpp"

namespace fiscomp {

// The four fiscal instruments, in the fixed order used by every weight
// vector, coefficient vector and CSV column in this library.
enum class Instrument : int {
    current = 0,
    investment = 1,
    poor_transfer = 2,
    rich_transfer = 3,
};

inline constexpr int kNumInstruments = 4;
inline constexpr std::array<const char*, kNumInstruments> kInstrumentNames = {
    "current", "investment", "poor_transfer", "rich_transfer"};

using Weights = Eigen::Vector4d;
using Spending = Eigen::Vector4d;

// Model parameters: the baseline/adversarial set plus the closure constants
// of the discrete-time deviation engine (normalization, horizon, impulse,
// debt-fragility and risk-drag coefficients).
struct ModelParams {
    // behavioral and absorption block
    double beta = 0.96;        // discount factor
    double cbar = 0.68;        // aggregate consumption feedback
    double m = 0.22;           // openness/import denominator term
    double omega_f = 0.18;     // financial penalty
    double omega_rho = 0.05;   // risk penalty
    double mu_C = 0.22;        // import leakage, current spending
    double mu_I = 0.28;        // import leakage, public investment
    double mu_p = 0.18;        // import leakage, poor-household transfers
    double mu_r = 0.36;        // import leakage, rich-household transfers
    double c_p = 0.90;         // MPC, poorer recipients
    double c_r = 0.45;         // MPC, richer recipients
    double phi = 0.75;         // implementation efficiency
    double psi = 0.12;         // public-capital output elasticity
    double delta_g = 0.07;     // public-capital depreciation
    double zeta = 0.08;        // direct public-capital demand channel
    double chi = 0.02;         // external-balance effect of public capital
    double tau = 0.18;         // tax feedback on output deviations
    double d0 = 0.60;          // initial debt ratio

    // closure set
    double omega_d = 1.0;      // debt-fragility denominator slope
    double d_bar = 0.60;       // debt threshold in the denominator
    double rho_drag = 1.5009174409075541e-4;  // risk drag per unit of debt deviation
    double r = 0.03;           // interest rate on debt deviations
    double n_x = 0.1;          // output sensitivity of net exports
    double lambda_pi = 0.1;    // inflation-pressure slope
    double Y0 = 100.0;         // baseline output (normalized)
    double Kg0 = 100.0;        // baseline public capital (normalized)
    int horizon = 20;          // simulation periods t = 0..horizon-1
    double shock = 5.0;        // one-period aggregate impulse

    AbsorptionParams absorption() const {
        return {mu_C, mu_I, mu_p, mu_r, c_p, c_r, cbar, m, omega_f, omega_rho};
    }
    // Horizon S defaults to the number of post-impulse periods of the engine.
    CapitalParams capital(int S = -1) const {
        return {phi, psi, delta_g, zeta, beta, Y0 / Kg0, S < 0 ? horizon - 1 : S};
    }
};

// Structural admissibility. With `baseline_ranges` also enforces the
// documented baseline/adversarial intervals (used when loading config files;
// the deterministic adversarial suite deliberately steps outside them).
void validate(const ModelParams& p, bool baseline_ranges = false);

// D = 1 - cbar + m + omega_f + omega_rho + omega_d * max(d0 - d_bar, 0).
// The debt term uses the initial ratio only; evolving debt enters output
// through the risk drag instead.
double denominator(const ModelParams& p);

// Domestic-absorption coefficient per instrument:
// (1-mu_C, 1-mu_I, c_p(1-mu_p), c_r(1-mu_r)).
Spending demand_coefficients(const ModelParams& p);

// Import content per instrument: (mu_C, mu_I, c_p*mu_p, c_r*mu_r).
Spending import_coefficients(const ModelParams& p);

// A named composition of the one-period impulse.
struct Scenario {
    std::string name;
    Weights weights = Weights::Zero();  // must sum to 1
    int shock_period = 0;
};

Scenario pure_scenario(Instrument which);
Scenario mixed_scenario();
// The five canonical scenarios: current, investment, poor, rich, mixed.
std::array<Scenario, 5> baseline_scenarios();

// Deviation paths relative to the normalized steady state. Deviations start
// at zero: dKg[0] = dB[0] = 0.
struct SimulationPath {
    std::string scenario;
    int shock_period = 0;
    Eigen::ArrayXd dY;      // output deviation
    Eigen::ArrayXd dYstar;  // potential-output deviation
    Eigen::ArrayXd dKg;     // public-capital deviation
    Eigen::ArrayXd dB;      // debt deviation
    Eigen::ArrayXd nx;      // external-balance proxy
    Eigen::ArrayXd pi;      // inflation pressure
    double pv_y = 0.0;      // sum_t beta^t dY_t
    double impact = 0.0;    // dY at the shock period
};

// Run the deviation engine for one scenario. Throws NonpositiveDenominatorError
// for inadmissible D and NonFinitePathError if any state goes non-finite.
SimulationPath simulate(const ModelParams& p, const Scenario& s);

// Same engine driven by absolute per-instrument spending at the shock period
// (the derivative probe path; weights need not sum to anything).
SimulationPath simulate_spending(const ModelParams& p, const Spending& spending,
                                 int shock_period, const std::string& name);

double present_value(const SimulationPath& path, double beta);

// Composition-blind prediction of the scalar-G model: shock / D.
double scalar_g_prediction(const ModelParams& p);

// One-sided finite-difference impact derivative for one instrument,
// [impact(shock + eps on j) - impact(shock)] / eps. Guards against
// catastrophic cancellation: requires eps >= 1e-9 * shock.
double finite_difference_impact(const ModelParams& p, Instrument which, double eps);

// The matching analytic impact derivative from the closed-form multipliers.
double analytic_impact_derivative(const ModelParams& p, Instrument which);

struct BaselineRow {
    std::string name;
    double impact;
    double pv;
};

// Impact and PV(Y) for the five canonical scenarios.
std::vector<BaselineRow> baseline_table(const ModelParams& p);

// One row per period: t,dY,dYstar,dKg,dB,nx,pi. Comma separated, header row,
// '.' decimal point, newline-terminated.
void write_path_csv(const SimulationPath& path, std::ostream& out);

// Root-solve of rho_drag so that the current-spending PV matches `target_pv`
// with everything else fixed. Documents the provenance of the default
// rho_drag, which is this solve evaluated at the baseline parameters with
// target 5.0548.
double calibrate_rho_drag(ModelParams p, double target_pv);

} // namespace fiscomp
