#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fiscomp/simulator.hpp"

namespace fiscomp {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Closed sampling intervals for the 18 varied parameters. Parameters are
// drawn independently and uniformly, in the fixed order of kRangeFields, one
// stream per draw, so results do not depend on scheduling.
struct ParameterRanges {
    Interval beta, cbar, m, omega_f, omega_rho;
    Interval mu_C, mu_I, mu_p, mu_r;
    Interval c_p, c_r;
    Interval phi, psi, delta_g, zeta, chi, tau, d0;

    // Documented baseline/adversarial intervals.
    static ParameterRanges baseline();
    // Wider extreme intervals for the stress run: leakages and MPCs to their
    // unit-interval endpoints, denominator penalties well past the baseline
    // intervals, debt ratio up to 1.5. Chosen so D stays positive for every
    // admissible draw; the sampler still rejects and redraws on D <= 0.
    static ParameterRanges stress();
};

struct RangeField {
    const char* name;
    Interval ParameterRanges::* range;
    double ModelParams::* value;
};

inline constexpr int kNumRangeFields = 18;
extern const std::array<RangeField, kNumRangeFields> kRangeFields;

struct MonteCarloConfig {
    int n_draws = 3000;
    int stress_draws = 500;
    std::uint64_t seed = 42;
    ParameterRanges ranges = ParameterRanges::baseline();
    ParameterRanges stress_ranges = ParameterRanges::stress();
};

// Checks counts, interval orientation, and that the baseline parameter point
// lies inside every main-run interval.
void validate(const MonteCarloConfig& cfg, const ModelParams& baseline);

// Everything recorded for one draw; rows of the per-draw CSV export.
struct DrawRecord {
    int index = 0;
    std::array<double, kNumRangeFields> params{};
    double D = 0.0;
    double scalar_g = 0.0;
    std::array<double, 5> pv{};
    std::array<double, 5> impact{};
    int pv_winner = 0;      // index into baseline_scenarios() order
    int impact_winner = 0;
    bool composition_dependent = false;
};

struct MonteCarloSummary {
    int n_draws = 0;
    int stress_draws = 0;
    double share_composition_dependent = 0.0;
    double investment_win_share = 0.0;
    double poor_impact_win_share = 0.0;
    double mean_abs_scalar_g_error = 0.0;
    std::array<long, 5> winner_counts{};  // current, investment, poor, rich, mixed
    double mean_phi_if_investment_wins = 0.0;
    double mean_phi_otherwise = 0.0;
    double mean_psi_if_investment_wins = 0.0;
    double mean_psi_otherwise = 0.0;
    double mean_mu_I_if_investment_wins = 0.0;
    double mean_mu_I_otherwise = 0.0;
    long rejected_draws = 0;

    bool operator==(const MonteCarloSummary&) const = default;
};

// Uniform draws over cfg.ranges; five scenarios per draw; PV and impact
// winners classified per draw. Deterministic given (seed, n_draws) and
// independent of `threads`. Per-draw records are appended to `records` when
// provided.
MonteCarloSummary run_monte_carlo(const MonteCarloConfig& cfg, const ModelParams& base,
                                  int threads = 1,
                                  std::vector<DrawRecord>* records = nullptr);

struct StressResult {
    int draws = 0;
    bool all_finite = false;
    double max_identity_residual = 0.0;  // worst debt/capital/NX recursion error
    long rejected_draws = 0;
};

// Extreme-interval run: simulates all five scenarios per draw and verifies
// finiteness plus the accounting identities on every path.
StressResult run_stress(const MonteCarloConfig& cfg, const ModelParams& base);

// Residuals of the debt recursion, capital recursion and NX decomposition,
// recomputed from a stored path; returns the largest absolute violation.
double max_identity_residual(const ModelParams& p, const Scenario& s,
                             const SimulationPath& path);

std::string mc_summary_text(const MonteCarloSummary& s);
void write_draw_records_csv(const std::vector<DrawRecord>& records, std::ostream& out);

} // namespace fiscomp
