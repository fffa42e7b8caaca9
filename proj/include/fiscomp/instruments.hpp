#pragma once
#include <cmath>

#include "fiscomp/errors.hpp"

namespace fiscomp {

// Absorption-side parameters of the reduced-form demand block. Every impact
// multiplier divides a domestic-absorption coefficient by the common
// denominator D = 1 - cbar + m + omega_f + omega_rho (+ debt term).
struct AbsorptionParams {
    double mu_C;       // import leakage of current spending
    double mu_I;       // import leakage of public investment
    double mu_p;       // import leakage of poor-household transfer consumption
    double mu_r;       // import leakage of rich-household transfer consumption
    double c_p;        // MPC of poorer recipients
    double c_r;        // MPC of richer recipients
    double cbar;       // aggregate consumption feedback
    double m;          // openness/import term of the denominator
    double omega_f;    // financial crowding-out penalty
    double omega_rho;  // risk penalty
};

inline void validate(const AbsorptionParams& a) {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(a.mu_C) || !unit(a.mu_I) || !unit(a.mu_p) || !unit(a.mu_r))
        throw InvalidParameterError("absorption: import leakages must lie in [0,1]");
    if (!unit(a.c_p) || !unit(a.c_r))
        throw InvalidParameterError("absorption: MPCs must lie in [0,1]");
    if (!(a.cbar > 0.0 && a.cbar < 1.0))
        throw InvalidParameterError("absorption: cbar must lie in (0,1)");
    if (a.m < 0.0 || a.omega_f < 0.0 || a.omega_rho < 0.0)
        throw InvalidParameterError("absorption: denominator terms must be nonnegative");
}

// Public-capital channel parameters. ybar_k is the constant output/public-
// capital ratio of the finite-horizon approximation; with output and public
// capital both normalized to 100 it equals 1.
struct CapitalParams {
    double phi;      // implementation efficiency, [0,1]
    double psi;      // public-capital output elasticity, >= 0
    double delta_g;  // depreciation, [0,1)
    double zeta;     // direct complementarity coefficient, >= 0
    double beta;     // discount factor, (0,1)
    double ybar_k;   // output / public-capital ratio, > 0
    int S;           // horizon in periods, >= 1
};

inline void validate(const CapitalParams& k) {
    if (!(k.phi >= 0.0 && k.phi <= 1.0))
        throw InvalidParameterError("capital: phi must lie in [0,1]");
    if (!(k.delta_g >= 0.0 && k.delta_g < 1.0))
        throw InvalidParameterError("capital: delta_g must lie in [0,1)");
    if (!(k.beta > 0.0 && k.beta < 1.0))
        throw InvalidParameterError("capital: beta must lie in (0,1)");
    if (k.psi < 0.0 || k.zeta < 0.0)
        throw InvalidParameterError("capital: psi and zeta must be nonnegative");
    if (!(k.ybar_k > 0.0))
        throw InvalidParameterError("capital: ybar_k must be positive");
    if (k.S < 1)
        throw InvalidParameterError("capital: horizon S must be >= 1");
}

// Coefficients of the affine risk-premium equation
// rho = rho0 + rho1*(B/Y) + rho2*(B_ext/X) + rho3*sigma.
struct RiskParams {
    double rho0;
    double rho1;
    double rho2;
    double rho3;
    double debt_to_gdp;
    double extdebt_to_exports;
    double sigma;
};

// D = 1 - cbar + m + omega_f + omega_rho + debt_term. Throws when the result
// is not positive (inadmissible configuration).
inline double denominator(const AbsorptionParams& a, double debt_term) {
    validate(a);
    if (debt_term < 0.0)
        throw InvalidParameterError("denominator: debt term must be nonnegative");
    const double d = 1.0 - a.cbar + a.m + a.omega_f + a.omega_rho + debt_term;
    if (!(d > 0.0))
        throw NonpositiveDenominatorError("denominator: 1 - cbar + m + omega_f + omega_rho + debt <= 0");
    return d;
}

inline void require_positive_denominator(double D) {
    if (!(D > 0.0))
        throw NonpositiveDenominatorError("impact multiplier: denominator D must be positive");
}

// Impact multiplier of current spending: (1 - mu_C) / D.
inline double current_impact(const AbsorptionParams& a, double D) {
    require_positive_denominator(D);
    return (1.0 - a.mu_C) / D;
}

// Impact multiplier of a transfer to a group with MPC c_q and import leakage
// mu_q: c_q (1 - mu_q) / D. Targeting matters through both arguments.
inline double transfer_impact(double c_q, double mu_q, double D) {
    require_positive_denominator(D);
    if (c_q < 0.0 || c_q > 1.0 || mu_q < 0.0 || mu_q > 1.0)
        throw InvalidParameterError("transfer_impact: c_q and mu_q must lie in [0,1]");
    return c_q * (1.0 - mu_q) / D;
}

// Contemporaneous component of the investment multiplier: (1 - mu_I) / D.
inline double investment_impact(const AbsorptionParams& a, double D) {
    require_positive_denominator(D);
    return (1.0 - a.mu_I) / D;
}

// Discounted future output effect of one unit of investment through the
// public-capital stock, under constant D and constant output/capital ratio:
//   (zeta + psi*ybar_k) * phi / D * beta * (1 - (beta(1-delta))^S) / (1 - beta(1-delta)).
inline double investment_future_term(const CapitalParams& k, double D) {
    validate(k);
    require_positive_denominator(D);
    const double q = k.beta * (1.0 - k.delta_g);
    if (q == 1.0)
        throw InvalidParameterError("investment PV: beta*(1-delta_g) = 1 gives a degenerate geometric ratio");
    const double geometric = k.beta * (1.0 - std::pow(q, k.S)) / (1.0 - q);
    return (k.zeta + k.psi * k.ybar_k) * k.phi / D * geometric;
}

// Present-value multiplier of investment over S future periods: impact plus
// the finite geometric public-capital term.
inline double investment_pv_closed(const AbsorptionParams& a, const CapitalParams& k, double D) {
    return investment_impact(a, D) + investment_future_term(k, D);
}

// Signed present-value gap between investment and current spending:
//   future term - (mu_I - mu_C)/D - cost.
// Positive means investment dominates. Exposed as a gap (not a boolean) so
// sweeps can locate the dominance frontier.
inline double dominance_gap(const AbsorptionParams& a, const CapitalParams& k,
                            double D, double cost) {
    require_positive_denominator(D);
    return investment_future_term(k, D) - (a.mu_I - a.mu_C) / D - cost;
}

// rho = rho0 + rho1*(B/Y) + rho2*(B_ext/X) + rho3*sigma.
inline double risk_premium(const RiskParams& r) {
    if (r.rho1 < 0.0 || r.rho2 < 0.0 || r.rho3 < 0.0)
        throw InvalidParameterError("risk_premium: slope coefficients must be nonnegative");
    const double rho = r.rho0 + r.rho1 * r.debt_to_gdp +
                       r.rho2 * r.extdebt_to_exports + r.rho3 * r.sigma;
    if (!std::isfinite(rho))
        throw InvalidParameterError("risk_premium: inputs must be finite");
    return rho;
}

// d(B/Y)/dg = (Y dB - B dY) / Y^2. Negative exactly when the output response
// outweighs the debt response: B dY > Y dB.
inline double debt_ratio_derivative(double B_next, double Y_next, double dB, double dY) {
    if (!(Y_next > 0.0))
        throw InvalidParameterError("debt_ratio_derivative: next-period output must be positive");
    return (Y_next * dB - B_next * dY) / (Y_next * Y_next);
}

// Marginal effect of investment at t on potential output at t+s:
// psi * (Y*/Kg) * phi * (1-delta)^(s-1), s >= 1.
inline double potential_output_effect(double psi, double Ystar, double Kg,
                                      double phi, double delta_g, int s) {
    if (!(Kg > 0.0))
        throw InvalidParameterError("potential_output_effect: public capital must be positive");
    if (s < 1)
        throw InvalidParameterError("potential_output_effect: lag s must be >= 1");
    return psi * (Ystar / Kg) * phi * std::pow(1.0 - delta_g, s - 1);
}

} // namespace fiscomp
