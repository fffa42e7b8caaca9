#pragma once
#include <cmath>
#include <limits>

#include "fiscomp/errors.hpp"

namespace fiscomp::canonical {

// Slope parameters of the linear open-economy IS/LM/BP system.
//
//   IS:  alpha*Y = A + G + eta*e - b*i,  alpha = 1 - c(1-t) + m
//   LM:  M/P = k*Y - h*i
//   BP:  X0 + eta*e - m_B*Y + kappa*(i - i*) = 0
//
// Autonomous demand constants are irrelevant for the multipliers and are
// deliberately not part of this type.
struct CanonicalParams {
    double c;      // marginal propensity to consume, 0 < c < 1
    double t;      // proportional tax rate, 0 <= t < 1
    double m;      // import propensity in IS, m >= 0
    double b;      // interest sensitivity of demand, b > 0
    double k;      // income coefficient of money demand, k > 0
    double h;      // interest coefficient of money demand, h > 0
    double eta;    // exchange-rate elasticity of net exports, eta > 0
    double kappa;  // capital-mobility coefficient, kappa > 0
    double m_B;    // import propensity in BP, m_B >= 0
};

inline double alpha(const CanonicalParams& p) {
    return 1.0 - p.c * (1.0 - p.t) + p.m;
}

inline void validate(const CanonicalParams& p) {
    auto bad = [](const char* msg) { throw InvalidParameterError(msg); };
    if (!(p.c > 0.0 && p.c < 1.0)) bad("canonical: require 0 < c < 1");
    if (!(p.t >= 0.0 && p.t < 1.0)) bad("canonical: require 0 <= t < 1");
    if (!(p.m >= 0.0)) bad("canonical: require m >= 0");
    if (!(p.b > 0.0)) bad("canonical: require b > 0");
    if (!(p.k > 0.0)) bad("canonical: require k > 0");
    if (!(p.h > 0.0)) bad("canonical: require h > 0");
    if (!(p.eta > 0.0)) bad("canonical: require eta > 0");
    if (!(p.kappa > 0.0)) bad("canonical: require kappa > 0");
    if (!(p.m_B >= 0.0)) bad("canonical: require m_B >= 0");
    if (!(alpha(p) > 0.0)) bad("canonical: alpha = 1 - c(1-t) + m must be positive");
}

// dY/dG with the interest rate and exchange rate held fixed:
// 1 / (1 - c(1-t) + m).
inline double simple_multiplier(const CanonicalParams& p) {
    validate(p);
    return 1.0 / alpha(p);
}

// dY/dG with money supply and exchange rate fixed: 1 / (alpha + b*k/h).
// The extra denominator term is the interest-rate crowding-out channel, so
// the result never exceeds simple_multiplier.
inline double islm_multiplier(const CanonicalParams& p) {
    validate(p);
    return 1.0 / (alpha(p) + p.b * p.k / p.h);
}

// dY/dG under a fixed exchange rate with BP equilibrium:
// 1 / (alpha + b*m_B/kappa). Approaches 1/alpha as kappa -> infinity.
inline double fixed_bp_multiplier(const CanonicalParams& p) {
    validate(p);
    return 1.0 / (alpha(p) + p.b * p.m_B / p.kappa);
}

// Denominator of the flexible-rate multiplier: alpha - m_B + (k/h)(b + kappa).
// Linear in kappa with slope exactly k/h.
inline double flex_denominator(const CanonicalParams& p) {
    return alpha(p) - p.m_B + (p.k / p.h) * (p.b + p.kappa);
}

// dY/dG with money supply fixed and the exchange rate adjusting to clear BP.
// Strictly decreasing in kappa; tends to zero under perfect capital mobility.
inline double flex_multiplier(const CanonicalParams& p) {
    validate(p);
    const double denom = flex_denominator(p);
    if (!(denom > 0.0))
        throw NonpositiveDenominatorError(
            "canonical: flexible-rate denominator alpha - m_B + (k/h)(b+kappa) is not positive");
    return 1.0 / denom;
}

} // namespace fiscomp::canonical
