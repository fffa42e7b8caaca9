#pragma once
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "fiscomp/errors.hpp"

namespace fiscomp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A fiscal instrument vector g: one labelled spending level per instrument.
// The scalar aggregate G = 1'g discards everything but the sum.
struct FiscalVector {
    std::vector<std::string> labels;
    Vector levels;
};

inline void validate(const FiscalVector& g) {
    if (g.levels.size() < 1)
        throw DimensionMismatchError("fiscal vector must have dimension >= 1");
    if (static_cast<Eigen::Index>(g.labels.size()) != g.levels.size())
        throw DimensionMismatchError("fiscal vector labels and levels differ in length");
    std::unordered_set<std::string> seen;
    for (const auto& l : g.labels)
        if (!seen.insert(l).second)
            throw InvalidParameterError("fiscal vector labels must be unique: " + l);
}

// G = 1'g.
template <typename Derived>
double aggregate(const Eigen::MatrixBase<Derived>& g) {
    return g.sum();
}

inline double aggregate(const FiscalVector& g) {
    validate(g);
    return g.levels.sum();
}

// Basis of the null space of the aggregation map P g = 1'g, one column per
// direction, v_j = -e_0 + e_j for j = 1..n-1. Every column is a zero-sum
// recomposition; together they span ker(P), which has dimension n-1.
inline Matrix nullspace_basis(Eigen::Index n) {
    if (n < 2)
        throw DimensionMismatchError("nullspace basis requires dimension n >= 2");
    Matrix basis = Matrix::Zero(n, n - 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        basis(0, j) = -1.0;
        basis(j + 1, j) = 1.0;
    }
    return basis;
}

// First-order output effect of a fiscal change dg: dY = grad' dg.
template <typename DerivedA, typename DerivedB>
double first_order_effect(const Eigen::MatrixBase<DerivedA>& grad,
                          const Eigen::MatrixBase<DerivedB>& dg) {
    if (grad.size() == 0)
        throw DimensionMismatchError("first_order_effect: empty gradient");
    if (grad.size() != dg.size())
        throw DimensionMismatchError("first_order_effect: gradient and change differ in dimension");
    return grad.dot(dg);
}

// True iff the fiscal gradient is proportional to the ones vector, i.e. all
// instruments share one marginal output effect. This is the exact condition
// under which the scalar aggregate G carries all first-order fiscal
// information. Tolerance is relative with floor 1 so behavior is scale-free
// near zero gradients.
template <typename Derived>
bool is_locally_sufficient(const Eigen::MatrixBase<Derived>& grad, double tol) {
    if (grad.size() == 0)
        throw DimensionMismatchError("is_locally_sufficient: empty gradient");
    if (!(tol > 0.0))
        throw InvalidParameterError("is_locally_sufficient: tolerance must be positive");
    const double mean = grad.mean();
    const double max_dev = (grad.array() - mean).abs().maxCoeff();
    return max_dev <= tol * std::max(1.0, std::abs(mean));
}

// Scalar multiplier generated by a marginal impulse with composition w
// (1'w = 1): dY/dG = grad' w. Invariant over the simplex iff the gradient is
// homogeneous.
template <typename DerivedA, typename DerivedB>
double weighted_multiplier(const Eigen::MatrixBase<DerivedA>& grad,
                           const Eigen::MatrixBase<DerivedB>& w) {
    if (grad.size() != w.size())
        throw DimensionMismatchError("weighted_multiplier: gradient and weights differ in dimension");
    const double s = w.sum();
    if (std::abs(s - 1.0) > 1e-12)
        throw WeightSumError("weighted_multiplier: weights must sum to 1");
    return grad.dot(w);
}

// First-order error of a scalar-G model that applies multiplier lambda_bar to
// an impulse dG whose true composition is w: (grad'w - lambda_bar) * dG.
// Passing lambda_bar = weighted_multiplier(grad, w_bar) yields the
// composition-transfer error grad'(w - w_bar) * dG.
template <typename DerivedA, typename DerivedB>
double aggregation_bias(const Eigen::MatrixBase<DerivedA>& grad,
                        const Eigen::MatrixBase<DerivedB>& w,
                        double lambda_bar, double dG) {
    if (grad.size() != w.size())
        throw DimensionMismatchError("aggregation_bias: gradient and weights differ in dimension");
    return (grad.dot(w) - lambda_bar) * dG;
}

// Second-order output effect of moving eps along direction v:
// grad'v * eps + 0.5 * eps^2 * v'Hv. Even under a homogeneous gradient a
// zero-sum v produces a nonzero effect whenever v'Hv != 0.
inline double second_order_effect(const Vector& grad, const Matrix& hessian,
                                  const Vector& v, double eps) {
    if (grad.size() != v.size() || hessian.rows() != grad.size() ||
        hessian.cols() != grad.size())
        throw DimensionMismatchError("second_order_effect: operand dimensions disagree");
    if (!std::isfinite(eps))
        throw InvalidParameterError("second_order_effect: step must be finite");
    const double asym = (hessian - hessian.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
        throw InvalidParameterError("second_order_effect: Hessian is not symmetric");
    return grad.dot(v) * eps + 0.5 * eps * eps * v.dot(hessian * v);
}

} // namespace fiscomp
