#ifndef GREENSPLINE_KERNELS_HPP
#define GREENSPLINE_KERNELS_HPP

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greenspline/errors.hpp"

namespace greenspline {

// A subspace condition declared by a kernel, checkable along any section
// t -> G(s, t).
enum class ConstraintKind {
    value_pin,       // G(s, point) = 0
    derivative_pin,  // dG/dt(s, point) = 0
    zero_integral,   // int_0^1 G(s, t) dt = 0
    odd_about_half,  // G(s, t) = -G(s, 1 - t)
    periodic,        // G(s, 0) = G(s, 1)
};

struct Constraint {
    ConstraintKind kind;
    double point;  // pin location; ignored by the other kinds
    std::string_view label;
};

// One catalog entry: a closed-form Green's function of -d^2/dt^2 on a
// constrained subspace of C^2([0, 1]), with the metadata needed to verify
// it numerically.
//
// `compensation` is the smooth part of -d^2/dt^2 G(s, .) away from the
// kinks, i.e. the density the subspace adds around the Dirac delta at
// t = s. Each density below was obtained by differentiating the closed
// form by hand.
struct Kernel {
    std::string_view id;
    std::string_view formula;  // human-readable closed form
    double (*eval)(double s, double t);
    double (*compensation)(double s);
    bool symmetric;
    bool antidiagonal_seam;  // extra kink along s + t = 1
    std::vector<Constraint> constraints;

    // Evaluates with domain validation; eval() skips the checks.
    double operator()(double s, double t) const;
};

const std::vector<Kernel>& kernel_catalog();
const Kernel& kernel_by_id(std::string_view id);

// Kink locations of t -> G(s, t) strictly inside (0, 1).
std::vector<double> kernel_kinks(const Kernel& k, double s);

// Points where every section of the kernel vanishes (value pins).
std::vector<double> value_pin_points(const Kernel& k);

// Gram matrix G_ij = G(t_i, t_j) over strictly increasing times in [0, 1].
// The upper triangle is computed and mirrored, so the result is exactly
// symmetric even in floating point.
Eigen::MatrixXd gram(const Kernel& k, const Eigen::Ref<const Eigen::VectorXd>& times);

// Rectangular kernel matrix M_ij = G(rows_i, cols_j); no ordering demands.
Eigen::MatrixXd cross_gram(const Kernel& k,
                           const Eigen::Ref<const Eigen::VectorXd>& rows,
                           const Eigen::Ref<const Eigen::VectorXd>& cols);

struct ConstraintReport {
    std::string kernel_id;
    std::vector<std::pair<std::string, double>> residuals;  // label -> worst residual
    double max_residual = 0.0;
};

// Evaluates every declared constraint of `k` at `probe_count` quasi-random
// sections s in [0.001, 0.999]. Derivative pins use a one-sided
// second-order difference with step 1e-5; integral constraints use
// kink-split Simpson quadrature.
ConstraintReport check_constraints(const Kernel& k, int probe_count);

// Central second difference of -G(s, .) at t minus the kernel's documented
// compensation density. Near zero wherever the closed form is correct; the
// probe is rejected if the stencil straddles a kink.
double offdiag_laplacian_check(const Kernel& k, double s, double t, double step);

}  // namespace greenspline

#endif
