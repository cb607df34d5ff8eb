#ifndef GREENSPLINE_SERIES_HPP
#define GREENSPLINE_SERIES_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "greenspline/kernels.hpp"

namespace greenspline {

// Constraint modes for the truncated Green's-function series. The general
// term is (cos(2i pi s) cos(2i pi t) + sin(2i pi s) sin(2i pi t)) / (2 i^2 pi^2);
// each mode removes or replaces basis elements to match a subspace:
//
//   unconstrained     the general form itself (periodic, zero-mean)
//   dirichlet_basis   cos(2i pi .) replaced by cos(2i pi .) - 1, which
//                     vanishes at both endpoints
//   sine_only         cosine terms dropped; sine series span the odd
//                     functions about 1/2
//   zero_indices      cosine terms at the listed indices dropped
//   linear_constraint subtracts the compensator
//                     sum_i c_i cos(2i pi s) cos(2i pi t) / (2 i^2 pi^2)
enum class SeriesMode {
    unconstrained,
    dirichlet_basis,
    sine_only,
    zero_indices,
    linear_constraint,
};

struct SeriesSpec {
    int truncation;
    SeriesMode mode;
    std::vector<int> zeroed;   // sorted 1-based indices; zero_indices mode
    Eigen::VectorXd weights;   // c_1..c_N; linear_constraint mode

    static SeriesSpec unconstrained(int n);
    static SeriesSpec dirichlet_basis(int n);
    static SeriesSpec sine_only(int n);
    static SeriesSpec zero_indices(int n, std::vector<int> indices);
    static SeriesSpec linear_constraint(int n, Eigen::VectorXd weights);
};

// Closed form of sum_{i>=1} cos(2 i pi u) / (4 i^2 pi^2) for u in [0, 1]:
// (u(u-1) + 1/6) / 4.
double cosine_series_closed(double u);

// Partial sum of the described series at (s, t), both in [0, 1].
double truncated_green(const SeriesSpec& spec, double s, double t);

// Rigorous sup-norm bound on the truncation error of the described series:
// K / N with K from the per-term amplitude (K = 5/(2 pi^2) for the
// Dirichlet basis, 1/(2 pi^2) otherwise, plus max|c_i|/(2 pi^2) for the
// compensator terms).
double series_tail_bound(const SeriesSpec& spec);

struct FourierCoeffs {
    double a0 = 0.0;       // 2 int_0^1 f
    Eigen::VectorXd a, b;  // a_i = 2 int f cos(2 i pi t), b_i = 2 int f sin(2 i pi t)
};

FourierCoeffs fourier_coeffs(const std::function<double(double)>& f, int n,
                             int panels = 4096);

// int_0^1 G(s, t) h(s) ds by Simpson quadrature, split at the kernel's
// kinks so the rule keeps its full order across the seams.
double apply_kernel(const Kernel& k, const std::function<double(double)>& h,
                    double t, int panels = 2048);

// Series route for the same integral: h is expanded in Fourier
// coefficients once and the integral is summed term by term, so no
// oscillatory quadrature at high truncation orders is needed.
double apply_kernel(const SeriesSpec& spec, const std::function<double(double)>& h,
                    double t, int panels = 4096);

}  // namespace greenspline

#endif
