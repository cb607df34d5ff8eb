#ifndef GREENSPLINE_GP_HPP
#define GREENSPLINE_GP_HPP

#include <Eigen/Dense>
#include <vector>

#include "greenspline/kernels.hpp"
#include "greenspline/numerics.hpp"
#include "greenspline/spline.hpp"

namespace greenspline {

// Finite-dimensional Gaussian over grid points in [0, 1].
struct GaussianVector {
    Eigen::VectorXd grid;
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;

    Eigen::Index size() const { return grid.size(); }
};

// Validates dimensions, grid domain, symmetry of the covariance (to 1e-12)
// and a non-negative diagonal (to -1e-12).
GaussianVector make_gaussian(Eigen::VectorXd grid, Eigen::VectorXd mean,
                             Eigen::MatrixXd covariance);

// Zero-mean finite-dimensional law of the kernel's process on distinct
// grid points (any order). Symmetric kernels only.
GaussianVector finite_dim(const Kernel& k, const Eigen::Ref<const Eigen::VectorXd>& grid);

// Conditions on x[observed[j]] = values[j] and returns the Gaussian over
// the remaining coordinates (original order preserved), via
//   mean_1 + S12 S22^-1 (a - mean_2),  S11 - S12 S22^-1 S21.
// Conditioning on a coordinate with (near-)zero variance is degenerate
// and raises NumericalError.
GaussianVector condition(const GaussianVector& joint,
                         const std::vector<Eigen::Index>& observed,
                         const Eigen::Ref<const Eigen::VectorXd>& values);

// Conditions the kernel's process on a vanishing scaled future increment
// (x(1) - x(1 - eps)) / eps = 0: a rank-one downdate of the covariance
// with the increment column d_i = (G(g_i, 1) - G(g_i, 1 - eps)) / eps and
// denominator q = G(1,1) + G(1-eps,1-eps) - 2 G(1,1-eps). The grid must
// stay inside [0, 1 - eps].
GaussianVector condition_on_increment(const Kernel& k,
                                      const Eigen::Ref<const Eigen::VectorXd>& grid,
                                      double epsilon);

// Sampled trajectories: one row per grid point, one column per path.
struct PathSet {
    Eigen::VectorXd grid;
    Eigen::MatrixXd values;

    Eigen::Index count() const { return values.cols(); }
};

// Draws `count` paths of the kernel's process on the grid by Cholesky
// coloring. Grid points with zero marginal variance (the kernel's pins)
// are emitted as exact zeros; only the live block is factorized, with the
// usual jitter ladder. Paths depend only on (source seed, path index), so
// a fixed seed reproduces the same PathSet.
PathSet sample_paths(const Kernel& k, const Eigen::Ref<const Eigen::VectorXd>& grid,
                     int count, const RandomSource& source);

// Independent route to Brownian motion: cumulative sums of N(0, dt)
// increments from x(0) = 0 over an ascending grid (first point >= 0).
PathSet sample_bm_increments(const Eigen::Ref<const Eigen::VectorXd>& grid,
                             int count, const RandomSource& source);

// Pathwise transforms used to cross-validate the samplers.
PathSet bridge_transform(const PathSet& p);    // x(t) - t x(1); grid must contain 1
PathSet reverse_transform(const PathSet& p);   // x(1 - t); grid must be mirror-closed
PathSet tied_sum_transform(const PathSet& p);  // x(t) + x(1 - t)
PathSet independent_sum(const PathSet& a, const PathSet& b);

// Zero-mean process prior with covariance scale * G; scale > 0.
struct GpPrior {
    const Kernel* kernel = nullptr;
    double scale = 1.0;
};

// Posterior mean of the prior at the grid points given noisy observations
// y at `times`, with signal-to-noise ratio tau_sq:
//   G(grid, times) (G(times, times) + tau_sq^-1 I)^-1 y.
// Shares the solve and evaluation path with fit(), so it agrees with the
// smoothing spline at lambda = 1 / tau_sq to the last bit.
Eigen::VectorXd map_estimate(const GpPrior& prior, const DataSet& data, double tau_sq,
                             const Eigen::Ref<const Eigen::VectorXd>& grid);

}  // namespace greenspline

#endif
