#ifndef GREENSPLINE_SPLINE_HPP
#define GREENSPLINE_SPLINE_HPP

#include <Eigen/Dense>
#include <vector>

#include "greenspline/kernels.hpp"

namespace greenspline {

// Validated observations (t_i, y_i): times strictly increasing in [0, 1],
// values finite, at least one point.
class DataSet {
public:
    DataSet(Eigen::VectorXd times, Eigen::VectorXd values);

    const Eigen::VectorXd& times() const { return times_; }
    const Eigen::VectorXd& values() const { return values_; }
    Eigen::Index size() const { return times_.size(); }

private:
    Eigen::VectorXd times_;
    Eigen::VectorXd values_;
};

// First-derivative-penalty smoothing spline in representer form:
// theta(t) = sum_i c_i G(t_i, t) with coefficients solving
// (G + lambda I) c = y over the Gram matrix G of the kernel.
class SplineFit {
public:
    const Kernel& kernel() const { return *kernel_; }
    double lambda() const { return lambda_; }
    const Eigen::VectorXd& times() const { return times_; }
    const Eigen::VectorXd& coefficients() const { return coeffs_; }
    const Eigen::MatrixXd& gram_matrix() const { return gram_; }

    // Diagonal jitter the solver had to add; 0 for a clean factorization.
    double jitter() const { return jitter_; }

    // Observation times coinciding with the kernel's value pins. Every
    // representer vanishes there, so the fit cannot match those points.
    const std::vector<double>& pinned_times() const { return pinned_; }

    double evaluate(double t) const;
    Eigen::VectorXd evaluate(const Eigen::Ref<const Eigen::VectorXd>& grid) const;

    // Reassembles a fit from stored parts (e.g. a reloaded JSON artifact);
    // no linear system is solved.
    static SplineFit from_parts(const Kernel& k, double lambda, Eigen::VectorXd times,
                                Eigen::VectorXd coefficients, double jitter);

private:
    SplineFit() = default;
    friend SplineFit fit(const Kernel&, const DataSet&, double);

    const Kernel* kernel_ = nullptr;
    double lambda_ = 0.0;
    double jitter_ = 0.0;
    Eigen::VectorXd times_;
    Eigen::VectorXd coeffs_;
    Eigen::MatrixXd gram_;
    std::vector<double> pinned_;
};

// Solves the representer system. lambda = 0 requests plain interpolation
// and disables jitter: a singular Gram (e.g. observations sitting on the
// kernel's pinned points) raises NumericalError naming those times.
SplineFit fit(const Kernel& k, const DataSet& data, double lambda);

// Roughness c^T G c of the fitted curve: the integral of theta'(t)^2
// under the subspace's boundary conditions.
double penalty(const SplineFit& f);

// Penalized least squares sum_i (y_i - theta(t_i))^2 + lambda * penalty.
double objective(const SplineFit& f, const DataSet& data);

}  // namespace greenspline

#endif
