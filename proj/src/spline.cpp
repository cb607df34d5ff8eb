#include "greenspline/spline.hpp"

#include <cmath>
#include <sstream>

#include "greenspline/numerics.hpp"

namespace greenspline {

namespace {

std::vector<double> pinned_observation_times(const Kernel& k,
                                             const Eigen::Ref<const Eigen::VectorXd>& times) {
    std::vector<double> pinned;
    const std::vector<double> pins = value_pin_points(k);
    for (Eigen::Index i = 0; i < times.size(); ++i)
        for (double p : pins)
            if (times[i] == p) pinned.push_back(times[i]);
    return pinned;
}

}  // namespace

DataSet::DataSet(Eigen::VectorXd times, Eigen::VectorXd values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() != values_.size())
        throw ValidationError("DataSet: times and values must have equal length");
    if (times_.size() == 0)
        throw ValidationError("DataSet: at least one observation is required");
    for (Eigen::Index i = 0; i < times_.size(); ++i) {
        if (!(times_[i] >= 0.0 && times_[i] <= 1.0))
            throw ValidationError("DataSet: times must lie in [0, 1]");
        if (i > 0 && !(times_[i] > times_[i - 1]))
            throw ValidationError("DataSet: times must be strictly increasing (no duplicates)");
        if (!std::isfinite(values_[i]))
            throw ValidationError("DataSet: values must be finite");
    }
}

SplineFit fit(const Kernel& k, const DataSet& data, double lambda) {
    if (!k.symmetric)
        throw ValidationError("fit: kernel '" + std::string(k.id) +
                              "' is not a covariance and cannot be used for fitting");
    if (!(lambda >= 0.0))
        throw ValidationError("fit: lambda must be non-negative");

    SplineFit f;
    f.kernel_ = &k;
    f.lambda_ = lambda;
    f.times_ = data.times();
    f.gram_ = gram(k, f.times_);
    f.pinned_ = pinned_observation_times(k, f.times_);

    Eigen::MatrixXd system = f.gram_;
    system.diagonal().array() += lambda;

    // Interpolation must solve the Gram exactly or fail loudly; only the
    // penalized system may be nudged.
    const auto policy = lambda == 0.0 ? SpdSolver::Jitter::none : SpdSolver::Jitter::escalate;
    try {
        SpdSolver solver(system, policy);
        f.coeffs_ = solver.solve(data.values());
        f.jitter_ = solver.jitter();
    } catch (const NumericalError&) {
        std::ostringstream msg;
        msg << "fit: Gram matrix is singular at lambda = 0 (interpolation)";
        if (!f.pinned_.empty()) {
            msg << "; observations sit on pinned times:";
            for (double p : f.pinned_) msg << ' ' << p;
        }
        throw NumericalError(msg.str());
    }
    return f;
}

double SplineFit::evaluate(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("SplineFit: evaluation point must lie in [0, 1]");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < times_.size(); ++i)
        sum += coeffs_[i] * kernel_->eval(times_[i], t);
    return sum;
}

Eigen::VectorXd SplineFit::evaluate(const Eigen::Ref<const Eigen::VectorXd>& grid) const {
    return cross_gram(*kernel_, grid, times_) * coeffs_;
}

SplineFit SplineFit::from_parts(const Kernel& k, double lambda, Eigen::VectorXd times,
                                Eigen::VectorXd coefficients, double jitter) {
    if (!(lambda >= 0.0))
        throw ValidationError("SplineFit: lambda must be non-negative");
    if (times.size() != coefficients.size())
        throw ValidationError("SplineFit: times and coefficients must have equal length");
    if (times.size() == 0)
        throw ValidationError("SplineFit: at least one representer is required");
    SplineFit f;
    f.kernel_ = &k;
    f.lambda_ = lambda;
    f.jitter_ = jitter;
    f.gram_ = gram(k, times);  // validates the times as well
    f.times_ = std::move(times);
    f.coeffs_ = std::move(coefficients);
    f.pinned_ = pinned_observation_times(k, f.times_);
    return f;
}

double penalty(const SplineFit& f) {
    return f.coefficients().dot(f.gram_matrix() * f.coefficients());
}

double objective(const SplineFit& f, const DataSet& data) {
    if (data.times().size() != f.times().size() ||
        (data.times().array() != f.times().array()).any())
        throw ValidationError("objective: data must use the fit's observation times");
    const Eigen::VectorXd residual = data.values() - f.evaluate(data.times());
    return residual.squaredNorm() + f.lambda() * penalty(f);
}

}  // namespace greenspline
