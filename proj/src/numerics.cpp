#include "greenspline/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace greenspline {

namespace {

constexpr double kJitterLadder[] = {1e-12, 1e-11, 1e-10, 1e-9, 1e-8};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

SpdSolver::SpdSolver(const Eigen::Ref<const Eigen::MatrixXd>& a, Jitter policy) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw ValidationError("SpdSolver: matrix must be square and non-empty");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError("SpdSolver: matrix is not symmetric");

    matrix_ = 0.5 * (a + a.transpose());
    llt_.compute(matrix_);
    if (llt_.info() == Eigen::Success) return;

    if (policy == Jitter::none)
        throw NumericalError("SpdSolver: matrix is not positive definite and jitter is disabled");

    const Eigen::MatrixXd sym = matrix_;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(sym.rows(), sym.cols());
    for (double j : kJitterLadder) {
        matrix_ = sym + j * eye;
        llt_.compute(matrix_);
        if (llt_.info() == Eigen::Success) {
            jitter_ = j;
            return;
        }
    }
    throw NumericalError("SpdSolver: matrix is not positive definite, even with jitter 1e-08");
}

Eigen::MatrixXd SpdSolver::solve(const Eigen::Ref<const Eigen::MatrixXd>& rhs) const {
    if (rhs.rows() != size())
        throw ValidationError("SpdSolver: right-hand side has the wrong number of rows");
    Eigen::MatrixXd x = llt_.solve(rhs);
    x += llt_.solve(rhs - matrix_ * x);
    return x;
}

Eigen::VectorXd spd_solve(const Eigen::Ref<const Eigen::MatrixXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b) {
    return SpdSolver(a).solve(b);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int panels, std::span<const double> kinks) {
    if (panels < 2 || panels % 2 != 0)
        throw ValidationError("simpson: panel count must be a positive even number");
    if (!(a <= b))
        throw ValidationError("simpson: bounds must satisfy a <= b");
    if (a == b) return 0.0;

    std::vector<double> splits;
    splits.push_back(a);
    std::vector<double> inner(kinks.begin(), kinks.end());
    std::sort(inner.begin(), inner.end());
    for (double k : inner)
        if (k > a && k < b && k != splits.back()) splits.push_back(k);
    splits.push_back(b);

    double total = 0.0;
    for (std::size_t p = 0; p + 1 < splits.size(); ++p) {
        const double lo = splits[p];
        const double hi = splits[p + 1];
        const double h = (hi - lo) / panels;
        // sample split endpoints from inside the piece (one-sided limits)
        const double flo = f(lo == a ? lo : std::nextafter(lo, hi));
        const double fhi = f(hi == b ? hi : std::nextafter(hi, lo));
        double sum = flo + fhi;
        for (int i = 1; i < panels; ++i)
            sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
        total += sum * h / 3.0;
    }
    return total;
}

double second_difference(const std::function<double(double)>& f, double t, double h) {
    if (!(h > 0.0))
        throw ValidationError("second_difference: step must be positive");
    if (t - h < 0.0 || t + h > 1.0)
        throw ValidationError("second_difference: stencil leaves [0, 1]");
    return -(f(t - h) - 2.0 * f(t) + f(t + h)) / (h * h);
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd RandomSource::normals(Eigen::Index n) {
    if (n < 0) throw ValidationError("RandomSource: negative draw count");
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = normal();
    return out;
}

RandomSource RandomSource::child(std::uint64_t stream) const {
    return RandomSource(splitmix64(seed_ ^ splitmix64(stream)));
}

}  // namespace greenspline
