#ifndef GREENSPLINE_NUMERICS_HPP
#define GREENSPLINE_NUMERICS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "greenspline/errors.hpp"

namespace greenspline {

// Cholesky solver for symmetric positive (semi-)definite systems.
//
// Covariance matrices built from the kernel catalog are only semidefinite
// when the grid touches pinned points, so a failed factorization is retried
// with escalating diagonal jitter 1e-12, 1e-11, ..., 1e-8. The jitter that
// was actually applied is recorded; a matrix that stays indefinite past the
// ladder raises NumericalError.
class SpdSolver {
public:
    enum class Jitter { none, escalate };

    explicit SpdSolver(const Eigen::Ref<const Eigen::MatrixXd>& a,
                       Jitter policy = Jitter::escalate);

    // Solves (A + jitter I) X = rhs, one or many right-hand sides, with a
    // single step of iterative refinement.
    Eigen::MatrixXd solve(const Eigen::Ref<const Eigen::MatrixXd>& rhs) const;

    // Lower-triangular L with L L^T = A + jitter() * I.
    Eigen::MatrixXd lower_factor() const { return llt_.matrixL(); }

    double jitter() const { return jitter_; }
    Eigen::Index size() const { return llt_.rows(); }

private:
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::MatrixXd matrix_;  // the factorized matrix, jitter included
    double jitter_ = 0.0;
};

Eigen::VectorXd spd_solve(const Eigen::Ref<const Eigen::MatrixXd>& a,
                          const Eigen::Ref<const Eigen::VectorXd>& b);

// Composite Simpson rule with `panels` panels per smooth piece.
//
// The range is split at every kink strictly inside (a, b). Each piece is
// sampled from its interior side (endpoints nudged by one ulp), so jump
// discontinuities located exactly at a declared kink are integrated as
// one-sided limits; for continuous integrands the nudge is harmless. The
// rule is exact for piecewise cubics whose pieces align with the splits.
double simpson(const std::function<double(double)>& f, double a, double b,
               int panels, std::span<const double> kinks = {});

// Central second-difference estimate of -f'' at t, step h; the stencil
// must stay inside [0, 1].
double second_difference(const std::function<double(double)>& f, double t, double h);

// Deterministic stream of random draws.
//
// Normal deviates use Box-Muller without caching: every draw consumes
// exactly two engine outputs, so the stream position depends only on how
// many draws were made, not on the call pattern. Independent streams for
// parallel work come from child(), seeded by a hash of (seed, stream).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    double uniform();  // [0, 1)
    double normal();
    Eigen::VectorXd normals(Eigen::Index n);

    RandomSource child(std::uint64_t stream) const;
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace greenspline

#endif
