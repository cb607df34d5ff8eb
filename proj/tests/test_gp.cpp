#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "greenspline/gp.hpp"
#include "test_support.hpp"

using namespace greenspline;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace

TEST_CASE("finite dimensional law of brownian motion") {
    const double s = 0.25, t = 0.5;
    const GaussianVector g = finite_dim(kernel_by_id("mixed"), vec({s, t, 1.0}));
    CHECK(g.mean.cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd expected(3, 3);
    expected << s, s, s,
                s, t, t,
                s, t, 1.0;
    CHECK((g.covariance - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("finite_dim validates") {
    const Kernel& k = kernel_by_id("dirichlet");
    CHECK_THROWS_AS(finite_dim(k, vec({0.5, 0.5})), ValidationError);
    CHECK_THROWS_AS(finite_dim(k, vec({-0.5})), ValidationError);
    CHECK_THROWS_AS(finite_dim(kernel_by_id("heaviside_first_order"), vec({0.5})),
                    ValidationError);
    CHECK(finite_dim(k, Eigen::VectorXd()).size() == 0);
    // unsorted grids are legal here
    const GaussianVector g = finite_dim(k, vec({0.75, 0.25}));
    CHECK(g.covariance(0, 1) == k.eval(0.75, 0.25));
}

TEST_CASE("make_gaussian validates") {
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5, 0.499, 1.0;
    CHECK_THROWS_AS(make_gaussian(vec({0.1, 0.2}), vec({0.0, 0.0}), asym),
                    ValidationError);
    Eigen::MatrixXd negdiag(1, 1);
    negdiag << -1e-6;
    CHECK_THROWS_AS(make_gaussian(vec({0.1}), vec({0.0}), negdiag), ValidationError);
    CHECK_THROWS_AS(make_gaussian(vec({0.1}), vec({0.0, 0.0}), negdiag), ValidationError);
}

TEST_CASE("conditioning brownian motion at the endpoint yields the bridge") {
    const GaussianVector joint = finite_dim(kernel_by_id("mixed"), vec({0.25, 0.5, 1.0}));
    const GaussianVector cond = condition(joint, {2}, vec({0.0}));
    CHECK(cond.size() == 2);
    const Eigen::MatrixXd bridge = gram(kernel_by_id("dirichlet"), vec({0.25, 0.5}));
    CHECK((cond.covariance - bridge).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(cond.mean.cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(cond.grid == vec({0.25, 0.5}));
}

TEST_CASE("conditioning shifts the mean linearly in the observed value") {
    const GaussianVector joint = finite_dim(kernel_by_id("mixed"), vec({0.25, 0.5, 1.0}));
    const GaussianVector cond = condition(joint, {2}, vec({2.0}));
    // E[x(t) | x(1) = 2] = 2t for brownian motion
    CHECK(std::abs(cond.mean[0] - 0.5) <= 1e-14);
    CHECK(std::abs(cond.mean[1] - 1.0) <= 1e-14);
}

TEST_CASE("conditioning edge cases") {
    const GaussianVector joint = finite_dim(kernel_by_id("mixed"), vec({0.25, 0.5, 1.0}));
    const GaussianVector same = condition(joint, {}, Eigen::VectorXd());
    CHECK(same.covariance == joint.covariance);

    const GaussianVector none = condition(joint, {0, 1, 2}, vec({0.1, 0.2, 0.3}));
    CHECK(none.size() == 0);

    CHECK_THROWS_AS(condition(joint, {3}, vec({0.0})), ValidationError);
    CHECK_THROWS_AS(condition(joint, {-1}, vec({0.0})), ValidationError);
    CHECK_THROWS_AS(condition(joint, {1, 1}, vec({0.0, 0.0})), ValidationError);
    CHECK_THROWS_AS(condition(joint, {0}, vec({0.0, 1.0})), ValidationError);
}

TEST_CASE("conditioning on a pinned coordinate is degenerate") {
    const GaussianVector joint = finite_dim(kernel_by_id("dirichlet"), vec({0.0, 0.5}));
    CHECK(joint.covariance(0, 0) == 0.0);
    CHECK_THROWS_AS(condition(joint, {0}, vec({0.0})), NumericalError);
}

TEST_CASE("sequential conditioning equals joint conditioning") {
    const Eigen::VectorXd grid = testsup::linspace(0.1, 0.9, 6);
    for (const char* id : {"mixed", "balanced_periodic", "dirichlet_zero_mean"}) {
        const GaussianVector joint = finite_dim(kernel_by_id(id), grid);
        const GaussianVector both = condition(joint, {1, 4}, vec({0.7, -0.2}));

        const GaussianVector first = condition(joint, {1}, vec({0.7}));
        // index 4 of the original grid is index 3 once coordinate 1 is gone
        const GaussianVector second = condition(first, {3}, vec({-0.2}));

        CHECK((both.covariance - second.covariance).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((both.mean - second.mean).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(both.grid == second.grid);
    }
}

TEST_CASE("conditional covariances stay positive semidefinite") {
    RandomSource rs(4040);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::VectorXd grid = testsup::random_times(rs, 8);
        const GaussianVector joint = finite_dim(kernel_by_id("mixed_zero_mean"), grid);
        const GaussianVector cond = condition(joint, {2, 5}, vec({1.0, -1.0}));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cond.covariance);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
        CHECK((cond.covariance - cond.covariance.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("brownian motion is independent of its future increments") {
    const Eigen::VectorXd grid = vec({0.25, 0.5});
    for (double eps : {0.5, 0.1, 0.01, 1e-6}) {
        const GaussianVector plain = finite_dim(kernel_by_id("mixed"), grid);
        const GaussianVector cond =
            condition_on_increment(kernel_by_id("mixed"), grid, eps);
        CHECK((plain.covariance - cond.covariance).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("bridge increments shrink the covariance by the known downdate") {
    const double s = 0.25, t = 0.5;
    for (double eps : {0.5, 0.25, 0.1}) {
        const GaussianVector cond =
            condition_on_increment(kernel_by_id("dirichlet"), vec({s, t}), eps);
        const Eigen::MatrixXd plain =
            finite_dim(kernel_by_id("dirichlet"), vec({s, t})).covariance;
        Eigen::MatrixXd downdate(2, 2);
        downdate << s * s, s * t,
                    s * t, t * t;
        const Eigen::MatrixXd expected = plain - (eps / (1.0 - eps)) * downdate;
        CHECK((cond.covariance - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // as eps -> 0 the extra conditioning fades: the derivative at 1 is
    // already pinned to -s by x(1) = 0
    const GaussianVector tiny =
        condition_on_increment(kernel_by_id("dirichlet"), vec({s, t}), 1e-6);
    const Eigen::MatrixXd plain =
        finite_dim(kernel_by_id("dirichlet"), vec({s, t})).covariance;
    CHECK((tiny.covariance - plain).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("condition_on_increment validates") {
    const Kernel& k = kernel_by_id("mixed");
    CHECK_THROWS_AS(condition_on_increment(k, vec({0.95}), 0.1), ValidationError);
    CHECK_THROWS_AS(condition_on_increment(k, vec({0.5}), 0.0), ValidationError);
    CHECK_THROWS_AS(condition_on_increment(k, vec({0.5}), 1.0), ValidationError);
    CHECK_THROWS_AS(condition_on_increment(kernel_by_id("heaviside_first_order"),
                                           vec({0.5}), 0.1), ValidationError);
}

TEST_CASE("sampled paths are reproducible and respect pins") {
    const Kernel& k = kernel_by_id("dirichlet");
    const Eigen::VectorXd grid = testsup::linspace(0.0, 1.0, 5);
    const RandomSource source(99);
    const PathSet a = sample_paths(k, grid, 7, source);
    const PathSet b = sample_paths(k, grid, 7, source);
    CHECK(a.values == b.values);
    CHECK(a.count() == 7);
    // pinned rows are exactly zero
    CHECK(a.values.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.values.row(4).cwiseAbs().maxCoeff() == 0.0);
    // interior rows are not
    CHECK(a.values.row(2).cwiseAbs().maxCoeff() > 0.0);

    const PathSet c = sample_paths(k, grid, 7, RandomSource(100));
    CHECK(a.values != c.values);

    CHECK_THROWS_AS(sample_paths(k, grid, 0, source), ValidationError);
    CHECK_THROWS_AS(sample_paths(kernel_by_id("heaviside_first_order"), grid, 1, source),
                    ValidationError);
}

TEST_CASE("brownian increment sampler starts at zero") {
    const RandomSource source(4);
    const PathSet p = sample_bm_increments(vec({0.0, 0.3, 0.7}), 64, source);
    CHECK(p.values.row(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.values.row(2).cwiseAbs().maxCoeff() > 0.0);
    const PathSet q = sample_bm_increments(vec({0.0, 0.3, 0.7}), 64, source);
    CHECK(p.values == q.values);

    CHECK_THROWS_AS(sample_bm_increments(vec({0.5, 0.2}), 4, source), ValidationError);
    CHECK_THROWS_AS(sample_bm_increments(vec({-0.1, 0.2}), 4, source), ValidationError);
    CHECK_THROWS_AS(sample_bm_increments(vec({0.5}), 0, source), ValidationError);
}

TEST_CASE("both brownian samplers agree with the kernel covariance") {
    const Eigen::VectorXd grid = testsup::linspace(0.1, 1.0, 10);
    const int count = 40000;
    const PathSet via_kernel =
        sample_paths(kernel_by_id("mixed"), grid, count, RandomSource(111));
    const PathSet via_increments = sample_bm_increments(grid, count, RandomSource(222));
    const Eigen::MatrixXd target = gram(kernel_by_id("mixed"), grid);
    for (const PathSet* p : {&via_kernel, &via_increments}) {
        const Eigen::MatrixXd emp = testsup::empirical_covariance(*p);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double se = std::sqrt(
                    (target(i, i) * target(j, j) + target(i, j) * target(i, j)) / count);
                CHECK(std::abs(emp(i, j) - target(i, j)) <= 4.0 * se + 1e-12);
            }
    }
}

TEST_CASE("path transforms implement their definitions") {
    const Eigen::VectorXd grid = testsup::linspace(0.0, 1.0, 5);
    const PathSet p = sample_bm_increments(grid, 16, RandomSource(33));

    const PathSet bridged = bridge_transform(p);
    CHECK(bridged.values.row(4).cwiseAbs().maxCoeff() == 0.0);  // x(1) - 1*x(1)
    CHECK(bridged.values.row(0).cwiseAbs().maxCoeff() == 0.0);
    for (int j = 0; j < 16; ++j)
        CHECK(bridged.values(2, j) == p.values(2, j) - 0.5 * p.values(4, j));

    const PathSet reversed = reverse_transform(p);
    for (int i = 0; i < 5; ++i)
        CHECK(reversed.values.row(i) == p.values.row(4 - i));
    const PathSet twice = reverse_transform(reversed);
    CHECK(twice.values == p.values);

    const PathSet tied = tied_sum_transform(p);
    for (int j = 0; j < 16; ++j) {
        CHECK(tied.values(1, j) == p.values(1, j) + p.values(3, j));
        CHECK(tied.values(2, j) == 2.0 * p.values(2, j));
    }

    const PathSet doubled = independent_sum(p, p);
    CHECK(doubled.values == (p.values * 2.0));
}

TEST_CASE("path transforms validate their inputs") {
    const PathSet no_end{vec({0.0, 0.5}), Eigen::MatrixXd::Zero(2, 3)};
    CHECK_THROWS_AS(bridge_transform(no_end), ValidationError);
    const PathSet lopsided{vec({0.0, 0.3, 1.0}), Eigen::MatrixXd::Zero(3, 3)};
    CHECK_THROWS_AS(reverse_transform(lopsided), ValidationError);
    CHECK_THROWS_AS(tied_sum_transform(lopsided), ValidationError);

    const PathSet a{vec({0.0, 1.0}), Eigen::MatrixXd::Zero(2, 3)};
    const PathSet b{vec({0.0, 0.5}), Eigen::MatrixXd::Zero(2, 3)};
    CHECK_THROWS_AS(independent_sum(a, b), ValidationError);
    const PathSet c{vec({0.0, 1.0}), Eigen::MatrixXd::Zero(2, 4)};
    CHECK_THROWS_AS(independent_sum(a, c), ValidationError);
}

TEST_CASE("posterior mean matches the worked example and the spline") {
    const Kernel& k = kernel_by_id("dirichlet");
    const DataSet data(vec({0.5}), vec({1.0}));
    const GpPrior prior{&k, 1.0};
    const Eigen::VectorXd at_mid = map_estimate(prior, data, 4.0, vec({0.5}));
    CHECK(at_mid[0] == 0.5);  // lambda = 1/4 shrinks the unit observation to 1/2

    const Eigen::VectorXd grid = testsup::linspace(0.0, 1.0, 21);
    const Eigen::VectorXd posterior = map_estimate(prior, data, 4.0, grid);
    const SplineFit f = fit(k, data, 0.25);
    CHECK(posterior == f.evaluate(grid));

    const Eigen::VectorXd at_pin = map_estimate(prior, data, 4.0, vec({0.0}));
    CHECK(at_pin[0] == 0.0);
}

TEST_CASE("posterior mean validates") {
    const DataSet data(vec({0.5}), vec({1.0}));
    const GpPrior none{nullptr, 1.0};
    CHECK_THROWS_AS(map_estimate(none, data, 4.0, vec({0.5})), ValidationError);
    const GpPrior bad_scale{&kernel_by_id("mixed"), 0.0};
    CHECK_THROWS_AS(map_estimate(bad_scale, data, 4.0, vec({0.5})), ValidationError);
    const GpPrior prior{&kernel_by_id("mixed"), 1.0};
    CHECK_THROWS_AS(map_estimate(prior, data, 0.0, vec({0.5})), ValidationError);
    CHECK_THROWS_AS(map_estimate(prior, data, -1.0, vec({0.5})), ValidationError);
    const GpPrior heavi{&kernel_by_id("heaviside_first_order"), 1.0};
    CHECK_THROWS_AS(map_estimate(heavi, data, 4.0, vec({0.5})), ValidationError);
}
