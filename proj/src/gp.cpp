#include "greenspline/gp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace greenspline {

namespace {

constexpr double kDegenerateVariance = 1e-12;

void require_covariance_kernel(const Kernel& k, const char* who) {
    if (!k.symmetric)
        throw ValidationError(std::string(who) + ": kernel '" + std::string(k.id) +
                              "' is not symmetric and defines no covariance");
}

void validate_grid(const Eigen::Ref<const Eigen::VectorXd>& grid, const char* who) {
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw ValidationError(std::string(who) + ": grid points must lie in [0, 1]");
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        for (Eigen::Index j = i + 1; j < grid.size(); ++j)
            if (grid[i] == grid[j])
                throw ValidationError(std::string(who) + ": grid points must be distinct");
}

// Index of the grid point matching `target` up to grid-construction noise.
Eigen::Index find_grid_point(const Eigen::Ref<const Eigen::VectorXd>& grid,
                             double target, const char* who) {
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (std::abs(grid[i] - target) <= 1e-12) return i;
    throw ValidationError(std::string(who) + ": grid lacks the required point");
}

}  // namespace

GaussianVector make_gaussian(Eigen::VectorXd grid, Eigen::VectorXd mean,
                             Eigen::MatrixXd covariance) {
    const Eigen::Index n = grid.size();
    if (mean.size() != n || covariance.rows() != n || covariance.cols() != n)
        throw ValidationError("GaussianVector: dimension mismatch");
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw ValidationError("GaussianVector: grid points must lie in [0, 1]");
    if (n > 0) {
        if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw ValidationError("GaussianVector: covariance must be symmetric");
        if (covariance.diagonal().minCoeff() < -1e-12)
            throw ValidationError("GaussianVector: covariance has a negative variance");
    }
    return {std::move(grid), std::move(mean), std::move(covariance)};
}

GaussianVector finite_dim(const Kernel& k, const Eigen::Ref<const Eigen::VectorXd>& grid) {
    require_covariance_kernel(k, "finite_dim");
    validate_grid(grid, "finite_dim");
    const Eigen::Index n = grid.size();
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            cov(i, j) = k.eval(grid[i], grid[j]);
            cov(j, i) = cov(i, j);
        }
    return make_gaussian(grid, Eigen::VectorXd::Zero(n), std::move(cov));
}

GaussianVector condition(const GaussianVector& joint,
                         const std::vector<Eigen::Index>& observed,
                         const Eigen::Ref<const Eigen::VectorXd>& values) {
    const Eigen::Index n = joint.size();
    if (static_cast<Eigen::Index>(observed.size()) != values.size())
        throw ValidationError("condition: need one value per observed index");
    std::set<Eigen::Index> seen;
    for (Eigen::Index idx : observed) {
        if (idx < 0 || idx >= n)
            throw ValidationError("condition: observed index out of range");
        if (!seen.insert(idx).second)
            throw ValidationError("condition: observed indices must be distinct");
    }
    if (observed.empty()) return joint;

    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < n; ++i)
        if (!seen.count(i)) kept.push_back(i);

    for (Eigen::Index idx : observed)
        if (joint.covariance(idx, idx) <= kDegenerateVariance)
            throw NumericalError("condition: observed coordinate has (near-)zero variance");

    const Eigen::MatrixXd s22 = joint.covariance(observed, observed);
    const Eigen::MatrixXd s12 = joint.covariance(kept, observed);
    const Eigen::VectorXd mean2 = joint.mean(observed);

    SpdSolver solver(s22);
    const Eigen::VectorXd shift = solver.solve(values - mean2);
    const Eigen::MatrixXd gain = solver.solve(s12.transpose());

    Eigen::VectorXd mean = joint.mean(kept) + s12 * shift;
    Eigen::MatrixXd cov = joint.covariance(kept, kept) - s12 * gain;
    cov = 0.5 * (cov + cov.transpose()).eval();
    return make_gaussian(joint.grid(kept), std::move(mean), std::move(cov));
}

GaussianVector condition_on_increment(const Kernel& k,
                                      const Eigen::Ref<const Eigen::VectorXd>& grid,
                                      double epsilon) {
    require_covariance_kernel(k, "condition_on_increment");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("condition_on_increment: epsilon must lie in (0, 1)");
    validate_grid(grid, "condition_on_increment");
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        if (grid[i] > 1.0 - epsilon)
            throw ValidationError("condition_on_increment: grid must stay in [0, 1 - eps]");

    const double head = 1.0;
    const double tail = 1.0 - epsilon;
    const double q = k.eval(head, head) + k.eval(tail, tail) - 2.0 * k.eval(head, tail);
    if (!(q > kDegenerateVariance * epsilon * epsilon))
        throw NumericalError("condition_on_increment: increment has (near-)zero variance");

    const Eigen::Index n = grid.size();
    Eigen::VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d[i] = (k.eval(grid[i], head) - k.eval(grid[i], tail)) / epsilon;

    GaussianVector g = finite_dim(k, grid);
    // increment variance is q / eps^2, covariance with x(g_i) is d_i
    g.covariance -= (epsilon * epsilon / q) * (d * d.transpose());
    return make_gaussian(std::move(g.grid), std::move(g.mean), std::move(g.covariance));
}

PathSet sample_paths(const Kernel& k, const Eigen::Ref<const Eigen::VectorXd>& grid,
                     int count, const RandomSource& source) {
    require_covariance_kernel(k, "sample_paths");
    validate_grid(grid, "sample_paths");
    if (count < 1)
        throw ValidationError("sample_paths: path count must be positive");

    const Eigen::Index n = grid.size();
    const GaussianVector g = finite_dim(k, grid);

    // pinned coordinates are almost surely zero; factorize only the rest
    std::vector<Eigen::Index> live;
    for (Eigen::Index i = 0; i < n; ++i)
        if (g.covariance(i, i) > 1e-14) live.push_back(i);

    Eigen::MatrixXd chol;
    if (!live.empty())
        chol = SpdSolver(g.covariance(live, live)).lower_factor();

    const Eigen::Index nlive = static_cast<Eigen::Index>(live.size());
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, count);
    for (int j = 0; j < count; ++j) {
        RandomSource rs = source.child(static_cast<std::uint64_t>(j));
        const Eigen::VectorXd x = chol * rs.normals(nlive);
        for (Eigen::Index i = 0; i < nlive; ++i) values(live[i], j) = x[i];
    }
    return {grid, std::move(values)};
}

PathSet sample_bm_increments(const Eigen::Ref<const Eigen::VectorXd>& grid,
                             int count, const RandomSource& source) {
    const Eigen::Index n = grid.size();
    if (n > 0 && !(grid[0] >= 0.0))
        throw ValidationError("sample_bm_increments: grid must start at or after 0");
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(grid[i] >= grid[i - 1]))
            throw ValidationError("sample_bm_increments: grid must be sorted ascending");
    if (count < 1)
        throw ValidationError("sample_bm_increments: path count must be positive");

    Eigen::MatrixXd values(n, count);
    for (int j = 0; j < count; ++j) {
        RandomSource rs = source.child(static_cast<std::uint64_t>(j));
        double x = 0.0;
        double prev = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            x += std::sqrt(grid[i] - prev) * rs.normal();
            prev = grid[i];
            values(i, j) = x;
        }
    }
    return {grid, std::move(values)};
}

PathSet bridge_transform(const PathSet& p) {
    const Eigen::Index end = find_grid_point(p.grid, 1.0, "bridge_transform");
    PathSet out{p.grid, p.values};
    for (Eigen::Index i = 0; i < p.grid.size(); ++i)
        out.values.row(i) -= p.grid[i] * p.values.row(end);
    return out;
}

PathSet reverse_transform(const PathSet& p) {
    PathSet out{p.grid, Eigen::MatrixXd(p.values.rows(), p.values.cols())};
    for (Eigen::Index i = 0; i < p.grid.size(); ++i) {
        const Eigen::Index mirror =
            find_grid_point(p.grid, 1.0 - p.grid[i], "reverse_transform");
        out.values.row(i) = p.values.row(mirror);
    }
    return out;
}

PathSet tied_sum_transform(const PathSet& p) {
    PathSet reversed = reverse_transform(p);
    reversed.values += p.values;
    return reversed;
}

PathSet independent_sum(const PathSet& a, const PathSet& b) {
    if (a.grid.size() != b.grid.size() ||
        (a.grid.size() > 0 && (a.grid.array() != b.grid.array()).any()))
        throw ValidationError("independent_sum: path sets must share one grid");
    if (a.count() != b.count())
        throw ValidationError("independent_sum: path sets must have equal path counts");
    return {a.grid, a.values + b.values};
}

Eigen::VectorXd map_estimate(const GpPrior& prior, const DataSet& data, double tau_sq,
                             const Eigen::Ref<const Eigen::VectorXd>& grid) {
    if (prior.kernel == nullptr)
        throw ValidationError("map_estimate: prior has no kernel");
    if (!(prior.scale > 0.0))
        throw ValidationError("map_estimate: prior scale must be positive");
    if (!(tau_sq > 0.0))
        throw ValidationError("map_estimate: tau_sq must be positive");
    require_covariance_kernel(*prior.kernel, "map_estimate");

    const Kernel& k = *prior.kernel;
    Eigen::MatrixXd system = gram(k, data.times());
    system.diagonal().array() += 1.0 / tau_sq;
    const Eigen::VectorXd coeffs = SpdSolver(system).solve(data.values());
    return cross_gram(k, grid, data.times()) * coeffs;
}

}  // namespace greenspline
