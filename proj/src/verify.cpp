#include "greenspline/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "greenspline/gp.hpp"
#include "greenspline/kernels.hpp"
#include "greenspline/numerics.hpp"
#include "greenspline/series.hpp"
#include "greenspline/spline.hpp"

namespace greenspline {

namespace {

constexpr double kPi = std::numbers::pi;

struct Context {
    const VerifyOptions& options;
    std::vector<VerifyCheck>& checks;

    void record(std::string name, double residual, double default_tol) {
        const double tol = options.tolerance_override.value_or(default_tol);
        checks.push_back({std::move(name), residual, tol, residual <= tol});
    }
};

// Strictly increasing random times with a minimum gap, so Gram matrices
// stay well-conditioned.
Eigen::VectorXd random_times(RandomSource& rs, int m) {
    constexpr int kSlots = 97;
    std::vector<int> slots(kSlots);
    for (int i = 0; i < kSlots; ++i) slots[i] = i;
    for (int i = 0; i < m; ++i) {
        const int j = i + static_cast<int>(rs.uniform() * (kSlots - i));
        std::swap(slots[i], slots[std::min(j, kSlots - 1)]);
    }
    std::vector<int> chosen(slots.begin(), slots.begin() + m);
    std::sort(chosen.begin(), chosen.end());
    Eigen::VectorXd times(m);
    for (int i = 0; i < m; ++i) times[i] = (chosen[i] + 1) / (kSlots + 1.0);
    return times;
}

void verify_kernels(Context& ctx) {
    RandomSource rs(ctx.options.seed);
    for (const Kernel& k : kernel_catalog()) {
        const std::string prefix = "kernels/" + std::string(k.id);
        if (k.symmetric) {
            double worst = 0.0;
            RandomSource pair_rs = rs.child(1);
            for (int i = 0; i < 10000; ++i) {
                const double s = pair_rs.uniform();
                const double t = pair_rs.uniform();
                worst = std::max(worst, std::abs(k.eval(s, t) - k.eval(t, s)));
            }
            ctx.record(prefix + "/symmetry", worst, 1e-12);

            RandomSource grid_rs = rs.child(2);
            double min_eig = 0.0;
            for (int rep = 0; rep < 5; ++rep) {
                const Eigen::VectorXd times = random_times(grid_rs, 10 + rep * 10);
                const Eigen::MatrixXd g = gram(k, times);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
                min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
            }
            ctx.record(prefix + "/psd", std::max(0.0, -min_eig), 1e-10);
        }
        if (!k.constraints.empty()) {
            const ConstraintReport report = check_constraints(k, 100);
            ctx.record(prefix + "/constraints", report.max_residual, 1e-8);
        }
    }
}

void verify_series(Context& ctx) {
    const int n = ctx.options.truncation;

    // closed forms vs their series on an interior lattice
    const struct {
        const char* kernel;
        SeriesSpec spec;
    } pairs[] = {
        {"dirichlet", SeriesSpec::dirichlet_basis(n)},
        {"balanced_periodic", SeriesSpec::unconstrained(n)},
        {"odd", SeriesSpec::sine_only(n)},
    };
    for (const auto& pair : pairs) {
        const Kernel& k = kernel_by_id(pair.kernel);
        double worst = 0.0;
        for (int i = 0; i < 21; ++i)
            for (int j = 0; j < 21; ++j) {
                const double s = (i + 0.5) / 21.0;
                const double t = (j + 0.5) / 21.0;
                worst = std::max(worst,
                                 std::abs(k.eval(s, t) - truncated_green(pair.spec, s, t)));
            }
        ctx.record("series/agreement/" + std::string(pair.kernel), worst,
                   series_tail_bound(pair.spec));
    }

    // cosine-series identity sum cos(2 i pi u) / (4 i^2 pi^2) = (u(u-1) + 1/6)/4
    {
        double worst = 0.0;
        for (int ui = 0; ui <= 10; ++ui) {
            const double u = ui / 10.0;
            double partial = 0.0;
            for (int i = 1; i <= n; ++i)
                partial += std::cos(2.0 * i * kPi * u) / (4.0 * i * i * kPi * kPi);
            worst = std::max(worst, std::abs(partial - cosine_series_closed(u)));
        }
        // tail: sum_{i>n} 1/(4 i^2 pi^2) <= 1/(4 pi^2 n)
        ctx.record("series/cosine_closed", worst, 1.0 / (4.0 * kPi * kPi * n));
    }

    // Poisson reproduction: f with -f'' = h in each kernel's subspace must
    // come back as int G(s, t) h(s) ds
    {
        using Fn = std::function<double(double)>;
        const struct {
            const char* kernel;
            Fn f, h;
        } cases[] = {
            {"dirichlet", [](double t) { return std::sin(kPi * t); },
             [](double t) { return kPi * kPi * std::sin(kPi * t); }},
            {"mixed", [](double t) { return std::sin(0.5 * kPi * t); },
             [](double t) { return 0.25 * kPi * kPi * std::sin(0.5 * kPi * t); }},
            {"balanced_periodic", [](double t) { return std::cos(2.0 * kPi * t); },
             [](double t) { return 4.0 * kPi * kPi * std::cos(2.0 * kPi * t); }},
            {"odd", [](double t) { return std::sin(2.0 * kPi * t); },
             [](double t) { return 4.0 * kPi * kPi * std::sin(2.0 * kPi * t); }},
            {"mixed_zero_mean",
             [](double t) { return std::sin(0.5 * kPi * t) - 3.0 * std::sin(1.5 * kPi * t); },
             [](double t) {
                 return 0.25 * kPi * kPi * std::sin(0.5 * kPi * t) -
                        6.75 * kPi * kPi * std::sin(1.5 * kPi * t);
             }},
            {"dirichlet_zero_mean", [](double t) { return std::sin(2.0 * kPi * t); },
             [](double t) { return 4.0 * kPi * kPi * std::sin(2.0 * kPi * t); }},
            {"poly2_mixed", [](double t) { return t * t - 2.0 * t; },
             [](double) { return -2.0; }},
            {"poly2_bridge", [](double t) { return t - t * t; },
             [](double) { return 2.0; }},
        };
        double worst = 0.0;
        for (const auto& c : cases) {
            const Kernel& k = kernel_by_id(c.kernel);
            for (int i = 0; i < 21; ++i) {
                const double t = (i + 1) / 22.0;
                worst = std::max(worst, std::abs(apply_kernel(k, c.h, t) - c.f(t)));
            }
        }
        ctx.record("series/poisson", worst, 1e-7);
    }
}

void verify_spline(Context& ctx) {
    RandomSource rs(ctx.options.seed);
    const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(101, 0.0, 1.0);
    const double lambdas[] = {0.01, 0.1, 1.0};

    double worst_representer = 0.0;
    double worst_map = 0.0;
    for (int rep = 0; rep < ctx.options.dataset_count; ++rep) {
        RandomSource data_rs = rs.child(rep);
        const int m = 1 + static_cast<int>(data_rs.uniform() * 20);
        const Eigen::VectorXd times = random_times(data_rs, m);
        const Eigen::VectorXd y = data_rs.normals(m);
        const DataSet data(times, y);
        for (const Kernel& k : kernel_catalog()) {
            if (!k.symmetric) continue;
            for (double lambda : lambdas) {
                const SplineFit f = fit(k, data, lambda);
                // (G + lambda I) c = y rearranged: y - theta(t_i) = lambda c_i
                const Eigen::VectorXd defect =
                    y - f.evaluate(times) - lambda * f.coefficients();
                worst_representer =
                    std::max(worst_representer, defect.cwiseAbs().maxCoeff());

                const GpPrior prior{&k, 1.0};
                const Eigen::VectorXd posterior =
                    map_estimate(prior, data, 1.0 / lambda, grid);
                const Eigen::VectorXd diff = posterior - f.evaluate(grid);
                worst_map = std::max(worst_map, diff.cwiseAbs().maxCoeff());
            }
        }
    }
    ctx.record("spline/representer", worst_representer, 1e-9);
    ctx.record("spline/posterior_mean_match", worst_map, 1e-10);
}

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& options) {
    if (options.suite != "all" && options.suite != "kernels" &&
        options.suite != "series" && options.suite != "spline")
        throw ValidationError("verify: unknown suite '" + options.suite +
                              "' (expected kernels, series, spline or all)");
    if (options.truncation < 1)
        throw ValidationError("verify: series order must be positive");
    if (options.dataset_count < 1)
        throw ValidationError("verify: dataset count must be positive");

    std::vector<VerifyCheck> checks;
    Context ctx{options, checks};
    if (options.suite == "all" || options.suite == "kernels") verify_kernels(ctx);
    if (options.suite == "all" || options.suite == "series") verify_series(ctx);
    if (options.suite == "all" || options.suite == "spline") verify_spline(ctx);
    return checks;
}

}  // namespace greenspline
