#include "greenspline/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "greenspline/numerics.hpp"

namespace greenspline {

namespace {

double eval_dirichlet(double s, double t) {
    return std::min(s, t) - s * t;
}

double eval_mixed(double s, double t) {
    return std::min(s, t);
}

double eval_balanced_periodic(double s, double t) {
    const double d = std::abs(s - t);
    return 0.5 * d * d - 0.5 * d + 1.0 / 12.0;
}

double eval_odd(double s, double t) {
    // wrapping s + t rounds, so return the boundary pins directly
    if (s == 0.0 || s == 1.0 || t == 0.0 || t == 1.0) return 0.0;
    const double d = std::abs(s - t);
    const double u = s + t - (s + t >= 1.0 ? 1.0 : 0.0);
    return 0.25 * (d * (d - 1.0) - u * (u - 1.0));
}

double eval_mixed_zero_mean(double s, double t) {
    return std::min(s, t) - 0.75 * (s * s - 2.0 * s) * (t * t - 2.0 * t);
}

double eval_dirichlet_zero_mean(double s, double t) {
    return std::min(s, t) - s * t - 3.0 * (1.0 - s) * s * (1.0 - t) * t;
}

double eval_poly2_mixed(double s, double t) {
    return 0.75 * (s - 2.0) * s * (t - 2.0) * t;
}

double eval_poly2_bridge(double s, double t) {
    return 3.0 * s * (1.0 - s) * t * (1.0 - t);
}

double eval_heaviside(double s, double t) {
    return t >= s ? 1.0 : 0.0;
}

double comp_zero(double) { return 0.0; }
double comp_neg_one(double) { return -1.0; }
double comp_mixed_zero_mean(double s) { return 1.5 * (s * s - 2.0 * s); }
double comp_dirichlet_zero_mean(double s) { return -6.0 * s * (1.0 - s); }
double comp_poly2_mixed(double s) { return -1.5 * (s * s - 2.0 * s); }
double comp_poly2_bridge(double s) { return 6.0 * s * (1.0 - s); }

constexpr Constraint pin0{ConstraintKind::value_pin, 0.0, "G(s,0) = 0"};
constexpr Constraint pin1{ConstraintKind::value_pin, 1.0, "G(s,1) = 0"};
constexpr Constraint dpin1{ConstraintKind::derivative_pin, 1.0, "dG/dt(s,1) = 0"};
constexpr Constraint zint{ConstraintKind::zero_integral, 0.0, "int_0^1 G(s,t) dt = 0"};
constexpr Constraint oddc{ConstraintKind::odd_about_half, 0.0, "G(s,t) = -G(s,1-t)"};
constexpr Constraint perc{ConstraintKind::periodic, 0.0, "G(s,0) = G(s,1)"};

// Quasi-random probe sections: the golden-ratio sequence on [margin,
// 1-margin], far enough from the boundary that derivative stencils of
// step 1e-5 never straddle the diagonal kink.
std::vector<double> probe_sections(int count) {
    constexpr double kMargin = 1e-3;
    constexpr double kGolden = 0.6180339887498949;
    std::vector<double> probes(count);
    double frac = 0.0;
    for (int i = 0; i < count; ++i) {
        frac += kGolden;
        frac -= std::floor(frac);
        probes[i] = kMargin + (1.0 - 2.0 * kMargin) * frac;
    }
    return probes;
}

double constraint_residual(const Kernel& k, const Constraint& c, double s) {
    constexpr double kStep = 1e-5;
    switch (c.kind) {
        case ConstraintKind::value_pin:
            return std::abs(k.eval(s, c.point));
        case ConstraintKind::derivative_pin: {
            // one-sided second-order difference pointing into [0, 1]
            const double p = c.point;
            const double dir = p < 0.5 ? 1.0 : -1.0;
            const double g0 = k.eval(s, p);
            const double g1 = k.eval(s, p + dir * kStep);
            const double g2 = k.eval(s, p + 2.0 * dir * kStep);
            return std::abs(dir * (-3.0 * g0 + 4.0 * g1 - g2) / (2.0 * kStep));
        }
        case ConstraintKind::zero_integral: {
            const auto section = [&](double t) { return k.eval(s, t); };
            const std::vector<double> kinks = kernel_kinks(k, s);
            return std::abs(simpson(section, 0.0, 1.0, 32, kinks));
        }
        case ConstraintKind::odd_about_half: {
            double worst = 0.0;
            for (int i = 0; i <= 40; ++i) {
                const double t = i / 40.0;
                worst = std::max(worst, std::abs(k.eval(s, t) + k.eval(s, 1.0 - t)));
            }
            return worst;
        }
        case ConstraintKind::periodic:
            return std::abs(k.eval(s, 0.0) - k.eval(s, 1.0));
    }
    throw ValidationError("check_constraints: unknown constraint kind");
}

}  // namespace

double Kernel::operator()(double s, double t) const {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
        throw ValidationError("kernel evaluation: arguments must lie in [0, 1]");
    return eval(s, t);
}

const std::vector<Kernel>& kernel_catalog() {
    static const std::vector<Kernel> catalog = {
        {"dirichlet", "min(s,t) - s*t", eval_dirichlet, comp_zero,
         true, false, {pin0, pin1}},
        {"mixed", "min(s,t)", eval_mixed, comp_zero,
         true, false, {pin0, dpin1}},
        {"balanced_periodic", "|s-t|^2/2 - |s-t|/2 + 1/12", eval_balanced_periodic,
         comp_neg_one, true, false, {zint, perc}},
        {"odd", "(|s-t|(|s-t|-1) - u(u-1))/4, u = wrap(s+t)", eval_odd, comp_zero,
         true, true, {oddc, pin0, pin1, zint}},
        {"mixed_zero_mean", "min(s,t) - 3(s^2-2s)(t^2-2t)/4", eval_mixed_zero_mean,
         comp_mixed_zero_mean, true, false, {pin0, dpin1, zint}},
        {"dirichlet_zero_mean", "min(s,t) - s*t - 3s(1-s)t(1-t)", eval_dirichlet_zero_mean,
         comp_dirichlet_zero_mean, true, false, {pin0, pin1, zint}},
        {"poly2_mixed", "3(s-2)s(t-2)t/4", eval_poly2_mixed, comp_poly2_mixed,
         true, false, {pin0, dpin1}},
        {"poly2_bridge", "3s(1-s)t(1-t)", eval_poly2_bridge, comp_poly2_bridge,
         true, false, {pin0, pin1}},
        {"heaviside_first_order", "1[t >= s]", eval_heaviside, comp_zero,
         false, false, {}},
    };
    return catalog;
}

const Kernel& kernel_by_id(std::string_view id) {
    for (const Kernel& k : kernel_catalog())
        if (k.id == id) return k;
    throw ValidationError("unknown kernel '" + std::string(id) + "'");
}

std::vector<double> kernel_kinks(const Kernel& k, double s) {
    std::vector<double> kinks;
    if (s > 0.0 && s < 1.0) kinks.push_back(s);
    if (k.antidiagonal_seam) {
        const double r = 1.0 - s;
        if (r > 0.0 && r < 1.0) kinks.push_back(r);
    }
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
    return kinks;
}

std::vector<double> value_pin_points(const Kernel& k) {
    std::vector<double> pins;
    for (const Constraint& c : k.constraints)
        if (c.kind == ConstraintKind::value_pin) pins.push_back(c.point);
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    return pins;
}

Eigen::MatrixXd gram(const Kernel& k, const Eigen::Ref<const Eigen::VectorXd>& times) {
    const Eigen::Index m = times.size();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(times[i] >= 0.0 && times[i] <= 1.0))
            throw ValidationError("gram: times must lie in [0, 1]");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw ValidationError("gram: times must be strictly increasing");
    }
    Eigen::MatrixXd g(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j) {
            g(i, j) = k.eval(times[i], times[j]);
            g(j, i) = g(i, j);
        }
    return g;
}

Eigen::MatrixXd cross_gram(const Kernel& k,
                           const Eigen::Ref<const Eigen::VectorXd>& rows,
                           const Eigen::Ref<const Eigen::VectorXd>& cols) {
    for (Eigen::Index i = 0; i < rows.size(); ++i)
        if (!(rows[i] >= 0.0 && rows[i] <= 1.0))
            throw ValidationError("cross_gram: row points must lie in [0, 1]");
    for (Eigen::Index j = 0; j < cols.size(); ++j)
        if (!(cols[j] >= 0.0 && cols[j] <= 1.0))
            throw ValidationError("cross_gram: column points must lie in [0, 1]");
    Eigen::MatrixXd m(rows.size(), cols.size());
    for (Eigen::Index i = 0; i < rows.size(); ++i)
        for (Eigen::Index j = 0; j < cols.size(); ++j)
            m(i, j) = k.eval(rows[i], cols[j]);
    return m;
}

ConstraintReport check_constraints(const Kernel& k, int probe_count) {
    if (probe_count < 1)
        throw ValidationError("check_constraints: probe count must be positive");
    const std::vector<double> probes = probe_sections(probe_count);
    ConstraintReport report{std::string(k.id), {}, 0.0};
    for (const Constraint& c : k.constraints) {
        double worst = 0.0;
        for (double s : probes)
            worst = std::max(worst, constraint_residual(k, c, s));
        report.residuals.emplace_back(std::string(c.label), worst);
        report.max_residual = std::max(report.max_residual, worst);
    }
    return report;
}

double offdiag_laplacian_check(const Kernel& k, double s, double t, double step) {
    if (!(step > 0.0))
        throw ValidationError("offdiag_laplacian_check: step must be positive");
    if (!(s >= 0.0 && s <= 1.0) || t - step < 0.0 || t + step > 1.0)
        throw ValidationError("offdiag_laplacian_check: stencil leaves [0, 1]");
    if (std::abs(s - t) <= 2.0 * step)
        throw ValidationError("offdiag_laplacian_check: probe too close to the diagonal kink");
    if (k.antidiagonal_seam && std::abs(s + t - 1.0) <= 2.0 * step)
        throw ValidationError("offdiag_laplacian_check: probe too close to the s + t = 1 seam");
    const auto section = [&](double x) { return k.eval(s, x); };
    return second_difference(section, t, step) - k.compensation(s);
}

}  // namespace greenspline
