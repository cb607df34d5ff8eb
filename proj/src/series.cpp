#include "greenspline/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greenspline/numerics.hpp"

namespace greenspline {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_spec(const SeriesSpec& spec) {
    if (spec.truncation < 1)
        throw ValidationError("series: truncation order must be positive");
    if (spec.mode == SeriesMode::zero_indices) {
        int prev = 0;
        for (int i : spec.zeroed) {
            if (i < 1 || i > spec.truncation)
                throw ValidationError("series: zeroed indices must lie in 1..N");
            if (i <= prev)
                throw ValidationError("series: zeroed indices must be strictly increasing");
            prev = i;
        }
    }
    if (spec.mode == SeriesMode::linear_constraint &&
        spec.weights.size() != spec.truncation)
        throw ValidationError("series: need one constraint weight per series term");
}

void validate_point(double s, double t) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
        throw ValidationError("series: arguments must lie in [0, 1]");
}

}  // namespace

SeriesSpec SeriesSpec::unconstrained(int n) {
    SeriesSpec spec{n, SeriesMode::unconstrained, {}, {}};
    validate_spec(spec);
    return spec;
}

SeriesSpec SeriesSpec::dirichlet_basis(int n) {
    SeriesSpec spec{n, SeriesMode::dirichlet_basis, {}, {}};
    validate_spec(spec);
    return spec;
}

SeriesSpec SeriesSpec::sine_only(int n) {
    SeriesSpec spec{n, SeriesMode::sine_only, {}, {}};
    validate_spec(spec);
    return spec;
}

SeriesSpec SeriesSpec::zero_indices(int n, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    SeriesSpec spec{n, SeriesMode::zero_indices, std::move(indices), {}};
    validate_spec(spec);
    return spec;
}

SeriesSpec SeriesSpec::linear_constraint(int n, Eigen::VectorXd weights) {
    SeriesSpec spec{n, SeriesMode::linear_constraint, {}, std::move(weights)};
    validate_spec(spec);
    return spec;
}

double cosine_series_closed(double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw ValidationError("cosine_series_closed: argument must lie in [0, 1]");
    return 0.25 * (u * (u - 1.0) + 1.0 / 6.0);
}

double truncated_green(const SeriesSpec& spec, double s, double t) {
    validate_spec(spec);
    validate_point(s, t);
    const bool zeroing = spec.mode == SeriesMode::zero_indices;
    double sum = 0.0;
    for (int i = 1; i <= spec.truncation; ++i) {
        const double w = 1.0 / (2.0 * i * i * kPi * kPi);
        const double angle_s = 2.0 * i * kPi * s;
        const double angle_t = 2.0 * i * kPi * t;
        const double cs = std::cos(angle_s), ct = std::cos(angle_t);
        const double ss = std::sin(angle_s), st = std::sin(angle_t);
        switch (spec.mode) {
            case SeriesMode::unconstrained:
                sum += w * (cs * ct + ss * st);
                break;
            case SeriesMode::dirichlet_basis:
                sum += w * ((cs - 1.0) * (ct - 1.0) + ss * st);
                break;
            case SeriesMode::sine_only:
                sum += w * (ss * st);
                break;
            case SeriesMode::zero_indices: {
                const bool drop = zeroing &&
                    std::binary_search(spec.zeroed.begin(), spec.zeroed.end(), i);
                sum += w * ((drop ? 0.0 : cs * ct) + ss * st);
                break;
            }
            case SeriesMode::linear_constraint:
                sum += w * (cs * ct + ss * st - spec.weights[i - 1] * cs * ct);
                break;
        }
    }
    return sum;
}

double series_tail_bound(const SeriesSpec& spec) {
    validate_spec(spec);
    double amplitude = 1.0;
    switch (spec.mode) {
        case SeriesMode::dirichlet_basis:
            amplitude = 5.0;  // |(cos-1)(cos-1)| <= 4 plus |sin sin| <= 1
            break;
        case SeriesMode::linear_constraint:
            amplitude = 1.0 + spec.weights.cwiseAbs().maxCoeff();
            break;
        default:
            break;
    }
    // sum_{i>N} amplitude / (2 i^2 pi^2) <= amplitude / (2 pi^2 N)
    return amplitude / (2.0 * kPi * kPi * spec.truncation);
}

FourierCoeffs fourier_coeffs(const std::function<double(double)>& f, int n, int panels) {
    if (n < 1)
        throw ValidationError("fourier_coeffs: order must be positive");
    FourierCoeffs out;
    out.a.resize(n);
    out.b.resize(n);
    out.a0 = 2.0 * simpson(f, 0.0, 1.0, panels);
    for (int i = 1; i <= n; ++i) {
        const double freq = 2.0 * i * kPi;
        out.a[i - 1] = 2.0 * simpson([&](double t) { return f(t) * std::cos(freq * t); },
                                     0.0, 1.0, panels);
        out.b[i - 1] = 2.0 * simpson([&](double t) { return f(t) * std::sin(freq * t); },
                                     0.0, 1.0, panels);
    }
    return out;
}

double apply_kernel(const Kernel& k, const std::function<double(double)>& h,
                    double t, int panels) {
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("apply_kernel: evaluation point must lie in [0, 1]");
    const std::vector<double> kinks = kernel_kinks(k, t);
    const auto integrand = [&](double s) { return k.eval(s, t) * h(s); };
    return simpson(integrand, 0.0, 1.0, panels, kinks);
}

double apply_kernel(const SeriesSpec& spec, const std::function<double(double)>& h,
                    double t, int panels) {
    validate_spec(spec);
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("apply_kernel: evaluation point must lie in [0, 1]");
    const FourierCoeffs fc = fourier_coeffs(h, spec.truncation, panels);
    double sum = 0.0;
    for (int i = 1; i <= spec.truncation; ++i) {
        const double w = 1.0 / (2.0 * i * i * kPi * kPi);
        const double ct = std::cos(2.0 * i * kPi * t);
        const double st = std::sin(2.0 * i * kPi * t);
        const double ai = fc.a[i - 1], bi = fc.b[i - 1];
        switch (spec.mode) {
            case SeriesMode::unconstrained:
                sum += w * 0.5 * (ai * ct + bi * st);
                break;
            case SeriesMode::dirichlet_basis:
                // int (cos(2 i pi s) - 1) h(s) ds = (a_i - a0) / 2
                sum += w * (0.5 * (ai - fc.a0) * (ct - 1.0) + 0.5 * bi * st);
                break;
            case SeriesMode::sine_only:
                sum += w * 0.5 * (bi * st);
                break;
            case SeriesMode::zero_indices: {
                const bool drop =
                    std::binary_search(spec.zeroed.begin(), spec.zeroed.end(), i);
                sum += w * 0.5 * ((drop ? 0.0 : ai * ct) + bi * st);
                break;
            }
            case SeriesMode::linear_constraint:
                sum += w * 0.5 * (ai * ct + bi * st - spec.weights[i - 1] * ai * ct);
                break;
        }
    }
    return sum;
}

}  // namespace greenspline
