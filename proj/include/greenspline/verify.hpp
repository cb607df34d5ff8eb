#ifndef GREENSPLINE_VERIFY_HPP
#define GREENSPLINE_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace greenspline {

struct VerifyCheck {
    std::string name;
    double residual;
    double tolerance;
    bool passed;
};

struct VerifyOptions {
    std::string suite = "all";  // kernels | series | spline | all
    int truncation = 10000;     // series order N
    std::optional<double> tolerance_override;
    std::uint64_t seed = 20240601;
    int dataset_count = 10;  // random datasets for the spline checks
};

// Re-derives the library's analytic claims numerically:
//   kernels: symmetry, positive semidefiniteness, declared constraints
//   series:  closed forms vs truncated series, the cosine-series identity,
//            solving -f'' = h by integrating the kernel against h
//   spline:  the representer system identity, spline/posterior-mean match
// Residuals are compared against per-check tolerances (or the override).
std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

}  // namespace greenspline

#endif
