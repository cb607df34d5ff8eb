#ifndef GREENSPLINE_ERRORS_HPP
#define GREENSPLINE_ERRORS_HPP

#include <stdexcept>

namespace greenspline {

// Bad input or a violated precondition. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical breakdown: factorization failure past the jitter ladder,
// conditioning on a degenerate variable. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace greenspline

#endif
