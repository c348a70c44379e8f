#ifndef SUMLAB_COMMON_HPP
#define SUMLAB_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumlab {

using cplx = std::complex<double>;
using cvector = std::vector<cplx>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an argument is outside an operation's stated domain.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when input data is malformed (dimension mismatch, unknown id, ...).
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when two internal computation routes disagree beyond tolerance.
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when the requested accuracy is unreachable at the given resolution.
class resolution_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Neumaier compensated summation; used wherever long real accumulations
// feed a tolerance check.
class compensated_sum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double rel_diff(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) / scale;
}

} // namespace sumlab

#endif
