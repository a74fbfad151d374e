#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace haar_besov {

// Signed real stored as sign and log2 of the magnitude. Used where values
// such as 2^{(k+i)d} leave double range.
struct LogReal {
    int sign = 0;  // -1, 0, +1
    double log2mag = -std::numeric_limits<double>::infinity();

    [[nodiscard]] static LogReal zero() noexcept { return {}; }
    [[nodiscard]] static LogReal from_log2(double log2mag, int sign = 1) noexcept;
    [[nodiscard]] static LogReal from_double(double x) noexcept;

    [[nodiscard]] bool is_zero() const noexcept { return sign == 0; }
    // Overflows to +-inf and underflows to 0 like exp2.
    [[nodiscard]] double to_double() const noexcept;
    [[nodiscard]] LogReal abs() const noexcept { return sign == 0 ? *this : LogReal{1, log2mag}; }
    // |x|^p for p > 0.
    [[nodiscard]] LogReal abs_pow(double p) const noexcept;

    LogReal operator-() const noexcept { return {-sign, log2mag}; }
    friend LogReal operator+(const LogReal& a, const LogReal& b) noexcept;
    friend LogReal operator-(const LogReal& a, const LogReal& b) noexcept { return a + (-b); }
    friend LogReal operator*(const LogReal& a, const LogReal& b) noexcept;
    friend LogReal operator/(const LogReal& a, const LogReal& b);
    LogReal& operator+=(const LogReal& o) noexcept { return *this = *this + o; }
    LogReal& operator*=(const LogReal& o) noexcept { return *this = *this * o; }
};

// log2(sum 2^{t_i}) for a list of log2 magnitudes, summed from smallest to
// largest relative to the maximum. Empty input gives -inf.
[[nodiscard]] double log2_sum_exp2(std::span<const double> log2_terms);

}  // namespace haar_besov
