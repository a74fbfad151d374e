#pragma once

#include <cmath>
#include <string>

#include "haar_besov/errors.hpp"
#include "haar_besov/log_real.hpp"

namespace haar_besov::detail {

// Magnitudes whose log2 exceeds this cannot be carried safely as doubles.
inline constexpr double kDoubleLog2Limit = 1000.0;

inline double coefficient_as_double(const LogReal& c) {
    if (c.is_zero()) return 0.0;
    if (std::fabs(c.log2mag) > kDoubleLog2Limit)
        throw RangeError("coefficient 2^" + std::to_string(c.log2mag) + " outside double range");
    return c.to_double();
}

inline double measure_as_double(double log2_measure) {
    if (log2_measure < -kDoubleLog2Limit)
        throw RangeError("cube measure 2^" + std::to_string(log2_measure) + " outside double range");
    return std::exp2(log2_measure);
}

}  // namespace haar_besov::detail
