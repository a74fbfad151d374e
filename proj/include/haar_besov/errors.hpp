#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace haar_besov {

// Invalid argument values (p <= 0, s >= 1/p, empty histogram, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A dense grid would exceed the configured cell budget.
class CapacityError : public std::length_error {
public:
    CapacityError(double log2_required_cells, std::uint64_t budget);

    [[nodiscard]] double log2_required_cells() const noexcept { return log2_required_; }
    [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }

private:
    double log2_required_;
    std::uint64_t budget_;
};

// Operation not defined for this dimension / exponent range.
class UnsupportedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A value that must be materialized as a double is outside double range.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

}  // namespace haar_besov
