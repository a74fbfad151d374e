#pragma once

#include <cmath>
#include <cstddef>

namespace haar_besov {

// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void merge(const CompensatedSum& o) noexcept {
        add(o.sum_);
        add(o.comp_);
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Reductions are split into chunks of this many items; chunk partials are
// merged in chunk order. The split does not depend on the thread count, so
// serial and parallel reductions return identical bits.
inline constexpr std::size_t kReduceChunk = 4096;

}  // namespace haar_besov
