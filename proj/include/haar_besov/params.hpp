#pragma once

#include <limits>
#include <string>

namespace haar_besov {

// (p, q, s, d). q may be kInf. Construction checks s < 1/p for finite q
// (s <= 1/p for q = kInf); allow_degenerate lifts that bound.
struct BesovParams {
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    double p = 1.0;
    double q = 1.0;
    double s = 0.0;
    int d = 1;

    [[nodiscard]] static BesovParams make(double p, double q, double s, int d,
                                          bool allow_degenerate = false);

    [[nodiscard]] bool q_infinite() const noexcept { return q == kInf; }
    // min(p, q, 1)
    [[nodiscard]] double gamma() const noexcept;
    // d(1/p - 1), the critical smoothness for p < 1.
    [[nodiscard]] double critical_s() const noexcept { return d * (1.0 / p - 1.0); }
    [[nodiscard]] std::string to_string() const;
};

// Equality used for the boundary lines s = d(1/p-1): relative 1e-12.
[[nodiscard]] bool nearly_equal(double a, double b) noexcept;

}  // namespace haar_besov
