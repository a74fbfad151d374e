#include "haar_besov/log_real.hpp"

#include <algorithm>
#include <vector>

#include "haar_besov/errors.hpp"
#include "haar_besov/reduce.hpp"

namespace haar_besov {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;

// log2(1 + 2^x) for x <= 0.
double log2_1p_exp2(double x) { return std::log1p(std::exp2(x)) * kInvLn2; }

// log2(1 - 2^x) for x < 0.
double log2_1m_exp2(double x) { return std::log1p(-std::exp2(x)) * kInvLn2; }

}  // namespace

LogReal LogReal::from_log2(double l, int s) noexcept {
    if (s == 0 || l == -std::numeric_limits<double>::infinity()) return {};
    return {s > 0 ? 1 : -1, l};
}

LogReal LogReal::from_double(double x) noexcept {
    if (x == 0.0) return {};
    return {x > 0 ? 1 : -1, std::log2(std::fabs(x))};
}

double LogReal::to_double() const noexcept {
    if (sign == 0) return 0.0;
    return sign * std::exp2(log2mag);
}

LogReal LogReal::abs_pow(double p) const noexcept {
    if (sign == 0) return {};
    return {1, log2mag * p};
}

LogReal operator+(const LogReal& a, const LogReal& b) noexcept {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const LogReal& hi = a.log2mag >= b.log2mag ? a : b;
    const LogReal& lo = a.log2mag >= b.log2mag ? b : a;
    const double diff = lo.log2mag - hi.log2mag;
    if (hi.sign == lo.sign) return {hi.sign, hi.log2mag + log2_1p_exp2(diff)};
    if (diff == 0.0) return {};
    return {hi.sign, hi.log2mag + log2_1m_exp2(diff)};
}

LogReal operator*(const LogReal& a, const LogReal& b) noexcept {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log2mag + b.log2mag};
}

LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.sign == 0) throw ParameterError("LogReal division by zero");
    if (a.sign == 0) return {};
    return {a.sign * b.sign, a.log2mag - b.log2mag};
}

double log2_sum_exp2(std::span<const double> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (double t : terms) top = std::max(top, t);
    if (top == -std::numeric_limits<double>::infinity()) return top;
    std::vector<double> rel;
    rel.reserve(terms.size());
    for (double t : terms) rel.push_back(std::exp2(t - top));
    std::sort(rel.begin(), rel.end());
    CompensatedSum acc;
    for (double r : rel) acc.add(r);
    return top + std::log2(acc.value());
}

}  // namespace haar_besov
