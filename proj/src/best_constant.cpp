#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "haar_besov/approx.hpp"
#include "haar_besov/reduce.hpp"

namespace haar_besov {

double BesovParams::gamma() const noexcept { return std::min({p, q, 1.0}); }

BesovParams BesovParams::make(double p, double q, double s, int d, bool allow_degenerate) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive and finite");
    if (!(q > 0.0)) throw ParameterError("q must be positive (or infinite)");
    if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("s must be finite and >= 0");
    if (d < 1 || d > kMaxDim) throw ParameterError("d out of range");
    if (!allow_degenerate) {
        const bool ok = q == kInf ? s <= 1.0 / p : s < 1.0 / p;
        if (!ok) throw ParameterError("s must satisfy s < 1/p (the space reduces to constants otherwise)");
    }
    return BesovParams{p, q, s, d};
}

std::string BesovParams::to_string() const {
    std::ostringstream os;
    os << "p=" << p << " q=" << (q_infinite() ? std::string("inf") : std::to_string(q)) << " s=" << s << " d=" << d;
    return os.str();
}

bool nearly_equal(double a, double b) noexcept {
    return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

namespace {

double err_at(const std::vector<HistogramEntry>& e, double xi, double p) {
    CompensatedSum acc;
    for (const auto& x : e) {
        const double a = std::fabs(x.value - xi);
        acc.add(x.measure * (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p)));
    }
    return acc.value();
}

// Derivative (up to the factor p) of xi -> sum w |v - xi|^p for p > 1.
double slope_at(const std::vector<HistogramEntry>& e, double xi, double p) {
    CompensatedSum acc;
    for (const auto& x : e) {
        const double t = xi - x.value;
        if (t != 0.0) acc.add(x.measure * std::copysign(std::pow(std::fabs(t), p - 1.0), t));
    }
    return acc.value();
}

// Exact minimum over the data values for p < 1. Candidates are grouped in
// blocks of consecutive values; every xi in [a, b] costs at least
// sum w dist(v, [a, b])^p, so blocks whose bound exceeds the incumbent are
// skipped. The survivors are evaluated exactly, with ties going to the
// smaller value, so the answer is the same as full enumeration.
BestConstant enumerate_concave(const std::vector<HistogramEntry>& e, double p) {
    const std::size_t n = e.size();
    BestConstant best{e.front().value, std::numeric_limits<double>::infinity()};
    auto consider = [&](const HistogramEntry& x) {
        const double err = err_at(e, x.value, p);
        if (err < best.err_p_power || (err == best.err_p_power && x.value < best.xi)) best = {x.value, err};
    };
    if (n <= 64) {
        for (const auto& x : e) consider(x);
        return best;
    }
    const auto block = std::max<std::size_t>(16, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
    struct Block {
        std::size_t lo, hi;
        double bound;
    };
    std::vector<Block> blocks;
    for (std::size_t lo = 0; lo < n; lo += block) {
        const std::size_t hi = std::min(n, lo + block);
        const double a = e[lo].value, b = e[hi - 1].value;
        CompensatedSum acc;
        for (std::size_t j = 0; j < lo; ++j) acc.add(e[j].measure * std::pow(a - e[j].value, p));
        for (std::size_t j = hi; j < n; ++j) acc.add(e[j].measure * std::pow(e[j].value - b, p));
        blocks.push_back({lo, hi, acc.value()});
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.bound < y.bound; });
    for (const auto& bl : blocks) {
        // the margin absorbs rounding in both sums
        if (bl.bound * (1.0 - 1e-9) > best.err_p_power) break;
        for (std::size_t i = bl.lo; i < bl.hi; ++i) consider(e[i]);
    }
    return best;
}

}  // namespace

BestConstant best_constant_error(const ValueHistogram& h, double p) {
    if (h.empty()) throw ParameterError("best constant of an empty histogram");
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive and finite");
    const auto& e = h.entries();
    if (e.size() == 1) return {e.front().value, 0.0};
    const double total = h.total_measure();

    if (p == 2.0) {
        CompensatedSum num;
        for (const auto& x : e) num.add(x.measure * x.value);
        const double xi = num.value() / total;
        return {xi, err_at(e, xi, p)};
    }
    if (p == 1.0) {
        // smallest value whose cumulative mass reaches half the total
        CompensatedSum cum;
        for (const auto& x : e) {
            cum.add(x.measure);
            if (2.0 * cum.value() >= total) return {x.value, err_at(e, x.value, p)};
        }
        return {e.back().value, err_at(e, e.back().value, p)};
    }
    if (p < 1.0) {
        for (const auto& x : e)
            if (2.0 * x.measure >= total) return {x.value, err_at(e, x.value, p)};
        return enumerate_concave(e, p);
    }
    // p > 1: the derivative is increasing; bisect on [min, max].
    double lo = e.front().value, hi = e.back().value;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max({1.0, std::fabs(lo), std::fabs(hi)}); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (slope_at(e, mid, p) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double a = err_at(e, lo, p), b = err_at(e, hi, p);
    return a <= b ? BestConstant{lo, a} : BestConstant{hi, b};
}

}  // namespace haar_besov
