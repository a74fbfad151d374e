#include <algorithm>
#include <cmath>
#include <map>

#include "haar_besov/sequence.hpp"

namespace haar_besov {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Sums of contributions smaller than this fraction of their largest term
// are cancellation residue and are dropped.
constexpr double kLog2CancelFloor = -42.0;

struct BlockKey {
    DyadicCube parent;
    std::uint32_t pattern;
};

struct BlockKeyLess {
    bool operator()(const BlockKey& a, const BlockKey& b) const {
        CubeKeyLess less;
        if (less(a.parent, b.parent)) return true;
        if (less(b.parent, a.parent)) return false;
        return a.pattern < b.pattern;
    }
};

struct Accum {
    LogReal sum;
    double top = kNegInf;
    void add(const LogReal& x) {
        sum += x;
        top = std::max(top, x.log2mag);
    }
    [[nodiscard]] bool significant() const { return !sum.is_zero() && sum.log2mag - top > kLog2CancelFloor; }
};

void check_p(const BesovParams& prm) {
    if (!(prm.p > 0.0)) throw ParameterError("p must be positive");
}

// log2 sum_h |lambda_h|^p per level.
std::vector<double> level_log2_pow_sums(const CoefficientBlockView& v, double p) {
    std::vector<double> out;
    std::vector<double> terms;
    for (int k = 0; k <= v.max_level(); ++k) {
        const auto mags = v.log2_magnitudes(k);
        terms.assign(mags.begin(), mags.end());
        for (auto& t : terms) t *= p;
        out.push_back(log2_sum_exp2(terms));
    }
    return out;
}

}  // namespace

CoefficientBlockView CoefficientBlockView::from_coefficients(const HaarCoefficients& c) {
    std::vector<std::vector<double>> levels;
    for (int k = 0; k <= c.max_level(); ++k) {
        std::vector<double> mags;
        for (double x : c.level(k))
            if (x != 0.0) mags.push_back(std::log2(std::fabs(x)));
        levels.push_back(std::move(mags));
    }
    return CoefficientBlockView(c.dim(), std::move(levels));
}

CoefficientBlockView CoefficientBlockView::from_sparse(const SparseStepFunction& f) {
    const int d = f.dim();
    const std::uint32_t npat = (1U << d) - 1;
    Accum scaling;
    std::map<BlockKey, Accum, BlockKeyLess> blocks;
    for (const auto& a : f.atoms()) {
        if (a.coefficient.is_zero()) continue;
        const int L = a.cube.level();
        scaling.add(LogReal::from_log2(a.coefficient.log2mag + a.cube.log2_measure(), a.coefficient.sign));
        for (int l = 1; l <= L; ++l) {
            const auto child = a.cube.ancestor(l);
            const auto bits = child.child_bits();
            auto parent = child.parent();
            // lambda = c * sign * 2^{-d} 2^{-(L-l)d}
            const double mag = a.coefficient.log2mag - static_cast<double>(L - l + 1) * d;
            for (std::uint32_t e = 1; e <= npat; ++e)
                blocks[BlockKey{parent, e}].add(LogReal::from_log2(mag, a.coefficient.sign * haar_sign(e, bits)));
        }
    }
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(f.max_level()) + 1);
    if (scaling.significant()) levels[0].push_back(scaling.sum.log2mag);
    for (const auto& [key, acc] : blocks)
        if (acc.significant()) levels[static_cast<std::size_t>(key.parent.level()) + 1].push_back(acc.sum.log2mag);
    return CoefficientBlockView(d, std::move(levels));
}

double CoefficientBlockView::log2_nominal_length(int k) const {
    if (k < 0 || k > max_level()) throw ParameterError("level out of range");
    if (k == 0) return 0.0;
    return std::log2(std::exp2(d_) - 1.0) + static_cast<double>(k - 1) * d_;
}

double log2_lqlp_norm(const CoefficientBlockView& v, const BesovParams& prm) {
    check_p(prm);
    if (prm.q_infinite()) throw ParameterError("lqlp norm needs a finite q; use linf_lp_norm");
    const auto sums = level_log2_pow_sums(v, prm.p);
    std::vector<double> terms;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        if (sums[k] == kNegInf) continue;
        const double weight = static_cast<double>(k) * (prm.s * prm.p - v.dim());
        terms.push_back((weight + sums[k]) * prm.q / prm.p);
    }
    return log2_sum_exp2(terms) / prm.q;
}

double lqlp_norm(const CoefficientBlockView& v, const BesovParams& prm) { return std::exp2(log2_lqlp_norm(v, prm)); }

double lqlp_norm(const HaarCoefficients& c, const BesovParams& prm) {
    return lqlp_norm(CoefficientBlockView::from_coefficients(c), prm);
}

LinfLpResult linf_lp_norm(const CoefficientBlockView& v, const BesovParams& prm) {
    check_p(prm);
    if (!prm.q_infinite()) throw ParameterError("linf_lp_norm needs q = inf");
    const auto sums = level_log2_pow_sums(v, prm.p);
    LinfLpResult r;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        const double l2 = static_cast<double>(k) * (prm.s - v.dim() / prm.p) + sums[k] / prm.p;
        r.per_level.push_back(std::exp2(l2));
        r.value = std::max(r.value, r.per_level.back());
    }
    return r;
}

LinfLpResult linf_lp_norm(const HaarCoefficients& c, const BesovParams& prm) {
    return linf_lp_norm(CoefficientBlockView::from_coefficients(c), prm);
}

}  // namespace haar_besov
