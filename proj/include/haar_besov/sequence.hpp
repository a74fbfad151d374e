#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "haar_besov/dyadic.hpp"
#include "haar_besov/haar.hpp"
#include "haar_besov/params.hpp"

namespace haar_besov {

// Per-level log2 |lambda_h| of the nonzero coefficients, levels 0..K.
class CoefficientBlockView {
public:
    [[nodiscard]] static CoefficientBlockView from_coefficients(const HaarCoefficients& c);
    // Exact Haar coefficients of an atom sum, accumulated in the log domain;
    // works at depths no dense grid can reach. Cost: atoms x depth x (2^d-1).
    [[nodiscard]] static CoefficientBlockView from_sparse(const SparseStepFunction& f);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int max_level() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    // Full block length (zeros included): 1 or (2^d-1) 2^{(k-1)d}, as log2.
    [[nodiscard]] double log2_nominal_length(int k) const;
    [[nodiscard]] std::span<const double> log2_magnitudes(int k) const {
        return levels_.at(static_cast<std::size_t>(k));
    }

private:
    CoefficientBlockView(int d, std::vector<std::vector<double>> levels) : d_(d), levels_(std::move(levels)) {}
    int d_;
    std::vector<std::vector<double>> levels_;
};

// (sum_k (sum_{h in H_k} 2^{k(sp-d)} |lambda_h|^p)^{q/p})^{1/q}; q finite.
[[nodiscard]] double lqlp_norm(const HaarCoefficients& c, const BesovParams& prm);
[[nodiscard]] double lqlp_norm(const CoefficientBlockView& v, const BesovParams& prm);
[[nodiscard]] double log2_lqlp_norm(const CoefficientBlockView& v, const BesovParams& prm);

struct LinfLpResult {
    double value = 0.0;
    // 2^{k(s-d/p)} (sum_{h in H_k} |lambda_h|^p)^{1/p} for k = 0..K
    std::vector<double> per_level;
};

// sup_k of the per-level values; q must be infinite.
[[nodiscard]] LinfLpResult linf_lp_norm(const HaarCoefficients& c, const BesovParams& prm);
[[nodiscard]] LinfLpResult linf_lp_norm(const CoefficientBlockView& v, const BesovParams& prm);

}  // namespace haar_besov
