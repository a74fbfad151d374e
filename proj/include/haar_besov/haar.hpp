#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "haar_besov/dyadic.hpp"

namespace haar_besov {

// ============================================================================
// Isotropic system H^d
// ============================================================================

// Scaling function chi_{I^d} (level 0), or the wavelet on `parent` whose
// factor along coordinate j is the univariate Haar wavelet when bit j of
// `pattern` is set and the indicator otherwise (level = parent level + 1).
class HaarIndex {
public:
    [[nodiscard]] static HaarIndex scaling(int d);
    [[nodiscard]] static HaarIndex wavelet(DyadicCube parent, std::uint32_t pattern);

    [[nodiscard]] bool is_scaling() const noexcept { return pattern_ == 0; }
    [[nodiscard]] int dim() const noexcept { return support_.dim(); }
    [[nodiscard]] int level() const noexcept { return is_scaling() ? 0 : support_.level() + 1; }
    [[nodiscard]] const DyadicCube& support() const noexcept { return support_; }
    [[nodiscard]] std::uint32_t pattern() const noexcept { return pattern_; }

    friend bool operator==(const HaarIndex& a, const HaarIndex& b) {
        return a.pattern_ == b.pattern_ && a.support_ == b.support_;
    }

private:
    HaarIndex(DyadicCube support, std::uint32_t pattern) : support_(std::move(support)), pattern_(pattern) {}
    DyadicCube support_;
    std::uint32_t pattern_;
};

// 1 for k = 0, (2^d-1) 2^{(k-1)d} otherwise.
[[nodiscard]] std::uint64_t block_size(int d, int k);
// Level-k block in storage order: by parent flat index, then pattern.
[[nodiscard]] std::vector<HaarIndex> block_indices(int d, int k);
// +1 or -1: the wavelet's sign on the child cube with the given child bits.
[[nodiscard]] int haar_sign(std::uint32_t pattern, std::uint32_t child_bits) noexcept;

// lambda_h = int g h / int h^2 for all h of level <= K.
class HaarCoefficients {
public:
    HaarCoefficients(int d, int max_level, const Limits& limits = {});

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int max_level() const noexcept { return static_cast<int>(levels_.size()) - 1; }
    [[nodiscard]] std::span<const double> level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] std::span<double> level(int k) { return levels_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] double at(const HaarIndex& h) const;
    void set(const HaarIndex& h, double value);
    [[nodiscard]] HaarIndex index_at(int k, std::size_t slot) const;

private:
    [[nodiscard]] std::size_t slot_of(const HaarIndex& h) const;
    int d_;
    std::vector<std::vector<double>> levels_;
};

[[nodiscard]] SparseStepFunction haar_function(const HaarIndex& h);
// Cascade analysis with K = level(f).
[[nodiscard]] HaarCoefficients analyze(const DyadicStepFunction& f);
// sum lambda_h h on T_m^d, m >= K.
[[nodiscard]] DyadicStepFunction synthesize(const HaarCoefficients& c, int m, const Limits& limits = {});
// sum_{h in J} theta_h lambda_h(f) h on the grid of f; `signs` empty means all +1.
[[nodiscard]] DyadicStepFunction partial_sum_subset(const DyadicStepFunction& f, std::span<const HaarIndex> J,
                                                    std::span<const int> signs = {});
// All indices of levels in `levels` (ascending), block order.
[[nodiscard]] std::vector<HaarIndex> indices_of_levels(int d, std::span<const int> levels);

// ============================================================================
// Tensor-product system
// ============================================================================

// (n_1, ..., n_d) indexing h_{n_1} x ... x h_{n_d}; h_1 = chi_I and
// h_{2^{k-1}+i} is the Haar wavelet on the i-th level-(k-1) interval.
class TensorHaarIndex {
public:
    explicit TensorHaarIndex(std::vector<std::uint64_t> n);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(n_.size()); }
    [[nodiscard]] std::uint64_t n(int j) const { return n_.at(static_cast<std::size_t>(j)); }
    [[nodiscard]] const std::vector<std::uint64_t>& ns() const noexcept { return n_; }
    // max_j ceil(log2 n_j)
    [[nodiscard]] int level() const;
    [[nodiscard]] static int univariate_level(std::uint64_t n);
    // int theta^2 = prod over wavelet factors of 2^{-(level-1)}
    [[nodiscard]] double l2_norm_squared() const;

    friend bool operator==(const TensorHaarIndex& a, const TensorHaarIndex& b) { return a.n_ == b.n_; }

private:
    std::vector<std::uint64_t> n_;
};

// Coefficients on a level-m grid, row-major in (n_1 - 1, ..., n_d - 1).
class TensorHaarCoefficients {
public:
    TensorHaarCoefficients(int d, int m, std::vector<double> values);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int level() const noexcept { return m_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double at(const TensorHaarIndex& t) const;
    [[nodiscard]] TensorHaarIndex index_at(std::size_t slot) const;

private:
    int d_;
    int m_;
    std::vector<double> values_;
};

[[nodiscard]] TensorHaarCoefficients tensor_analyze(const DyadicStepFunction& f);
[[nodiscard]] DyadicStepFunction tensor_synthesize(const TensorHaarCoefficients& c);
// theta on T_m^d, m >= level(theta).
[[nodiscard]] DyadicStepFunction tensor_haar_function(const TensorHaarIndex& t, int m, const Limits& limits = {});
// (int f theta / int theta^2) theta on the finer of the two grids.
[[nodiscard]] DyadicStepFunction rank_one_project(const DyadicStepFunction& f, const TensorHaarIndex& theta,
                                                  const Limits& limits = {});

// Block k+1 of the d = 2 tensor system in Schauder order: the indices
// (2^k+i, n), i = 1..2^k, n = 1..2^{k+1}, then (n, 2^k+i), i = 1..2^k,
// n = 1..2^k, each lexicographic in (i, n). Other d: UnsupportedError.
[[nodiscard]] std::vector<TensorHaarIndex> block_order_d2(int d, int k);
// Block b >= 0 in the same order; block 0 is [(1,1)].
[[nodiscard]] std::vector<TensorHaarIndex> tensor_block_d2(int b);

}  // namespace haar_besov
