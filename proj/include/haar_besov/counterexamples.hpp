#pragma once

#include <optional>
#include <string>
#include <vector>

#include "haar_besov/dyadic.hpp"
#include "haar_besov/haar.hpp"
#include "haar_besov/params.hpp"

namespace haar_besov {

// Largest index counts the closed-form evaluators accept.
inline constexpr int kMaxClosedFormLevels = 1 << 14;
inline constexpr int kMaxScatteredLog2Atoms = 20;

// ============================================================================
// Nested cubes: f_m = sum_{l=0}^m a_l chi_{Delta_l}
// ============================================================================

enum class NestedRule {
    TrivialDual,  // a_l = 2^{ld} / (l+1)
    Alternating,  // a_l = (-1)^l 2^{ld}
    Explicit,
};

struct NestedSpec {
    int d = 1;
    int m = 0;
    NestedRule rule = NestedRule::TrivialDual;
    std::vector<double> coefficients;  // Explicit rule: a_0 .. a_m
    std::vector<DyadicCube> chain;     // empty: lower-corner chain

    [[nodiscard]] LogReal coefficient(int l) const;
    [[nodiscard]] DyadicCube cube(int l) const;
    void validate() const;
};

[[nodiscard]] SparseStepFunction nested_family(const NestedSpec& spec);

// Everything as log2 of the value (-inf for zero).
struct NestedClosedForm {
    double log2_lp_norm = 0.0;
    std::vector<double> log2_errors;  // E_k, k = 0..m (E_m = 0)
    double log2_a_norm = 0.0;
    double log2_l1_norm = 0.0;

    [[nodiscard]] double lp_norm() const;
    [[nodiscard]] double error(int k) const;
    [[nodiscard]] double a_norm() const;
    [[nodiscard]] double l1_norm() const;
};

// Exact norms for p <= 1, where the best constant on Delta_k is xi_k.
// p > 1: UnsupportedError.
[[nodiscard]] NestedClosedForm nested_closed_form(const NestedSpec& spec, const BesovParams& prm);

// ============================================================================
// Spike f_m = 2^{md} chi_{[0,2^-m)^d} and even-block partial sums
// ============================================================================

[[nodiscard]] SparseStepFunction spike(int m, int d);
// g_{2k} = sum_{l=0}^{2k} (-1)^l 2^{ld} chi_{Delta_l}
[[nodiscard]] SparseStepFunction spike_partial_sum(int k, int d);
// Haar indices of the blocks 0, 2, ..., 2k.
[[nodiscard]] std::vector<HaarIndex> even_block_indices(int k, int d);

struct SpikePair {
    SparseStepFunction f;
    std::vector<SparseStepFunction> g;  // g[k] = g_{2k}, 2k <= m
};
[[nodiscard]] SpikePair spike_pair(int m, int d);

struct SpikeClosedForm {
    double log2_lp_norm = 0.0;
    double log2_a_norm = 0.0;
};
// p <= 1: E_k(f_m) = |f_m|_p for every k < m.
[[nodiscard]] SpikeClosedForm spike_closed_form(int m, const BesovParams& prm);

// ============================================================================
// Scattered deep atoms below half of the level-k cubes
// ============================================================================

struct ScatteredSpec {
    int k = 1;
    int d = 1;
    double alpha = 0.5;
    void validate() const;
    [[nodiscard]] std::uint64_t atom_count() const;  // 2^{kd-1}
};

// T': in each level-(k-1) parent (row-major) the children whose first
// coordinate bit is 0, in child order.
[[nodiscard]] std::vector<DyadicCube> scattered_selection(int k, int d);
// atoms (Delta_i, 2^{(k+i)d} i^{-alpha}), Delta_i the lower corner of the
// i-th selected cube at level k+i.
[[nodiscard]] SparseStepFunction scattered(const ScatteredSpec& spec);

struct ScatteredClosedForm {
    std::vector<double> log2_errors_f;   // E_l(f_k), l = 0 .. k+N-1
    std::vector<double> log2_errors_pf;  // E_l(P_k f_k), l = 0 .. k-1
    double log2_lp_f = 0.0;
    double log2_lp_pf = 0.0;
    double log2_a_f = 0.0;
    double log2_a_pf = 0.0;
    [[nodiscard]] double log2_ratio() const { return log2_a_pf - log2_a_f; }
    [[nodiscard]] double ratio() const;
};

// p < 1 (Lemma-2 cube analysis). prm.s is used as given.
[[nodiscard]] ScatteredClosedForm scattered_closed_norms(const ScatteredSpec& spec, const BesovParams& prm);

// ============================================================================
// Tensor spike: f_k = chi_{[0,2^-k)^d} against theta_k = h_{2^{k-1}+1} x chi x ...
// ============================================================================

[[nodiscard]] TensorHaarIndex tensor_spike_theta(int k, int d);

struct TensorSpikeClosedForm {
    double coefficient = 0.0;               // int f theta / int theta^2 = 2^{k-1-kd}
    double log2_lp_f = 0.0;
    double log2_lp_theta = 0.0;
    std::vector<double> log2_errors_f;      // l = 0..k-1
    std::vector<double> log2_errors_theta;  // l = 0..k-1
    double log2_a_f = 0.0;
    double log2_a_projection = 0.0;         // a-norm of coefficient * theta
    [[nodiscard]] double log2_ratio() const { return log2_a_projection - log2_a_f; }
    [[nodiscard]] double ratio() const;
};

// d >= 2, k >= 1, p <= 1.
[[nodiscard]] TensorSpikeClosedForm tensor_spike_closed_form(int k, const BesovParams& prm);

struct TensorSpikePair {
    DyadicStepFunction f;
    TensorHaarIndex theta;
    DyadicStepFunction projection;
};
// Dense functions on T_k^d.
[[nodiscard]] TensorSpikePair tensor_spike_pair(int k, int d, const Limits& limits = {});

[[nodiscard]] std::string_view to_string(NestedRule r);
[[nodiscard]] std::optional<NestedRule> nested_rule_from_string(std::string_view s);

}  // namespace haar_besov
