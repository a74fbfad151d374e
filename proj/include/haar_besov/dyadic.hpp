#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "haar_besov/errors.hpp"
#include "haar_besov/log_real.hpp"

namespace haar_besov {

// Cube indices are arbitrary precision: sparse atoms can sit at levels in
// the thousands.
using BigIndex = boost::multiprecision::cpp_int;

inline constexpr int kMaxDim = 16;

struct Limits {
    std::uint64_t max_cells = std::uint64_t{1} << 26;
};

// 2^{level*d}, or CapacityError when above the budget.
[[nodiscard]] std::uint64_t checked_cell_count(int d, int level, const Limits& limits = {});

// Row-major flat index of a multi-index at a level (coordinate 0 most significant).
[[nodiscard]] std::uint64_t flat_from_coords(std::span<const std::uint64_t> coords, int level);
void coords_from_flat(std::uint64_t flat, int level, std::span<std::uint64_t> coords);

// ============================================================================
// DyadicCube: prod_j [i_j 2^-k, (i_j+1) 2^-k)
// ============================================================================

class DyadicCube {
public:
    DyadicCube(int d, int level, std::vector<BigIndex> index);

    [[nodiscard]] static DyadicCube unit(int d);
    [[nodiscard]] static DyadicCube from_flat(int d, int level, std::uint64_t flat);
    [[nodiscard]] static DyadicCube from_coords(int d, int level, std::span<const std::uint64_t> coords);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] const std::vector<BigIndex>& index() const noexcept { return index_; }
    [[nodiscard]] const BigIndex& index(int j) const { return index_.at(static_cast<std::size_t>(j)); }

    [[nodiscard]] double log2_measure() const noexcept { return -static_cast<double>(level_) * d_; }
    // Underflows to 0 for very deep cubes; use log2_measure there.
    [[nodiscard]] double measure() const noexcept;

    // Non-strict containment (a cube contains itself).
    [[nodiscard]] bool contains(const DyadicCube& other) const;
    [[nodiscard]] DyadicCube ancestor(int level) const;
    [[nodiscard]] DyadicCube parent() const;
    // Bit j of `bits` is the child bit along coordinate j.
    [[nodiscard]] DyadicCube child(std::uint32_t bits) const;
    [[nodiscard]] std::uint32_t child_bits() const;
    [[nodiscard]] DyadicCube lower_corner_descendant(int level) const;

    // Requires level*d <= 62.
    [[nodiscard]] std::uint64_t flat_index() const;
    [[nodiscard]] std::vector<std::uint64_t> coords() const;

    // Calls fn(flat) for every level-m cell inside this cube, in row-major order.
    void for_each_cell(int m, const std::function<void(std::uint64_t)>& fn) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const DyadicCube& a, const DyadicCube& b) {
        return a.d_ == b.d_ && a.level_ == b.level_ && a.index_ == b.index_;
    }

private:
    int d_;
    int level_;
    std::vector<BigIndex> index_;
};

// Depth-first preorder on the dyadic tree: ancestors precede descendants,
// subtrees are contiguous. Children are visited in lexicographic order of
// their coordinate-bit tuples.
[[nodiscard]] bool preorder_less(const DyadicCube& a, const DyadicCube& b);

// Plain strict weak order (level, then index) for use as a map key.
struct CubeKeyLess {
    bool operator()(const DyadicCube& a, const DyadicCube& b) const;
};

// ============================================================================
// Step functions
// ============================================================================

// Values on T_m^d, row-major.
class DyadicStepFunction {
public:
    DyadicStepFunction(int d, int level, std::vector<double> values);

    [[nodiscard]] static DyadicStepFunction zeros(int d, int level, const Limits& limits = {});
    [[nodiscard]] static DyadicStepFunction constant(int d, double c);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int level() const noexcept { return level_; }
    [[nodiscard]] std::size_t cell_count() const noexcept { return values_.size(); }
    [[nodiscard]] double cell_measure() const noexcept;
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t flat) const { return values_[flat]; }
    // x in [0,1]^d; the right boundary 1 belongs to the last cell.
    [[nodiscard]] double value_at(std::span<const double> x) const;

private:
    int d_;
    int level_;
    std::vector<double> values_;
};

[[nodiscard]] DyadicStepFunction refine(const DyadicStepFunction& f, int m, const Limits& limits = {});
[[nodiscard]] DyadicStepFunction operator+(const DyadicStepFunction& f, const DyadicStepFunction& g);
[[nodiscard]] DyadicStepFunction operator-(const DyadicStepFunction& f, const DyadicStepFunction& g);
[[nodiscard]] DyadicStepFunction operator*(double c, const DyadicStepFunction& f);
[[nodiscard]] double max_abs_difference(const DyadicStepFunction& f, const DyadicStepFunction& g);

struct Atom {
    DyadicCube cube;
    LogReal coefficient;
};

// sum_i c_i chi_{Delta_i}; atoms may nest and repeat.
class SparseStepFunction {
public:
    SparseStepFunction(int d, std::vector<Atom> atoms);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] int max_level() const noexcept;
    [[nodiscard]] bool is_nesting_free() const;

private:
    int d_;
    std::vector<Atom> atoms_;
};

// ============================================================================
// Histograms
// ============================================================================

struct HistogramEntry {
    double value;
    double measure;
};

// Sorted by value, no duplicates, positive measures.
class ValueHistogram {
public:
    ValueHistogram() = default;
    // Sorts and merges equal values; drops zero measures.
    explicit ValueHistogram(std::vector<HistogramEntry> entries);

    [[nodiscard]] const std::vector<HistogramEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] double total_measure() const;

private:
    std::vector<HistogramEntry> entries_;
};

// ============================================================================
// Operations
// ============================================================================

[[nodiscard]] DyadicStepFunction densify(const SparseStepFunction& f, int m, const Limits& limits = {});

[[nodiscard]] double lp_quasinorm(const DyadicStepFunction& f, double p);
// Nesting-free atoms are summed in the log domain without densifying; other
// inputs go through the value histogram of the unit cube.
[[nodiscard]] double lp_quasinorm(const SparseStepFunction& f, double p);
[[nodiscard]] double log2_lp_quasinorm(const SparseStepFunction& f, double p);

// Level-k averages. For k >= level(f) the input is returned unchanged.
[[nodiscard]] DyadicStepFunction average_project(const DyadicStepFunction& f, int k);
[[nodiscard]] DyadicStepFunction average_project(const SparseStepFunction& f, int k,
                                                 const Limits& limits = {});

[[nodiscard]] ValueHistogram value_histogram(const DyadicStepFunction& f, const DyadicCube& cube);
// Built from the atom containment tree. Coefficients and measures are
// materialized as doubles; RangeError when that is impossible.
[[nodiscard]] ValueHistogram value_histogram(const SparseStepFunction& f, const DyadicCube& cube);

}  // namespace haar_besov
