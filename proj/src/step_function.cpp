#include <algorithm>
#include <cmath>
#include <map>

#include "haar_besov/dyadic.hpp"
#include "haar_besov/kernels.hpp"
#include "sparse_detail.hpp"

namespace haar_besov {

// ============================================================================
// DyadicStepFunction
// ============================================================================

DyadicStepFunction::DyadicStepFunction(int d, int level, std::vector<double> values)
    : d_(d), level_(level), values_(std::move(values)) {
    if (d < 1 || d > kMaxDim) throw ParameterError("dimension out of range");
    if (level < 0 || static_cast<long>(level) * d > 62) throw ParameterError("level out of range");
    if (values_.size() != (std::size_t{1} << (level * d)))
        throw ParameterError("value count must be 2^(m*d)");
}

DyadicStepFunction DyadicStepFunction::zeros(int d, int level, const Limits& limits) {
    return DyadicStepFunction(d, level, std::vector<double>(checked_cell_count(d, level, limits), 0.0));
}

DyadicStepFunction DyadicStepFunction::constant(int d, double c) { return DyadicStepFunction(d, 0, {c}); }

double DyadicStepFunction::cell_measure() const noexcept { return std::exp2(-static_cast<double>(level_) * d_); }

double DyadicStepFunction::value_at(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(d_)) throw ParameterError("point has wrong dimension");
    const std::uint64_t n = std::uint64_t{1} << level_;
    std::uint64_t flat = 0;
    for (double xj : x) {
        if (!(xj >= 0.0 && xj <= 1.0)) throw ParameterError("point outside the unit cube");
        const auto c = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::floor(xj * static_cast<double>(n))), n - 1);
        flat = (flat << level_) | c;
    }
    return values_[flat];
}

DyadicStepFunction refine(const DyadicStepFunction& f, int m, const Limits& limits) {
    if (m < f.level()) throw ParameterError("refine target below current level");
    if (m == f.level()) return f;
    const int d = f.dim();
    std::vector<double> out(checked_cell_count(d, m, limits));
    const int shift = m - f.level();
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d));
    for (std::uint64_t flat = 0; flat < out.size(); ++flat) {
        coords_from_flat(flat, m, c);
        for (auto& cj : c) cj >>= shift;
        out[flat] = f[flat_from_coords(c, f.level())];
    }
    return DyadicStepFunction(d, m, std::move(out));
}

namespace {

template <class Op>
DyadicStepFunction combine(const DyadicStepFunction& f, const DyadicStepFunction& g, Op op) {
    if (f.dim() != g.dim()) throw ParameterError("dimension mismatch");
    const int m = std::max(f.level(), g.level());
    const Limits unlimited{~std::uint64_t{0}};
    const auto a = refine(f, m, unlimited), b = refine(g, m, unlimited);
    std::vector<double> out(a.cell_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
    return DyadicStepFunction(f.dim(), m, std::move(out));
}

}  // namespace

DyadicStepFunction operator+(const DyadicStepFunction& f, const DyadicStepFunction& g) {
    return combine(f, g, [](double x, double y) { return x + y; });
}

DyadicStepFunction operator-(const DyadicStepFunction& f, const DyadicStepFunction& g) {
    return combine(f, g, [](double x, double y) { return x - y; });
}

DyadicStepFunction operator*(double c, const DyadicStepFunction& f) {
    std::vector<double> out(f.values().begin(), f.values().end());
    for (auto& v : out) v *= c;
    return DyadicStepFunction(f.dim(), f.level(), std::move(out));
}

double max_abs_difference(const DyadicStepFunction& f, const DyadicStepFunction& g) {
    const auto diff = f - g;
    double mx = 0.0;
    for (double v : diff.values()) mx = std::max(mx, std::fabs(v));
    return mx;
}

// ============================================================================
// SparseStepFunction
// ============================================================================

SparseStepFunction::SparseStepFunction(int d, std::vector<Atom> atoms) : d_(d), atoms_(std::move(atoms)) {
    if (d < 1 || d > kMaxDim) throw ParameterError("dimension out of range");
    for (const auto& a : atoms_)
        if (a.cube.dim() != d) throw ParameterError("atom cube dimension mismatch");
}

int SparseStepFunction::max_level() const noexcept {
    int m = 0;
    for (const auto& a : atoms_) m = std::max(m, a.cube.level());
    return m;
}

bool SparseStepFunction::is_nesting_free() const {
    std::vector<const DyadicCube*> cubes;
    for (const auto& a : atoms_) cubes.push_back(&a.cube);
    std::sort(cubes.begin(), cubes.end(), [](auto* x, auto* y) { return preorder_less(*x, *y); });
    // In preorder a containing cube is immediately followed by a cube inside it.
    for (std::size_t i = 1; i < cubes.size(); ++i)
        if (cubes[i - 1]->contains(*cubes[i])) return false;
    return true;
}

// ============================================================================
// Operations
// ============================================================================

DyadicStepFunction densify(const SparseStepFunction& f, int m, const Limits& limits) {
    if (m < f.max_level()) throw ParameterError("densify level below deepest atom");
    std::vector<double> out(checked_cell_count(f.dim(), m, limits), 0.0);
    for (const auto& a : f.atoms()) {
        const double c = detail::coefficient_as_double(a.coefficient);
        a.cube.for_each_cell(m, [&](std::uint64_t flat) { out[flat] += c; });
    }
    return DyadicStepFunction(f.dim(), m, std::move(out));
}

double lp_quasinorm(const DyadicStepFunction& f, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive and finite");
    const double s = kernels::omp::abs_pow_sum(f.values(), p) * f.cell_measure();
    return std::pow(s, 1.0 / p);
}

double log2_lp_quasinorm(const SparseStepFunction& f, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive and finite");
    if (f.is_nesting_free()) {
        std::vector<double> terms;
        terms.reserve(f.atoms().size());
        for (const auto& a : f.atoms())
            if (!a.coefficient.is_zero()) terms.push_back(p * a.coefficient.log2mag + a.cube.log2_measure());
        return log2_sum_exp2(terms) / p;
    }
    const auto h = value_histogram(f, DyadicCube::unit(f.dim()));
    double s = 0.0;
    for (const auto& e : h.entries()) s += e.measure * std::pow(std::fabs(e.value), p);
    return std::log2(s) / p;
}

double lp_quasinorm(const SparseStepFunction& f, double p) { return std::exp2(log2_lp_quasinorm(f, p)); }

DyadicStepFunction average_project(const DyadicStepFunction& f, int k) {
    if (k < 0) throw ParameterError("projection level must be >= 0");
    if (k >= f.level()) return f;
    std::vector<double> out(std::size_t{1} << (k * f.dim()));
    kernels::omp::block_average(f.values(), f.dim(), f.level(), k, out);
    return DyadicStepFunction(f.dim(), k, std::move(out));
}

DyadicStepFunction average_project(const SparseStepFunction& f, int k, const Limits& limits) {
    if (k < 0) throw ParameterError("projection level must be >= 0");
    std::vector<double> out(checked_cell_count(f.dim(), k, limits), 0.0);
    for (const auto& a : f.atoms()) {
        if (a.coefficient.is_zero()) continue;
        if (a.cube.level() <= k) {
            const double c = detail::coefficient_as_double(a.coefficient);
            a.cube.for_each_cell(k, [&](std::uint64_t flat) { out[flat] += c; });
        } else {
            // mean over the level-k ancestor: c * 2^{-(L-k)d}
            const double l2 = a.coefficient.log2mag - static_cast<double>(a.cube.level() - k) * f.dim();
            out[a.cube.ancestor(k).flat_index()] += detail::coefficient_as_double(LogReal::from_log2(l2, a.coefficient.sign));
        }
    }
    return DyadicStepFunction(f.dim(), k, std::move(out));
}

}  // namespace haar_besov
