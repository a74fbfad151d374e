#include <bit>
#include <cmath>

#include "haar_besov/haar.hpp"
#include "haar_besov/kernels.hpp"
#include "haar_besov/reduce.hpp"

namespace haar_besov {

namespace {

// h_n at the level-L coordinate c.
int univariate_value(std::uint64_t n, int L, std::uint64_t c) {
    if (n == 1) return 1;
    const int k = TensorHaarIndex::univariate_level(n);
    const std::uint64_t interval = n - (std::uint64_t{1} << (k - 1)) - 1;
    if ((c >> (L - k + 1)) != interval) return 0;
    return ((c >> (L - k)) & 1U) ? -1 : 1;
}

}  // namespace

TensorHaarIndex::TensorHaarIndex(std::vector<std::uint64_t> n) : n_(std::move(n)) {
    if (n_.empty() || n_.size() > static_cast<std::size_t>(kMaxDim)) throw ParameterError("tensor index dimension out of range");
    for (auto v : n_)
        if (v == 0) throw ParameterError("tensor index entries are positive");
}

int TensorHaarIndex::univariate_level(std::uint64_t n) {
    if (n == 0) throw ParameterError("tensor index entries are positive");
    return n == 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

int TensorHaarIndex::level() const {
    int l = 0;
    for (auto v : n_) l = std::max(l, univariate_level(v));
    return l;
}

double TensorHaarIndex::l2_norm_squared() const {
    double e = 0.0;
    for (auto v : n_)
        if (v > 1) e -= univariate_level(v) - 1;
    return std::exp2(e);
}

TensorHaarCoefficients::TensorHaarCoefficients(int d, int m, std::vector<double> values)
    : d_(d), m_(m), values_(std::move(values)) {
    if (d < 1 || d > kMaxDim || m < 0 || static_cast<long>(m) * d > 62) throw ParameterError("bad tensor grid");
    if (values_.size() != (std::size_t{1} << (m * d))) throw ParameterError("tensor coefficient count must be 2^(m*d)");
}

double TensorHaarCoefficients::at(const TensorHaarIndex& t) const {
    if (t.dim() != d_) throw ParameterError("tensor index dimension mismatch");
    std::uint64_t slot = 0;
    for (int j = 0; j < d_; ++j) {
        if (t.n(j) > (std::uint64_t{1} << m_)) return 0.0;
        slot = (slot << m_) | (t.n(j) - 1);
    }
    return values_[slot];
}

TensorHaarIndex TensorHaarCoefficients::index_at(std::size_t slot) const {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d_));
    coords_from_flat(slot, m_, c);
    for (auto& v : c) ++v;
    return TensorHaarIndex(std::move(c));
}

TensorHaarCoefficients tensor_analyze(const DyadicStepFunction& f) {
    std::vector<double> data(f.values().begin(), f.values().end());
    for (int axis = 0; axis < f.dim(); ++axis) kernels::omp::tensor_axis_analysis(data, f.dim(), f.level(), axis);
    return TensorHaarCoefficients(f.dim(), f.level(), std::move(data));
}

DyadicStepFunction tensor_synthesize(const TensorHaarCoefficients& c) {
    std::vector<double> data(c.values().begin(), c.values().end());
    for (int axis = c.dim() - 1; axis >= 0; --axis) kernels::omp::tensor_axis_synthesis(data, c.dim(), c.level(), axis);
    return DyadicStepFunction(c.dim(), c.level(), std::move(data));
}

DyadicStepFunction tensor_haar_function(const TensorHaarIndex& t, int m, const Limits& limits) {
    if (m < t.level()) throw ParameterError("grid level below the tensor index level");
    const int d = t.dim();
    std::vector<double> out(checked_cell_count(d, m, limits));
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d));
    for (std::uint64_t flat = 0; flat < out.size(); ++flat) {
        coords_from_flat(flat, m, c);
        int v = 1;
        for (int j = 0; j < d && v != 0; ++j) v *= univariate_value(t.n(j), m, c[j]);
        out[flat] = v;
    }
    return DyadicStepFunction(d, m, std::move(out));
}

DyadicStepFunction rank_one_project(const DyadicStepFunction& f, const TensorHaarIndex& theta, const Limits& limits) {
    if (theta.dim() != f.dim()) throw ParameterError("tensor index dimension mismatch");
    const int L = std::max(f.level(), theta.level());
    const auto g = refine(f, L, limits);
    const auto th = tensor_haar_function(theta, L, limits);
    CompensatedSum acc;
    for (std::size_t i = 0; i < g.cell_count(); ++i)
        if (th[i] != 0.0) acc.add(g[i] * th[i]);
    const double coef = acc.value() * g.cell_measure() / theta.l2_norm_squared();
    return coef * th;
}

std::vector<TensorHaarIndex> block_order_d2(int d, int k) {
    if (d != 2) throw UnsupportedError("explicit tensor Schauder order is only defined for d = 2");
    if (k < 0 || k > 30) throw ParameterError("block number out of range");
    const std::uint64_t h = std::uint64_t{1} << k;
    std::vector<TensorHaarIndex> out;
    out.reserve(3 * h * h);
    for (std::uint64_t i = 1; i <= h; ++i)
        for (std::uint64_t n = 1; n <= 2 * h; ++n) out.emplace_back(std::vector<std::uint64_t>{h + i, n});
    for (std::uint64_t i = 1; i <= h; ++i)
        for (std::uint64_t n = 1; n <= h; ++n) out.emplace_back(std::vector<std::uint64_t>{n, h + i});
    return out;
}

std::vector<TensorHaarIndex> tensor_block_d2(int b) {
    if (b < 0) throw ParameterError("block number must be >= 0");
    if (b == 0) return {TensorHaarIndex({1, 1})};
    return block_order_d2(2, b - 1);
}

}  // namespace haar_besov
