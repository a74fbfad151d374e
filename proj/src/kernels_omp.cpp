#include "haar_besov/kernels.hpp"

#include <cstdint>

#include "kernel_detail.hpp"

namespace haar_besov::kernels::omp {

namespace {
using Index = std::int64_t;
Index as_index(std::size_t n) { return static_cast<Index>(n); }
}  // namespace

double abs_pow_sum(std::span<const double> v, double p) {
    std::vector<CompensatedSum> parts(detail::chunk_count(v.size()));
    const Index n = as_index(parts.size());
#pragma omp parallel for schedule(static)
    for (Index c = 0; c < n; ++c) parts[c] = detail::abs_pow_chunk(v, p, static_cast<std::size_t>(c));
    return detail::merge_chunks(parts);
}

void block_average(std::span<const double> fine, int d, int m, int k, std::span<double> coarse) {
    const auto offsets = detail::block_offsets(d, m, k);
    const Index n = as_index(coarse.size());
#pragma omp parallel for schedule(static)
    for (Index q = 0; q < n; ++q)
        coarse[q] = detail::block_mean(fine, detail::block_base(static_cast<std::uint64_t>(q), d, m, k), offsets);
}

void haar_analysis_step(std::span<const double> fine, int d, int l, std::span<double> coarse,
                        std::span<double> details) {
    const auto coffs = detail::child_offsets(d, l);
    const Index n = as_index(coarse.size());
#pragma omp parallel
    {
        std::vector<double> buf(coffs.size());
#pragma omp for schedule(static)
        for (Index q = 0; q < n; ++q)
            detail::analysis_parent(fine, d, l, static_cast<std::uint64_t>(q), coffs, coarse, details, buf);
    }
}

void haar_synthesis_step(std::span<const double> coarse, std::span<const double> details, int d, int l,
                         std::span<double> fine) {
    const auto coffs = detail::child_offsets(d, l);
    const Index n = as_index(coarse.size());
#pragma omp parallel
    {
        std::vector<double> buf(coffs.size());
#pragma omp for schedule(static)
        for (Index q = 0; q < n; ++q)
            detail::synthesis_parent(coarse, details, d, l, static_cast<std::uint64_t>(q), coffs, fine, buf);
    }
}

namespace {
void axis_transform(std::span<double> data, int d, int m, int axis, bool forward) {
    const auto lay = detail::fiber_layout(d, m, axis);
    const Index n = static_cast<Index>(lay.count);
#pragma omp parallel
    {
        std::vector<double> x(lay.n), tmp(lay.n);
#pragma omp for schedule(static)
        for (Index f = 0; f < n; ++f)
            detail::transform_fiber(data, lay, static_cast<std::uint64_t>(f), m, forward, x, tmp);
    }
}
}  // namespace

void tensor_axis_analysis(std::span<double> data, int d, int m, int axis) {
    axis_transform(data, d, m, axis, true);
}

void tensor_axis_synthesis(std::span<double> data, int d, int m, int axis) {
    axis_transform(data, d, m, axis, false);
}

void shift_pow_sums(std::span<const double> v, int d, int m, int radius, double p, std::span<double> out) {
    const Index n = as_index(out.size());
#pragma omp parallel
    {
        std::vector<long> a(static_cast<std::size_t>(d));
#pragma omp for schedule(dynamic, 8)
        for (Index slot = 0; slot < n; ++slot) {
            detail::decode_shift(static_cast<std::size_t>(slot), d, radius, a);
            if (!detail::canonical_shift(a)) continue;
            const double s = detail::shift_sum(v, d, m, a, p);
            out[slot] = s;
            for (auto& aj : a) aj = -aj;
            out[detail::encode_shift(a, radius)] = s;
        }
    }
}

void cube_best_errors(std::span<const double> v, int d, int m, int k, double p, std::span<double> out) {
    const auto offsets = detail::block_offsets(d, m, k);
    const Index n = as_index(out.size());
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(dynamic, 1)
        for (Index q = 0; q < n; ++q)
            out[q] = detail::cube_error(v, d, m, k, p, static_cast<std::uint64_t>(q), offsets, scratch);
    }
}

}  // namespace haar_besov::kernels::omp
