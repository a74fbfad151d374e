#include "haar_besov/kernels.hpp"

#include "kernel_detail.hpp"

namespace haar_besov::kernels::serial {

double abs_pow_sum(std::span<const double> v, double p) {
    std::vector<CompensatedSum> parts(detail::chunk_count(v.size()));
    for (std::size_t c = 0; c < parts.size(); ++c) parts[c] = detail::abs_pow_chunk(v, p, c);
    return detail::merge_chunks(parts);
}

void block_average(std::span<const double> fine, int d, int m, int k, std::span<double> coarse) {
    const auto offsets = detail::block_offsets(d, m, k);
    for (std::size_t q = 0; q < coarse.size(); ++q)
        coarse[q] = detail::block_mean(fine, detail::block_base(q, d, m, k), offsets);
}

void haar_analysis_step(std::span<const double> fine, int d, int l, std::span<double> coarse,
                        std::span<double> details) {
    const auto coffs = detail::child_offsets(d, l);
    std::vector<double> buf(coffs.size());
    for (std::size_t q = 0; q < coarse.size(); ++q)
        detail::analysis_parent(fine, d, l, q, coffs, coarse, details, buf);
}

void haar_synthesis_step(std::span<const double> coarse, std::span<const double> details, int d, int l,
                         std::span<double> fine) {
    const auto coffs = detail::child_offsets(d, l);
    std::vector<double> buf(coffs.size());
    for (std::size_t q = 0; q < coarse.size(); ++q)
        detail::synthesis_parent(coarse, details, d, l, q, coffs, fine, buf);
}

void tensor_axis_analysis(std::span<double> data, int d, int m, int axis) {
    const auto lay = detail::fiber_layout(d, m, axis);
    std::vector<double> x(lay.n), tmp(lay.n);
    for (std::uint64_t f = 0; f < lay.count; ++f) detail::transform_fiber(data, lay, f, m, true, x, tmp);
}

void tensor_axis_synthesis(std::span<double> data, int d, int m, int axis) {
    const auto lay = detail::fiber_layout(d, m, axis);
    std::vector<double> x(lay.n), tmp(lay.n);
    for (std::uint64_t f = 0; f < lay.count; ++f) detail::transform_fiber(data, lay, f, m, false, x, tmp);
}

void shift_pow_sums(std::span<const double> v, int d, int m, int radius, double p, std::span<double> out) {
    std::vector<long> a(static_cast<std::size_t>(d));
    for (std::size_t slot = 0; slot < out.size(); ++slot) {
        detail::decode_shift(slot, d, radius, a);
        if (!detail::canonical_shift(a)) continue;
        const double s = detail::shift_sum(v, d, m, a, p);
        out[slot] = s;
        for (auto& aj : a) aj = -aj;
        out[detail::encode_shift(a, radius)] = s;
    }
}

void cube_best_errors(std::span<const double> v, int d, int m, int k, double p, std::span<double> out) {
    const auto offsets = detail::block_offsets(d, m, k);
    std::vector<double> scratch;
    for (std::size_t q = 0; q < out.size(); ++q) out[q] = detail::cube_error(v, d, m, k, p, q, offsets, scratch);
}

}  // namespace haar_besov::kernels::serial
