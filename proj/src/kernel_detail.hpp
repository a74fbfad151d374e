#pragma once

// Per-item bodies shared by kernels_serial.cpp and kernels_omp.cpp. The two
// drivers differ only in whether the outer loop carries an omp pragma.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "haar_besov/approx.hpp"
#include "haar_besov/dyadic.hpp"
#include "haar_besov/reduce.hpp"

namespace haar_besov::kernels::detail {

inline std::size_t chunk_count(std::size_t n) { return (n + kReduceChunk - 1) / kReduceChunk; }

inline double pow_abs(double x, double p) {
    const double a = std::fabs(x);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    return std::pow(a, p);
}

inline CompensatedSum abs_pow_chunk(std::span<const double> v, double p, std::size_t chunk) {
    CompensatedSum acc;
    const std::size_t lo = chunk * kReduceChunk;
    const std::size_t hi = std::min(v.size(), lo + kReduceChunk);
    for (std::size_t i = lo; i < hi; ++i) acc.add(pow_abs(v[i], p));
    return acc;
}

inline double merge_chunks(std::span<const CompensatedSum> parts) {
    CompensatedSum total;
    for (const auto& c : parts) total.merge(c);
    return total.value();
}

// Mixed-radix odometer over [0, side)^d.
inline bool next_offset(std::vector<std::uint64_t>& r, std::uint64_t side) {
    for (std::size_t j = r.size(); j-- > 0;) {
        if (++r[j] < side) return true;
        r[j] = 0;
    }
    return false;
}

inline std::uint64_t block_base(std::uint64_t coarse_flat, int d, int m, int k) {
    std::array<std::uint64_t, kMaxDim> c{};
    coords_from_flat(coarse_flat, k, std::span(c.data(), static_cast<std::size_t>(d)));
    for (int j = 0; j < d; ++j) c[j] <<= (m - k);
    return flat_from_coords(std::span<const std::uint64_t>(c.data(), static_cast<std::size_t>(d)), m);
}

// Flat offsets (relative to the block's lower corner) of every level-m cell
// in a level-k cube, row-major.
inline std::vector<std::uint64_t> block_offsets(int d, int m, int k) {
    const std::uint64_t side = std::uint64_t{1} << (m - k);
    std::vector<std::uint64_t> r(static_cast<std::size_t>(d), 0);
    std::vector<std::uint64_t> out;
    do {
        out.push_back(flat_from_coords(r, m));
    } while (next_offset(r, side));
    return out;
}

inline double block_mean(std::span<const double> fine, std::uint64_t base,
                         std::span<const std::uint64_t> offsets) {
    CompensatedSum acc;
    for (auto o : offsets) acc.add(fine[base + o]);
    return acc.value() / static_cast<double>(offsets.size());
}

// Offsets of the 2^d children of a level-(l-1) parent inside the level-l grid.
inline std::vector<std::uint64_t> child_offsets(int d, int l) {
    const std::size_t nc = std::size_t{1} << d;
    std::vector<std::uint64_t> out(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        std::uint64_t off = 0;
        for (int j = 0; j < d; ++j)
            if ((c >> j) & 1U) off += std::uint64_t{1} << (l * (d - 1 - j));
        out[c] = off;
    }
    return out;
}

// Walsh butterflies: x[c] for child bits c -> x[e] for pattern e, where
// x[0] is the mean and x[e] = 2^-d sum_c (-1)^{<c,e>} x[c].
inline void local_forward(std::span<double> x, int d) {
    const std::size_t n = x.size();
    for (int j = 0; j < d; ++j) {
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t e = 0; e < n; ++e) {
            if (e & bit) continue;
            const double a = x[e], b = x[e | bit];
            x[e] = 0.5 * (a + b);
            x[e | bit] = 0.5 * (a - b);
        }
    }
}

inline void local_inverse(std::span<double> x, int d) {
    const std::size_t n = x.size();
    for (int j = 0; j < d; ++j) {
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t e = 0; e < n; ++e) {
            if (e & bit) continue;
            const double a = x[e], b = x[e | bit];
            x[e] = a + b;
            x[e | bit] = a - b;
        }
    }
}

inline void analysis_parent(std::span<const double> fine, int d, int l, std::uint64_t parent,
                            std::span<const std::uint64_t> coffs, std::span<double> coarse,
                            std::span<double> details, std::span<double> buf) {
    const std::uint64_t base = block_base(parent, d, l, l - 1);
    for (std::size_t c = 0; c < coffs.size(); ++c) buf[c] = fine[base + coffs[c]];
    local_forward(buf, d);
    coarse[parent] = buf[0];
    const std::size_t np = coffs.size() - 1;
    for (std::size_t e = 1; e < coffs.size(); ++e) details[parent * np + e - 1] = buf[e];
}

inline void synthesis_parent(std::span<const double> coarse, std::span<const double> details, int d,
                             int l, std::uint64_t parent, std::span<const std::uint64_t> coffs,
                             std::span<double> fine, std::span<double> buf) {
    const std::size_t np = coffs.size() - 1;
    buf[0] = coarse[parent];
    for (std::size_t e = 1; e < coffs.size(); ++e) buf[e] = details[parent * np + e - 1];
    local_inverse(buf, d);
    const std::uint64_t base = block_base(parent, d, l, l - 1);
    for (std::size_t c = 0; c < coffs.size(); ++c) fine[base + coffs[c]] = buf[c];
}

// Univariate transform of one fiber: position n-1 holds the coefficient of
// h_n (n = 1 the mean, n = 2^{k-1}+i the wavelet on the i-th level-(k-1) interval).
inline void fiber_forward(std::span<double> x, int m, std::span<double> tmp) {
    for (int l = m; l >= 1; --l) {
        const std::size_t half = std::size_t{1} << (l - 1);
        for (std::size_t i = 0; i < half; ++i) {
            const double a = x[2 * i], b = x[2 * i + 1];
            tmp[i] = 0.5 * (a + b);
            tmp[half + i] = 0.5 * (a - b);
        }
        std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(2 * half), x.begin());
    }
}

inline void fiber_inverse(std::span<double> x, int m, std::span<double> tmp) {
    for (int l = 1; l <= m; ++l) {
        const std::size_t half = std::size_t{1} << (l - 1);
        for (std::size_t i = 0; i < half; ++i) {
            tmp[2 * i] = x[i] + x[half + i];
            tmp[2 * i + 1] = x[i] - x[half + i];
        }
        std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(2 * half), x.begin());
    }
}

struct FiberLayout {
    std::uint64_t n;       // 2^m
    std::uint64_t stride;  // 2^{m(d-1-axis)}
    std::uint64_t count;   // 2^{m(d-1)}
    [[nodiscard]] std::uint64_t base(std::uint64_t fiber) const {
        const std::uint64_t before = fiber / stride, after = fiber % stride;
        return before * stride * n + after;
    }
};

inline FiberLayout fiber_layout(int d, int m, int axis) {
    const std::uint64_t n = std::uint64_t{1} << m;
    return {n, std::uint64_t{1} << (m * (d - 1 - axis)), std::uint64_t{1} << (m * (d - 1))};
}

inline void transform_fiber(std::span<double> data, const FiberLayout& lay, std::uint64_t fiber, int m,
                            bool forward, std::span<double> x, std::span<double> tmp) {
    const std::uint64_t b = lay.base(fiber);
    for (std::uint64_t i = 0; i < lay.n; ++i) x[i] = data[b + i * lay.stride];
    if (forward)
        fiber_forward(x, m, tmp);
    else
        fiber_inverse(x, m, tmp);
    for (std::uint64_t i = 0; i < lay.n; ++i) data[b + i * lay.stride] = x[i];
}

// Shift a (cell units) decoded from its row-major slot in [-r, r]^d.
inline void decode_shift(std::size_t slot, int d, int r, std::span<long> a) {
    const std::size_t side = static_cast<std::size_t>(2 * r + 1);
    for (int j = d - 1; j >= 0; --j) {
        a[j] = static_cast<long>(slot % side) - r;
        slot /= side;
    }
}

inline std::size_t encode_shift(std::span<const long> a, int r) {
    const std::size_t side = static_cast<std::size_t>(2 * r + 1);
    std::size_t slot = 0;
    for (long aj : a) slot = slot * side + static_cast<std::size_t>(aj + r);
    return slot;
}

// sum over cells x with x+a inside the grid of |v(x+a) - v(x)|^p.
inline double shift_sum(std::span<const double> v, int d, int m, std::span<const long> a, double p) {
    const long n = long{1} << m;
    std::array<long, kMaxDim> lo{}, hi{}, x{};
    for (int j = 0; j < d; ++j) {
        lo[j] = std::max(0L, -a[j]);
        hi[j] = std::min(n, n - a[j]);
        if (lo[j] >= hi[j]) return 0.0;
        x[j] = lo[j];
    }
    long delta = 0;  // flat offset of the shift
    for (int j = 0; j < d; ++j) delta = delta * n + a[j];
    CompensatedSum acc;
    for (;;) {
        long flat = 0;
        for (int j = 0; j < d; ++j) flat = flat * n + x[j];
        // innermost axis handled as a contiguous run
        const long run = hi[d - 1] - lo[d - 1];
        for (long t = 0; t < run; ++t)
            acc.add(pow_abs(v[static_cast<std::size_t>(flat + delta + t)] - v[static_cast<std::size_t>(flat + t)], p));
        int j = d - 2;
        for (; j >= 0; --j) {
            if (++x[j] < hi[j]) break;
            x[j] = lo[j];
        }
        if (j < 0) break;
    }
    return acc.value();
}

// True for the lexicographically nonnegative half of the shift box; the
// other half follows from N(-a) = N(a).
inline bool canonical_shift(std::span<const long> a) {
    for (long aj : a) {
        if (aj > 0) return true;
        if (aj < 0) return false;
    }
    return true;
}

inline double cube_error(std::span<const double> v, int d, int m, int k, double p, std::uint64_t cube,
                         std::span<const std::uint64_t> offsets, std::vector<double>& scratch) {
    const std::uint64_t base = block_base(cube, d, m, k);
    scratch.resize(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) scratch[i] = v[base + offsets[i]];
    std::sort(scratch.begin(), scratch.end());
    if (scratch.front() == scratch.back()) return 0.0;
    const double cell = std::exp2(-static_cast<double>(m) * d);
    std::vector<HistogramEntry> entries;
    for (std::size_t i = 0; i < scratch.size();) {
        std::size_t j = i;
        while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
        entries.push_back({scratch[i], static_cast<double>(j - i) * cell});
        i = j;
    }
    return best_constant_error(ValueHistogram(std::move(entries)), p).err_p_power;
}

}  // namespace haar_besov::kernels::detail
