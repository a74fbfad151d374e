#include <bit>
#include <cmath>

#include "haar_besov/haar.hpp"
#include "haar_besov/kernels.hpp"

namespace haar_besov {

HaarIndex HaarIndex::scaling(int d) { return HaarIndex(DyadicCube::unit(d), 0); }

HaarIndex HaarIndex::wavelet(DyadicCube parent, std::uint32_t pattern) {
    const int d = parent.dim();
    if (pattern == 0 || pattern >= (1U << d)) throw ParameterError("wavelet pattern must be a nonzero d-bit mask");
    return HaarIndex(std::move(parent), pattern);
}

std::uint64_t block_size(int d, int k) {
    if (k < 0) throw ParameterError("level must be >= 0");
    if (k == 0) return 1;
    if (static_cast<long>(k - 1) * d + d > 62) throw ParameterError("block too large to count in 64 bits");
    return ((std::uint64_t{1} << d) - 1) << ((k - 1) * d);
}

std::vector<HaarIndex> block_indices(int d, int k) {
    if (k == 0) return {HaarIndex::scaling(d)};
    const std::uint64_t parents = std::uint64_t{1} << ((k - 1) * d);
    std::vector<HaarIndex> out;
    out.reserve(block_size(d, k));
    for (std::uint64_t q = 0; q < parents; ++q) {
        const auto parent = DyadicCube::from_flat(d, k - 1, q);
        for (std::uint32_t e = 1; e < (1U << d); ++e) out.push_back(HaarIndex::wavelet(parent, e));
    }
    return out;
}

int haar_sign(std::uint32_t pattern, std::uint32_t child_bits) noexcept {
    return (std::popcount(pattern & child_bits) & 1) ? -1 : 1;
}

std::vector<HaarIndex> indices_of_levels(int d, std::span<const int> levels) {
    std::vector<HaarIndex> out;
    for (int k : levels) {
        auto b = block_indices(d, k);
        out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    }
    return out;
}

// ============================================================================
// HaarCoefficients
// ============================================================================

HaarCoefficients::HaarCoefficients(int d, int max_level, const Limits& limits) : d_(d) {
    if (max_level < 0) throw ParameterError("max level must be >= 0");
    (void)checked_cell_count(d, max_level, limits);
    for (int k = 0; k <= max_level; ++k) levels_.emplace_back(block_size(d, k), 0.0);
}

std::size_t HaarCoefficients::slot_of(const HaarIndex& h) const {
    if (h.dim() != d_) throw ParameterError("index dimension mismatch");
    if (h.is_scaling()) return 0;
    if (h.level() > max_level()) throw ParameterError("index level above the stored maximum");
    return h.support().flat_index() * ((std::size_t{1} << d_) - 1) + h.pattern() - 1;
}

double HaarCoefficients::at(const HaarIndex& h) const {
    if (h.dim() == d_ && h.level() > max_level()) return 0.0;
    return levels_[static_cast<std::size_t>(h.level())][slot_of(h)];
}

void HaarCoefficients::set(const HaarIndex& h, double value) {
    levels_[static_cast<std::size_t>(h.level())][slot_of(h)] = value;
}

HaarIndex HaarCoefficients::index_at(int k, std::size_t slot) const {
    if (k == 0) return HaarIndex::scaling(d_);
    const std::size_t np = (std::size_t{1} << d_) - 1;
    return HaarIndex::wavelet(DyadicCube::from_flat(d_, k - 1, slot / np), static_cast<std::uint32_t>(slot % np + 1));
}

// ============================================================================
// Analysis / synthesis
// ============================================================================

SparseStepFunction haar_function(const HaarIndex& h) {
    const int d = h.dim();
    if (h.is_scaling()) return SparseStepFunction(d, {{DyadicCube::unit(d), LogReal::from_double(1.0)}});
    std::vector<Atom> atoms;
    for (std::uint32_t c = 0; c < (1U << d); ++c)
        atoms.push_back({h.support().child(c), LogReal::from_log2(0.0, haar_sign(h.pattern(), c))});
    return SparseStepFunction(d, std::move(atoms));
}

HaarCoefficients analyze(const DyadicStepFunction& f) {
    const int d = f.dim(), m = f.level();
    HaarCoefficients c(d, m, Limits{~std::uint64_t{0}});
    std::vector<double> cur(f.values().begin(), f.values().end());
    for (int l = m; l >= 1; --l) {
        std::vector<double> coarse(std::size_t{1} << ((l - 1) * d));
        kernels::omp::haar_analysis_step(cur, d, l, coarse, c.level(l));
        cur = std::move(coarse);
    }
    c.level(0)[0] = cur[0];
    return c;
}

DyadicStepFunction synthesize(const HaarCoefficients& c, int m, const Limits& limits) {
    const int d = c.dim(), K = c.max_level();
    if (m < K) throw ParameterError("synthesis level below coefficient depth");
    (void)checked_cell_count(d, m, limits);
    std::vector<double> cur{c.level(0)[0]};
    for (int l = 1; l <= K; ++l) {
        std::vector<double> fine(std::size_t{1} << (l * d));
        kernels::omp::haar_synthesis_step(cur, c.level(l), d, l, fine);
        cur = std::move(fine);
    }
    return refine(DyadicStepFunction(d, K, std::move(cur)), m, limits);
}

DyadicStepFunction partial_sum_subset(const DyadicStepFunction& f, std::span<const HaarIndex> J,
                                      std::span<const int> signs) {
    if (!signs.empty() && signs.size() != J.size()) throw ParameterError("one sign per index required");
    const auto full = analyze(f);
    HaarCoefficients part(f.dim(), f.level(), Limits{~std::uint64_t{0}});
    for (std::size_t i = 0; i < J.size(); ++i) {
        if (J[i].dim() != f.dim()) throw ParameterError("index dimension mismatch");
        if (J[i].level() > f.level()) continue;  // f has no component there
        const int theta = signs.empty() ? 1 : signs[i];
        if (theta != 1 && theta != -1) throw ParameterError("signs must be +1 or -1");
        part.set(J[i], theta * full.at(J[i]));
    }
    return synthesize(part, f.level(), Limits{~std::uint64_t{0}});
}

}  // namespace haar_besov
