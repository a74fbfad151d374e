#include <gtest/gtest.h>

#include <cmath>

#include "haar_besov/approx.hpp"
#include "haar_besov/counterexamples.hpp"
#include "haar_besov/haar.hpp"
#include "oracles.hpp"

using namespace haar_besov;

namespace {

std::vector<HaarIndex> all_indices(int d, int K) {
    std::vector<int> levels;
    for (int k = 0; k <= K; ++k) levels.push_back(k);
    return indices_of_levels(d, levels);
}

double rel_diff(const DyadicStepFunction& a, const DyadicStepFunction& b) {
    double scale = 0.0;
    for (double v : b.values()) scale = std::max(scale, std::fabs(v));
    return max_abs_difference(a, b) / std::max(scale, 1e-300);
}

}  // namespace

TEST(HaarFunction, Examples) {
    const auto s = densify(haar_function(HaarIndex::scaling(2)), 1);
    for (double v : s.values()) EXPECT_EQ(v, 1.0);

    const auto h0 = densify(haar_function(HaarIndex::wavelet(DyadicCube::unit(1), 1)), 1);
    EXPECT_EQ(h0[0], 1.0);
    EXPECT_EQ(h0[1], -1.0);

    const auto h11 = densify(haar_function(HaarIndex::wavelet(DyadicCube::unit(2), 3)), 1);
    EXPECT_EQ(std::vector<double>(h11.values().begin(), h11.values().end()), (std::vector<double>{1, -1, -1, 1}));
}

TEST(HaarFunction, MatchesDefinitionAndHasMeanZero) {
    for (int d = 1; d <= 3; ++d) {
        const int K = d == 3 ? 2 : 3;
        for (const auto& h : all_indices(d, K)) {
            const auto v = densify(haar_function(h), K);
            const auto want = oracle::haar_values(h, K);
            ASSERT_EQ(v.cell_count(), want.size());
            for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(v[i], want[i]);
            if (!h.is_scaling()) {
                double s = 0.0;
                for (double x : v.values()) s += x;
                EXPECT_EQ(s, 0.0);
            }
        }
    }
}

TEST(HaarBlocks, Sizes) {
    for (int d = 1; d <= 3; ++d)
        for (int k = 0; k <= 3; ++k) {
            const auto b = block_indices(d, k);
            EXPECT_EQ(b.size(), block_size(d, k));
            EXPECT_EQ(b.size(), k == 0 ? 1U : ((1U << d) - 1) << ((k - 1) * d));
            for (const auto& h : b) EXPECT_EQ(h.level(), k);
        }
}

TEST(Analyze, ConstantHasOnlyScaling) {
    const auto c = analyze(refine(DyadicStepFunction::constant(2, 3.5), 3));
    EXPECT_EQ(c.at(HaarIndex::scaling(2)), 3.5);
    for (int k = 1; k <= 3; ++k)
        for (double v : c.level(k)) EXPECT_EQ(v, 0.0);
}

TEST(Analyze, SpikeCoefficientTable) {
    for (int d = 1; d <= 3; ++d) {
        const int m = d == 3 ? 3 : 4;
        const auto c = analyze(densify(spike(m, d), m));
        EXPECT_DOUBLE_EQ(c.at(HaarIndex::scaling(d)), 1.0);
        for (int k = 1; k <= m; ++k) {
            const auto parent = DyadicCube::unit(d).lower_corner_descendant(k - 1);
            for (std::size_t slot = 0; slot < c.level(k).size(); ++slot) {
                const auto h = c.index_at(k, slot);
                const double want = h.support() == parent ? std::exp2((k - 1) * d) : 0.0;
                EXPECT_DOUBLE_EQ(c.level(k)[slot], want) << "k=" << k << " slot=" << slot;
            }
        }
    }
}

TEST(Analyze, MatchesDirectInnerProducts) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int m = d == 3 ? 2 : 3;
        const auto f = oracle::random_function(seed, d, m);
        const auto c = analyze(f);
        const std::vector<double> fv(f.values().begin(), f.values().end());
        for (const auto& h : all_indices(d, m)) {
            const auto hv = oracle::haar_values(h, m);
            const double want = oracle::integral(fv, hv, f.cell_measure()) / oracle::integral(hv, hv, f.cell_measure());
            EXPECT_NEAR(c.at(h), want, 1e-13);
        }
    }
}

TEST(Synthesize, RoundTripAndSingleCoefficient) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int m = d == 3 ? 3 : 5;
        const auto f = oracle::random_function(seed, d, m);
        EXPECT_LE(rel_diff(synthesize(analyze(f), m), f), 1e-12);
        EXPECT_LE(rel_diff(synthesize(analyze(f), m + 1), refine(f, m + 1)), 1e-12);
    }
    for (int d = 1; d <= 2; ++d) {
        const auto h = HaarIndex::wavelet(DyadicCube::from_flat(d, 1, 1), 1);
        HaarCoefficients c(d, 2);
        c.set(h, 1.0);
        EXPECT_EQ(max_abs_difference(synthesize(c, 3), densify(haar_function(h), 3)), 0.0);
    }
    const auto f = densify(spike(4, 2), 4);
    EXPECT_EQ(max_abs_difference(synthesize(analyze(f), 4), f), 0.0);
    EXPECT_THROW((void)synthesize(analyze(f), 3), ParameterError);
}

TEST(Synthesize, EvenBlocksOfSpikeGiveAlternatingSum) {
    const int d = 2, m = 4;
    const auto f = densify(spike(m, d), m);
    const auto c = analyze(f);
    HaarCoefficients even(d, m);
    for (int k = 0; k <= 2; k += 2)
        for (std::size_t slot = 0; slot < c.level(k).size(); ++slot) even.level(k)[slot] = c.level(k)[slot];
    const auto g2 = densify(spike_partial_sum(1, d), m);
    EXPECT_EQ(max_abs_difference(synthesize(even, m), g2), 0.0);
}

TEST(Orthogonality, AllPairsExactlyZero) {
    for (int d = 1; d <= 3; ++d) {
        const int K = d == 1 ? 4 : (d == 2 ? 3 : 2);
        const auto idx = all_indices(d, K);
        std::vector<std::vector<double>> vals;
        for (const auto& h : idx) vals.push_back(oracle::haar_values(h, K));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) ASSERT_EQ(oracle::integral(vals[a], vals[b], 1.0), 0.0);
    }
}

TEST(Parseval, SumOfSquaresTimesMeasure) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int m = d == 3 ? 3 : 5;
        const auto f = oracle::random_function(seed + 50, d, m);
        const auto c = analyze(f);
        double s = 0.0;
        for (int k = 0; k <= m; ++k) {
            const double mu = k == 0 ? 1.0 : std::exp2(-(k - 1) * d);
            for (double v : c.level(k)) s += v * v * mu;
        }
        const double l2 = std::pow(lp_quasinorm(f, 2.0), 2.0);
        EXPECT_NEAR(s, l2, 1e-12 * l2);
    }
}

TEST(PartialSum, Examples) {
    const auto f = oracle::random_function(11, 2, 4);
    const auto empty = partial_sum_subset(f, {});
    for (double v : empty.values()) EXPECT_EQ(v, 0.0);
    for (int k = 0; k <= 4; ++k) {
        std::vector<int> levels;
        for (int l = 0; l <= k; ++l) levels.push_back(l);
        const auto J = indices_of_levels(2, levels);
        EXPECT_LE(max_abs_difference(partial_sum_subset(f, J), refine(average_project(f, k), 4)), 1e-13);
    }
    const auto f4 = densify(spike(4, 1), 4);
    EXPECT_EQ(max_abs_difference(partial_sum_subset(f4, even_block_indices(1, 1)), densify(spike_partial_sum(1, 1), 4)), 0.0);
}

TEST(PartialSum, SignsFlipTerms) {
    const auto f = oracle::random_function(12, 1, 3);
    const auto J = indices_of_levels(1, std::vector<int>{1, 2});
    std::vector<int> plus(J.size(), 1), minus(J.size(), -1);
    const auto a = partial_sum_subset(f, J, plus);
    const auto b = partial_sum_subset(f, J, minus);
    for (std::size_t i = 0; i < a.cell_count(); ++i) EXPECT_NEAR(a[i], -b[i], 1e-15);
}

TEST(PartialSum, CommutesWithAveraging) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto f = oracle::random_function(seed + 300, 2, 4);
        Xoshiro256ss rng(seed);
        for (int l = 0; l <= 3; ++l) {
            std::vector<HaarIndex> J;
            for (int k = 0; k <= l; ++k)
                for (const auto& h : block_indices(2, k))
                    if (rng.uniform01() < 0.5) J.push_back(h);
            const auto lhs = partial_sum_subset(average_project(f, l), J);
            const auto rhs = average_project(partial_sum_subset(f, J), l);
            EXPECT_LE(max_abs_difference(refine(lhs, 4), refine(rhs, 4)), 1e-13);
        }
    }
}

// ||P g||_p^p <= 2^d 2^{kd(p-1)} sum_{Delta in T_k} ||g||_{L1(Delta)}^p for a
// partial sum P whose indices have levels <= k.
TEST(Step11, ExplicitConstantTwoToTheD) {
    int checked = 0;
    for (int d = 1; d <= 2; ++d)
        for (double p : {0.6, 0.8, 1.0})
            for (std::uint64_t seed = 0; seed < 15; ++seed) {
                const int m = d == 1 ? 6 : 4;
                const auto g = oracle::random_function(seed * 7 + d, d, m);
                Xoshiro256ss rng(seed + 1000);
                const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m - 1));
                std::vector<HaarIndex> J;
                std::vector<int> signs;
                for (int l = 0; l <= k; ++l)
                    for (const auto& h : block_indices(d, l))
                        if (rng.uniform01() < 0.6) {
                            J.push_back(h);
                            signs.push_back(rng.uniform01() < 0.5 ? -1 : 1);
                        }
                const double lhs = std::pow(lp_quasinorm(partial_sum_subset(g, J, signs), p), p);
                double rhs = 0.0;
                for (std::uint64_t q = 0; q < (std::uint64_t{1} << (k * d)); ++q) {
                    double l1 = 0.0;
                    DyadicCube::from_flat(d, k, q).for_each_cell(m, [&](std::uint64_t c) { l1 += std::fabs(g[c]); });
                    rhs += std::pow(l1 * g.cell_measure(), p);
                }
                rhs *= std::exp2(d) * std::exp2(k * d * (p - 1));
                EXPECT_LE(lhs, rhs * (1 + 1e-12)) << "d=" << d << " p=" << p << " seed=" << seed;
                ++checked;
            }
    EXPECT_EQ(checked, 90);
}

// ||sum gamma_h h||_p^p / (2^{-kd} sum |gamma_h|^p) for a single level stays in
// a band that does not move with k.
TEST(NE0, SingleLevelBandIndependentOfK) {
    for (int d = 1; d <= 2; ++d)
        for (double p : {0.5, 1.0, 2.0}) {
            std::vector<double> lo, hi;
            for (int k = 1; k <= 6 - d + 1; ++k) {
                double mn = INFINITY, mx = 0.0;
                for (std::uint64_t seed = 0; seed < 20; ++seed) {
                    Xoshiro256ss rng(seed * 31 + static_cast<std::uint64_t>(k));
                    HaarCoefficients c(d, k);
                    double sp = 0.0;
                    for (auto& v : c.level(k)) {
                        v = 2.0 * rng.uniform01() - 1.0;
                        sp += std::pow(std::fabs(v), p);
                    }
                    const double lhs = std::pow(lp_quasinorm(synthesize(c, k), p), p);
                    const double r = lhs / (std::exp2(-k * d) * sp);
                    mn = std::min(mn, r);
                    mx = std::max(mx, r);
                }
                lo.push_back(mn);
                hi.push_back(mx);
            }
            const double band_lo = *std::min_element(lo.begin(), lo.end());
            const double band_hi = *std::max_element(hi.begin(), hi.end());
            EXPECT_GT(band_lo, 0.05) << "d=" << d << " p=" << p;
            EXPECT_LT(band_hi, 20.0) << "d=" << d << " p=" << p;
        }
}

// ---------------------------------------------------------------------------
// Tensor system

TEST(Tensor, IndexLevelsAndNorms) {
    EXPECT_EQ(TensorHaarIndex::univariate_level(1), 0);
    EXPECT_EQ(TensorHaarIndex::univariate_level(2), 1);
    EXPECT_EQ(TensorHaarIndex::univariate_level(3), 2);
    EXPECT_EQ(TensorHaarIndex::univariate_level(4), 2);
    EXPECT_EQ(TensorHaarIndex::univariate_level(5), 3);
    EXPECT_EQ(TensorHaarIndex({5, 1}).level(), 3);
    EXPECT_DOUBLE_EQ(TensorHaarIndex({5, 1}).l2_norm_squared(), 0.25);
    EXPECT_DOUBLE_EQ(TensorHaarIndex({2, 3}).l2_norm_squared(), 0.5);
    EXPECT_THROW(TensorHaarIndex({0, 1}), ParameterError);
}

TEST(Tensor, SingleFunctionHasUnitCoefficient) {
    for (const std::vector<std::uint64_t> n : {std::vector<std::uint64_t>{3, 2}, {1, 4}, {2, 2}, {7, 1}}) {
        const TensorHaarIndex t(n);
        const auto c = tensor_analyze(tensor_haar_function(t, 3));
        for (std::size_t slot = 0; slot < c.values().size(); ++slot)
            EXPECT_NEAR(c.values()[slot], c.index_at(slot) == t ? 1.0 : 0.0, 1e-15);
    }
}

TEST(Tensor, SpikeCoefficient) {
    for (int k = 1; k <= 5; ++k) {
        const int d = 2;
        const auto f = densify(spike(k, d), k);
        const auto fk = (1.0 / std::exp2(k * d)) * f;  // chi of [0,2^-k)^2
        const auto c = tensor_analyze(fk);
        const auto theta = tensor_spike_theta(k, d);
        EXPECT_DOUBLE_EQ(c.at(theta), std::exp2(k - 1) * std::exp2(-k * d));
        EXPECT_DOUBLE_EQ(theta.l2_norm_squared(), std::exp2(-k + 1));
    }
}

TEST(Tensor, RoundTripAndOrthogonality) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const int m = d == 3 ? 3 : 4;
        const auto f = oracle::random_function(seed + 77, d, m);
        EXPECT_LE(rel_diff(tensor_synthesize(tensor_analyze(f)), f), 1e-12);
    }
    const int m = 3;
    std::vector<TensorHaarIndex> idx;
    for (std::uint64_t a = 1; a <= 8; ++a)
        for (std::uint64_t b = 1; b <= 8; ++b) idx.emplace_back(std::vector<std::uint64_t>{a, b});
    std::vector<DyadicStepFunction> vals;
    for (const auto& t : idx) vals.push_back(tensor_haar_function(t, m));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const std::vector<double> va(vals[a].values().begin(), vals[a].values().end());
            const std::vector<double> vb(vals[b].values().begin(), vals[b].values().end());
            ASSERT_EQ(oracle::integral(va, vb, 1.0), 0.0);
        }
}

TEST(Tensor, RankOneProjector) {
    const TensorHaarIndex theta({3, 2});
    const auto th = tensor_haar_function(theta, 3);
    EXPECT_LE(max_abs_difference(rank_one_project(th, theta), th), 1e-15);
    const auto other = tensor_haar_function(TensorHaarIndex({4, 2}), 3);
    const auto zero = rank_one_project(other, theta);
    for (double v : zero.values()) EXPECT_EQ(v, 0.0);
    for (int k = 1; k <= 4; ++k) {
        const auto pair = tensor_spike_pair(k, 2);
        const auto want = (std::exp2(k - 1) * std::exp2(-2 * k)) * tensor_haar_function(pair.theta, k);
        EXPECT_LE(max_abs_difference(pair.projection, want), 1e-15);
    }
}

TEST(Tensor, BlockSpanMatchesIsotropicLevel) {
    // block-k tensor functions live in S_k and average to zero at level k-1
    for (int k = 1; k <= 3; ++k)
        for (const auto& t : tensor_block_d2(k)) {
            ASSERT_EQ(t.level(), k);
            const auto g = tensor_haar_function(t, k);
            const auto pk = average_project(g, k - 1);
            for (double v : pk.values()) EXPECT_EQ(v, 0.0);
            // and its isotropic expansion only uses level-k wavelets
            const auto c = analyze(g);
            for (int l = 0; l < k; ++l)
                for (double v : c.level(l)) EXPECT_EQ(v, 0.0);
        }
}

TEST(Tensor, BlockOrderD2) {
    using V = std::vector<std::uint64_t>;
    auto ns = [](const std::vector<TensorHaarIndex>& b) {
        std::vector<V> out;
        for (const auto& t : b) out.push_back(t.ns());
        return out;
    };
    EXPECT_EQ(ns(tensor_block_d2(0)), (std::vector<V>{{1, 1}}));
    EXPECT_EQ(ns(block_order_d2(2, 0)), (std::vector<V>{{2, 1}, {2, 2}, {1, 2}}));
    EXPECT_EQ(ns(block_order_d2(2, 1)), (std::vector<V>{{3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 1}, {4, 2}, {4, 3},
                                                        {4, 4}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}));
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(block_order_d2(2, k).size(), 3U << (2 * k));
    EXPECT_THROW((void)block_order_d2(3, 1), UnsupportedError);
}
