#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "haar_besov/kernels.hpp"
#include "oracles.hpp"

using namespace haar_besov;
namespace ks = haar_besov::kernels::serial;
namespace ko = haar_besov::kernels::omp;

namespace {

std::vector<double> random_values(std::uint64_t seed, std::size_t n) {
    Xoshiro256ss rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 8.0 * rng.uniform01() - 4.0;
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

class Kernels : public ::testing::TestWithParam<int> {
protected:
    void SetUp() override {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(GetParam());
    }
    void TearDown() override { omp_set_num_threads(saved_); }

private:
    int saved_ = 1;
};

struct Grid {
    int d, m;
};
const Grid kGrids[] = {{1, 3}, {1, 14}, {2, 7}, {3, 4}};

std::size_t cells(const Grid& g) { return std::size_t{1} << (g.d * g.m); }

}  // namespace

TEST_P(Kernels, AbsPowSum) {
    for (const auto& g : kGrids) {
        const auto v = random_values(11, cells(g));
        for (double p : {0.5, 1.0, 2.0, 3.3}) {
            const double a = ks::abs_pow_sum(v, p);
            EXPECT_TRUE(same_bits(a, ko::abs_pow_sum(v, p)));
            double naive = 0.0;
            for (double x : v) naive += std::pow(std::fabs(x), p);
            EXPECT_NEAR(a, naive, 1e-12 * naive);
        }
    }
}

TEST_P(Kernels, BlockAverage) {
    for (const auto& g : kGrids) {
        const auto v = random_values(12, cells(g));
        for (int k = 0; k <= g.m; ++k) {
            std::vector<double> a(std::size_t{1} << (g.d * k)), b(a.size());
            ks::block_average(v, g.d, g.m, k, a);
            ko::block_average(v, g.d, g.m, k, b);
            EXPECT_TRUE(same_bits(a, b));
            if (g.m > 7) continue;
            // cube means against a direct sum
            std::vector<double> sum(a.size(), 0.0);
            for (std::size_t flat = 0; flat < v.size(); ++flat) {
                auto c = oracle::coords_of(flat, g.d, g.m);
                for (auto& x : c) x >>= (g.m - k);
                sum[oracle::flat_of(c, k)] += v[flat];
            }
            const double per = static_cast<double>(v.size() / a.size());
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], sum[i] / per, 1e-12);
        }
    }
}

TEST_P(Kernels, HaarCascadeSteps) {
    for (const auto& g : kGrids) {
        const auto v = random_values(13, cells(g));
        const std::size_t coarse_n = v.size() >> g.d;
        const std::size_t det_n = coarse_n * ((std::size_t{1} << g.d) - 1);
        std::vector<double> c1(coarse_n), c2(coarse_n), d1(det_n), d2(det_n);
        ks::haar_analysis_step(v, g.d, g.m, c1, d1);
        ko::haar_analysis_step(v, g.d, g.m, c2, d2);
        EXPECT_TRUE(same_bits(c1, c2));
        EXPECT_TRUE(same_bits(d1, d2));
        std::vector<double> f1(v.size()), f2(v.size());
        ks::haar_synthesis_step(c1, d1, g.d, g.m, f1);
        ko::haar_synthesis_step(c1, d1, g.d, g.m, f2);
        EXPECT_TRUE(same_bits(f1, f2));
        for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(f1[i], v[i], 1e-13);
    }
}

TEST_P(Kernels, TensorAxes) {
    for (const auto& g : kGrids) {
        const auto v = random_values(14, cells(g));
        for (int axis = 0; axis < g.d; ++axis) {
            auto a = v, b = v;
            ks::tensor_axis_analysis(a, g.d, g.m, axis);
            ko::tensor_axis_analysis(b, g.d, g.m, axis);
            EXPECT_TRUE(same_bits(a, b));
            ks::tensor_axis_synthesis(a, g.d, g.m, axis);
            ko::tensor_axis_synthesis(b, g.d, g.m, axis);
            EXPECT_TRUE(same_bits(a, b));
            for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(a[i], v[i], 1e-12);
        }
    }
}

TEST_P(Kernels, ShiftPowSums) {
    const Grid small[] = {{1, 5}, {2, 3}, {3, 2}};
    for (const auto& g : small) {
        const auto f = random_step(15, g.d, g.m);
        const std::vector<double> v(f.values().begin(), f.values().end());
        const int r = 2;
        std::size_t n = 1;
        for (int j = 0; j < g.d; ++j) n *= 2 * r + 1;
        for (double p : {0.5, 2.0}) {
            std::vector<double> a(n), b(n);
            ks::shift_pow_sums(v, g.d, g.m, r, p, a);
            ko::shift_pow_sums(v, g.d, g.m, r, p, b);
            EXPECT_TRUE(same_bits(a, b));
            for (std::size_t t = 0; t < n; ++t) {
                std::vector<long> shift(static_cast<std::size_t>(g.d));
                std::size_t x = t;
                for (int j = g.d - 1; j >= 0; --j) {
                    shift[static_cast<std::size_t>(j)] = static_cast<long>(x % (2 * r + 1)) - r;
                    x /= 2 * r + 1;
                }
                const double want = oracle::shift_pow_integral(f, shift, 0, p) / f.cell_measure();
                EXPECT_NEAR(a[t], want, 1e-12 * (1 + want));
            }
        }
    }
}

TEST_P(Kernels, CubeBestErrors) {
    const Grid small[] = {{1, 6}, {2, 3}};
    for (const auto& g : small) {
        const auto f = random_step(16, g.d, g.m);
        const std::vector<double> v(f.values().begin(), f.values().end());
        for (int k = 0; k < g.m; ++k)
            for (double p : {0.4, 1.0, 1.7}) {
                std::vector<double> a(std::size_t{1} << (g.d * k)), b(a.size());
                ks::cube_best_errors(v, g.d, g.m, k, p, a);
                ko::cube_best_errors(v, g.d, g.m, k, p, b);
                EXPECT_TRUE(same_bits(a, b));
                double total = 0.0;
                for (double x : a) total += x;
                const double want = std::pow(oracle::grid_error(f, k, p), p);
                EXPECT_NEAR(total, want, 1e-8 * want);
            }
    }
}

// Library entry points give the same bits regardless of the thread count.
TEST_P(Kernels, PipelineThreadIndependent) {
    const auto f = random_step(17, 2, 6);
    const auto b = BesovParams::make(0.8, 1.0, 0.6, 2);
    const double a = a_norm(f, b);
    const double bm = b_norm_modulus(f, b);
    const auto c = analyze(f);
    omp_set_num_threads(1);
    EXPECT_TRUE(same_bits(a, a_norm(f, b)));
    EXPECT_TRUE(same_bits(bm, b_norm_modulus(f, b)));
    const auto c1 = analyze(f);
    for (int k = 0; k <= c.max_level(); ++k) {
        const std::vector<double> x(c.level(k).begin(), c.level(k).end()), y(c1.level(k).begin(), c1.level(k).end());
        EXPECT_TRUE(same_bits(x, y));
    }
}

INSTANTIATE_TEST_SUITE_P(Threads, Kernels, ::testing::Values(1, 3, 4));
