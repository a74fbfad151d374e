#include <cmath>
#include <numbers>

#include "haar_besov/experiments.hpp"

namespace haar_besov {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    return splitmix64(state);
}

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
}  // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) noexcept {
    std::uint64_t state = seed;
    for (auto& s : s_) s = splitmix64(state);
}

Xoshiro256ss::result_type Xoshiro256ss::operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256ss::uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Xoshiro256ss::normal() noexcept {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DyadicStepFunction random_step(std::uint64_t seed, int d, int m, Distribution dist, const Limits& limits) {
    std::vector<double> v(checked_cell_count(d, m, limits));
    Xoshiro256ss rng(seed);
    for (auto& x : v) x = dist == Distribution::Uniform ? 2.0 * rng.uniform01() - 1.0 : rng.normal();
    return DyadicStepFunction(d, m, std::move(v));
}

}  // namespace haar_besov
