#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haar_besov/dyadic.hpp"
#include "haar_besov/params.hpp"

namespace haar_besov {

// ============================================================================
// Random numbers
// ============================================================================

// splitmix64 step: advances `state` and returns the next output.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t& state) noexcept;
// Independent seed for instance `stream` of a run seeded with `seed`.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// xoshiro256** with its state filled from splitmix64(seed).
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;
    explicit Xoshiro256ss(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() noexcept;

    // [0, 1) with 53 random bits.
    [[nodiscard]] double uniform01() noexcept;
    // Box-Muller on two fresh draws, no cached second value.
    [[nodiscard]] double normal() noexcept;

private:
    std::uint64_t s_[4];
};

enum class Distribution { Uniform, Normal };  // uniform on [-1, 1)

[[nodiscard]] DyadicStepFunction random_step(std::uint64_t seed, int d, int m,
                                             Distribution dist = Distribution::Uniform,
                                             const Limits& limits = {});

// ============================================================================
// Fits
// ============================================================================

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;  // 1 when y is constant
};

// Least squares y = slope x + intercept; needs >= 2 points with distinct x.
[[nodiscard]] LineFit fit_line(std::span<const double> x, std::span<const double> y);
// Least squares on (x, log2 y); needs >= 3 points and y > 0.
[[nodiscard]] LineFit fit_log2_slope(std::span<const double> x, std::span<const double> y);

// ============================================================================
// Norm-ratio samples on random step functions
// ============================================================================

enum class RatioKind {
    SequenceOverA,  // lqlp_norm(analyze f) / a_norm(f)
    ModulusOverA,   // b_norm_modulus(f) / a_norm(f)
};

struct RatioStudy {
    RatioKind kind = RatioKind::SequenceOverA;
    double p = 1.0;
    double s = 0.5;
    int d = 1;
    std::vector<double> qs{1.0};
    int samples = 200;
    int m_min = 1;
    int m_max = 5;
    std::uint64_t seed = 1;
};

struct RatioSamples {
    std::vector<int> m;                   // level of sample i
    std::vector<std::vector<double>> by_q;  // by_q[j][i] for qs[j]
};

// Sample i uses seed derive_seed(seed, i) and level m_min + i mod (m_max-m_min+1).
// Per-function work (best-approximation errors, shift tables) is shared
// across the q values.
[[nodiscard]] RatioSamples ratio_samples(const RatioStudy& study);

struct BandSummary {
    double min = 0.0;
    double max = 0.0;
    double band = 0.0;   // max / min
    double slope = 0.0;  // least-squares slope of log2(ratio) against m
};

[[nodiscard]] BandSummary summarize_band(std::span<const int> m, std::span<const double> ratios);

// ============================================================================
// Experiments
// ============================================================================

struct ExperimentConfig {
    std::string name;
    std::optional<double> p, q, s, alpha;
    std::optional<int> d, m_min, m_max, k_min, k_max, samples;
    std::uint64_t seed = 1;
};

struct ReportRow {
    std::string series;  // empty for single-series experiments
    double scale = 0.0;
    double value = 0.0;
    std::optional<double> log2_value;  // exact log2 when known; else log2(value)
};

struct GrowthFit {
    std::string series;
    std::string kind;  // "log2" or "linear"
    LineFit fit;
    std::optional<double> theoretical;
    std::optional<double> deviation;  // |slope - theoretical| / |theoretical|
};

struct Check {
    std::string name;
    double value = 0.0;
    std::string op;  // "<=", ">=", ">", "=="
    double threshold = 0.0;
    bool passed = false;
};

struct ExperimentReport {
    std::string name;
    BesovParams params;
    std::string system;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> settings;  // sizes, alpha
    std::string regime;
    std::string citation;
    std::vector<std::string> notes;
    std::vector<ReportRow> rows;
    std::vector<GrowthFit> fits;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<Check> checks;

    [[nodiscard]] bool passed() const;
};

[[nodiscard]] const std::vector<std::string>& experiment_names();
// Unknown names and parameters outside the experiment's regime raise ParameterError.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Columns: experiment,p,q,s,d,scale,value,log2_value
[[nodiscard]] std::string render_csv(const ExperimentReport& r);
[[nodiscard]] std::string render_json(const ExperimentReport& r);

}  // namespace haar_besov
