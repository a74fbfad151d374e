#include <cmath>
#include <set>

#include "haar_besov/approx.hpp"
#include "haar_besov/haar.hpp"
#include "haar_besov/kernels.hpp"
#include "haar_besov/reduce.hpp"

namespace haar_besov {

namespace {

void check_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive and finite");
}

void check_finite_q(const BesovParams& prm) {
    if (prm.q_infinite()) throw ParameterError("this norm needs a finite q");
}

}  // namespace

double approx_error(const DyadicStepFunction& f, int k, double p) {
    check_p(p);
    if (k < 0) throw ParameterError("level must be >= 0");
    if (k >= f.level()) return 0.0;
    std::vector<double> per_cube(std::size_t{1} << (k * f.dim()));
    kernels::omp::cube_best_errors(f.values(), f.dim(), f.level(), k, p, per_cube);
    return std::pow(kernels::omp::abs_pow_sum(per_cube, 1.0), 1.0 / p);
}

double approx_error(const SparseStepFunction& f, int k, double p) {
    check_p(p);
    if (k < 0) throw ParameterError("level must be >= 0");
    std::set<DyadicCube, CubeKeyLess> cubes;
    for (const auto& a : f.atoms())
        if (a.cube.level() > k && !a.coefficient.is_zero()) cubes.insert(a.cube.ancestor(k));
    CompensatedSum acc;
    for (const auto& q : cubes) acc.add(best_constant_error(value_histogram(f, q), p).err_p_power);
    return std::pow(acc.value(), 1.0 / p);
}

std::vector<double> approx_errors(const DyadicStepFunction& f, double p) {
    std::vector<double> out;
    for (int k = 0; k < f.level(); ++k) out.push_back(approx_error(f, k, p));
    return out;
}

std::vector<double> approx_errors(const SparseStepFunction& f, double p) {
    std::vector<double> out;
    for (int k = 0; k < f.max_level(); ++k) out.push_back(approx_error(f, k, p));
    return out;
}

double a_norm_from_errors(double lp_norm, std::span<const double> errors, const BesovParams& prm) {
    check_finite_q(prm);
    std::vector<double> terms;
    terms.reserve(errors.size() + 1);
    if (lp_norm > 0.0) terms.push_back(prm.q * std::log2(lp_norm));
    for (std::size_t k = 0; k < errors.size(); ++k)
        if (errors[k] > 0.0) terms.push_back(prm.q * (static_cast<double>(k) * prm.s + std::log2(errors[k])));
    return std::exp2(log2_sum_exp2(terms) / prm.q);
}

double a_norm(const DyadicStepFunction& f, const BesovParams& prm) {
    check_finite_q(prm);
    return a_norm_from_errors(lp_quasinorm(f, prm.p), approx_errors(f, prm.p), prm);
}

double a_norm(const SparseStepFunction& f, const BesovParams& prm) {
    check_finite_q(prm);
    return a_norm_from_errors(lp_quasinorm(f, prm.p), approx_errors(f, prm.p), prm);
}

// ============================================================================
// Square functions
// ============================================================================

double square_function_norm(const DyadicStepFunction& f, double p) {
    check_p(p);
    const auto c = analyze(f);
    const int d = f.dim(), m = f.level();
    const std::size_t np = (std::size_t{1} << d) - 1;
    // S^2 accumulated on the grid of wavelet supports, coarse to fine.
    std::vector<double> acc{c.level(0)[0] * c.level(0)[0]};
    int acc_level = 0;
    for (int l = 1; l <= m; ++l) {
        if (l - 1 > acc_level) {
            const auto r = refine(DyadicStepFunction(d, acc_level, std::move(acc)), l - 1, Limits{~std::uint64_t{0}});
            acc.assign(r.values().begin(), r.values().end());
            acc_level = l - 1;
        }
        const auto det = c.level(l);
        for (std::size_t q = 0; q < acc.size(); ++q) {
            CompensatedSum s;
            s.add(acc[q]);
            for (std::size_t e = 0; e < np; ++e) s.add(det[q * np + e] * det[q * np + e]);
            acc[q] = s.value();
        }
    }
    for (auto& v : acc) v = std::sqrt(v);
    return lp_quasinorm(DyadicStepFunction(d, acc_level, std::move(acc)), p);
}

double b0_221_weighted_sum(const DyadicStepFunction& f) {
    const auto c = analyze(f);
    CompensatedSum total;
    total.add(c.level(0)[0] * c.level(0)[0]);
    for (int k = 1; k <= c.max_level(); ++k) {
        const double mu = std::exp2(-static_cast<double>(k - 1) * f.dim());
        const double energy = kernels::omp::abs_pow_sum(c.level(k), 2.0);
        total.add(static_cast<double>(k + 1) * mu * energy);
    }
    return std::sqrt(total.value());
}

}  // namespace haar_besov
