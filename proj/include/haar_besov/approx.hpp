#pragma once

#include <span>
#include <vector>

#include "haar_besov/dyadic.hpp"
#include "haar_besov/params.hpp"

namespace haar_besov {

// ============================================================================
// Best approximation by constants and E_k
// ============================================================================

struct BestConstant {
    double xi = 0.0;
    double err_p_power = 0.0;  // min_xi sum w_i |v_i - xi|^p
};

// p < 1: exact enumeration of data values (a value carrying at least half
// the mass wins outright); p = 1: weighted median; p = 2: weighted mean;
// other p > 1: bisection on the monotone derivative. Ties go to the
// smallest minimizing value.
[[nodiscard]] BestConstant best_constant_error(const ValueHistogram& h, double p);

// E_k(f)_p, 0 for k >= level(f).
[[nodiscard]] double approx_error(const DyadicStepFunction& f, int k, double p);
[[nodiscard]] double approx_error(const SparseStepFunction& f, int k, double p);
// E_0 .. E_{L-1}, L the finest level of f.
[[nodiscard]] std::vector<double> approx_errors(const DyadicStepFunction& f, double p);
[[nodiscard]] std::vector<double> approx_errors(const SparseStepFunction& f, double p);

// (|f|_p^q + sum_k (2^{ks} E_k)^q)^{1/q} from precomputed pieces. q finite.
[[nodiscard]] double a_norm_from_errors(double lp_norm, std::span<const double> errors,
                                        const BesovParams& prm);
[[nodiscard]] double a_norm(const DyadicStepFunction& f, const BesovParams& prm);
[[nodiscard]] double a_norm(const SparseStepFunction& f, const BesovParams& prm);

// ============================================================================
// Modulus of smoothness (sup-norm shift ball)
// ============================================================================

// All grid-shift integrals of one function, from which omega(2^-j) follows
// for every j >= 0. Between grid shifts the shifted p-power integral is
// multilinear in the fractional shift, so grid shifts give the exact sup and
// sub-cell radii reduce to a polynomial in 2^{m-j}.
class ModulusProfile {
public:
    ModulusProfile(const DyadicStepFunction& f, double p);

    [[nodiscard]] int level() const noexcept { return m_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    // omega(r 2^-m)^p for an integer cell radius r >= 0.
    [[nodiscard]] double omega_pow_cells(long r) const;
    // log2 of omega(2^-j)^p, finite or -inf, without underflow for large j.
    [[nodiscard]] double log2_omega_pow(long j) const;
    [[nodiscard]] double omega(long j) const;

private:
    int d_;
    int m_;
    double p_;
    long radius_;
    std::vector<double> ring_max_;  // ring_max_[r] = max_{|a|_inf <= r} N(a)
    std::vector<double> unit_;      // N(a) for a in {-1,0,1}^d, row-major
};

// omega(t, f)_p for t in (0, 1] a multiple of 2^-m.
[[nodiscard]] double modulus(const DyadicStepFunction& f, double t, double p);

// (|f|_p^q + sum_{j>=0} (2^{js} omega(2^-j))^q)^{1/q}, q finite. The sum stops
// after three consecutive terms below 1e-9 of the running total.
[[nodiscard]] double b_norm_modulus(const DyadicStepFunction& f, const BesovParams& prm);
[[nodiscard]] double b_norm_from_profile(double lp_norm, const ModulusProfile& prof,
                                         const BesovParams& prm);

// ============================================================================
// Square-function norms
// ============================================================================

// |(sum_h lambda_h^2 chi_{supp h})^{1/2}|_p, scaling term included.
[[nodiscard]] double square_function_norm(const DyadicStepFunction& f, double p);
// (sum_k (k+1) sum_{h in H_k} mu(supp h) lambda_h^2)^{1/2}
[[nodiscard]] double b0_221_weighted_sum(const DyadicStepFunction& f);

}  // namespace haar_besov
