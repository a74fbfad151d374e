#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "haar_besov/approx.hpp"
#include "haar_besov/kernels.hpp"

namespace haar_besov {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kTailCap = long{1} << 20;
constexpr std::uint64_t kMaxShiftTable = std::uint64_t{1} << 24;

double log2_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp2(lo - hi)) / std::log(2.0);
}

}  // namespace

ModulusProfile::ModulusProfile(const DyadicStepFunction& f, double p)
    : d_(f.dim()), m_(f.level()), p_(p), radius_(long{1} << f.level()) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParameterError("p must be positive and finite");
    const std::uint64_t side = static_cast<std::uint64_t>(2 * radius_ + 1);
    std::uint64_t slots = 1;
    for (int j = 0; j < d_; ++j) {
        slots *= side;
        if (slots > kMaxShiftTable)
            throw CapacityError(std::log2(static_cast<double>(side)) * d_, kMaxShiftTable);
    }
    std::vector<double> table(slots, 0.0);
    kernels::omp::shift_pow_sums(f.values(), d_, m_, static_cast<int>(radius_), p, table);
    const double cell = f.cell_measure();

    ring_max_.assign(static_cast<std::size_t>(radius_) + 1, 0.0);
    unit_.assign(static_cast<std::size_t>(std::pow(3, d_)), 0.0);
    std::vector<long> a(static_cast<std::size_t>(d_));
    for (std::uint64_t slot = 0; slot < slots; ++slot) {
        std::uint64_t rest = slot;
        long ring = 0;
        bool unit = true;
        std::size_t unit_slot = 0;
        for (int j = d_ - 1; j >= 0; --j) {
            a[j] = static_cast<long>(rest % side) - radius_;
            rest /= side;
        }
        for (int j = 0; j < d_; ++j) {
            ring = std::max(ring, std::labs(a[j]));
            unit = unit && std::labs(a[j]) <= 1;
            unit_slot = unit_slot * 3 + static_cast<std::size_t>(a[j] + 1);
        }
        const double v = table[slot] * cell;
        ring_max_[static_cast<std::size_t>(ring)] = std::max(ring_max_[static_cast<std::size_t>(ring)], v);
        if (unit) unit_[unit_slot] = v;
    }
    for (std::size_t r = 1; r < ring_max_.size(); ++r) ring_max_[r] = std::max(ring_max_[r], ring_max_[r - 1]);
}

double ModulusProfile::omega_pow_cells(long r) const {
    if (r < 0) throw ParameterError("negative shift radius");
    return ring_max_[static_cast<std::size_t>(std::min(r, radius_))];
}

double ModulusProfile::log2_omega_pow(long j) const {
    if (j < 0) throw ParameterError("negative scale index");
    if (j <= m_) {
        const double v = omega_pow_cells(long{1} << (m_ - j));
        return v > 0.0 ? std::log2(v) : kNegInf;
    }
    // Sub-cell radius lambda = 2^{m-j}: the maximum sits at a vertex
    // sigma*lambda*eps of the shift box and equals
    // sum_{v <= eps} N(sigma v) lambda^{|v|} (1-lambda)^{|eps|-|v|}.
    // One factor lambda is pulled out so nothing underflows.
    const double lam = std::exp2(static_cast<double>(m_ - j));
    const std::uint32_t full = (1U << d_) - 1;
    double best = 0.0;
    for (std::uint32_t sigma = 0; sigma <= full; ++sigma) {
        for (std::uint32_t eps = 1; eps <= full; ++eps) {
            const int ne = std::popcount(eps);
            double g = 0.0;
            for (std::uint32_t v = eps;; v = (v - 1) & eps) {
                if (v != 0) {
                    std::size_t slot = 0;
                    for (int c = 0; c < d_; ++c) {
                        const int step = ((v >> c) & 1U) ? (((sigma >> c) & 1U) ? -1 : 1) : 0;
                        slot = slot * 3 + static_cast<std::size_t>(step + 1);
                    }
                    const int nv = std::popcount(v);
                    g += unit_[slot] * std::pow(lam, nv - 1) * std::pow(1.0 - lam, ne - nv);
                }
                if (v == 0) break;
            }
            best = std::max(best, g);
        }
    }
    return best > 0.0 ? static_cast<double>(m_ - j) + std::log2(best) : kNegInf;
}

double ModulusProfile::omega(long j) const { return std::exp2(log2_omega_pow(j) / p_); }

double modulus(const DyadicStepFunction& f, double t, double p) {
    if (!(t > 0.0 && t <= 1.0)) throw ParameterError("modulus radius must lie in (0, 1]");
    const double cells = std::ldexp(t, f.level());
    if (cells != std::floor(cells)) throw ParameterError("modulus radius must be a multiple of the cell width");
    const ModulusProfile prof(f, p);
    return std::pow(prof.omega_pow_cells(static_cast<long>(cells)), 1.0 / p);
}

double b_norm_from_profile(double lp_norm, const ModulusProfile& prof, const BesovParams& prm) {
    if (prm.q_infinite()) throw ParameterError("this norm needs a finite q");
    if (!nearly_equal(prm.p, prof.p())) throw ParameterError("profile computed for a different p");
    const double q = prm.q, p = prm.p;
    double total = lp_norm > 0.0 ? q * std::log2(lp_norm) : kNegInf;
    const double small = std::log2(1e-9);
    int quiet = 0;
    for (long j = 0; j <= prof.level() + kTailCap; ++j) {
        const double lo = prof.log2_omega_pow(j);
        const double term = lo == kNegInf ? kNegInf : q * (static_cast<double>(j) * prm.s + lo / p);
        total = log2_add(total, term);
        // Stopping only applies past the finest level, where the terms
        // decay geometrically; grid-scale terms are all summed.
        if (j > prof.level()) {
            quiet = (term == kNegInf || term - total < small) ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
    }
    return std::exp2(total / q);
}

double b_norm_modulus(const DyadicStepFunction& f, const BesovParams& prm) {
    if (prm.q_infinite()) throw ParameterError("this norm needs a finite q");
    return b_norm_from_profile(lp_quasinorm(f, prm.p), ModulusProfile(f, prm.p), prm);
}

}  // namespace haar_besov
