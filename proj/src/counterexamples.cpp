#include "haar_besov/counterexamples.hpp"

#include <cmath>
#include <limits>

namespace haar_besov {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp2(lo - hi)) / std::log(2.0);
}

void require_closed_form_params(const BesovParams& prm, double p_max, const char* what) {
    if (prm.p > p_max) throw UnsupportedError(std::string(what) + ": closed form requires p <= " + std::to_string(p_max));
    if (prm.q_infinite()) throw ParameterError(std::string(what) + ": a-norm needs a finite q");
}

// log2 of (|f|_p^q + sum_l (2^{ls} E_l)^q)^{1/q}
double log2_a_from(double log2_lp, const std::vector<double>& log2_errors, const BesovParams& prm) {
    std::vector<double> terms;
    if (log2_lp != kNegInf) terms.push_back(prm.q * log2_lp);
    for (std::size_t l = 0; l < log2_errors.size(); ++l)
        if (log2_errors[l] != kNegInf) terms.push_back(prm.q * (static_cast<double>(l) * prm.s + log2_errors[l]));
    return log2_sum_exp2(terms) / prm.q;
}

}  // namespace

// ============================================================================
// Nested family
// ============================================================================

LogReal NestedSpec::coefficient(int l) const {
    switch (rule) {
        case NestedRule::TrivialDual:
            return LogReal::from_log2(static_cast<double>(l) * d - std::log2(static_cast<double>(l) + 1.0));
        case NestedRule::Alternating:
            return LogReal::from_log2(static_cast<double>(l) * d, (l % 2) ? -1 : 1);
        case NestedRule::Explicit:
            return LogReal::from_double(coefficients.at(static_cast<std::size_t>(l)));
    }
    return {};
}

DyadicCube NestedSpec::cube(int l) const {
    if (chain.empty()) return DyadicCube::unit(d).lower_corner_descendant(l);
    return chain.at(static_cast<std::size_t>(l));
}

void NestedSpec::validate() const {
    if (d < 1 || d > kMaxDim) throw ParameterError("nested family: d out of range");
    if (m < 0 || m > kMaxClosedFormLevels) throw ParameterError("nested family: m out of range");
    if (rule == NestedRule::Explicit && coefficients.size() != static_cast<std::size_t>(m) + 1)
        throw ParameterError("nested family: explicit rule needs m+1 coefficients");
    if (!chain.empty()) {
        if (chain.size() != static_cast<std::size_t>(m) + 1) throw ParameterError("nested family: chain needs m+1 cubes");
        for (int l = 0; l <= m; ++l) {
            const auto& c = chain[static_cast<std::size_t>(l)];
            if (c.dim() != d || c.level() != l) throw ParameterError("nested family: chain cube l must have level l");
            if (l > 0 && !chain[static_cast<std::size_t>(l - 1)].contains(c))
                throw ParameterError("nested family: chain must be nested");
        }
    }
}

SparseStepFunction nested_family(const NestedSpec& spec) {
    spec.validate();
    std::vector<Atom> atoms;
    for (int l = 0; l <= spec.m; ++l) atoms.push_back({spec.cube(l), spec.coefficient(l)});
    return SparseStepFunction(spec.d, std::move(atoms));
}

double NestedClosedForm::lp_norm() const { return std::exp2(log2_lp_norm); }
double NestedClosedForm::error(int k) const { return std::exp2(log2_errors.at(static_cast<std::size_t>(k))); }
double NestedClosedForm::a_norm() const { return std::exp2(log2_a_norm); }
double NestedClosedForm::l1_norm() const { return std::exp2(log2_l1_norm); }

NestedClosedForm nested_closed_form(const NestedSpec& spec, const BesovParams& prm) {
    spec.validate();
    require_closed_form_params(prm, 1.0, "nested family");
    const int m = spec.m, d = spec.d;
    const double p = prm.p;
    // Delta_n \ Delta_{n+1} has measure (1-2^-d) 2^{-nd}; Delta_m keeps 2^{-md}.
    const double log2_ring = std::log2(-std::expm1(-static_cast<double>(d) * std::log(2.0)));
    auto log2_piece = [&](int n) { return (n < m ? log2_ring : 0.0) - static_cast<double>(n) * d; };

    std::vector<LogReal> a(static_cast<std::size_t>(m) + 1);
    for (int l = 0; l <= m; ++l) a[static_cast<std::size_t>(l)] = spec.coefficient(l);

    NestedClosedForm out;
    std::vector<double> terms_p, terms_1;
    LogReal xi;
    for (int n = 0; n <= m; ++n) {
        xi += a[static_cast<std::size_t>(n)];
        if (xi.is_zero()) continue;
        terms_p.push_back(log2_piece(n) + p * xi.log2mag);
        terms_1.push_back(log2_piece(n) + xi.log2mag);
    }
    out.log2_lp_norm = log2_sum_exp2(terms_p) / p;
    out.log2_l1_norm = log2_sum_exp2(terms_1);

    // On Delta_k the value xi_k covers at least half the measure, so it is
    // the best constant there; f - xi_k = sum_{l=k+1}^n a_l on Delta_n.
    out.log2_errors.assign(static_cast<std::size_t>(m) + 1, kNegInf);
    std::vector<double> terms;
    for (int k = 0; k < m; ++k) {
        terms.clear();
        LogReal diff;
        for (int n = k + 1; n <= m; ++n) {
            diff += a[static_cast<std::size_t>(n)];
            if (!diff.is_zero()) terms.push_back(log2_piece(n) + p * diff.log2mag);
        }
        out.log2_errors[static_cast<std::size_t>(k)] = log2_sum_exp2(terms) / p;
    }
    out.log2_a_norm = log2_a_from(out.log2_lp_norm,
                                  std::vector<double>(out.log2_errors.begin(), out.log2_errors.end() - 1), prm);
    return out;
}

// ============================================================================
// Spike
// ============================================================================

SparseStepFunction spike(int m, int d) {
    if (m < 0 || d < 1 || d > kMaxDim) throw ParameterError("spike: bad m or d");
    return SparseStepFunction(d, {{DyadicCube::unit(d).lower_corner_descendant(m),
                                   LogReal::from_log2(static_cast<double>(m) * d)}});
}

SparseStepFunction spike_partial_sum(int k, int d) {
    if (k < 0) throw ParameterError("spike partial sum: k must be >= 0");
    return nested_family(NestedSpec{d, 2 * k, NestedRule::Alternating, {}, {}});
}

std::vector<HaarIndex> even_block_indices(int k, int d) {
    std::vector<int> levels;
    for (int l = 0; l <= k; ++l) levels.push_back(2 * l);
    return indices_of_levels(d, levels);
}

SpikePair spike_pair(int m, int d) {
    SpikePair out{spike(m, d), {}};
    for (int k = 0; 2 * k <= m; ++k) out.g.push_back(spike_partial_sum(k, d));
    return out;
}

SpikeClosedForm spike_closed_form(int m, const BesovParams& prm) {
    require_closed_form_params(prm, 1.0, "spike");
    if (m < 0 || m > kMaxClosedFormLevels) throw ParameterError("spike: m out of range");
    SpikeClosedForm out;
    out.log2_lp_norm = static_cast<double>(m) * prm.d * (1.0 - 1.0 / prm.p);
    // E_k(f_m) = |f_m|_p for k < m: zero carries at least half of each cube.
    out.log2_a_norm = log2_a_from(out.log2_lp_norm, std::vector<double>(static_cast<std::size_t>(m), out.log2_lp_norm), prm);
    return out;
}

// ============================================================================
// Scattered family
// ============================================================================

void ScatteredSpec::validate() const {
    if (d < 1 || d > kMaxDim || k < 1) throw ParameterError("scattered family: need k >= 1 and valid d");
    if (static_cast<long>(k) * d - 1 > kMaxScatteredLog2Atoms)
        throw ParameterError("scattered family: 2^{kd-1} atoms exceed the supported count");
    if (!std::isfinite(alpha)) throw ParameterError("scattered family: alpha must be finite");
}

std::uint64_t ScatteredSpec::atom_count() const { return std::uint64_t{1} << (k * d - 1); }

std::vector<DyadicCube> scattered_selection(int k, int d) {
    ScatteredSpec{k, d, 0.0}.validate();
    std::vector<DyadicCube> out;
    const std::uint64_t parents = std::uint64_t{1} << ((k - 1) * d);
    for (std::uint64_t q = 0; q < parents; ++q) {
        const auto parent = DyadicCube::from_flat(d, k - 1, q);
        for (std::uint32_t c = 0; c < (1U << d); ++c)
            if ((c & 1U) == 0) out.push_back(parent.child(c));
    }
    return out;
}

SparseStepFunction scattered(const ScatteredSpec& spec) {
    spec.validate();
    const auto sel = scattered_selection(spec.k, spec.d);
    std::vector<Atom> atoms;
    atoms.reserve(sel.size());
    for (std::size_t i = 1; i <= sel.size(); ++i) {
        const int level = spec.k + static_cast<int>(i);
        const double l2 = static_cast<double>(level) * spec.d - spec.alpha * std::log2(static_cast<double>(i));
        atoms.push_back({sel[i - 1].lower_corner_descendant(level), LogReal::from_log2(l2)});
    }
    return SparseStepFunction(spec.d, std::move(atoms));
}

double ScatteredClosedForm::ratio() const { return std::exp2(log2_ratio()); }

ScatteredClosedForm scattered_closed_norms(const ScatteredSpec& spec, const BesovParams& prm) {
    spec.validate();
    if (!(prm.p < 1.0)) throw UnsupportedError("scattered family: closed form requires p < 1");
    require_closed_form_params(prm, 1.0, "scattered family");
    const int k = spec.k, d = spec.d;
    const double p = prm.p;
    const auto N = static_cast<std::int64_t>(spec.atom_count());

    // |b_i|^p mu(Delta_i) = 2^{-(k+i)d(1-p)} i^{-alpha p}; suffix sums from
    // the smallest term upward.
    std::vector<double> suffix(static_cast<std::size_t>(N) + 2, kNegInf);
    for (std::int64_t i = N; i >= 1; --i) {
        const double t = -static_cast<double>(k + i) * d * (1.0 - p) - spec.alpha * p * std::log2(static_cast<double>(i));
        suffix[static_cast<std::size_t>(i)] = log2_add(suffix[static_cast<std::size_t>(i) + 1], t);
    }

    ScatteredClosedForm out;
    out.log2_lp_f = suffix[1] / p;
    // Every cube meets at most the atoms below it, and zero fills at least
    // half of it, so E_l^p collects the atoms deeper than l.
    for (std::int64_t l = 0; l < k + N; ++l) {
        const std::int64_t first = std::max<std::int64_t>(1, l - k + 1);
        out.log2_errors_f.push_back(suffix[static_cast<std::size_t>(first)] / p);
    }

    // P_k f_k = 2^{kd} i^{-alpha} on the i-th selected cube.
    double acc = kNegInf;
    for (std::int64_t i = N; i >= 1; --i) acc = log2_add(acc, -spec.alpha * p * std::log2(static_cast<double>(i)));
    out.log2_lp_pf = (-static_cast<double>(k) * d * (1.0 - p) + acc) / p;
    out.log2_errors_pf.assign(static_cast<std::size_t>(k), out.log2_lp_pf);

    out.log2_a_f = log2_a_from(out.log2_lp_f, out.log2_errors_f, prm);
    out.log2_a_pf = log2_a_from(out.log2_lp_pf, out.log2_errors_pf, prm);
    return out;
}

// ============================================================================
// Tensor spike
// ============================================================================

TensorHaarIndex tensor_spike_theta(int k, int d) {
    if (d < 2) throw UnsupportedError("tensor spike needs d >= 2");
    if (k < 1 || k > 62) throw ParameterError("tensor spike: k out of range");
    std::vector<std::uint64_t> n(static_cast<std::size_t>(d), 1);
    n[0] = (std::uint64_t{1} << (k - 1)) + 1;
    return TensorHaarIndex(std::move(n));
}

double TensorSpikeClosedForm::ratio() const { return std::exp2(log2_ratio()); }

TensorSpikeClosedForm tensor_spike_closed_form(int k, const BesovParams& prm) {
    const int d = prm.d;
    (void)tensor_spike_theta(k, d);
    require_closed_form_params(prm, 1.0, "tensor spike");
    const double p = prm.p;
    TensorSpikeClosedForm out;
    out.coefficient = std::exp2(static_cast<double>(k - 1) - static_cast<double>(k) * d);
    out.log2_lp_f = -static_cast<double>(k) * d / p;
    out.log2_lp_theta = -static_cast<double>(k - 1) / p;
    out.log2_errors_f.assign(static_cast<std::size_t>(k), out.log2_lp_f);
    out.log2_errors_theta.assign(static_cast<std::size_t>(k), out.log2_lp_theta);
    // On level k-1 each cube sees +1 and -1 on halves: E_{k-1} = 2^{1-1/p} |theta|_p.
    out.log2_errors_theta.back() = 1.0 - 1.0 / p + out.log2_lp_theta;
    out.log2_a_f = log2_a_from(out.log2_lp_f, out.log2_errors_f, prm);
    out.log2_a_projection = std::log2(out.coefficient) + log2_a_from(out.log2_lp_theta, out.log2_errors_theta, prm);
    return out;
}

TensorSpikePair tensor_spike_pair(int k, int d, const Limits& limits) {
    auto theta = tensor_spike_theta(k, d);
    const SparseStepFunction box(d, {{DyadicCube::unit(d).lower_corner_descendant(k), LogReal::from_double(1.0)}});
    auto f = densify(box, k, limits);
    auto proj = rank_one_project(f, theta, limits);
    return {std::move(f), std::move(theta), std::move(proj)};
}

std::string_view to_string(NestedRule r) {
    switch (r) {
        case NestedRule::TrivialDual: return "trivial-dual";
        case NestedRule::Alternating: return "alternating";
        case NestedRule::Explicit: return "explicit";
    }
    return "unknown";
}

std::optional<NestedRule> nested_rule_from_string(std::string_view s) {
    if (s == "trivial-dual") return NestedRule::TrivialDual;
    if (s == "alternating") return NestedRule::Alternating;
    if (s == "explicit") return NestedRule::Explicit;
    return std::nullopt;
}

}  // namespace haar_besov
