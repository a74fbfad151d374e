#include "haar_besov/regimes.hpp"

#include <array>
#include <cmath>

#include "haar_besov/errors.hpp"

namespace haar_besov {

namespace {

constexpr std::array<std::pair<Regime, std::string_view>, 6> kRegimeNames{{
    {Regime::UnconditionalBasis, "UnconditionalBasis"},
    {Regime::ConditionalBasis, "ConditionalBasis"},
    {Regime::NotBasisTrivialDual, "NotBasisTrivialDual"},
    {Regime::NotBasisUnboundedProjectors, "NotBasisUnboundedProjectors"},
    {Regime::NotBasisTensor, "NotBasisTensor"},
    {Regime::DegenerateSpace, "DegenerateSpace"},
}};

Classification isotropic(const BesovParams& prm) {
    const double p = prm.p, q = prm.q, s = prm.s;
    if (p >= 1.0) {
        if (s > 0.0)
            return {Regime::UnconditionalBasis, "isotropic Haar, p >= 1, 0 < s < 1/p: unconditional basis", {}};
        if (p > 1.0)
            return {Regime::UnconditionalBasis, "isotropic Haar, s = 0, 1 < p < inf: unconditional basis", {}};
        return {Regime::ConditionalBasis, "isotropic Haar, s = 0, p = 1: basis, not unconditional", {}};
    }
    const double crit = prm.critical_s();
    if (nearly_equal(s, crit) && s > 0.0) {
        if (q <= p)
            return {Regime::ConditionalBasis,
                    "isotropic Haar, p < 1, s = d(1/p-1), q <= p: basis, not unconditional", {}};
        if (q <= 1.0)
            return {Regime::NotBasisUnboundedProjectors,
                    "isotropic Haar, p < 1, s = d(1/p-1), p < q <= 1: level partial sums unbounded",
                    {"existence of some other basis in this range is open"}};
        return {Regime::NotBasisTrivialDual,
                "isotropic Haar, p < 1, s = d(1/p-1), q > 1: trivial dual, no basis", {}};
    }
    if (s > crit) return {Regime::UnconditionalBasis, "isotropic Haar, p < 1, d(1/p-1) < s < 1/p: unconditional basis", {}};
    Classification c{Regime::NotBasisTrivialDual, "isotropic Haar, p < 1, s < d(1/p-1): trivial dual, no basis", {}};
    if (s == 0.0) c.notes.emplace_back("s=0 extension");
    return c;
}

Classification tensor(const BesovParams& prm) {
    if (prm.p > 1.0) return {Regime::UnconditionalBasis, "tensor Haar, 1 < p < inf: unconditional basis", {}};
    if (prm.p == 1.0) return {Regime::ConditionalBasis, "tensor Haar, p = 1: basis, not unconditional", {}};
    return {Regime::NotBasisTensor, "tensor Haar, 0 < p < 1, d >= 2: not a Schauder basis", {}};
}

}  // namespace

bool in_isomorphism_range(const BesovParams& prm) {
    const double lo = std::max(prm.critical_s(), 0.0);
    return prm.s > lo && !nearly_equal(prm.s, lo) && prm.s < 1.0 / prm.p;
}

Classification classify(const BesovParams& prm, HaarSystemKind system, bool allow_degenerate) {
    if (!(prm.p > 0.0) || !std::isfinite(prm.p) || !(prm.s >= 0.0) || prm.d < 1)
        throw ParameterError("classify: parameters outside the valid domain");
    if (prm.q_infinite() || !(prm.q > 0.0)) throw ParameterError("classify needs a finite q > 0");
    if (prm.s >= 1.0 / prm.p) {
        if (!allow_degenerate) throw ParameterError("classify: s >= 1/p (space reduces to constants)");
        return {Regime::DegenerateSpace, "s >= 1/p: the space reduces to constants", {}};
    }
    if (system == HaarSystemKind::Tensor && prm.d >= 2) return tensor(prm);
    Classification c = isotropic(prm);
    if (system == HaarSystemKind::Tensor) c.notes.emplace_back("d=1: tensor and isotropic systems coincide");
    return c;
}

std::string_view to_string(Regime r) {
    for (const auto& [k, v] : kRegimeNames)
        if (k == r) return v;
    return "Unknown";
}

std::optional<Regime> regime_from_string(std::string_view name) {
    for (const auto& [k, v] : kRegimeNames)
        if (v == name) return k;
    return std::nullopt;
}

std::string_view to_string(HaarSystemKind k) { return k == HaarSystemKind::Isotropic ? "isotropic" : "tensor"; }

std::optional<HaarSystemKind> system_from_string(std::string_view name) {
    if (name == "isotropic") return HaarSystemKind::Isotropic;
    if (name == "tensor") return HaarSystemKind::Tensor;
    return std::nullopt;
}

}  // namespace haar_besov
