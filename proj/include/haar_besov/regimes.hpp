#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haar_besov/params.hpp"

namespace haar_besov {

enum class Regime {
    UnconditionalBasis,
    ConditionalBasis,
    NotBasisTrivialDual,
    NotBasisUnboundedProjectors,
    NotBasisTensor,
    DegenerateSpace,
};

enum class HaarSystemKind { Isotropic, Tensor };

struct Classification {
    Regime regime;
    std::string citation;            // which result decides the case
    std::vector<std::string> notes;  // e.g. "s=0 extension"
};

// Basis properties of the Haar system in B^s_{p,q}(I^d). Needs q finite and
// 0 <= s < 1/p; s >= 1/p is rejected unless allow_degenerate, in which case
// it maps to DegenerateSpace.
[[nodiscard]] Classification classify(const BesovParams& prm, HaarSystemKind system, bool allow_degenerate = false);

// max(d(1/p-1), 0) < s < 1/p
[[nodiscard]] bool in_isomorphism_range(const BesovParams& prm);

[[nodiscard]] std::string_view to_string(Regime r);
[[nodiscard]] std::optional<Regime> regime_from_string(std::string_view name);
[[nodiscard]] std::string_view to_string(HaarSystemKind k);
[[nodiscard]] std::optional<HaarSystemKind> system_from_string(std::string_view name);

}  // namespace haar_besov
