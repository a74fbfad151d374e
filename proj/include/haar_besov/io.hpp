#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "haar_besov/counterexamples.hpp"
#include "haar_besov/dyadic.hpp"
#include "haar_besov/haar.hpp"

namespace haar_besov::io {

// Dense JSON: {"d", "m", "values": [...]} (row-major).
// Dense binary: "HBDS", u32 version (1), u32 d, u32 m, then 2^{md} float64,
// all little-endian.
// Sparse JSON: {"d", "atoms": [{"level", "index": [...], "sign", "log2mag"}]};
// indices beyond 64 bits are written as decimal strings.
// Coefficients JSON: {"d", "K", "levels": [{"k", "entries": [{"parent", "pattern", "value"}]}]};
// the scaling coefficient is the level-0 entry with parent [] and pattern 0.
// Tensor JSON: {"d", "entries": [{"n": [...], "value"}]}.

[[nodiscard]] std::string dense_to_json(const DyadicStepFunction& f);
[[nodiscard]] DyadicStepFunction dense_from_json(const std::string& text, const Limits& limits = {});
void write_dense_binary(std::ostream& os, const DyadicStepFunction& f);
[[nodiscard]] DyadicStepFunction read_dense_binary(std::istream& is, const Limits& limits = {});

[[nodiscard]] std::string sparse_to_json(const SparseStepFunction& f);
[[nodiscard]] SparseStepFunction sparse_from_json(const std::string& text);

[[nodiscard]] std::string coefficients_to_json(const HaarCoefficients& c);
[[nodiscard]] HaarCoefficients coefficients_from_json(const std::string& text, const Limits& limits = {});

// Zero entries are omitted.
[[nodiscard]] std::string tensor_to_json(const TensorHaarCoefficients& c);
// Missing entries are zero; the grid level is the largest index level.
[[nodiscard]] TensorHaarCoefficients tensor_from_json(const std::string& text, const Limits& limits = {});

// {"family": "nested", "d", "m", "rule", "coefficients"?} and
// {"family": "scattered", "k", "d", "alpha"}.
[[nodiscard]] std::string nested_spec_to_json(const NestedSpec& spec);
[[nodiscard]] NestedSpec nested_spec_from_json(const std::string& text);
[[nodiscard]] std::string scattered_spec_to_json(const ScatteredSpec& spec);
[[nodiscard]] ScatteredSpec scattered_spec_from_json(const std::string& text);

// Any of the function/coefficient documents above, told apart by their keys
// (or the binary magic).
using Document = std::variant<DyadicStepFunction, SparseStepFunction, HaarCoefficients, TensorHaarCoefficients>;
[[nodiscard]] Document read_document(const std::string& bytes, const Limits& limits = {});

}  // namespace haar_besov::io
