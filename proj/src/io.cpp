#include "haar_besov/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

namespace haar_besov::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kMagic[4] = {'H', 'B', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParameterError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ParameterError(std::string("bad type for field '") + key + "'");
    }
}

int dim_field(const json& j) {
    const int d = field<int>(j, "d");
    if (d < 1 || d > kMaxDim) throw ParameterError("d out of range");
    return d;
}

ordered_json index_to_json(const BigIndex& i) {
    if (i <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(i);
    return i.str();
}

BigIndex index_from_json(const json& j) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0))
        return BigIndex(j.get<std::uint64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParameterError("bad cube index '" + s + "'");
        return BigIndex(s);
    }
    throw ParameterError("cube index must be a non-negative integer or decimal string");
}

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw ParameterError("truncated binary header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return v;
}

}  // namespace

// ============================================================================
// Dense
// ============================================================================

std::string dense_to_json(const DyadicStepFunction& f) {
    ordered_json j;
    j["d"] = f.dim();
    j["m"] = f.level();
    j["values"] = std::vector<double>(f.values().begin(), f.values().end());
    return j.dump() + "\n";
}

DyadicStepFunction dense_from_json(const std::string& text, const Limits& limits) {
    const json j = parse(text);
    const int d = dim_field(j);
    const int m = field<int>(j, "m");
    if (m < 0) throw ParameterError("m must be non-negative");
    const auto n = checked_cell_count(d, m, limits);
    auto values = field<std::vector<double>>(j, "values");
    if (values.size() != n) throw ParameterError("expected " + std::to_string(n) + " values");
    return DyadicStepFunction(d, m, std::move(values));
}

void write_dense_binary(std::ostream& os, const DyadicStepFunction& f) {
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(f.dim()));
    put_u32(os, static_cast<std::uint32_t>(f.level()));
    for (double v : f.values()) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
        os.write(reinterpret_cast<const char*>(b), 8);
    }
}

DyadicStepFunction read_dense_binary(std::istream& is, const Limits& limits) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw ParameterError("not a dense binary file");
    if (get_u32(is) != kVersion) throw ParameterError("unsupported binary version");
    const auto d = get_u32(is);
    const auto m = get_u32(is);
    if (d < 1 || d > kMaxDim || m > 62) throw ParameterError("bad binary header");
    const auto n = checked_cell_count(static_cast<int>(d), static_cast<int>(m), limits);
    std::vector<double> values(n);
    for (auto& v : values) {
        unsigned char b[8];
        if (!is.read(reinterpret_cast<char*>(b), 8)) throw ParameterError("truncated binary payload");
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= std::uint64_t{b[i]} << (8 * i);
        v = std::bit_cast<double>(bits);
    }
    return DyadicStepFunction(static_cast<int>(d), static_cast<int>(m), std::move(values));
}

// ============================================================================
// Sparse
// ============================================================================

std::string sparse_to_json(const SparseStepFunction& f) {
    ordered_json j;
    j["d"] = f.dim();
    ordered_json atoms = ordered_json::array();
    for (const auto& a : f.atoms()) {
        ordered_json x;
        x["level"] = a.cube.level();
        ordered_json idx = ordered_json::array();
        for (const auto& i : a.cube.index()) idx.push_back(index_to_json(i));
        x["index"] = idx;
        x["sign"] = a.coefficient.sign;
        x["log2mag"] = a.coefficient.sign == 0 ? ordered_json("-inf") : ordered_json(a.coefficient.log2mag);
        atoms.push_back(x);
    }
    j["atoms"] = atoms;
    return j.dump() + "\n";
}

SparseStepFunction sparse_from_json(const std::string& text) {
    const json j = parse(text);
    const int d = dim_field(j);
    const auto& arr = j.at("atoms");
    if (!arr.is_array()) throw ParameterError("atoms must be an array");
    std::vector<Atom> atoms;
    for (const auto& a : arr) {
        const int level = field<int>(a, "level");
        const auto& idx = a.at("index");
        if (!idx.is_array() || static_cast<int>(idx.size()) != d) throw ParameterError("index must have d entries");
        std::vector<BigIndex> index;
        for (const auto& i : idx) index.push_back(index_from_json(i));
        const int sign = field<int>(a, "sign");
        if (sign < -1 || sign > 1) throw ParameterError("sign must be -1, 0 or 1");
        LogReal c = LogReal::zero();
        if (sign != 0) {
            const double l = field<double>(a, "log2mag");
            if (!std::isfinite(l)) throw ParameterError("log2mag must be finite for a nonzero atom");
            c = LogReal::from_log2(l, sign);
        }
        atoms.push_back({DyadicCube(d, level, std::move(index)), c});
    }
    return SparseStepFunction(d, std::move(atoms));
}

// ============================================================================
// Coefficients
// ============================================================================

std::string coefficients_to_json(const HaarCoefficients& c) {
    ordered_json j;
    j["d"] = c.dim();
    j["K"] = c.max_level();
    ordered_json levels = ordered_json::array();
    for (int k = 0; k <= c.max_level(); ++k) {
        ordered_json lv;
        lv["k"] = k;
        ordered_json entries = ordered_json::array();
        const auto vals = c.level(k);
        for (std::size_t slot = 0; slot < vals.size(); ++slot) {
            ordered_json e;
            const auto h = c.index_at(k, slot);
            e["parent"] = h.is_scaling() ? std::vector<std::uint64_t>{} : h.support().coords();
            e["pattern"] = h.pattern();
            e["value"] = vals[slot];
            entries.push_back(e);
        }
        lv["entries"] = entries;
        levels.push_back(lv);
    }
    j["levels"] = levels;
    return j.dump() + "\n";
}

HaarCoefficients coefficients_from_json(const std::string& text, const Limits& limits) {
    const json j = parse(text);
    const int d = dim_field(j);
    const int K = field<int>(j, "K");
    if (K < 0) throw ParameterError("K must be non-negative");
    HaarCoefficients c(d, K, limits);
    for (const auto& lv : j.at("levels")) {
        const int k = field<int>(lv, "k");
        if (k < 0 || k > K) throw ParameterError("level out of range");
        for (const auto& e : lv.at("entries")) {
            const auto parent = field<std::vector<std::uint64_t>>(e, "parent");
            const auto pattern = field<std::uint32_t>(e, "pattern");
            const double value = field<double>(e, "value");
            if (k == 0) {
                if (!parent.empty() || pattern != 0) throw ParameterError("level 0 holds only the scaling entry");
                c.set(HaarIndex::scaling(d), value);
            } else {
                if (static_cast<int>(parent.size()) != d) throw ParameterError("parent must have d entries");
                if (pattern == 0 || pattern >= (std::uint32_t{1} << d)) throw ParameterError("pattern out of range");
                c.set(HaarIndex::wavelet(DyadicCube::from_coords(d, k - 1, parent), pattern), value);
            }
        }
    }
    return c;
}

std::string tensor_to_json(const TensorHaarCoefficients& c) {
    ordered_json j;
    j["d"] = c.dim();
    ordered_json entries = ordered_json::array();
    const auto vals = c.values();
    for (std::size_t slot = 0; slot < vals.size(); ++slot) {
        if (vals[slot] == 0.0) continue;
        ordered_json e;
        e["n"] = c.index_at(slot).ns();
        e["value"] = vals[slot];
        entries.push_back(e);
    }
    j["entries"] = entries;
    return j.dump() + "\n";
}

TensorHaarCoefficients tensor_from_json(const std::string& text, const Limits& limits) {
    const json j = parse(text);
    const int d = dim_field(j);
    std::vector<std::pair<TensorHaarIndex, double>> items;
    int m = 0;
    for (const auto& e : j.at("entries")) {
        auto n = field<std::vector<std::uint64_t>>(e, "n");
        if (static_cast<int>(n.size()) != d) throw ParameterError("n must have d entries");
        TensorHaarIndex t(std::move(n));
        m = std::max(m, t.level());
        items.emplace_back(std::move(t), field<double>(e, "value"));
    }
    std::vector<double> values(checked_cell_count(d, m, limits), 0.0);
    const std::uint64_t side = std::uint64_t{1} << m;
    for (const auto& [t, v] : items) {
        std::uint64_t flat = 0;
        for (int i = 0; i < d; ++i) flat = flat * side + (t.n(i) - 1);
        values[flat] = v;
    }
    return TensorHaarCoefficients(d, m, std::move(values));
}

// ============================================================================
// Family specs
// ============================================================================

std::string nested_spec_to_json(const NestedSpec& spec) {
    ordered_json j;
    j["family"] = "nested";
    j["d"] = spec.d;
    j["m"] = spec.m;
    j["rule"] = std::string(to_string(spec.rule));
    if (spec.rule == NestedRule::Explicit) j["coefficients"] = spec.coefficients;
    if (!spec.chain.empty()) {
        ordered_json chain = ordered_json::array();
        for (const auto& q : spec.chain) {
            ordered_json x;
            x["level"] = q.level();
            ordered_json idx = ordered_json::array();
            for (const auto& i : q.index()) idx.push_back(index_to_json(i));
            x["index"] = idx;
            chain.push_back(x);
        }
        j["chain"] = chain;
    }
    return j.dump() + "\n";
}

NestedSpec nested_spec_from_json(const std::string& text) {
    const json j = parse(text);
    if (field<std::string>(j, "family") != "nested") throw ParameterError("not a nested family spec");
    NestedSpec spec;
    spec.d = dim_field(j);
    spec.m = field<int>(j, "m");
    const auto rule = nested_rule_from_string(field<std::string>(j, "rule"));
    if (!rule) throw ParameterError("unknown nested rule");
    spec.rule = *rule;
    if (j.contains("coefficients")) spec.coefficients = field<std::vector<double>>(j, "coefficients");
    if (j.contains("chain"))
        for (const auto& q : j.at("chain")) {
            std::vector<BigIndex> index;
            for (const auto& i : q.at("index")) index.push_back(index_from_json(i));
            spec.chain.emplace_back(spec.d, field<int>(q, "level"), std::move(index));
        }
    spec.validate();
    return spec;
}

std::string scattered_spec_to_json(const ScatteredSpec& spec) {
    ordered_json j;
    j["family"] = "scattered";
    j["k"] = spec.k;
    j["d"] = spec.d;
    j["alpha"] = spec.alpha;
    return j.dump() + "\n";
}

ScatteredSpec scattered_spec_from_json(const std::string& text) {
    const json j = parse(text);
    if (field<std::string>(j, "family") != "scattered") throw ParameterError("not a scattered family spec");
    ScatteredSpec spec{field<int>(j, "k"), dim_field(j), field<double>(j, "alpha")};
    spec.validate();
    return spec;
}

// ============================================================================
// Auto-detection
// ============================================================================

Document read_document(const std::string& bytes, const Limits& limits) {
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
        std::istringstream is(bytes);
        return read_dense_binary(is, limits);
    }
    const json j = parse(bytes);
    if (!j.is_object()) throw ParameterError("expected a JSON object");
    if (j.contains("values")) return dense_from_json(bytes, limits);
    if (j.contains("atoms")) return sparse_from_json(bytes);
    if (j.contains("levels")) return coefficients_from_json(bytes, limits);
    if (j.contains("entries")) return tensor_from_json(bytes, limits);
    throw ParameterError("unrecognized document");
}

}  // namespace haar_besov::io
