#include <cmath>
#include <sstream>

#include "haar_besov/dyadic.hpp"

namespace haar_besov {

namespace {

void check_dim(int d) {
    if (d < 1 || d > kMaxDim)
        throw ParameterError("dimension must be in [1, " + std::to_string(kMaxDim) + "], got " + std::to_string(d));
}

BigIndex pow2(int k) { return BigIndex(1) << k; }

}  // namespace

CapacityError::CapacityError(double log2_required_cells, std::uint64_t budget)
    : std::length_error([&] {
          std::ostringstream os;
          os << "dense grid needs ";
          if (log2_required_cells < 63)
              os << (std::uint64_t{1} << static_cast<int>(log2_required_cells));
          else
              os << "2^" << log2_required_cells;
          os << " cells, budget is " << budget;
          return os.str();
      }()),
      log2_required_(log2_required_cells),
      budget_(budget) {}

std::uint64_t checked_cell_count(int d, int level, const Limits& limits) {
    check_dim(d);
    if (level < 0) throw ParameterError("level must be >= 0");
    const long bits = static_cast<long>(level) * d;
    if (bits >= 63 || (std::uint64_t{1} << bits) > limits.max_cells)
        throw CapacityError(static_cast<double>(bits), limits.max_cells);
    return std::uint64_t{1} << bits;
}

std::uint64_t flat_from_coords(std::span<const std::uint64_t> coords, int level) {
    std::uint64_t flat = 0;
    for (auto c : coords) flat = (flat << level) | c;
    return flat;
}

void coords_from_flat(std::uint64_t flat, int level, std::span<std::uint64_t> coords) {
    const std::uint64_t mask = (std::uint64_t{1} << level) - 1;
    for (std::size_t j = coords.size(); j-- > 0;) {
        coords[j] = flat & mask;
        flat >>= level;
    }
}

// ============================================================================
// DyadicCube
// ============================================================================

DyadicCube::DyadicCube(int d, int level, std::vector<BigIndex> index)
    : d_(d), level_(level), index_(std::move(index)) {
    check_dim(d);
    if (level < 0) throw ParameterError("cube level must be >= 0");
    if (index_.size() != static_cast<std::size_t>(d)) throw ParameterError("cube index has wrong length");
    const BigIndex bound = pow2(level);
    for (const auto& i : index_)
        if (i < 0 || i >= bound) throw ParameterError("cube index component out of range for its level");
}

DyadicCube DyadicCube::unit(int d) { return DyadicCube(d, 0, std::vector<BigIndex>(static_cast<std::size_t>(d), 0)); }

DyadicCube DyadicCube::from_flat(int d, int level, std::uint64_t flat) {
    check_dim(d);
    if (static_cast<long>(level) * d > 62) throw ParameterError("flat index needs level*d <= 62");
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d));
    coords_from_flat(flat, level, c);
    return from_coords(d, level, c);
}

DyadicCube DyadicCube::from_coords(int d, int level, std::span<const std::uint64_t> coords) {
    std::vector<BigIndex> idx(coords.begin(), coords.end());
    return DyadicCube(d, level, std::move(idx));
}

double DyadicCube::measure() const noexcept { return std::exp2(log2_measure()); }

bool DyadicCube::contains(const DyadicCube& o) const {
    if (o.d_ != d_ || o.level_ < level_) return false;
    const int shift = o.level_ - level_;
    for (int j = 0; j < d_; ++j)
        if ((o.index_[j] >> shift) != index_[j]) return false;
    return true;
}

DyadicCube DyadicCube::ancestor(int level) const {
    if (level < 0 || level > level_) throw ParameterError("ancestor level out of range");
    std::vector<BigIndex> idx(index_.size());
    const int shift = level_ - level;
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = index_[j] >> shift;
    return DyadicCube(d_, level, std::move(idx));
}

DyadicCube DyadicCube::parent() const {
    if (level_ == 0) throw ParameterError("the unit cube has no parent");
    return ancestor(level_ - 1);
}

DyadicCube DyadicCube::child(std::uint32_t bits) const {
    std::vector<BigIndex> idx(index_.size());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = (index_[j] << 1) + ((bits >> j) & 1U);
    return DyadicCube(d_, level_ + 1, std::move(idx));
}

std::uint32_t DyadicCube::child_bits() const {
    if (level_ == 0) throw ParameterError("the unit cube has no parent");
    std::uint32_t bits = 0;
    for (int j = 0; j < d_; ++j)
        if (bit_test(index_[j], 0)) bits |= 1U << j;
    return bits;
}

DyadicCube DyadicCube::lower_corner_descendant(int level) const {
    if (level < level_) throw ParameterError("descendant level below cube level");
    std::vector<BigIndex> idx(index_.size());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = index_[j] << (level - level_);
    return DyadicCube(d_, level, std::move(idx));
}

std::uint64_t DyadicCube::flat_index() const {
    if (static_cast<long>(level_) * d_ > 62) throw ParameterError("flat index needs level*d <= 62");
    const auto c = coords();
    return flat_from_coords(c, level_);
}

std::vector<std::uint64_t> DyadicCube::coords() const {
    if (level_ > 63) throw ParameterError("cube too deep for 64-bit coordinates");
    std::vector<std::uint64_t> c(index_.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = index_[j].convert_to<std::uint64_t>();
    return c;
}

void DyadicCube::for_each_cell(int m, const std::function<void(std::uint64_t)>& fn) const {
    if (m < level_) throw ParameterError("cell level below cube level");
    if (static_cast<long>(m) * d_ > 62) throw ParameterError("cell level too deep for flat indices");
    const auto lo = coords();
    const std::uint64_t side = std::uint64_t{1} << (m - level_);
    std::vector<std::uint64_t> x(lo.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = lo[j] * side;
    const std::size_t last = x.size() - 1;
    for (;;) {
        const std::uint64_t row = flat_from_coords(x, m);
        for (std::uint64_t t = 0; t < side; ++t) fn(row + t);
        std::size_t j = last;
        bool done = true;
        while (j-- > 0) {
            if (++x[j] < (lo[j] + 1) * side) {
                done = false;
                break;
            }
            x[j] = lo[j] * side;
        }
        if (done) break;
    }
}

std::string DyadicCube::to_string() const {
    std::ostringstream os;
    os << "Q(level=" << level_ << ", index=[";
    for (std::size_t j = 0; j < index_.size(); ++j) os << (j ? "," : "") << index_[j];
    os << "])";
    return os.str();
}

bool preorder_less(const DyadicCube& a, const DyadicCube& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    const int common = std::min(a.level(), b.level());
    const int sa = a.level() - common, sb = b.level() - common;
    // Highest differing bit among the ancestors at the common level decides.
    long top = -1;
    for (int j = 0; j < a.dim(); ++j) {
        const BigIndex x = (a.index(j) >> sa) ^ (b.index(j) >> sb);
        if (x != 0) top = std::max<long>(top, static_cast<long>(msb(x)));
    }
    if (top < 0) return a.level() < b.level();  // one contains the other
    for (int j = 0; j < a.dim(); ++j) {
        const bool ba = bit_test(BigIndex(a.index(j) >> sa), static_cast<unsigned>(top));
        const bool bb = bit_test(BigIndex(b.index(j) >> sb), static_cast<unsigned>(top));
        if (ba != bb) return !ba;
    }
    return false;
}

bool CubeKeyLess::operator()(const DyadicCube& a, const DyadicCube& b) const {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.level() != b.level()) return a.level() < b.level();
    for (int j = 0; j < a.dim(); ++j)
        if (a.index(j) != b.index(j)) return a.index(j) < b.index(j);
    return false;
}

}  // namespace haar_besov
