#include <algorithm>
#include <cmath>
#include <vector>

#include "haar_besov/dyadic.hpp"
#include "haar_besov/reduce.hpp"
#include "sparse_detail.hpp"

namespace haar_besov {

ValueHistogram::ValueHistogram(std::vector<HistogramEntry> entries) {
    for (const auto& e : entries)
        if (!std::isfinite(e.value) || !std::isfinite(e.measure))
            throw ParameterError("histogram entries must be finite");
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    for (const auto& e : entries) {
        if (!(e.measure > 0.0)) continue;
        if (!entries_.empty() && entries_.back().value == e.value)
            entries_.back().measure += e.measure;
        else
            entries_.push_back(e);
    }
}

double ValueHistogram::total_measure() const {
    CompensatedSum acc;
    for (const auto& e : entries_) acc.add(e.measure);
    return acc.value();
}

ValueHistogram value_histogram(const DyadicStepFunction& f, const DyadicCube& cube) {
    if (cube.dim() != f.dim()) throw ParameterError("cube dimension mismatch");
    if (cube.level() >= f.level()) {
        const auto anc = cube.ancestor(f.level());
        return ValueHistogram({{f[anc.flat_index()], detail::measure_as_double(cube.log2_measure())}});
    }
    std::vector<double> vals;
    cube.for_each_cell(f.level(), [&](std::uint64_t flat) { vals.push_back(f[flat]); });
    std::sort(vals.begin(), vals.end());
    const double cell = f.cell_measure();
    std::vector<HistogramEntry> entries;
    for (std::size_t i = 0; i < vals.size();) {
        std::size_t j = i;
        while (j < vals.size() && vals[j] == vals[i]) ++j;
        entries.push_back({vals[i], static_cast<double>(j - i) * cell});
        i = j;
    }
    return ValueHistogram(std::move(entries));
}

ValueHistogram value_histogram(const SparseStepFunction& f, const DyadicCube& cube) {
    if (cube.dim() != f.dim()) throw ParameterError("cube dimension mismatch");
    double base = 0.0;
    std::vector<Atom> inner;
    for (const auto& a : f.atoms()) {
        if (a.coefficient.is_zero()) continue;
        if (a.cube.contains(cube))
            base += detail::coefficient_as_double(a.coefficient);
        else if (cube.contains(a.cube))
            inner.push_back(a);
    }
    std::sort(inner.begin(), inner.end(), [](const Atom& x, const Atom& y) { return preorder_less(x.cube, y.cube); });

    struct Node {
        const DyadicCube* cube;
        double value;     // f on the part of the cube not covered by children
        double measure;   // cube measure
        double covered;   // measure of child cubes
    };
    std::vector<Node> nodes;
    std::vector<std::size_t> stack;
    double top_covered = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const double c = detail::coefficient_as_double(inner[i].coefficient);
        if (!nodes.empty() && *nodes.back().cube == inner[i].cube) {
            // repeated cube: fold into the existing node
            nodes.back().value += c;
            continue;
        }
        while (!stack.empty() && !nodes[stack.back()].cube->contains(inner[i].cube)) stack.pop_back();
        const double mu = detail::measure_as_double(inner[i].cube.log2_measure());
        const double parent_value = stack.empty() ? base : nodes[stack.back()].value;
        if (stack.empty())
            top_covered += mu;
        else
            nodes[stack.back()].covered += mu;
        nodes.push_back({&inner[i].cube, parent_value + c, mu, 0.0});
        stack.push_back(nodes.size() - 1);
    }
    // A repeated cube changes the value seen by its descendants; the sort
    // keeps repeats adjacent and before descendants, so values are final here.
    std::vector<HistogramEntry> entries;
    entries.push_back({base, detail::measure_as_double(cube.log2_measure()) - top_covered});
    for (const auto& n : nodes) entries.push_back({n.value, n.measure - n.covered});
    return ValueHistogram(std::move(entries));
}

}  // namespace haar_besov
