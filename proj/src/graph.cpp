#include "cascade/graph.hpp"

#include "cascade/errors.hpp"
#include "cascade/rng.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace cascade {

DirectedGraph DirectedGraph::build_configuration(const DegreeSequence& seq,
                                                 std::uint64_t seed) {
    if (seq.size() == 0)
        throw ValidationError("build_configuration: empty sequence");
    const std::int64_t in = seq.in_sum();
    const std::int64_t out = seq.out_sum();
    if (in != out)
        throw ValidationError("build_configuration: stub counts differ (" +
                              std::to_string(in) + " in vs " + std::to_string(out) +
                              " out); balance the sequence first");

    const std::size_t n = seq.size();
    const std::size_t m = static_cast<std::size_t>(out);

    // Stub arrays in canonical node order; the out side gets the seeded
    // uniform shuffle, which is a uniform random perfect matching.
    std::vector<std::uint32_t> out_stubs;
    std::vector<std::uint32_t> in_stubs;
    out_stubs.reserve(m);
    in_stubs.reserve(m);
    for (std::size_t v = 0; v < n; ++v) {
        out_stubs.insert(out_stubs.end(), seq.out_deg[v], static_cast<std::uint32_t>(v));
        in_stubs.insert(in_stubs.end(), seq.in_deg[v], static_cast<std::uint32_t>(v));
    }

    Rng rng(seed);
    for (std::size_t j = m; j > 1; --j)
        std::swap(out_stubs[j - 1], out_stubs[rng.uniform_below(j)]);

    DirectedGraph g;
    g.in_deg_ = seq.in_deg;
    g.out_deg_ = seq.out_deg;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.offsets_[v + 1] = g.offsets_[v] + seq.out_deg[v];
    g.targets_.resize(m);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t e = 0; e < m; ++e)
        g.targets_[cursor[out_stubs[e]]++] = in_stubs[e];
    return g;
}

std::size_t DirectedGraph::self_loop_count() const {
    std::size_t count = 0;
    for (std::size_t v = 0; v < node_count(); ++v)
        for (std::uint32_t w : out_neighbors(v))
            if (w == v) ++count;
    return count;
}

std::size_t DirectedGraph::multi_edge_count() const {
    std::size_t extra = 0;
    std::unordered_map<std::uint32_t, int> seen;
    for (std::size_t v = 0; v < node_count(); ++v) {
        seen.clear();
        for (std::uint32_t w : out_neighbors(v))
            if (++seen[w] > 1) ++extra;
    }
    return extra;
}

void DirectedGraph::dump_edges(std::ostream& os) const {
    os << node_count() << ' ' << edge_count() << '\n';
    for (std::size_t v = 0; v < node_count(); ++v)
        for (std::uint32_t w : out_neighbors(v))
            os << v << ' ' << w << '\n';
}

std::map<DegreeClass, std::size_t> degree_census(const DirectedGraph& g) {
    std::map<DegreeClass, std::size_t> census;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        census[g.class_of(v)] += 1;
    return census;
}

ClassLayout ClassLayout::of(const DirectedGraph& g) {
    ClassLayout layout;
    const auto census = degree_census(g);
    layout.classes.reserve(census.size());
    layout.counts.reserve(census.size());
    for (const auto& [cls, count] : census) {
        layout.classes.push_back(cls);
        layout.counts.push_back(count);
    }
    layout.node_class.resize(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        const auto it = std::lower_bound(layout.classes.begin(),
                                         layout.classes.end(), g.class_of(v));
        layout.node_class[v] =
            static_cast<std::uint32_t>(it - layout.classes.begin());
    }
    return layout;
}

} // namespace cascade
