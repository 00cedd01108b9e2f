#pragma once

// Directed configuration-model multigraph: uniform random pairing of
// out-stubs with in-stubs from a balanced degree sequence. Self-loops and
// multi-edges are kept; under broadcast infection semantics they are
// dynamically inert, and erasing them would bias the realized degrees.

#include "cascade/degree_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace cascade {

class DirectedGraph {
  public:
    // Requires sum(in_deg) == sum(out_deg); throws ValidationError otherwise.
    // Deterministic function of (sequence, seed).
    static DirectedGraph build_configuration(const DegreeSequence& seq,
                                             std::uint64_t seed);

    std::size_t node_count() const { return in_deg_.size(); }
    std::size_t edge_count() const { return targets_.size(); }

    int in_degree(std::size_t v) const { return in_deg_[v]; }
    int out_degree(std::size_t v) const { return out_deg_[v]; }
    DegreeClass class_of(std::size_t v) const { return {in_deg_[v], out_deg_[v]}; }

    // Out-neighbors of v in deterministic order; repeats encode multi-edges.
    std::span<const std::uint32_t> out_neighbors(std::size_t v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    std::size_t self_loop_count() const;
    std::size_t multi_edge_count() const; // edges beyond the first per (src,dst) pair

    // Edge-list dump: header "N M", then one "src dst" line per edge.
    void dump_edges(std::ostream& os) const;

  private:
    std::vector<int> in_deg_;
    std::vector<int> out_deg_;
    std::vector<std::size_t> offsets_; // size n+1, CSR over sources
    std::vector<std::uint32_t> targets_;
};

// Node counts per degree class.
std::map<DegreeClass, std::size_t> degree_census(const DirectedGraph& g);

// Degree classes of a graph in sorted order, with node counts and a
// per-node class index; the shared indexing scheme for per-class
// trajectories.
struct ClassLayout {
    std::vector<DegreeClass> classes;     // sorted by (k,l)
    std::vector<std::size_t> counts;      // nodes per class
    std::vector<std::uint32_t> node_class; // node id -> class index

    static ClassLayout of(const DirectedGraph& g);
    std::size_t size() const { return classes.size(); }
};

} // namespace cascade
