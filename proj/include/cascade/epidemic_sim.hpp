#pragma once

// Exact event-driven simulation of the broadcast SIR process on a fixed
// directed multigraph. An infected node draws one broadcast time Exp(lambda)
// and, when nu > 0, a recovery time Exp(nu). If the broadcast wins the race
// it infects every susceptible out-neighbor simultaneously. Scheduling only
// the first broadcast is exact: out-neighbors are fixed, so after one
// broadcast none of them is ever susceptible again and repeat broadcasts
// could not change the state.

#include "cascade/graph.hpp"
#include "cascade/trajectory.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cascade {

struct EpidemicParams {
    double lambda = 1.0;    // broadcast rate, > 0
    double nu = 0.0;        // recovery rate, >= 0
    double init_frac = 0.0; // initially infected fraction, in [0,1]
    double t_max = 1.0;     // horizon, > 0

    void validate() const; // throws ValidationError
};

enum class NodeState : std::uint8_t { Susceptible, Infected, Recovered };

// Rounds init_frac*N to the nearest count and infects that many uniformly
// chosen nodes (without replacement). A positive fraction that rounds to
// zero is promoted to one seed with a warning on stderr.
std::vector<NodeState> seed_infection(const DirectedGraph& g,
                                      const EpidemicParams& params,
                                      std::uint64_t seed);

// Per-class infected fractions of an assignment, indexed like layout.classes.
std::vector<double> class_fractions(std::span<const NodeState> states,
                                    const ClassLayout& layout);

// Runs the event queue to t_max and samples node counts onto the grid
// (right-continuous: a grid point reflects all events at times <= it).
// Deterministic given seed. Grid must be sorted within [0, t_max].
Trajectory simulate(const DirectedGraph& g, const EpidemicParams& params,
                    std::span<const NodeState> init,
                    std::span<const double> grid, std::uint64_t seed);

struct ReplicaRun {
    Trajectory mean;
    std::vector<Trajectory> replicas;
    // Realized per-class seed fractions, averaged over replicas; this is the
    // matched initial condition for the mean-field comparison.
    std::vector<double> seed_class_frac;
};

// Replica r derives its seeding and dynamics streams from
// derive_seed(base_seed, r); results are independent of worker count and
// execution order (pointwise averaging in replica order).
ReplicaRun run_replicas(const DirectedGraph& g, const EpidemicParams& params,
                        std::span<const double> grid, std::uint64_t base_seed,
                        std::size_t replica_count, std::size_t workers = 1);

} // namespace cascade
