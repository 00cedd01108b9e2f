#pragma once

// End-to-end experiment pipeline: sample a degree sequence, balance it,
// build the configuration graph, run replicated simulations, integrate the
// mean-field system from the empirical degree distribution of that same
// graph, and compare the two aggregate curves. Fully deterministic given
// the config seed; stage streams derive from it.

#include "cascade/compare.hpp"
#include "cascade/config.hpp"
#include "cascade/epidemic_sim.hpp"
#include "cascade/meanfield.hpp"

#include <string>

namespace cascade {

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t self_loops = 0;
    std::size_t multi_edges = 0;
    std::size_t degree_classes = 0;
    Moments empirical; // of the realized (balanced) degree sequence
};

// Sequence / balancing / matching / simulation streams, derived from the
// config seed with these fixed indices.
enum class SeedStream : std::uint64_t {
    Sequence = 0,
    Balance = 1,
    Matching = 2,
    Simulation = 3,
};
std::uint64_t stage_seed(std::uint64_t config_seed, SeedStream stream);

struct PreparedGraph {
    DirectedGraph graph;
    JointDegreePmf empirical; // of the balanced sequence
    GraphStats stats;
};

PreparedGraph prepare_graph(const ExperimentConfig& cfg);

struct ExperimentResult {
    GraphStats graph;
    ReplicaRun sim;    // mean + per-replica trajectories
    Trajectory ode;    // absolute-form mean-field from the empirical pmf
    ComparisonReport report; // a = simulation mean, b = ODE
};

// expected_seed_init = false matches the ODE initial condition to the
// replicas' realized per-class seed fractions (averaged); true uses
// init_frac * f_hat instead.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                std::size_t workers = 1,
                                bool expected_seed_init = false);

// Writes sim.csv, ode.csv, report.json and figure.svg into out_dir.
void write_experiment_outputs(const ExperimentResult& result,
                              const std::string& out_dir,
                              bool per_class_columns);

} // namespace cascade
