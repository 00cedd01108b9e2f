#pragma once

// Experiment configuration: a single JSON document describing the graph
// ensemble, the epidemic parameters, and the run controls. Unknown fields
// are rejected so typos in experiment definitions surface immediately.

#include "cascade/degree_model.hpp"
#include "cascade/epidemic_sim.hpp"

#include <cstdint>
#include <string>

namespace cascade {

struct ExperimentConfig {
    std::size_t n = 0;
    MarginalSpec in_spec;
    MarginalSpec out_spec;
    double lambda = 1.0;
    double nu = 0.0;
    double init_frac = 0.0;
    double t_max = 1.0;
    double dt = 0.01;            // default integrator step
    std::size_t replicas = 10;   // default simulation replicas
    std::size_t grid_points = 200;
    std::uint64_t seed = 1;

    void validate() const; // throws ValidationError

    EpidemicParams epidemic() const {
        return {lambda, nu, init_frac, t_max};
    }
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

} // namespace cascade
