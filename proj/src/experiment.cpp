#include "cascade/experiment.hpp"

#include "cascade/errors.hpp"
#include "cascade/rng.hpp"
#include "cascade/svg.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace cascade {

std::uint64_t stage_seed(std::uint64_t config_seed, SeedStream stream) {
    return derive_seed(config_seed, static_cast<std::uint64_t>(stream));
}

PreparedGraph prepare_graph(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto joint =
        product_joint(make_marginal_pmf(cfg.in_spec), make_marginal_pmf(cfg.out_spec));
    auto seq = sample_degree_sequence(joint, cfg.n,
                                      stage_seed(cfg.seed, SeedStream::Sequence));
    seq = balance_stubs(std::move(seq), stage_seed(cfg.seed, SeedStream::Balance));

    PreparedGraph prepared{
        DirectedGraph::build_configuration(seq, stage_seed(cfg.seed, SeedStream::Matching)),
        empirical_pmf(seq),
        {}};
    prepared.stats.nodes = prepared.graph.node_count();
    prepared.stats.edges = prepared.graph.edge_count();
    prepared.stats.self_loops = prepared.graph.self_loop_count();
    prepared.stats.multi_edges = prepared.graph.multi_edge_count();
    prepared.stats.degree_classes = prepared.empirical.size();
    prepared.stats.empirical = moments(prepared.empirical);
    return prepared;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers,
                                bool expected_seed_init) {
    PreparedGraph prepared = prepare_graph(cfg);
    const auto grid = uniform_grid(cfg.t_max, cfg.grid_points);
    const EpidemicParams params = cfg.epidemic();

    ExperimentResult result;
    result.graph = prepared.stats;
    result.sim = run_replicas(prepared.graph, params, grid,
                              stage_seed(cfg.seed, SeedStream::Simulation),
                              cfg.replicas, workers);

    // The simulation trajectory and the pmf enumerate the same sorted class
    // set; realized seed fractions carry over index-for-index.
    if (result.sim.mean.classes.size() != prepared.empirical.size())
        throw NumericError("run_experiment: class layout mismatch between "
                           "simulation and empirical pmf");
    for (std::size_t c = 0; c < prepared.empirical.size(); ++c)
        if (!(result.sim.mean.classes[c] == prepared.empirical.support()[c].cls))
            throw NumericError("run_experiment: class ordering mismatch");

    const ClassState initial =
        expected_seed_init
            ? expected_seed_state(prepared.empirical, cfg.init_frac)
            : state_from_fractions(prepared.empirical, result.sim.seed_class_frac);
    result.ode = integrate(initial, params, MeanFieldForm::Absolute, grid, cfg.dt);
    result.report = compare_trajectories(result.sim.mean, result.ode);
    return result;
}

void write_experiment_outputs(const ExperimentResult& result,
                              const std::string& out_dir,
                              bool per_class_columns) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw ValidationError("experiment: cannot create directory " + out_dir);

    write_trajectory_csv(result.sim.mean, out_dir + "/sim.csv", per_class_columns);
    write_trajectory_csv(result.ode, out_dir + "/ode.csv", per_class_columns);

    {
        nlohmann::json doc{
            {"sup_dist", result.report.sup_dist},
            {"l2_dist", result.report.l2_dist},
            {"t_half", {{"a", result.report.a.t_half}, {"b", result.report.b.t_half}}},
            {"peak_time",
             {{"a", result.report.a.peak_time}, {"b", result.report.b.peak_time}}},
            {"peak_value",
             {{"a", result.report.a.peak_value}, {"b", result.report.b.peak_value}}},
            {"graph",
             {{"nodes", result.graph.nodes},
              {"edges", result.graph.edges},
              {"self_loops", result.graph.self_loops},
              {"multi_edges", result.graph.multi_edges},
              {"degree_classes", result.graph.degree_classes},
              {"mean_in", result.graph.empirical.mean_in},
              {"mean_out", result.graph.empirical.mean_out},
              {"var_in", result.graph.empirical.var_in},
              {"var_out", result.graph.empirical.var_out}}},
        };
        std::ofstream os(out_dir + "/report.json");
        if (!os)
            throw ValidationError("experiment: cannot open report.json");
        os << doc.dump(2) << '\n';
    }

    std::vector<SvgCurve> curves(2);
    curves[0] = {"simulation mean", result.sim.mean.grid, result.sim.mean.i};
    curves[1] = {"mean-field ODE", result.ode.grid, result.ode.i};
    write_svg_chart(curves, "Fraction of infected nodes over time",
                    out_dir + "/figure.svg");
}

} // namespace cascade
