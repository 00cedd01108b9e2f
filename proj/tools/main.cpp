// Command-line front end: graph generation, stochastic simulation,
// mean-field integration, no-recovery analytic solutions, full experiments,
// and trajectory comparison. Exit codes: 0 success, 1 validation error,
// 2 numeric failure.

#include "cascade/analytic.hpp"
#include "cascade/compare.hpp"
#include "cascade/config.hpp"
#include "cascade/epidemic_sim.hpp"
#include "cascade/errors.hpp"
#include "cascade/experiment.hpp"
#include "cascade/kernels.hpp"
#include "cascade/meanfield.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

namespace {

using namespace cascade;

struct CommonOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<std::size_t> replicas;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Override the config seed");
        cmd->add_option("--dt", dt, "Override the integrator step");
        cmd->add_option("--replicas", replicas, "Override the replica count");
    }

    ExperimentConfig apply(ExperimentConfig cfg) const {
        if (seed) cfg.seed = *seed;
        if (dt) cfg.dt = *dt;
        if (replicas) cfg.replicas = *replicas;
        cfg.validate();
        return cfg;
    }
};

std::size_t default_workers(std::size_t replicas) {
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min<std::size_t>(replicas, hw ? hw : 1);
}

void print_graph_stats(const GraphStats& stats) {
    std::cout << "nodes " << stats.nodes << "\n"
              << "edges " << stats.edges << "\n"
              << "self_loops " << stats.self_loops << "\n"
              << "multi_edges " << stats.multi_edges << "\n"
              << "degree_classes " << stats.degree_classes << "\n"
              << "mean_in " << stats.empirical.mean_in << "\n"
              << "mean_out " << stats.empirical.mean_out << "\n"
              << "var_in " << stats.empirical.var_in << "\n"
              << "var_out " << stats.empirical.var_out << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-cascade (SIR) dynamics on directed "
                 "configuration-model graphs"};
    app.require_subcommand(1);

    std::string config_path, out_path, out_dir, dump_edges;
    std::string form_name = "absolute";
    std::vector<int> ref_class;
    std::string compare_a, compare_b;
    std::size_t threads = 0;
    bool per_class = false;
    bool expected_seeds = false;

    CommonOverrides common;

    auto* gen = app.add_subcommand("gen-graph", "Generate a graph and print stats");
    gen->add_option("--config", config_path, "Config JSON path")->required();
    gen->add_option("--dump-edges", dump_edges, "Write 'N M' header + edge list");
    common.attach(gen);

    auto* sim = app.add_subcommand("simulate", "Replicated stochastic simulation");
    sim->add_option("--config", config_path, "Config JSON path")->required();
    sim->add_option("--out", out_path, "Output trajectory CSV")->required();
    sim->add_option("--threads", threads, "Worker threads (0 = auto)");
    sim->add_flag("--per-class", per_class, "Emit per-class CSV columns");
    common.attach(sim);

    auto* mf = app.add_subcommand("meanfield", "Integrate the mean-field system");
    mf->add_option("--config", config_path, "Config JSON path")->required();
    mf->add_option("--form", form_name, "absolute|conditioned")
        ->check(CLI::IsMember({"absolute", "conditioned"}));
    mf->add_option("--out", out_path, "Output trajectory CSV")->required();
    mf->add_flag("--per-class", per_class, "Emit per-class CSV columns");
    common.attach(mf);

    auto* an = app.add_subcommand(
        "analytic", "Reference-class reconstruction (requires nu = 0)");
    an->add_option("--config", config_path, "Config JSON path")->required();
    an->add_option("--ref", ref_class, "Reference class K L")->expected(2);
    an->add_option("--out", out_path, "Output trajectory CSV")->required();
    an->add_flag("--per-class", per_class, "Emit per-class CSV columns");
    common.attach(an);

    auto* exp = app.add_subcommand("experiment",
                                   "Full pipeline: sim vs mean-field comparison");
    exp->add_option("--config", config_path, "Config JSON path")->required();
    exp->add_option("--out-dir", out_dir, "Output directory")->required();
    exp->add_option("--threads", threads, "Worker threads (0 = auto)");
    exp->add_flag("--per-class", per_class, "Emit per-class CSV columns");
    exp->add_flag("--expected-seeds", expected_seeds,
                  "Initialize the ODE from init_frac*f instead of realized seeds");
    common.attach(exp);

    auto* cmp = app.add_subcommand("compare", "Compare two trajectory CSVs");
    cmp->add_option("a", compare_a, "First CSV")->required();
    cmp->add_option("b", compare_b, "Second CSV")->required();
    cmp->add_option("--out", out_path, "Output report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            const auto cfg = common.apply(load_config(config_path));
            const auto prepared = prepare_graph(cfg);
            print_graph_stats(prepared.stats);
            if (!dump_edges.empty()) {
                std::ofstream os(dump_edges);
                if (!os)
                    throw ValidationError("cannot open " + dump_edges);
                prepared.graph.dump_edges(os);
            }
        } else if (sim->parsed()) {
            const auto cfg = common.apply(load_config(config_path));
            const auto prepared = prepare_graph(cfg);
            const auto grid = uniform_grid(cfg.t_max, cfg.grid_points);
            const auto run = run_replicas(
                prepared.graph, cfg.epidemic(), grid,
                stage_seed(cfg.seed, SeedStream::Simulation), cfg.replicas,
                threads ? threads : default_workers(cfg.replicas));
            write_trajectory_csv(run.mean, out_path, per_class);
        } else if (mf->parsed()) {
            const auto cfg = common.apply(load_config(config_path));
            const auto prepared = prepare_graph(cfg);
            const auto grid = uniform_grid(cfg.t_max, cfg.grid_points);
            const auto form = form_name == "conditioned" ? MeanFieldForm::Conditioned
                                                         : MeanFieldForm::Absolute;
            const auto traj =
                integrate(expected_seed_state(prepared.empirical, cfg.init_frac),
                          cfg.epidemic(), form, grid, cfg.dt);
            write_trajectory_csv(traj, out_path, per_class);
        } else if (an->parsed()) {
            const auto cfg = common.apply(load_config(config_path));
            if (cfg.nu != 0.0)
                throw ValidationError("analytic: config must have nu = 0");
            const auto prepared = prepare_graph(cfg);
            const auto grid = uniform_grid(cfg.t_max, cfg.grid_points);
            const auto initial =
                expected_seed_state(prepared.empirical, cfg.init_frac);
            const DegreeClass ref = ref_class.size() == 2
                                        ? DegreeClass{ref_class[0], ref_class[1]}
                                        : default_reference(initial);
            const auto traj =
                solve_reference_ode(initial, cfg.epidemic(), ref, grid, cfg.dt);
            write_trajectory_csv(traj, out_path, per_class);
        } else if (exp->parsed()) {
            const auto cfg = common.apply(load_config(config_path));
            const auto result = run_experiment(
                cfg, threads ? threads : default_workers(cfg.replicas),
                expected_seeds);
            write_experiment_outputs(result, out_dir, per_class);
            print_graph_stats(result.graph);
            std::cout << "sup_dist " << result.report.sup_dist << "\n"
                      << "l2_dist " << result.report.l2_dist << "\n"
                      << "kernels " << kernels::name(kernels::active()) << "\n";
        } else if (cmp->parsed()) {
            const auto a = read_trajectory_csv(compare_a);
            const auto b = read_trajectory_csv(compare_b);
            write_report_json(compare_trajectories(a, b), out_path);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
