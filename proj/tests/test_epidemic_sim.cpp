#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cascade/epidemic_sim.hpp"
#include "cascade/errors.hpp"
#include "cascade/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

using namespace cascade;

namespace {

DirectedGraph chain_graph() {
    // Single directed edge 0 -> 1.
    return DirectedGraph::build_configuration({{0, 1}, {1, 0}}, 1);
}

std::vector<NodeState> infect_node0(std::size_t n) {
    std::vector<NodeState> init(n, NodeState::Susceptible);
    init[0] = NodeState::Infected;
    return init;
}

// Out-reachability closure by BFS; the ground truth for the nu = 0 final
// infected set.
std::set<std::size_t> reachable_from(const DirectedGraph& g,
                                     const std::vector<NodeState>& init) {
    std::set<std::size_t> seen;
    std::queue<std::size_t> frontier;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        if (init[v] == NodeState::Infected) {
            seen.insert(v);
            frontier.push(v);
        }
    while (!frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop();
        for (auto w : g.out_neighbors(v))
            if (seen.insert(w).second)
                frontier.push(w);
    }
    return seen;
}

} // namespace

TEST_CASE("seed_infection endpoints and exact count") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::deterministic(2)),
                                     make_marginal_pmf(MarginalSpec::deterministic(2)));
    const auto g = DirectedGraph::build_configuration(
        sample_degree_sequence(joint, 100, 1), 2);

    EpidemicParams all{1.0, 0.0, 1.0, 1.0};
    for (auto st : seed_infection(g, all, 5))
        CHECK(st == NodeState::Infected);

    EpidemicParams none{1.0, 0.0, 0.0, 1.0};
    for (auto st : seed_infection(g, none, 5))
        CHECK(st == NodeState::Susceptible);

    EpidemicParams five_pct{1.0, 0.5, 0.05, 1.0};
    const auto big = DirectedGraph::build_configuration(
        sample_degree_sequence(joint, 20000, 3), 4);
    const auto init = seed_infection(big, five_pct, 6);
    CHECK(std::count(init.begin(), init.end(), NodeState::Infected) == 1000);

    // Positive fraction rounding to zero still seeds one node.
    EpidemicParams tiny{1.0, 0.0, 1e-4, 1.0};
    const auto promoted = seed_infection(g, tiny, 7);
    CHECK(std::count(promoted.begin(), promoted.end(), NodeState::Infected) == 1);

    const auto again = seed_infection(big, five_pct, 6);
    CHECK(init == again);
}

TEST_CASE("a seed without out-edges never spreads") {
    const DegreeSequence seq{{0, 1, 1}, {2, 0, 0}}; // edges only leave node 0
    const auto g = DirectedGraph::build_configuration(seq, 11);
    std::vector<NodeState> init(3, NodeState::Susceptible);
    init[1] = NodeState::Infected; // out-degree 0

    EpidemicParams params{2.0, 0.0, 0.0, 5.0};
    const auto grid = uniform_grid(5.0, 11);
    const auto traj = simulate(g, params, init, grid, 21);
    for (std::size_t t = 0; t < traj.points(); ++t)
        CHECK(traj.i[t] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("two-node chain with nu = 0 always infects downstream") {
    const auto g = chain_graph();
    EpidemicParams params{1.5, 0.0, 0.0, 50.0};
    const auto grid = uniform_grid(50.0, 2);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto traj = simulate(g, params, infect_node0(2), grid, seed);
        CHECK(traj.i.back() == doctest::Approx(1.0)); // both infected by t_max
    }
}

TEST_CASE("two-node chain with lambda = nu infects with probability 1/2") {
    const auto g = chain_graph();
    EpidemicParams params{1.0, 1.0, 0.0, 200.0};
    const auto grid = uniform_grid(200.0, 2);
    const int trials = 100000;
    int infected = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const auto traj =
            simulate(g, params, infect_node0(2), grid, derive_seed(404, trial));
        // By t_max everyone is recovered; node 1 was infected iff r = 1.
        if (traj.r.back() > 0.75)
            ++infected;
    }
    const double p_hat = static_cast<double>(infected) / trials;
    const double sigma = std::sqrt(0.25 / trials);
    CHECK(std::fabs(p_hat - 0.5) < 3.0 * sigma);
}

TEST_CASE("state counts are conserved per class") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::uniform(0, 3)),
                                     make_marginal_pmf(MarginalSpec::uniform(1, 4)));
    const auto seq = balance_stubs(sample_degree_sequence(joint, 300, 5), 6);
    const auto g = DirectedGraph::build_configuration(seq, 7);
    const auto layout = ClassLayout::of(g);

    EpidemicParams params{1.0, 0.7, 0.1, 8.0};
    const auto grid = uniform_grid(8.0, 33);
    const auto traj = simulate(g, params, seed_infection(g, params, 8), grid, 9);

    for (std::size_t t = 0; t < traj.points(); ++t) {
        for (std::size_t c = 0; c < layout.size(); ++c) {
            const double cls_frac = traj.class_frac[c];
            const double ic = traj.i_at(t, c);
            const double rc = traj.r_at(t, c);
            CHECK(ic >= 0.0);
            CHECK(rc >= 0.0);
            CHECK(ic + rc <= cls_frac + 1e-12);
            if (t > 0) // recovered never shrinks
                CHECK(traj.r_at(t - 1, c) <= rc);
        }
        CHECK(traj.s[t] + traj.i[t] + traj.r[t] == doctest::Approx(1.0).epsilon(1e-12));
        if (t > 0)
            CHECK(traj.s[t] <= traj.s[t - 1] + 1e-12);
    }
}

TEST_CASE("nu = 0 final infected set equals the reachability closure") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::uniform(0, 2)),
                                     make_marginal_pmf(MarginalSpec::uniform(0, 2)));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t n = 20 + seed % 81; // up to 100
        const auto seq = balance_stubs(
            sample_degree_sequence(joint, n, derive_seed(seed, 0)),
            derive_seed(seed, 1));
        const auto g = DirectedGraph::build_configuration(seq, derive_seed(seed, 2));
        EpidemicParams params{1.0, 0.0, 0.1, 1000.0};
        const auto init = seed_infection(g, params, derive_seed(seed, 3));
        const auto grid = uniform_grid(1000.0, 2);
        const auto traj = simulate(g, params, init, grid, derive_seed(seed, 4));

        const auto closure = reachable_from(g, init);
        CHECK(traj.i.back() ==
              doctest::Approx(static_cast<double>(closure.size()) / n).epsilon(1e-12));
        CHECK(traj.r.back() == 0.0); // nu = 0 never recovers
    }
}

TEST_CASE("broadcast-once equals repeated broadcasts in distribution") {
    // Small fixed graph: 5 nodes, node 3 the unique (2,0) node sitting two
    // hops behind the seed for most matchings of this sequence.
    const DegreeSequence seq{{0, 1, 1, 2, 1}, {2, 1, 2, 0, 0}};
    const auto g = DirectedGraph::build_configuration(seq, 2);
    REQUIRE(reachable_from(g, infect_node0(5)).count(3) == 1);

    const double lambda = 1.0, nu = 0.6;
    const double t_max = 20.0;
    const std::size_t grid_points = 201;
    const auto grid = uniform_grid(t_max, grid_points);
    const int trials = 100000;

    // Oracle simulator with an explicit rate-lambda broadcast clock that
    // keeps ringing until recovery, written as a plain next-event scan.
    struct Oracle {
        const DirectedGraph& g;
        double lambda, nu;
        Rng rng;
        std::vector<double> infected_at;

        Oracle(const DirectedGraph& graph, double l, double n, std::uint64_t seed)
            : g(graph), lambda(l), nu(n), rng(seed),
              infected_at(graph.node_count(),
                          std::numeric_limits<double>::infinity()) {}

        void run(double t_end) {
            const double inf = std::numeric_limits<double>::infinity();
            std::vector<double> recover_at(g.node_count(), inf);
            std::vector<double> next_ring(g.node_count(), inf);
            auto start = [&](std::size_t v, double now) {
                infected_at[v] = now;
                recover_at[v] = now + rng.exponential(nu);
                next_ring[v] = now + rng.exponential(lambda);
            };
            start(0, 0.0);
            while (true) {
                double t = t_end;
                std::size_t who = g.node_count();
                bool ring = false;
                for (std::size_t v = 0; v < g.node_count(); ++v) {
                    if (next_ring[v] < t) { t = next_ring[v]; who = v; ring = true; }
                    if (recover_at[v] < t) { t = recover_at[v]; who = v; ring = false; }
                }
                if (who == g.node_count()) break;
                if (ring) {
                    for (auto w : g.out_neighbors(who))
                        if (infected_at[w] == inf)
                            start(w, t);
                    next_ring[who] = t + rng.exponential(lambda); // keep ringing
                } else {
                    recover_at[who] = inf;
                    next_ring[who] = inf;
                }
            }
        }
    };

    // Infection times of node 3, quantized to the first grid index at or
    // after the event, so both samples live on the same discrete support.
    auto grid_bin = [&](double t) -> int {
        const auto it = std::lower_bound(grid.begin(), grid.end(), t);
        return it == grid.end() ? -1 : static_cast<int>(it - grid.begin());
    };

    std::vector<int> lib_bins, oracle_bins;
    for (int trial = 0; trial < trials; ++trial) {
        Oracle oracle(g, lambda, nu, derive_seed(1000, trial));
        oracle.run(t_max);
        if (oracle.infected_at[3] <= t_max) {
            const int bin = grid_bin(oracle.infected_at[3]);
            REQUIRE(bin >= 0);
            oracle_bins.push_back(bin);
        }
    }
    const auto layout = ClassLayout::of(g);
    const std::size_t c3 = layout.node_class[3];
    EpidemicParams params{lambda, nu, 0.0, t_max};
    for (int trial = 0; trial < trials; ++trial) {
        const auto traj =
            simulate(g, params, infect_node0(5), grid, derive_seed(2000, trial));
        for (std::size_t t = 0; t < traj.points(); ++t) {
            if (traj.i_at(t, c3) + traj.r_at(t, c3) > 0.0) {
                lib_bins.push_back(static_cast<int>(t));
                break;
            }
        }
    }

    // Infection probabilities agree within a two-sample binomial band.
    const double p_lib = static_cast<double>(lib_bins.size()) / trials;
    const double p_oracle = static_cast<double>(oracle_bins.size()) / trials;
    CHECK(std::fabs(p_lib - p_oracle) < 4.0 * std::sqrt(0.5 / trials));

    // Two-sample Kolmogorov-Smirnov at alpha = 1e-4 on the binned times.
    std::sort(lib_bins.begin(), lib_bins.end());
    std::sort(oracle_bins.begin(), oracle_bins.end());
    const double n1 = static_cast<double>(lib_bins.size());
    const double n2 = static_cast<double>(oracle_bins.size());
    REQUIRE(n1 > 0);
    REQUIRE(n2 > 0);
    double d_stat = 0.0;
    std::size_t j1 = 0, j2 = 0;
    while (j1 < lib_bins.size() || j2 < oracle_bins.size()) {
        int x;
        if (j1 == lib_bins.size()) x = oracle_bins[j2];
        else if (j2 == oracle_bins.size()) x = lib_bins[j1];
        else x = std::min(lib_bins[j1], oracle_bins[j2]);
        while (j1 < lib_bins.size() && lib_bins[j1] <= x) ++j1;
        while (j2 < oracle_bins.size() && oracle_bins[j2] <= x) ++j2;
        d_stat = std::max(d_stat, std::fabs(j1 / n1 - j2 / n2));
    }
    const double alpha = 1e-4;
    const double d_crit =
        std::sqrt(-std::log(alpha / 2.0) / 2.0) * std::sqrt((n1 + n2) / (n1 * n2));
    CHECK(d_stat < d_crit);
}

TEST_CASE("replica mean: single replica and worker independence") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::uniform(1, 3)),
                                     make_marginal_pmf(MarginalSpec::uniform(1, 3)));
    const auto seq = balance_stubs(sample_degree_sequence(joint, 400, 4), 5);
    const auto g = DirectedGraph::build_configuration(seq, 6);
    EpidemicParams params{1.0, 0.5, 0.05, 4.0};
    const auto grid = uniform_grid(4.0, 41);

    const auto one = run_replicas(g, params, grid, 77, 1);
    CHECK(one.mean.i == one.replicas[0].i);
    CHECK(one.mean.r_class == one.replicas[0].r_class);

    const auto serial = run_replicas(g, params, grid, 77, 8, 1);
    const auto parallel = run_replicas(g, params, grid, 77, 8, 4);
    CHECK(serial.mean.i == parallel.mean.i);
    CHECK(serial.mean.i_class == parallel.mean.i_class);
    CHECK(serial.seed_class_frac == parallel.seed_class_frac);
}

TEST_CASE("grid validation") {
    const auto g = chain_graph();
    EpidemicParams params{1.0, 0.0, 0.0, 1.0};
    const std::vector<double> bad_sorted{0.5, 0.2};
    const std::vector<double> beyond{0.0, 2.0};
    CHECK_THROWS_AS(simulate(g, params, infect_node0(2), bad_sorted, 1),
                    ValidationError);
    CHECK_THROWS_AS(simulate(g, params, infect_node0(2), beyond, 1),
                    ValidationError);
}
