#include "cascade/epidemic_sim.hpp"

#include "cascade/errors.hpp"
#include "cascade/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <queue>
#include <thread>

namespace cascade {

void EpidemicParams::validate() const {
    if (!(lambda > 0.0))
        throw ValidationError("epidemic params: lambda must be > 0");
    if (!(nu >= 0.0))
        throw ValidationError("epidemic params: nu must be >= 0");
    if (!(init_frac >= 0.0 && init_frac <= 1.0))
        throw ValidationError("epidemic params: init_frac must be in [0,1]");
    if (!(t_max > 0.0))
        throw ValidationError("epidemic params: t_max must be > 0");
}

std::vector<NodeState> seed_infection(const DirectedGraph& g,
                                      const EpidemicParams& params,
                                      std::uint64_t seed) {
    params.validate();
    const std::size_t n = g.node_count();
    std::size_t count = static_cast<std::size_t>(
        std::llround(params.init_frac * static_cast<double>(n)));
    if (count == 0 && params.init_frac > 0.0) {
        std::cerr << "warning: init_frac " << params.init_frac << " rounds to 0 of "
                  << n << " nodes; seeding 1 node instead\n";
        count = 1;
    }
    count = std::min(count, n);

    std::vector<NodeState> states(n, NodeState::Susceptible);
    std::vector<std::uint32_t> order(n);
    for (std::size_t v = 0; v < n; ++v)
        order[v] = static_cast<std::uint32_t>(v);
    Rng rng(seed);
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t pick = j + rng.uniform_below(n - j);
        std::swap(order[j], order[pick]);
        states[order[j]] = NodeState::Infected;
    }
    return states;
}

std::vector<double> class_fractions(std::span<const NodeState> states,
                                    const ClassLayout& layout) {
    std::vector<double> frac(layout.size(), 0.0);
    for (std::size_t v = 0; v < states.size(); ++v)
        if (states[v] == NodeState::Infected)
            frac[layout.node_class[v]] += 1.0;
    const double n = static_cast<double>(states.size());
    for (double& f : frac)
        f /= n;
    return frac;
}

namespace {

enum EventKind : std::uint8_t { kBroadcast = 0, kRecovery = 1 };

struct Event {
    double t;
    std::uint32_t node;
    std::uint8_t kind;
};

// Min-heap order with (time, node, kind) tie-breaking for determinism.
struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.t != b.t) return a.t > b.t;
        if (a.node != b.node) return a.node > b.node;
        return a.kind > b.kind;
    }
};

void validate_grid(std::span<const double> grid, double t_max) {
    if (grid.empty())
        throw ValidationError("simulate: empty output grid");
    double prev = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (grid[j] < 0.0 || (j > 0 && grid[j] < prev))
            throw ValidationError("simulate: grid must be sorted and start at >= 0");
        prev = grid[j];
    }
    if (grid.back() > t_max * (1.0 + 1e-12))
        throw ValidationError("simulate: grid exceeds t_max");
}

Trajectory simulate_with_layout(const DirectedGraph& g, const ClassLayout& layout,
                                const EpidemicParams& params,
                                std::span<const NodeState> init,
                                std::span<const double> grid, std::uint64_t seed) {
    params.validate();
    validate_grid(grid, params.t_max);
    const std::size_t n = g.node_count();
    if (init.size() != n)
        throw ValidationError("simulate: initial state size mismatch");

    const std::size_t nc = layout.size();
    std::vector<NodeState> state(init.begin(), init.end());
    std::vector<std::int64_t> inf_count(nc, 0);
    std::vector<std::int64_t> rec_count(nc, 0);

    Rng rng(seed);
    std::priority_queue<Event, std::vector<Event>, EventLater> queue;

    // Broadcast time first, then recovery, so the draw order is fixed. A
    // broadcast losing the race against recovery is dropped outright.
    auto schedule = [&](std::uint32_t v, double now) {
        const double t_broadcast = now + rng.exponential(params.lambda);
        if (params.nu > 0.0) {
            const double t_recover = now + rng.exponential(params.nu);
            if (t_broadcast < t_recover)
                queue.push({t_broadcast, v, kBroadcast});
            queue.push({t_recover, v, kRecovery});
        } else {
            queue.push({t_broadcast, v, kBroadcast});
        }
    };

    auto infect = [&](std::uint32_t v, double now) {
        if (state[v] != NodeState::Susceptible)
            throw NumericError("simulate: illegal transition to Infected");
        state[v] = NodeState::Infected;
        inf_count[layout.node_class[v]] += 1;
        schedule(v, now);
    };

    for (std::size_t v = 0; v < n; ++v) {
        if (init[v] == NodeState::Recovered)
            throw ValidationError("simulate: initial state may not contain Recovered");
        if (init[v] == NodeState::Infected) {
            inf_count[layout.node_class[v]] += 1;
            schedule(static_cast<std::uint32_t>(v), 0.0);
        }
    }

    Trajectory traj;
    traj.grid.assign(grid.begin(), grid.end());
    traj.classes = layout.classes;
    traj.class_frac.resize(nc);
    for (std::size_t c = 0; c < nc; ++c)
        traj.class_frac[c] = static_cast<double>(layout.counts[c]) / static_cast<double>(n);
    traj.i_class.resize(grid.size() * nc);
    traj.r_class.resize(grid.size() * nc);

    std::size_t gi = 0;
    auto record_until = [&](double horizon) {
        // Record every grid point strictly before `horizon`.
        while (gi < grid.size() && grid[gi] < horizon) {
            for (std::size_t c = 0; c < nc; ++c) {
                traj.i_at(gi, c) = static_cast<double>(inf_count[c]) / static_cast<double>(n);
                traj.r_at(gi, c) = static_cast<double>(rec_count[c]) / static_cast<double>(n);
            }
            ++gi;
        }
    };

    while (!queue.empty()) {
        const Event ev = queue.top();
        if (ev.t > params.t_max) break;
        record_until(ev.t);
        queue.pop();
        if (ev.kind == kRecovery) {
            if (state[ev.node] != NodeState::Infected)
                throw NumericError("simulate: illegal transition to Recovered");
            state[ev.node] = NodeState::Recovered;
            inf_count[layout.node_class[ev.node]] -= 1;
            rec_count[layout.node_class[ev.node]] += 1;
        } else {
            // Scheduling guarantees the node is still infected here.
            for (std::uint32_t w : g.out_neighbors(ev.node))
                if (state[w] == NodeState::Susceptible)
                    infect(w, ev.t);
        }
    }
    record_until(std::numeric_limits<double>::infinity());

    traj.recompute_aggregates();
    return traj;
}

} // namespace

Trajectory simulate(const DirectedGraph& g, const EpidemicParams& params,
                    std::span<const NodeState> init,
                    std::span<const double> grid, std::uint64_t seed) {
    return simulate_with_layout(g, ClassLayout::of(g), params, init, grid, seed);
}

ReplicaRun run_replicas(const DirectedGraph& g, const EpidemicParams& params,
                        std::span<const double> grid, std::uint64_t base_seed,
                        std::size_t replica_count, std::size_t workers) {
    if (replica_count < 1)
        throw ValidationError("run_replicas: need at least one replica");
    const ClassLayout layout = ClassLayout::of(g);

    ReplicaRun run;
    run.replicas.resize(replica_count);
    std::vector<std::vector<double>> seed_fracs(replica_count);

    auto run_one = [&](std::size_t r) {
        const std::uint64_t replica_seed = derive_seed(base_seed, r);
        const auto init = seed_infection(g, params, derive_seed(replica_seed, 0));
        seed_fracs[r] = class_fractions(init, layout);
        run.replicas[r] = simulate_with_layout(g, layout, params, init, grid,
                                               derive_seed(replica_seed, 1));
    };

    workers = std::max<std::size_t>(1, std::min(workers, replica_count));
    if (workers == 1) {
        for (std::size_t r = 0; r < replica_count; ++r)
            run_one(r);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = w; r < replica_count; r += workers)
                        run_one(r);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (const auto& err : errors)
            if (err)
                std::rethrow_exception(err);
    }

    // Pointwise averages in replica order, independent of execution order.
    const Trajectory& first = run.replicas.front();
    Trajectory mean;
    mean.grid = first.grid;
    mean.classes = first.classes;
    mean.class_frac = first.class_frac;
    mean.i_class.assign(first.i_class.size(), 0.0);
    mean.r_class.assign(first.r_class.size(), 0.0);
    const double inv_m = 1.0 / static_cast<double>(replica_count);
    for (std::size_t r = 0; r < replica_count; ++r) {
        const Trajectory& tr = run.replicas[r];
        for (std::size_t j = 0; j < mean.i_class.size(); ++j) {
            mean.i_class[j] += tr.i_class[j];
            mean.r_class[j] += tr.r_class[j];
        }
    }
    for (std::size_t j = 0; j < mean.i_class.size(); ++j) {
        mean.i_class[j] *= inv_m;
        mean.r_class[j] *= inv_m;
    }
    mean.recompute_aggregates();
    run.mean = std::move(mean);

    run.seed_class_frac.assign(layout.size(), 0.0);
    for (std::size_t r = 0; r < replica_count; ++r)
        for (std::size_t c = 0; c < layout.size(); ++c)
            run.seed_class_frac[c] += seed_fracs[r][c];
    for (double& f : run.seed_class_frac)
        f *= inv_m;
    return run;
}

} // namespace cascade
