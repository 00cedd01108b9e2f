#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cascade/errors.hpp"
#include "cascade/graph.hpp"
#include "cascade/rng.hpp"

#include <algorithm>
#include <sstream>

using namespace cascade;

namespace {

// Recounts in/out degrees straight from the adjacency and compares with the
// sequence labels.
void check_degrees_match(const DirectedGraph& g) {
    std::vector<int> in_count(g.node_count(), 0);
    std::size_t edges = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        const auto out = g.out_neighbors(v);
        CHECK(static_cast<int>(out.size()) == g.out_degree(v));
        edges += out.size();
        for (auto w : out) {
            REQUIRE(w < g.node_count());
            in_count[w]++;
        }
    }
    CHECK(edges == g.edge_count());
    for (std::size_t v = 0; v < g.node_count(); ++v)
        CHECK(in_count[v] == g.in_degree(v));
}

} // namespace

TEST_CASE("two-node exchange graph is a perfect matching") {
    const DegreeSequence seq{{1, 1}, {1, 1}};
    const auto g = DirectedGraph::build_configuration(seq, 3);
    check_degrees_match(g);
    CHECK(g.edge_count() == 2);
    // Either both self-loops or the 2-cycle; both satisfy the invariants.
    const auto n0 = g.out_neighbors(0);
    const auto n1 = g.out_neighbors(1);
    REQUIRE(n0.size() == 1);
    REQUIRE(n1.size() == 1);
    CHECK(((n0[0] == 0 && n1[0] == 1) || (n0[0] == 1 && n1[0] == 0)));
}

TEST_CASE("forced multi-edge") {
    const DegreeSequence seq{{0, 2}, {2, 0}};
    const auto g = DirectedGraph::build_configuration(seq, 17);
    check_degrees_match(g);
    const auto out = g.out_neighbors(0);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == 1);
    CHECK(out[1] == 1);
    CHECK(g.multi_edge_count() == 1);
}

TEST_CASE("unbalanced sequence is a hard error") {
    CHECK_THROWS_AS(DirectedGraph::build_configuration({{2, 1}, {1, 1}}, 1),
                    ValidationError);
}

TEST_CASE("degree labels are reproduced for random sequences and seeds") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::uniform(0, 4)),
                                     make_marginal_pmf(MarginalSpec::uniform(1, 5)));
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto n = 20 + (seed * 13) % 180; // up to 200 nodes
        const auto seq = balance_stubs(
            sample_degree_sequence(joint, n, derive_seed(seed, 0)),
            derive_seed(seed, 1));
        const auto g = DirectedGraph::build_configuration(seq, derive_seed(seed, 2));
        check_degrees_match(g);
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            CHECK(g.in_degree(v) == seq.in_deg[v]);
            CHECK(g.out_degree(v) == seq.out_deg[v]);
        }
    }
}

TEST_CASE("same seed gives an identical edge list") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::uniform(1, 3)),
                                     make_marginal_pmf(MarginalSpec::uniform(1, 3)));
    const auto seq =
        balance_stubs(sample_degree_sequence(joint, 150, 7), 8);
    const auto a = DirectedGraph::build_configuration(seq, 99);
    const auto b = DirectedGraph::build_configuration(seq, 99);
    const auto c = DirectedGraph::build_configuration(seq, 100);
    std::ostringstream dump_a, dump_b, dump_c;
    a.dump_edges(dump_a);
    b.dump_edges(dump_b);
    c.dump_edges(dump_c);
    CHECK(dump_a.str() == dump_b.str());
    CHECK(dump_a.str() != dump_c.str());
}

TEST_CASE("census matches class labels and the empirical pmf") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::deterministic(10)),
                                     make_marginal_pmf(MarginalSpec::uniform(1, 20)));
    const std::size_t n = 20000;
    const auto seq =
        balance_stubs(sample_degree_sequence(joint, n, 1), 2);
    const auto g = DirectedGraph::build_configuration(seq, 3);

    CHECK(g.edge_count() == static_cast<std::size_t>(seq.out_sum()));
    CHECK(g.self_loop_count() < 50); // expected O(1) for bounded degrees

    const auto census = degree_census(g);
    const auto pmf = empirical_pmf(seq);
    REQUIRE(census.size() == pmf.size());
    std::size_t total = 0;
    for (const auto& [cls, count] : census) {
        const auto idx = pmf.index_of(cls);
        REQUIRE(idx >= 0);
        CHECK(static_cast<double>(count) / static_cast<double>(n) ==
              doctest::Approx(pmf.support()[idx].p).epsilon(1e-15));
        total += count;
    }
    CHECK(total == n);
}

TEST_CASE("class layout indexes every node consistently") {
    const auto joint = product_joint(make_marginal_pmf(MarginalSpec::uniform(1, 3)),
                                     make_marginal_pmf(MarginalSpec::uniform(1, 2)));
    const auto seq = balance_stubs(sample_degree_sequence(joint, 200, 4), 5);
    const auto g = DirectedGraph::build_configuration(seq, 6);
    const auto layout = ClassLayout::of(g);
    CHECK(std::is_sorted(layout.classes.begin(), layout.classes.end()));
    std::vector<std::size_t> recount(layout.size(), 0);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        const auto c = layout.node_class[v];
        REQUIRE(c < layout.size());
        CHECK(layout.classes[c] == g.class_of(v));
        recount[c]++;
    }
    CHECK(recount == layout.counts);
}

TEST_CASE("edge dump has the documented shape") {
    const DegreeSequence seq{{1, 1}, {1, 1}};
    const auto g = DirectedGraph::build_configuration(seq, 3);
    std::ostringstream os;
    g.dump_edges(os);
    std::istringstream is(os.str());
    std::size_t n = 0, m = 0;
    is >> n >> m;
    CHECK(n == 2);
    CHECK(m == 2);
    std::size_t src, dst, rows = 0;
    while (is >> src >> dst)
        ++rows;
    CHECK(rows == m);
}
