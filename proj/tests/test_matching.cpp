#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "switchsched/matching.hpp"
#include "switchsched/rng.hpp"

using namespace switchsched;
using matching::BipartiteMultigraph;

namespace {

BipartiteMultigraph random_graph(std::uint64_t seed, int left, int right, int edges,
                                 bool allow_parallel = true) {
    Rng rng(seed);
    BipartiteMultigraph g;
    g.left = left;
    g.right = right;
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < edges; ++e) {
        int l = static_cast<int>(rng.uniform(left));
        int r = static_cast<int>(rng.uniform(right));
        if (!allow_parallel && !seen.insert({l, r}).second) continue;
        g.add_edge(l, r, e);
    }
    return g;
}

void check_is_matching(const BipartiteMultigraph& g, const matching::Matching& m) {
    std::set<int> ls, rs;
    for (int e : m) {
        CHECK(ls.insert(g.edges[e].left).second);
        CHECK(rs.insert(g.edges[e].right).second);
    }
}

}  // namespace

TEST_CASE("single edge is matched") {
    BipartiteMultigraph g;
    g.left = g.right = 1;
    g.add_edge(0, 0, 7);
    auto m = matching::max_cardinality_matching(g);
    REQUIRE(m.size() == 1);
    CHECK(g.edges[m[0]].id == 7);
}

TEST_CASE("complete 2x2 has a perfect matching") {
    BipartiteMultigraph g;
    g.left = g.right = 2;
    for (int l = 0; l < 2; ++l)
        for (int r = 0; r < 2; ++r) g.add_edge(l, r, l * 2 + r);
    CHECK(matching::max_cardinality_matching(g).size() == 2);
}

TEST_CASE("star shares its center") {
    BipartiteMultigraph g;
    g.left = 1;
    g.right = 3;
    for (int r = 0; r < 3; ++r) g.add_edge(0, r, r);
    CHECK(matching::max_cardinality_matching(g).size() == 1);
}

TEST_CASE("cardinality equals brute force on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto g = random_graph(seed, 2 + seed % 5, 2 + (seed / 2) % 5, 3 + seed % 8);
        auto m = matching::max_cardinality_matching(g);
        check_is_matching(g, m);
        CHECK(static_cast<long long>(m.size()) == oracles::brute_max_matching_size(g));
    }
}

TEST_CASE("weight: heavy edge beats two light ones") {
    BipartiteMultigraph g;
    g.left = 2;
    g.right = 2;
    int a = g.add_edge(0, 0, 0);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 0, 2);
    auto m = matching::max_weight_matching(g, {5.0, 2.0, 2.0});
    REQUIRE(m.size() == 1);
    CHECK(m[0] == a);
}

TEST_CASE("all-zero weights admit the empty matching") {
    BipartiteMultigraph g;
    g.left = g.right = 2;
    g.add_edge(0, 0, 0);
    g.add_edge(1, 1, 1);
    auto m = matching::max_weight_matching(g, {0.0, 0.0});
    CHECK(m.empty());
}

TEST_CASE("weight matches brute force on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng wr(seed + 999);
        auto g = random_graph(seed, 2 + seed % 3, 2 + (seed / 3) % 3, 3 + seed % 6);
        std::vector<double> w;
        for (size_t e = 0; e < g.edges.size(); ++e)
            w.push_back(static_cast<double>(wr.uniform(10)));
        auto m = matching::max_weight_matching(g, w);
        check_is_matching(g, m);
        double got = 0;
        for (int e : m) got += w[e];
        CHECK(got == doctest::Approx(oracles::brute_max_matching_weight(g, w)));
    }
}

TEST_CASE("coloring: one edge, one matching") {
    BipartiteMultigraph g;
    g.left = g.right = 1;
    g.add_edge(0, 0, 0);
    auto ms = matching::edge_color_bipartite(g);
    CHECK(ms.matchings.size() == 1);
}

TEST_CASE("coloring K22 into two perfect matchings") {
    BipartiteMultigraph g;
    g.left = g.right = 2;
    for (int l = 0; l < 2; ++l)
        for (int r = 0; r < 2; ++r) g.add_edge(l, r, 0);
    auto ms = matching::edge_color_bipartite(g);
    REQUIRE(ms.matchings.size() == 2);
    CHECK(ms.matchings[0].size() == 2);
    CHECK(ms.matchings[1].size() == 2);
}

TEST_CASE("coloring random multigraphs uses exactly max degree colors") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto g = random_graph(seed, 2 + seed % 4, 2 + (seed / 4) % 4, 4 + seed % 14);
        std::vector<int> dl(g.left, 0), dr(g.right, 0);
        for (const auto& e : g.edges) {
            ++dl[e.left];
            ++dr[e.right];
        }
        int delta = 0;
        for (int d : dl) delta = std::max(delta, d);
        for (int d : dr) delta = std::max(delta, d);

        auto ms = matching::edge_color_bipartite(g);
        CHECK(static_cast<int>(ms.matchings.size()) == delta);
        std::set<int> covered;
        for (const auto& m : ms.matchings) {
            check_is_matching(g, m);
            for (int e : m) CHECK(covered.insert(e).second);
        }
        CHECK(covered.size() == g.edges.size());
    }
}

TEST_CASE("expansion splits degrees round-robin") {
    BipartiteMultigraph g;
    g.left = 1;
    g.right = 4;
    for (int r = 0; r < 4; ++r) g.add_edge(0, r, r);
    auto exp = matching::expand_to_unit_graph(g, {2}, {1, 1, 1, 1});
    REQUIRE(exp.graph.left == 2);
    std::vector<int> deg(2, 0);
    for (const auto& e : exp.graph.edges) ++deg[e.left];
    CHECK(deg[0] == 2);
    CHECK(deg[1] == 2);
}

TEST_CASE("expansion degree bound ceil(deg/cap)") {
    BipartiteMultigraph g;
    g.left = 1;
    g.right = 5;
    for (int r = 0; r < 5; ++r) g.add_edge(0, r, r);
    auto exp = matching::expand_to_unit_graph(g, {2}, {1, 1, 1, 1, 1});
    std::vector<int> deg(exp.graph.left, 0);
    for (const auto& e : exp.graph.edges) ++deg[e.left];
    CHECK(*std::max_element(deg.begin(), deg.end()) == 3);  // ceil(5/2)
    // capacity one leaves the graph unchanged
    auto same = matching::expand_to_unit_graph(g, {1}, {1, 1, 1, 1, 1});
    CHECK(same.graph.left == 1);
    CHECK(same.graph.edges.size() == g.edges.size());
}

TEST_CASE("matchings projected through a copy map respect capacities") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        auto g = random_graph(seed + 500, 3, 3, 9);
        std::vector<long long> lcap(3), rcap(3);
        for (auto& c : lcap) c = 1 + static_cast<long long>(rng.uniform(3));
        for (auto& c : rcap) c = 1 + static_cast<long long>(rng.uniform(3));
        auto exp = matching::expand_to_unit_graph(g, lcap, rcap);
        auto ms = matching::edge_color_bipartite(exp.graph);
        for (const auto& m : ms.matchings) {
            std::vector<long long> use_l(3, 0), use_r(3, 0);
            for (int e : m) {
                ++use_l[exp.left_origin[exp.graph.edges[e].left]];
                ++use_r[exp.right_origin[exp.graph.edges[e].right]];
            }
            for (int v = 0; v < 3; ++v) {
                CHECK(use_l[v] <= lcap[v]);
                CHECK(use_r[v] <= rcap[v]);
            }
        }
    }
}
