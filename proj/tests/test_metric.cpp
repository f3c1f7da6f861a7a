#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "cheese/metric.hpp"
#include "fixtures.hpp"

using namespace cheese;

namespace {

/// Independent oracle: every simple u-v path by DFS, exact lengths.
void all_simple_paths(const PlanarGraph& g, const PerturbedMetric& m, Vertex u, Vertex v,
                      std::vector<Vertex>& cur, std::vector<char>& used,
                      std::vector<std::pair<Rational, std::vector<Vertex>>>& out,
                      Rational len) {
    if (cur.back() == v) {
        out.emplace_back(len, cur);
        return;
    }
    for (Dart d : g.darts_at(cur.back())) {
        Vertex w = g.head(d);
        if (used[w]) continue;
        used[w] = 1;
        cur.push_back(w);
        all_simple_paths(g, m, u, v, cur, used, out,
                         len + m.edge_length(PlanarGraph::edge_of(d)));
        cur.pop_back();
        used[w] = 0;
    }
}

std::vector<std::pair<Rational, std::vector<Vertex>>> path_oracle(const PlanarGraph& g,
                                                                  const PerturbedMetric& m,
                                                                  Vertex u, Vertex v) {
    std::vector<std::pair<Rational, std::vector<Vertex>>> out;
    std::vector<Vertex> cur{u};
    std::vector<char> used(g.num_vertices(), 0);
    used[u] = 1;
    all_simple_paths(g, m, u, v, cur, used, out, Rational(0));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace

TEST_CASE("K3 perturbation yields three distinct pairwise distances") {
    PlanarGraph g = fixtures::k3();
    PerturbedMetric m = perturb(g, 0);
    std::set<Rational> ds{m.dist(0, 1), m.dist(0, 2), m.dist(1, 2)};
    REQUIRE(ds.size() == 3);
}

TEST_CASE("same graph and seed give bit-identical metrics") {
    PlanarGraph g = fixtures::k4();
    PerturbedMetric a = perturb(g, 42), b = perturb(g, 42);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        REQUIRE(a.edge_length(e) == b.edge_length(e));
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v) REQUIRE(a.dist(u, v) == b.dist(u, v));
}

TEST_CASE("K4 has 6 distinct distances and unique shortest paths") {
    PlanarGraph g = fixtures::k4();
    PerturbedMetric m = perturb(g, 7);
    std::set<Rational> ds;
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) ds.insert(m.dist(u, v));
    REQUIRE(ds.size() == 6);
    // oracle: enumerate all simple paths; the minimum must be unique and
    // match both the distance and the reported path
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v) {
            if (u == v) continue;
            auto paths = path_oracle(g, m, u, v);
            REQUIRE(paths[0].first == m.dist(u, v));
            REQUIRE(paths[0].first < paths[1].first);
            REQUIRE(paths[0].second == m.shortest_path(u, v).vertices);
        }
}

TEST_CASE("perturbation preserves base-length ordering") {
    PlanarGraph g = fixtures::k4(Rational(3));  // edge (0,1) longer
    PerturbedMetric m = perturb(g, 5);
    for (EdgeId a = 0; a < g.num_edges(); ++a)
        for (EdgeId b = 0; b < g.num_edges(); ++b)
            if (g.edge(a).length < g.edge(b).length)
                REQUIRE(m.edge_length(a) < m.edge_length(b));
}

TEST_CASE("trivial and adjacent shortest paths") {
    PlanarGraph g = fixtures::k4();
    PerturbedMetric m = perturb(g, 1);
    Path p = m.shortest_path(2, 2);
    REQUIRE(p.num_edges() == 0);
    REQUIRE(p.length == 0);
    Path q = m.shortest_path(0, 3);
    REQUIRE(q.vertices == std::vector<Vertex>{0, 3});
}

TEST_CASE("a heavily lengthened edge forces the two-edge detour") {
    PlanarGraph g = fixtures::k4(Rational(10));
    PerturbedMetric m = perturb(g, 3);
    Path p = m.shortest_path(0, 1);
    REQUIRE(p.num_edges() == 2);
    auto paths = path_oracle(g, m, 0, 1);
    REQUIRE(paths[0].second == p.vertices);
}

TEST_CASE("metric is symmetric") {
    PlanarGraph g = triangulate(fixtures::cycle_graph(6));
    PerturbedMetric m = perturb(g, 11);
    for (Vertex u = 0; u < g.num_vertices(); ++u)
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            REQUIRE(m.dist(u, v) == m.dist(v, u));
}

TEST_CASE("dist_to_object basics") {
    PlanarGraph g = fixtures::k4();
    PerturbedMetric m = perturb(g, 9);
    std::vector<Vertex> p{1, 2};
    auto [d0, a0] = m.dist_to_object(1, p);
    REQUIRE(d0 == 0);
    REQUIRE(a0 == 1);
    auto [d1, a1] = m.dist_to_object(0, p);
    REQUIRE(d1 == std::min(m.dist(0, 1), m.dist(0, 2)));
    REQUIRE(d1 == m.dist(0, a1));
    REQUIRE_THROWS_AS(m.dist_to_object(0, {}), Error);
}

TEST_CASE("dist_to_object equals per-member single-source minimum on a grid") {
    Instance inst = fixtures::small_corpus()[1];
    PerturbedMetric m = inst.build_metric();
    for (const GraphObject& p : inst.objects) {
        for (Vertex u = 0; u < inst.graph.num_vertices(); u += 3) {
            Rational best = m.dist(u, p.vertices[0]);
            for (Vertex v : p.vertices) best = std::min(best, m.dist(u, v));
            REQUIRE(m.dist_to_object(u, p.vertices).first == best);
        }
    }
}

TEST_CASE("distance multiset has no duplicates on generated instances") {
    for (const Instance& inst : fixtures::small_corpus()) {
        PerturbedMetric m = inst.build_metric();
        const std::size_t n = inst.graph.num_vertices();
        std::vector<Rational> all;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) all.push_back(m.dist(u, v));
        std::sort(all.begin(), all.end());
        REQUIRE(std::adjacent_find(all.begin(), all.end()) == all.end());
    }
}
