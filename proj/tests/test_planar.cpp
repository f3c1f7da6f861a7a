#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "cheese/planar_graph.hpp"
#include "fixtures.hpp"

using namespace cheese;

TEST_CASE("K3 embedding has two faces and passes Euler") {
    PlanarGraph g = fixtures::k3();
    REQUIRE(g.num_faces() == 2);
    REQUIRE(g.is_triangulated());
}

TEST_CASE("K4 tetrahedron embedding has four triangular faces") {
    PlanarGraph g = fixtures::k4();
    REQUIRE(g.num_faces() == 4);
    REQUIRE(g.is_triangulated());
    // every dart lies in exactly one face orbit
    std::size_t total = 0;
    for (FaceId f = 0; f < g.num_faces(); ++f) total += g.face_darts(f).size();
    REQUIRE(total == g.num_darts());
}

TEST_CASE("invalid rotation systems are rejected") {
    // K4 rotations scrambled at one vertex to a non-planar gluing: swapping
    // two entries flips orientation locally and breaks Euler.
    std::vector<Edge> edges{
        {0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)},
        {0, 3, Rational(1)}, {1, 3, Rational(1)}, {2, 3, Rational(1)},
    };
    std::vector<std::vector<EdgeId>> rot{
        {0, 3, 2}, {1, 4, 0}, {2, 5, 1}, {3, 5, 4},  // 4 and 5 swapped at v3
    };
    REQUIRE_THROWS_AS(PlanarGraph(4, std::move(edges), std::move(rot)), Error);
}

TEST_CASE("rejects disconnected and out-of-range input") {
    {
        std::vector<Edge> edges{{0, 1, Rational(1)}, {2, 3, Rational(1)}};
        std::vector<std::vector<EdgeId>> rot{{0}, {0}, {1}, {1}};
        REQUIRE_THROWS_AS(PlanarGraph(4, std::move(edges), std::move(rot)), Error);
    }
    {
        std::vector<Edge> edges{{0, 5, Rational(1)}};
        std::vector<std::vector<EdgeId>> rot{{0}, {}, {}};
        REQUIRE_THROWS_AS(PlanarGraph(3, std::move(edges), std::move(rot)), Error);
    }
}

TEST_CASE("triangulate leaves K3 unchanged") {
    PlanarGraph t = triangulate(fixtures::k3());
    REQUIRE(t.num_edges() == 3);
    REQUIRE(t.num_faces() == 2);
}

TEST_CASE("triangulate chords both faces of the 4-cycle") {
    // one chord per quadrilateral face; Euler forces |E| = 3n-6 = 6, |F| = 4
    PlanarGraph t = triangulate(fixtures::cycle_graph(4));
    REQUIRE(t.num_edges() == 6);
    REQUIRE(t.num_faces() == 4);
    REQUIRE(t.is_triangulated());
}

TEST_CASE("triangulate on the 6-cycle yields 12 edges and 8 faces") {
    PlanarGraph t = triangulate(fixtures::cycle_graph(6));
    REQUIRE(t.num_edges() == 12);
    REQUIRE(t.num_faces() == 8);
    REQUIRE(t.is_triangulated());
    // chords never shortcut the cycle metric: length = input shortest path
    for (EdgeId e = 6; e < t.num_edges(); ++e) {
        const Edge& ed = t.edge(e);
        std::size_t d = (ed.u + 6 - ed.v) % 6;
        std::size_t hops = std::min(d, 6 - d);
        REQUIRE(ed.length == Rational(static_cast<unsigned long>(hops)));
    }
}

TEST_CASE("triangulate handles a path graph") {
    PlanarGraph t = triangulate(fixtures::path3());
    REQUIRE(t.num_edges() == 3);
    REQUIRE(t.num_faces() == 2);
    REQUIRE(t.is_triangulated());
}

TEST_CASE("triangulate is idempotent") {
    PlanarGraph t = triangulate(fixtures::cycle_graph(6));
    PlanarGraph t2 = triangulate(t);
    REQUIRE(t2.num_edges() == t.num_edges());
    REQUIRE(t2.rotation() == t.rotation());
    for (EdgeId e = 0; e < t.num_edges(); ++e) {
        REQUIRE(t2.edge(e).u == t.edge(e).u);
        REQUIRE(t2.edge(e).v == t.edge(e).v);
        REQUIRE(t2.edge(e).length == t.edge(e).length);
    }
}

TEST_CASE("dual of a triangulation is 3-regular and connected") {
    for (std::size_t k : {4, 5, 6, 8}) {
        PlanarGraph t = triangulate(fixtures::cycle_graph(k));
        DualGraph dual(t);
        REQUIRE(dual.arcs.size() == t.num_edges());
        for (std::size_t deg : dual.degrees()) REQUIRE(deg == 3);
        // connectivity via union-find over arcs
        std::vector<std::size_t> parent(dual.num_nodes);
        for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& a : dual.arcs) parent[find(a.a)] = find(a.b);
        std::set<std::size_t> roots;
        for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(i));
        REQUIRE(roots.size() == 1);
    }
}

TEST_CASE("corner faces agree with face orbits") {
    PlanarGraph g = fixtures::k4();
    // each face orbit of length 3 sweeps exactly 3 corners, one per vertex
    std::vector<std::size_t> count(g.num_faces(), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        for (std::size_t j = 0; j < g.degree(v); ++j) count[g.corner_face(v, j)]++;
    for (std::size_t c : count) REQUIRE(c == 3);
}
