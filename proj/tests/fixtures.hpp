#pragma once

// Shared instance builders for the test suites. Everything here is
// deterministic; seeds are part of the fixture identity.

#include <cstdint>
#include <string>
#include <vector>

#include "cheese/generators.hpp"
#include "cheese/metric.hpp"
#include "cheese/objects.hpp"
#include "cheese/planar_graph.hpp"

namespace fixtures {

using namespace cheese;

inline PlanarGraph k3() {
    std::vector<Edge> edges{{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)}};
    std::vector<std::vector<EdgeId>> rot{{0, 2}, {0, 1}, {1, 2}};
    return PlanarGraph(3, std::move(edges), std::move(rot));
}

/// K4 embedded as a triangle with a center vertex; unit lengths unless a
/// custom length is given for edge (0,1).
inline PlanarGraph k4(Rational len01 = Rational(1)) {
    std::vector<Edge> edges{
        {0, 1, len01},      // 0
        {1, 2, Rational(1)},  // 1
        {0, 2, Rational(1)},  // 2
        {0, 3, Rational(1)},  // 3
        {1, 3, Rational(1)},  // 4
        {2, 3, Rational(1)},  // 5
    };
    // outer triangle 0-1-2, vertex 3 inside
    std::vector<std::vector<EdgeId>> rot{
        {0, 3, 2},  // at 0: to 1, to 3, to 2
        {1, 4, 0},  // at 1: to 2, to 3, to 0
        {2, 5, 1},  // at 2: to 0, to 3, to 1
        {3, 4, 5},  // at 3: to 0, to 1, to 2
    };
    return PlanarGraph(4, std::move(edges), std::move(rot));
}

inline PlanarGraph cycle_graph(std::size_t k) {
    std::vector<Edge> edges;
    std::vector<std::vector<EdgeId>> rot(k);
    for (std::size_t i = 0; i < k; ++i)
        edges.push_back({i, (i + 1) % k, Rational(1)});
    for (std::size_t i = 0; i < k; ++i) {
        rot[i] = {static_cast<EdgeId>((i + k - 1) % k), static_cast<EdgeId>(i)};
    }
    return PlanarGraph(k, std::move(edges), std::move(rot));
}

inline PlanarGraph path3() {
    std::vector<Edge> edges{{0, 1, Rational(1)}, {1, 2, Rational(1)}};
    std::vector<std::vector<EdgeId>> rot{{0}, {0, 1}, {1}};
    return PlanarGraph(3, std::move(edges), std::move(rot));
}

/// Singleton objects at the given vertices of a graph.
inline std::vector<GraphObject> singletons(const std::vector<Vertex>& vs) {
    std::vector<GraphObject> objs;
    for (std::size_t i = 0; i < vs.size(); ++i)
        objs.push_back({i, {vs[i]}, {}});
    return objs;
}

/// Deterministic pool of small grid instances used across suites.
inline std::vector<Instance> small_corpus() {
    std::vector<Instance> out;
    out.push_back(generate_grid(3, 3, "rect:1x1:2", 1));
    out.push_back(generate_grid(4, 4, "rect:2x2:6", 7));
    out.push_back(generate_grid(4, 4, "rect:1x1:4;ball:1:2", 11));
    out.push_back(generate_grid(5, 5, "rect:2x2:5;rect:1x1:3", 3));
    out.push_back(generate_grid(5, 4, "ball:1:5", 19));
    out.push_back(generate_grid(6, 6, "rect:2x2:8", 23));
    return out;
}

}  // namespace fixtures
