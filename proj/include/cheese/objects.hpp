#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cheese/errors.hpp"
#include "cheese/metric.hpp"
#include "cheese/planar_graph.hpp"

namespace cheese {

using ObjectId = std::size_t;

/// A connected subgraph of the instance graph. The edge set is explicit so
/// connectivity and the canonical spanning tree are reproducible.
struct GraphObject {
    ObjectId id = 0;
    std::vector<Vertex> vertices;                     // sorted, unique
    std::vector<std::pair<Vertex, Vertex>> edges;     // normalized u < v, sorted

    bool contains(Vertex v) const {
        return std::binary_search(vertices.begin(), vertices.end(), v);
    }

    void normalize() {
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        for (auto& e : edges)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
};

inline bool objects_disjoint(const GraphObject& a, const GraphObject& b) {
    auto i = a.vertices.begin();
    auto j = b.vertices.begin();
    while (i != a.vertices.end() && j != b.vertices.end()) {
        if (*i == *j) return false;
        if (*i < *j) ++i; else ++j;
    }
    return true;
}

/// Canonical spanning tree T(p): BFS from the minimum vertex over the
/// declared edges, visiting neighbors in sorted order. Returns parent per
/// object vertex (root maps to kNone). Throws if the declared edges do not
/// connect the vertex set.
inline std::map<Vertex, Vertex> object_spanning_tree(const GraphObject& p) {
    if (p.vertices.empty()) raise(ErrorKind::InvalidObject, "object has no vertices");
    std::map<Vertex, std::vector<Vertex>> adj;
    for (Vertex v : p.vertices) adj[v];
    for (auto [u, v] : p.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [v, row] : adj) std::sort(row.begin(), row.end());

    std::map<Vertex, Vertex> parent;
    std::vector<Vertex> queue{p.vertices.front()};
    parent[p.vertices.front()] = kNone;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Vertex v = queue[qi];
        for (Vertex w : adj[v]) {
            if (!parent.count(w)) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if (parent.size() != p.vertices.size())
        raise(ErrorKind::InvalidObject, "object is not connected by its declared edges");
    return parent;
}

/// An object family over a sphere-embedded triangulation.
struct Instance {
    PlanarGraph graph;
    std::uint64_t metric_seed = 0;
    std::vector<GraphObject> objects;

    std::size_t num_objects() const { return objects.size(); }

    PerturbedMetric build_metric() const { return PerturbedMetric(graph, metric_seed); }
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const Instance& inst) {
    ValidationReport rep;
    auto add = [&](const std::string& code, const std::string& msg) {
        rep.violations.push_back({code, msg});
    };
    if (inst.objects.empty()) add("empty-family", "instance declares no objects");
    const std::size_t n = inst.graph.num_vertices();
    for (const GraphObject& p : inst.objects) {
        const std::string tag = "object " + std::to_string(p.id);
        if (p.vertices.empty()) {
            add("empty-object", tag + " has no vertices");
            continue;
        }
        bool in_range = true;
        for (Vertex v : p.vertices)
            if (v >= n) {
                add("out-of-range", tag + " references vertex " + std::to_string(v));
                in_range = false;
            }
        if (!in_range) continue;
        bool edges_ok = true;
        for (auto [u, v] : p.edges) {
            if (!p.contains(u) || !p.contains(v)) {
                add("foreign-edge", tag + " declares an edge outside its vertex set");
                edges_ok = false;
            } else if (inst.graph.find_edge(u, v) == kNone) {
                add("missing-edge", tag + " declares an edge absent from the graph");
                edges_ok = false;
            }
        }
        if (!edges_ok) continue;
        try {
            object_spanning_tree(p);
        } catch (const Error&) {
            add("disconnected-object", tag + " is not connected");
        }
    }
    std::set<ObjectId> ids;
    for (const GraphObject& p : inst.objects)
        if (!ids.insert(p.id).second)
            add("duplicate-id", "object id " + std::to_string(p.id) + " repeats");
    return rep;
}

/// Abstract graph on object ids: adjacent iff vertex sets intersect.
struct IntersectionGraph {
    std::size_t n = 0;
    std::vector<std::vector<char>> adj;
    std::vector<std::vector<ObjectId>> neighbors;

    bool adjacent(std::size_t a, std::size_t b) const { return adj[a][b]; }
};

inline IntersectionGraph intersection_graph(const Instance& inst) {
    IntersectionGraph g;
    g.n = inst.objects.size();
    g.adj.assign(g.n, std::vector<char>(g.n, 0));
    g.neighbors.assign(g.n, {});
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = a + 1; b < g.n; ++b)
            if (!objects_disjoint(inst.objects[a], inst.objects[b])) {
                g.adj[a][b] = g.adj[b][a] = 1;
                g.neighbors[a].push_back(b);
                g.neighbors[b].push_back(a);
            }
    return g;
}

// ── JSON serialization ──────────────────────────────────────────────

inline nlohmann::json graph_to_json(const PlanarGraph& g) {
    nlohmann::json j;
    j["n"] = g.num_vertices();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const Edge& e : g.edges())
        edges.push_back({e.u, e.v, rational_to_string(e.length)});
    j["rotation"] = g.rotation();
    return j;
}

inline PlanarGraph graph_from_json(const nlohmann::json& j) {
    std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
        Edge e;
        e.u = je.at(0).get<Vertex>();
        e.v = je.at(1).get<Vertex>();
        e.length = rational_from_string(je.at(2).get<std::string>());
        edges.push_back(std::move(e));
    }
    auto rotation = j.at("rotation").get<std::vector<std::vector<EdgeId>>>();
    return PlanarGraph(n, std::move(edges), std::move(rotation));
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j = graph_to_json(inst.graph);
    j["metric_seed"] = inst.metric_seed;
    auto& objs = j["objects"] = nlohmann::json::array();
    for (const GraphObject& p : inst.objects) {
        nlohmann::json jo;
        jo["id"] = p.id;
        jo["vertices"] = p.vertices;
        auto& es = jo["edges"] = nlohmann::json::array();
        for (auto [u, v] : p.edges) es.push_back({u, v});
        objs.push_back(std::move(jo));
    }
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    Instance inst{graph_from_json(j), j.at("metric_seed").get<std::uint64_t>(), {}};
    for (const auto& jo : j.at("objects")) {
        GraphObject p;
        p.id = jo.at("id").get<ObjectId>();
        p.vertices = jo.at("vertices").get<std::vector<Vertex>>();
        for (const auto& je : jo.at("edges"))
            p.edges.emplace_back(je.at(0).get<Vertex>(), je.at(1).get<Vertex>());
        p.normalize();
        inst.objects.push_back(std::move(p));
    }
    return inst;
}

}  // namespace cheese
