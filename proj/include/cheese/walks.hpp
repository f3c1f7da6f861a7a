#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/planar_graph.hpp"

namespace cheese {

// Side-of-structure machinery. Drawn structures live on the edges of G, so
// triangle interiors are never cut: every face of G lies in exactly one
// region of the complement. Regions are computed on corners (vertex-face
// incidences): all corners of a face connect through its interior, and two
// corners adjacent around a vertex connect unless the edge-end between them
// carries the structure.

/// Connected regions of the sphere minus a set of drawn edges.
class CornerComponents {
public:
    CornerComponents(const PlanarGraph& g, const std::vector<char>& blocked_edge)
        : g_(&g) {
        parent_.resize(g.num_faces());
        std::iota(parent_.begin(), parent_.end(), 0);
        vertex_blocked_.assign(g.num_vertices(), 0);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            const auto& rot = g.darts_at(v);
            const std::size_t deg = rot.size();
            for (std::size_t j = 0; j < deg; ++j) {
                if (blocked_edge[PlanarGraph::edge_of(rot[j])]) {
                    vertex_blocked_[v] = 1;
                    continue;
                }
                // crossing the end of edge rot[j] joins the two corners
                // flanking it: (v, j-1) and (v, j)
                unite(g.corner_face(v, (j + deg - 1) % deg), g.corner_face(v, j));
            }
        }
        comp_of_face_.resize(g.num_faces());
        std::vector<std::size_t> label(g.num_faces(), kNone);
        num_components_ = 0;
        for (FaceId f = 0; f < g.num_faces(); ++f) {
            std::size_t r = find(f);
            if (label[r] == kNone) label[r] = num_components_++;
            comp_of_face_[f] = label[r];
        }
    }

    std::size_t num_components() const { return num_components_; }
    std::size_t comp_of_face(FaceId f) const { return comp_of_face_[f]; }
    std::size_t comp_of_corner(Vertex v, std::size_t j) const {
        return comp_of_face_[g_->corner_face(v, j)];
    }

    /// True when some drawn edge is incident to v (v lies on the structure).
    bool vertex_on_structure(Vertex v) const { return vertex_blocked_[v]; }

    /// Region of a vertex not on the structure (all its corners agree).
    std::size_t comp_of_vertex(Vertex v) const { return comp_of_corner(v, 0); }

    /// All regions the corners of v touch, sorted unique.
    std::vector<std::size_t> comps_of_vertex(Vertex v) const {
        std::vector<std::size_t> cs;
        for (std::size_t j = 0; j < g_->degree(v); ++j) cs.push_back(comp_of_corner(v, j));
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        return cs;
    }

    bool vertex_touches_comp(Vertex v, std::size_t comp) const {
        for (std::size_t j = 0; j < g_->degree(v); ++j)
            if (comp_of_corner(v, j) == comp) return true;
        return false;
    }

private:
    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[a] = b;
    }

    const PlanarGraph* g_;
    mutable std::vector<std::size_t> parent_;
    std::vector<std::size_t> comp_of_face_;
    std::vector<char> vertex_blocked_;
    std::size_t num_components_ = 0;
};

inline std::vector<char> walk_edge_mask(const PlanarGraph& g, const std::vector<Dart>& w) {
    std::vector<char> mask(g.num_edges(), 0);
    for (Dart d : w) mask[PlanarGraph::edge_of(d)] = 1;
    return mask;
}

}  // namespace cheese
