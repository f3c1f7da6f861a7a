#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/rational.hpp"

namespace cheese {

using Vertex = std::size_t;
using EdgeId = std::size_t;
using Dart = std::size_t;
using FaceId = std::size_t;

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Rational length;
};

/// Sphere-embedded simple connected planar graph. The embedding is purely
/// combinatorial: a rotation system (cyclic edge order per vertex) whose face
/// traversal must satisfy Euler's relation n - m + f = 2.
///
/// Darts: edge e yields dart 2e (u->v) and 2e+1 (v->u); rev(d) = d^1.
/// Face traversal: next(d) = rotation-successor of rev(d) at head(d).
class PlanarGraph {
public:
    PlanarGraph(std::size_t n, std::vector<Edge> edges,
                std::vector<std::vector<EdgeId>> rotation)
        : n_(n), edges_(std::move(edges)), rotation_(std::move(rotation)) {
        build();
    }

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_darts() const { return 2 * edges_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<EdgeId>>& rotation() const { return rotation_; }

    static Dart rev(Dart d) { return d ^ 1; }
    static EdgeId edge_of(Dart d) { return d >> 1; }
    Vertex tail(Dart d) const { return (d & 1) ? edges_[d >> 1].v : edges_[d >> 1].u; }
    Vertex head(Dart d) const { return (d & 1) ? edges_[d >> 1].u : edges_[d >> 1].v; }
    Dart dart(EdgeId e, Vertex from) const {
        return edges_[e].u == from ? 2 * e : 2 * e + 1;
    }

    std::size_t degree(Vertex v) const { return rot_darts_[v].size(); }
    /// Darts leaving v in cyclic rotation order.
    const std::vector<Dart>& darts_at(Vertex v) const { return rot_darts_[v]; }
    std::size_t rotation_pos(Dart d) const { return pos_[d]; }

    Dart rotation_next(Dart d) const {
        const auto& r = rot_darts_[tail(d)];
        return r[(pos_[d] + 1) % r.size()];
    }
    Dart rotation_prev(Dart d) const {
        const auto& r = rot_darts_[tail(d)];
        return r[(pos_[d] + r.size() - 1) % r.size()];
    }
    Dart face_next(Dart d) const { return rotation_next(rev(d)); }

    FaceId face_of(Dart d) const { return face_of_dart_[d]; }
    /// Face as its dart cycle (next(d_i) = d_{i+1}).
    const std::vector<Dart>& face_darts(FaceId f) const { return faces_[f]; }
    const std::vector<std::vector<Dart>>& faces() const { return faces_; }

    /// Vertices of face f in traversal order (tails of its darts).
    std::vector<Vertex> face_vertices(FaceId f) const {
        std::vector<Vertex> vs;
        vs.reserve(faces_[f].size());
        for (Dart d : faces_[f]) vs.push_back(tail(d));
        return vs;
    }

    EdgeId find_edge(Vertex u, Vertex v) const {
        if (degree(u) > degree(v)) std::swap(u, v);
        for (Dart d : rot_darts_[u])
            if (head(d) == v) return edge_of(d);
        return kNone;
    }

    bool is_triangulated() const {
        for (const auto& f : faces_)
            if (f.size() != 3) return false;
        return true;
    }

    /// The two faces flanking an edge can coincide only on bridges, which a
    /// triangulation never has.
    std::pair<FaceId, FaceId> edge_faces(EdgeId e) const {
        return {face_of_dart_[2 * e], face_of_dart_[2 * e + 1]};
    }

    /// Faces incident to each vertex, one entry per corner in rotation order.
    /// corner j at v lies between darts_at(v)[j] and darts_at(v)[j+1] and
    /// belongs to the face whose orbit sweeps it.
    FaceId corner_face(Vertex v, std::size_t j) const {
        const auto& r = rot_darts_[v];
        return face_of_dart_[r[(j + 1) % r.size()]];
    }

private:
    void build() {
        if (n_ < 3) raise(ErrorKind::EmbeddingInvalid, "graph needs >= 3 vertices");
        std::vector<std::size_t> deg(n_, 0);
        for (EdgeId e = 0; e < edges_.size(); ++e) {
            const Edge& ed = edges_[e];
            if (ed.u >= n_ || ed.v >= n_)
                raise(ErrorKind::EmbeddingInvalid, "edge endpoint out of range");
            if (ed.u == ed.v)
                raise(ErrorKind::EmbeddingInvalid, "self-loop not allowed");
            if (!(ed.length > 0))
                raise(ErrorKind::EmbeddingInvalid, "edge length must be positive");
            ++deg[ed.u];
            ++deg[ed.v];
        }
        if (rotation_.size() != n_)
            raise(ErrorKind::EmbeddingInvalid, "rotation system size mismatch");

        rot_darts_.assign(n_, {});
        pos_.assign(num_darts(), 0);
        std::vector<char> seen(edges_.size(), 0);
        for (Vertex v = 0; v < n_; ++v) {
            if (rotation_[v].size() != deg[v])
                raise(ErrorKind::EmbeddingInvalid, "rotation at vertex has wrong degree");
            rot_darts_[v].reserve(deg[v]);
            std::fill(seen.begin(), seen.end(), 0);
            for (EdgeId e : rotation_[v]) {
                if (e >= edges_.size() || (edges_[e].u != v && edges_[e].v != v) || seen[e])
                    raise(ErrorKind::EmbeddingInvalid, "rotation lists a non-incident or repeated edge");
                seen[e] = 1;
                Dart d = dart(e, v);
                pos_[d] = rot_darts_[v].size();
                rot_darts_[v].push_back(d);
            }
        }

        // Simplicity: no parallel edges.
        {
            std::vector<std::pair<Vertex, Vertex>> ps;
            ps.reserve(edges_.size());
            for (const Edge& ed : edges_)
                ps.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
            std::sort(ps.begin(), ps.end());
            if (std::adjacent_find(ps.begin(), ps.end()) != ps.end())
                raise(ErrorKind::EmbeddingInvalid, "parallel edges not allowed");
        }

        // Connectivity.
        {
            std::vector<char> vis(n_, 0);
            std::queue<Vertex> q;
            q.push(0);
            vis[0] = 1;
            std::size_t cnt = 1;
            while (!q.empty()) {
                Vertex v = q.front();
                q.pop();
                for (Dart d : rot_darts_[v]) {
                    Vertex w = head(d);
                    if (!vis[w]) {
                        vis[w] = 1;
                        ++cnt;
                        q.push(w);
                    }
                }
            }
            if (cnt != n_) raise(ErrorKind::EmbeddingInvalid, "graph not connected");
        }

        // Face orbits.
        face_of_dart_.assign(num_darts(), kNone);
        faces_.clear();
        for (Dart d0 = 0; d0 < num_darts(); ++d0) {
            if (face_of_dart_[d0] != kNone) continue;
            std::vector<Dart> cyc;
            Dart d = d0;
            do {
                face_of_dart_[d] = faces_.size();
                cyc.push_back(d);
                d = face_next(d);
            } while (d != d0);
            faces_.push_back(std::move(cyc));
        }

        // Genus-0 check: the rotation system must embed in the sphere.
        const long long euler = static_cast<long long>(n_) -
                                static_cast<long long>(edges_.size()) +
                                static_cast<long long>(faces_.size());
        if (euler != 2)
            raise(ErrorKind::EmbeddingInvalid,
                  "rotation system is not a sphere embedding (Euler characteristic " +
                      std::to_string(euler) + ")");
    }

    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> rotation_;
    std::vector<std::vector<Dart>> rot_darts_;
    std::vector<std::size_t> pos_;
    std::vector<FaceId> face_of_dart_;
    std::vector<std::vector<Dart>> faces_;
};

/// One node per face of G, one arc per edge connecting the incident faces.
struct DualGraph {
    struct Arc {
        FaceId a;
        FaceId b;
        EdgeId primal;
    };
    std::size_t num_nodes = 0;
    std::vector<Arc> arcs;

    explicit DualGraph(const PlanarGraph& g) {
        num_nodes = g.num_faces();
        arcs.reserve(g.num_edges());
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            auto [a, b] = g.edge_faces(e);
            arcs.push_back({a, b, e});
        }
    }

    std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(num_nodes, 0);
        for (const Arc& a : arcs) {
            ++deg[a.a];
            ++deg[a.b];
        }
        return deg;
    }
};

namespace detail {

/// All-pairs shortest path lengths over base edge lengths (Dijkstra per
/// source, exact arithmetic). Used for chord lengths during triangulation.
inline std::vector<std::vector<Rational>> base_all_pairs(const PlanarGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
    std::vector<char> done(n);
    for (Vertex s = 0; s < n; ++s) {
        auto& ds = dist[s];
        std::fill(done.begin(), done.end(), 0);
        std::vector<char> reached(n, 0);
        ds[s] = 0;
        reached[s] = 1;
        auto cmp = [&](Vertex a, Vertex b) { return ds[a] > ds[b]; };
        std::priority_queue<Vertex, std::vector<Vertex>, decltype(cmp)> pq(cmp);
        pq.push(s);
        while (!pq.empty()) {
            Vertex v = pq.top();
            pq.pop();
            if (done[v]) continue;
            done[v] = 1;
            for (Dart d : g.darts_at(v)) {
                Vertex w = g.head(d);
                Rational nd = ds[v] + g.edge(PlanarGraph::edge_of(d)).length;
                if (!reached[w] || nd < ds[w]) {
                    ds[w] = nd;
                    reached[w] = 1;
                    pq.push(w);
                }
            }
        }
    }
    return dist;
}

}  // namespace detail

/// Triangulates every face of a valid sphere-embedded simple graph. Added
/// chords get base length equal to the shortest-path distance between their
/// endpoints in the input graph, so the input metric is never shortcut.
/// Idempotent on triangulations.
inline PlanarGraph triangulate(const PlanarGraph& g) {
    struct TDart {
        EdgeId e;
        bool fwd;  // true: u->v
    };

    std::vector<Edge> edges = g.edges();
    std::vector<std::vector<EdgeId>> rotation = g.rotation();
    const std::size_t n = g.num_vertices();

    auto tail_of = [&](TDart d) { return d.fwd ? edges[d.e].u : edges[d.e].v; };

    // Adjacency set for chord-existence checks.
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& ed : edges) {
        adj[ed.u].push_back(ed.v);
        adj[ed.v].push_back(ed.u);
    }
    auto has_edge = [&](Vertex a, Vertex b) {
        const auto& row = adj[a].size() <= adj[b].size() ? adj[a] : adj[b];
        Vertex t = adj[a].size() <= adj[b].size() ? b : a;
        return std::find(row.begin(), row.end(), t) != row.end();
    };
    auto insert_after = [&](Vertex v, EdgeId after, EdgeId e_new) {
        auto& r = rotation[v];
        auto it = std::find(r.begin(), r.end(), after);
        r.insert(it + 1, e_new);
    };

    std::vector<std::vector<TDart>> work;
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        const auto& fd = g.face_darts(f);
        if (fd.size() <= 3) continue;
        std::vector<TDart> w;
        w.reserve(fd.size());
        for (Dart d : fd) w.push_back({PlanarGraph::edge_of(d), (d & 1) == 0});
        work.push_back(std::move(w));
    }

    std::vector<std::vector<Rational>> base_dist;
    auto chord_length = [&](Vertex a, Vertex b) -> Rational {
        if (base_dist.empty()) base_dist = detail::base_all_pairs(g);
        return base_dist[a][b];
    };

    while (!work.empty()) {
        std::vector<TDart> w = std::move(work.back());
        work.pop_back();
        if (w.size() <= 3) continue;
        const std::size_t k = w.size();

        // Pick a chord (i, j), preferring ears (j = i + 2).
        std::size_t ci = kNone, cj = kNone;
        for (std::size_t span = 2; span < k - 1 && ci == kNone; ++span) {
            for (std::size_t i = 0; i < k; ++i) {
                std::size_t j = (i + span) % k;
                Vertex a = tail_of(w[i]), b = tail_of(w[j]);
                if (a != b && !has_edge(a, b)) {
                    ci = i;
                    cj = j;
                    break;
                }
            }
        }
        if (ci == kNone)
            raise(ErrorKind::EmbeddingInvalid, "face cannot be triangulated with simple chords");
        if (ci > cj) std::swap(ci, cj);

        Vertex a = tail_of(w[ci]), b = tail_of(w[cj]);
        EdgeId e_new = edges.size();
        edges.push_back({a, b, chord_length(a, b)});
        adj[a].push_back(b);
        adj[b].push_back(a);
        // Insert the new edge after rev(d_{i-1}) at a and rev(d_{j-1}) at b;
        // for rotation lists of edge ids the reversal is the same edge.
        insert_after(a, w[(ci + k - 1) % k].e, e_new);
        insert_after(b, w[(cj + k - 1) % k].e, e_new);

        std::vector<TDart> f1, f2;
        f1.push_back({e_new, edges[e_new].u != a});  // dart b->a
        for (std::size_t t = ci; t < cj; ++t) f1.push_back(w[t]);
        f2.push_back({e_new, edges[e_new].u == a});  // dart a->b
        for (std::size_t t = cj; t != ci; t = (t + 1) % k) f2.push_back(w[t]);
        if (f1.size() > 3) work.push_back(std::move(f1));
        if (f2.size() > 3) work.push_back(std::move(f2));
    }

    PlanarGraph out(n, std::move(edges), std::move(rotation));
    check_consistency(out.is_triangulated(), "triangulate left a non-triangular face");
    return out;
}

}  // namespace cheese
