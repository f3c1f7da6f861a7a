#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/planar_graph.hpp"
#include "cheese/rational.hpp"
#include "cheese/rng.hpp"

namespace cheese {

struct Path {
    std::vector<Vertex> vertices;  // from u to v inclusive; {u} when u == v
    Rational length;

    std::size_t num_edges() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Shortest-path metric with deterministically perturbed edge lengths.
///
/// Edge i receives the additive term h_i * tau where h_i is a seed-derived
/// fraction in (0,1) and tau = (min base length) / 2^(20+r) at retry r. After
/// construction it is verified, not assumed, that all n(n-1)/2 vertex
/// distances are distinct, that every shortest path is unique (each vertex
/// has exactly one tight predecessor per source), and that base-length
/// ordering is preserved. Any violation halves the scale and redraws with an
/// incremented sub-seed.
class PerturbedMetric {
public:
    static constexpr unsigned kDefaultRetries = 32;

    PerturbedMetric(const PlanarGraph& graph, std::uint64_t seed,
                    unsigned max_retries = kDefaultRetries)
        : graph_(&graph), seed_(seed) {
        for (unsigned r = 0; r < max_retries; ++r) {
            draw(r);
            if (verify()) {
                retries_used_ = r;
                return;
            }
        }
        raise(ErrorKind::DegenerateMetric,
              "perturbation retry budget exhausted without a tie-free metric");
    }

    const PlanarGraph& graph() const { return *graph_; }
    std::uint64_t seed() const { return seed_; }
    unsigned retries_used() const { return retries_used_; }

    const Rational& edge_length(EdgeId e) const { return len_[e]; }
    const std::vector<Rational>& edge_lengths() const { return len_; }

    const Rational& dist(Vertex u, Vertex v) const { return dist_[u][v]; }
    const std::vector<Rational>& dist_row(Vertex u) const { return dist_[u]; }

    /// The unique shortest path from u to v.
    Path shortest_path(Vertex u, Vertex v) const {
        Path p;
        p.length = dist_[u][v];
        Vertex w = v;
        while (w != u) {
            p.vertices.push_back(w);
            w = graph_->tail(parent_[u][w]);
        }
        p.vertices.push_back(u);
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
    }

    /// Dart into v on the unique shortest path from source s (kNone at s).
    Dart parent_dart(Vertex s, Vertex v) const { return parent_[s][v]; }

    /// dist(u, p) = min over members, with the unique arg-min vertex
    /// (u itself when u lies in p).
    std::pair<Rational, Vertex> dist_to_object(Vertex u,
                                               const std::vector<Vertex>& members) const {
        if (members.empty()) raise(ErrorKind::InvalidObject, "object has no vertices");
        Vertex best = members[0];
        for (Vertex v : members) {
            if (v == u) return {Rational(0), u};
            if (dist_[u][v] < dist_[u][best]) best = v;
        }
        return {dist_[u][best], best};
    }

private:
    void draw(unsigned r) {
        const auto& edges = graph_->edges();
        Rational min_len = edges[0].length;
        for (const Edge& e : edges) min_len = std::min(min_len, e.length);
        // tau = min base length / 2^(20+r); term_i = (h_i / 2^64) * tau.
        Rational unit = min_len / rational_pow2(84 + r);
        Rng rng(derive_seed(seed_, "perturb", r));
        len_.assign(edges.size(), Rational(0));
        for (EdgeId e = 0; e < edges.size(); ++e) {
            std::uint64_t h = rng.next_u64();
            if (h == 0) h = 1;
            len_[e] = edges[e].length + Rational(static_cast<unsigned long>(h)) * unit;
        }
    }

    bool verify() {
        if (!ordering_preserved()) return false;
        compute_all_pairs();
        return distances_distinct() && predecessors_unique();
    }

    bool ordering_preserved() const {
        const auto& edges = graph_->edges();
        std::vector<EdgeId> idx(edges.size());
        for (EdgeId e = 0; e < edges.size(); ++e) idx[e] = e;
        std::sort(idx.begin(), idx.end(), [&](EdgeId a, EdgeId b) {
            return edges[a].length < edges[b].length;
        });
        for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
            if (edges[idx[i]].length < edges[idx[i + 1]].length &&
                !(len_[idx[i]] < len_[idx[i + 1]]))
                return false;
        }
        return true;
    }

    void compute_all_pairs() {
        const std::size_t n = graph_->num_vertices();
        dist_.assign(n, std::vector<Rational>(n, Rational(0)));
        parent_.assign(n, std::vector<Dart>(n, kNone));
        std::vector<char> done(n), reached(n);
        for (Vertex s = 0; s < n; ++s) {
            auto& ds = dist_[s];
            std::fill(done.begin(), done.end(), 0);
            std::fill(reached.begin(), reached.end(), 0);
            reached[s] = 1;
            auto cmp = [&](Vertex a, Vertex b) { return ds[a] > ds[b]; };
            std::priority_queue<Vertex, std::vector<Vertex>, decltype(cmp)> pq(cmp);
            pq.push(s);
            while (!pq.empty()) {
                Vertex v = pq.top();
                pq.pop();
                if (done[v]) continue;
                done[v] = 1;
                for (Dart d : graph_->darts_at(v)) {
                    Vertex w = graph_->head(d);
                    if (done[w]) continue;
                    Rational nd = ds[v] + len_[PlanarGraph::edge_of(d)];
                    if (!reached[w] || nd < ds[w]) {
                        ds[w] = nd;
                        reached[w] = 1;
                        parent_[s][w] = d;
                        pq.push(w);
                    }
                }
            }
        }
    }

    bool distances_distinct() const {
        const std::size_t n = graph_->num_vertices();
        std::vector<const Rational*> all;
        all.reserve(n * (n - 1) / 2);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) all.push_back(&dist_[u][v]);
        std::sort(all.begin(), all.end(),
                  [](const Rational* a, const Rational* b) { return *a < *b; });
        for (std::size_t i = 0; i + 1 < all.size(); ++i)
            if (*all[i] == *all[i + 1]) return false;
        return true;
    }

    bool predecessors_unique() const {
        const std::size_t n = graph_->num_vertices();
        for (Vertex s = 0; s < n; ++s) {
            for (Vertex v = 0; v < n; ++v) {
                if (v == s) continue;
                unsigned tight = 0;
                for (Dart d : graph_->darts_at(v)) {
                    Vertex w = graph_->head(d);
                    if (dist_[s][w] + len_[PlanarGraph::edge_of(d)] == dist_[s][v]) ++tight;
                }
                if (tight != 1) return false;
            }
        }
        return true;
    }

    const PlanarGraph* graph_;
    std::uint64_t seed_;
    unsigned retries_used_ = 0;
    std::vector<Rational> len_;
    std::vector<std::vector<Rational>> dist_;
    std::vector<std::vector<Dart>> parent_;
};

/// Deterministic tie-free metric for (graph, seed).
inline PerturbedMetric perturb(const PlanarGraph& graph, std::uint64_t seed,
                               unsigned max_retries = PerturbedMetric::kDefaultRetries) {
    return PerturbedMetric(graph, seed, max_retries);
}

}  // namespace cheese
