#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/objects.hpp"

namespace cheese {

// Ground-truth oracle, kept apart from the approximation path: it builds its
// own conflict matrix from the raw vertex sets so an oracle bug cannot mask a
// solver bug.

struct ExactResult {
    std::size_t value = 0;
    std::vector<ObjectId> solution;  // sorted ids
    std::size_t nodes_explored = 0;
};

namespace exact_detail {

struct Searcher {
    const std::vector<std::uint64_t>& adj;
    std::size_t n;
    std::size_t budget;
    std::size_t nodes = 0;
    std::uint64_t best_set = 0;
    std::size_t best = 0;

    // greedy clique cover: the number of cliques bounds any independent set
    std::size_t upper_bound(std::uint64_t cand) const {
        std::size_t cliques = 0;
        while (cand) {
            std::size_t v = static_cast<std::size_t>(__builtin_ctzll(cand));
            std::uint64_t clique = 1ULL << v;
            std::uint64_t common = adj[v] & cand;
            cand &= ~(1ULL << v);
            while (common) {
                std::size_t w = static_cast<std::size_t>(__builtin_ctzll(common));
                clique |= 1ULL << w;
                cand &= ~(1ULL << w);
                common &= adj[w] & ~(1ULL << w);
            }
            ++cliques;
        }
        return cliques;
    }

    void run(std::uint64_t cand, std::uint64_t chosen, std::size_t size) {
        if (++nodes > budget) raise(ErrorKind::Budget, "exact search budget exceeded");
        if (size > best) {
            best = size;
            best_set = chosen;
        }
        if (!cand) return;
        if (size + upper_bound(cand) <= best) return;
        // branch on the candidate with the most remaining conflicts
        std::size_t pick = 64, pick_deg = 0;
        for (std::uint64_t m = cand; m;) {
            std::size_t v = static_cast<std::size_t>(__builtin_ctzll(m));
            m &= m - 1;
            std::size_t deg = static_cast<std::size_t>(__builtin_popcountll(adj[v] & cand));
            if (pick == 64 || deg > pick_deg) {
                pick = v;
                pick_deg = deg;
            }
        }
        run(cand & ~(adj[pick] | (1ULL << pick)), chosen | (1ULL << pick), size + 1);
        run(cand & ~(1ULL << pick), chosen, size);
    }
};

}  // namespace exact_detail

/// Exact maximum independent set of objects by branch and bound on the
/// intersection structure, with a greedy clique-cover upper bound.
inline ExactResult exact_mis(const Instance& inst, std::size_t node_budget = 50000000,
                             std::size_t object_limit = 64) {
    const std::size_t n = inst.objects.size();
    if (n > object_limit || n > 64)
        raise(ErrorKind::Budget, "instance exceeds the exact oracle object limit");

    // independent conflict test: hashed membership instead of the sorted
    // merge used elsewhere
    std::vector<std::set<Vertex>> vs(n);
    for (std::size_t i = 0; i < n; ++i)
        vs[i] = std::set<Vertex>(inst.objects[i].vertices.begin(),
                                 inst.objects[i].vertices.end());
    std::vector<std::uint64_t> adj(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool meet = false;
            for (Vertex v : vs[i])
                if (vs[j].count(v)) {
                    meet = true;
                    break;
                }
            if (meet) {
                adj[i] |= 1ULL << j;
                adj[j] |= 1ULL << i;
            }
        }

    exact_detail::Searcher s{adj, n, node_budget};
    // greedy start for an immediate lower bound
    {
        std::uint64_t chosen = 0, excluded = 0;
        std::size_t size = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (excluded & (1ULL << v)) continue;
            chosen |= 1ULL << v;
            excluded |= adj[v] | (1ULL << v);
            ++size;
        }
        s.best = size;
        s.best_set = chosen;
    }
    s.run(n == 64 ? ~0ULL : ((1ULL << n) - 1), 0, 0);

    ExactResult res;
    res.value = s.best;
    res.nodes_explored = s.nodes;
    for (std::size_t v = 0; v < n; ++v)
        if (s.best_set & (1ULL << v)) res.solution.push_back(inst.objects[v].id);
    std::sort(res.solution.begin(), res.solution.end());
    // certify pairwise disjointness of the returned witness
    for (std::size_t a = 0; a < res.solution.size(); ++a)
        for (std::size_t b = a + 1; b < res.solution.size(); ++b) {
            const GraphObject *pa = nullptr, *pb = nullptr;
            for (const GraphObject& p : inst.objects) {
                if (p.id == res.solution[a]) pa = &p;
                if (p.id == res.solution[b]) pb = &p;
            }
            check_consistency(objects_disjoint(*pa, *pb), "oracle witness not independent");
        }
    return res;
}

}  // namespace cheese
