#pragma once

#include <algorithm>
#include <vector>

#include "cheese/voronoi.hpp"

namespace cheese {

/// Visits simple cycles of the radial graph with at most `max_edges` radial
/// edges, as edge-id sequences starting at an object (even positions
/// ascend). Each cycle is visited once: its minimal object index starts it
/// and the opening edge id is smaller than the closing one. Length-2 cycles
/// (parallel edges) are included. The callback returns false to stop.
template <typename Callback>
inline void visit_radial_cycles(const VoronoiBundle& b, std::size_t max_edges,
                                Callback&& cb) {
    if (b.degenerate() || max_edges < 2) return;
    const std::size_t k = b.family_size();
    const std::size_t nb = b.branchings().size();
    std::vector<char> obj_used(k, 0), br_used(nb, 0);
    std::vector<std::size_t> path;
    bool stop = false;

    for (std::size_t root = 0; root < k && !stop; ++root) {
        auto dfs = [&](auto&& self, std::size_t at_branch) -> void {
            for (std::size_t j = 0; j < 3 && !stop; ++j) {
                std::size_t re = 3 * at_branch + j;
                if (re == path.back()) continue;
                std::size_t obj = b.radial_edge(re).object_index;
                if (obj == root) {
                    if (path.size() % 2 == 1 && path.front() < re) {
                        path.push_back(re);
                        if (!cb(const_cast<const std::vector<std::size_t>&>(path)))
                            stop = true;
                        path.pop_back();
                    }
                    continue;
                }
                if (obj < root || obj_used[obj]) continue;
                if (path.size() + 3 > max_edges) continue;
                obj_used[obj] = 1;
                path.push_back(re);
                for (const std::size_t re2 : b.object_rotation(obj)) {
                    if (stop) break;
                    std::size_t br2 = b.radial_edge(re2).branch_index;
                    if (br_used[br2]) continue;
                    br_used[br2] = 1;
                    path.push_back(re2);
                    self(self, br2);
                    path.pop_back();
                    br_used[br2] = 0;
                }
                path.pop_back();
                obj_used[obj] = 0;
            }
        };
        obj_used[root] = 1;
        for (std::size_t re : b.object_rotation(root)) {
            if (stop) break;
            std::size_t br = b.radial_edge(re).branch_index;
            if (br_used[br]) continue;
            br_used[br] = 1;
            path.push_back(re);
            dfs(dfs, br);
            path.pop_back();
            br_used[br] = 0;
        }
        obj_used[root] = 0;
    }
}

/// All simple cycles up to the length cap, materialized.
inline std::vector<std::vector<std::size_t>> enumerate_radial_cycles(
    const VoronoiBundle& b, std::size_t max_edges) {
    std::vector<std::vector<std::size_t>> out;
    visit_radial_cycles(b, max_edges, [&](const std::vector<std::size_t>& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

}  // namespace cheese
