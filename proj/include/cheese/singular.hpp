#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

#include "cheese/voronoi.hpp"
#include "cheese/walks.hpp"

namespace cheese {

// Singular faces are the only candidates for branching points. A face is
//  type 1 for (p1,p2,p3): its vertices lie in three different cells;
//  type 2 for (p1,p2,p3): two vertices in Vor(p1), one in Vor(p2), and the
//    cycle closing the T̂(p1)-path between the two with the face edge
//    separates p2 from p3;
//  type 3 for (p0,p1,p2,p3): all vertices in Vor(p0) and the face edges plus
//    the minimal subtree of T̂(p0) spanning them pairwise separate p1,p2,p3.

struct SingularWitness {
    FaceId face = 0;
    int type = 0;
    std::vector<ObjectId> tuple;  // ordered roles: (p1,p2,p3) or (p0,p1,p2,p3)
};

/// Builds and memoizes Voronoi bundles per id-set; tuple work re-uses them.
class BundleCache {
public:
    BundleCache(const PerturbedMetric& m, const DistCache& cache) : m_(&m), cache_(&cache) {}

    const VoronoiBundle& get(const Family& fam) const {
        std::vector<ObjectId> key = family_ids(fam);
        std::sort(key.begin(), key.end());
        auto it = bundles_.find(key);
        if (it != bundles_.end()) return *it->second;
        auto b = std::make_unique<VoronoiBundle>(*m_, fam, *cache_);
        return *bundles_.emplace(std::move(key), std::move(b)).first->second;
    }

    const PerturbedMetric& metric() const { return *m_; }
    const DistCache& dist_cache() const { return *cache_; }

private:
    const PerturbedMetric* m_;
    const DistCache* cache_;
    mutable std::map<std::vector<ObjectId>, std::unique_ptr<VoronoiBundle>> bundles_;
};

namespace detail {

/// True when every member object sits in a single region and the listed
/// objects occupy pairwise different regions.
inline bool pairwise_separated(const CornerComponents& comps,
                               const std::vector<const GraphObject*>& objs) {
    std::vector<std::size_t> comp;
    for (const GraphObject* p : objs) {
        for (Vertex v : p->vertices)
            check_consistency(!comps.vertex_on_structure(v),
                              "object touches its separating structure");
        std::size_t c = comps.comp_of_vertex(p->vertices[0]);
        for (Vertex v : p->vertices)
            check_consistency(comps.comp_of_vertex(v) == c,
                              "object split by separating structure");
        comp.push_back(c);
    }
    for (std::size_t i = 0; i < comp.size(); ++i)
        for (std::size_t j = i + 1; j < comp.size(); ++j)
            if (comp[i] == comp[j]) return false;
    return true;
}

inline std::vector<char> path_edge_mask(const PlanarGraph& g,
                                        const std::vector<Vertex>& path,
                                        std::vector<char> mask) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        mask[g.find_edge(path[i], path[i + 1])] = 1;
    return mask;
}

}  // namespace detail

/// Type-2 test for the ordered triple behind `bundle` (family indices).
inline bool face_is_type2(const VoronoiBundle& bundle, FaceId f, std::size_t p1,
                          std::size_t p2, std::size_t p3) {
    const PlanarGraph& g = bundle.graph();
    auto vs = g.face_vertices(f);
    std::vector<Vertex> in_p1;
    Vertex u3 = kNone;
    for (Vertex v : vs) {
        if (bundle.owner(v) == p1)
            in_p1.push_back(v);
        else if (bundle.owner(v) == p2)
            u3 = v;
    }
    if (in_p1.size() != 2 || u3 == kNone) return false;
    std::vector<Vertex> path = bundle.cell_tree_path(in_p1[0], in_p1[1]);
    std::vector<char> mask =
        detail::path_edge_mask(g, path, std::vector<char>(g.num_edges(), 0));
    mask[g.find_edge(in_p1[0], in_p1[1])] = 1;
    CornerComponents comps(g, mask);
    return detail::pairwise_separated(
        comps, {bundle.family()[p2], bundle.family()[p3]});
}

/// Type-3 test with center p0 and satellites {pa,pb,pc} (family indices).
inline bool face_is_type3(const VoronoiBundle& bundle, FaceId f, std::size_t p0,
                          std::size_t pa, std::size_t pb, std::size_t pc) {
    const PlanarGraph& g = bundle.graph();
    auto vs = g.face_vertices(f);
    for (Vertex v : vs)
        if (bundle.owner(v) != p0) return false;
    std::vector<char> mask(g.num_edges(), 0);
    for (Dart d : g.face_darts(f)) mask[PlanarGraph::edge_of(d)] = 1;
    // minimal subtree of T̂(p0) spanning the face vertices
    mask = detail::path_edge_mask(g, bundle.cell_tree_path(vs[0], vs[1]), std::move(mask));
    mask = detail::path_edge_mask(g, bundle.cell_tree_path(vs[0], vs[2]), std::move(mask));
    mask = detail::path_edge_mask(g, bundle.cell_tree_path(vs[1], vs[2]), std::move(mask));
    CornerComponents comps(g, mask);
    return detail::pairwise_separated(
        comps, {bundle.family()[pa], bundle.family()[pb], bundle.family()[pc]});
}

/// All singular witnesses of an ordered tuple: for a triple, every type-1
/// face and every type-2 face over the role assignments consistent with the
/// order-free owner pattern; for a quadruple, the type-3 faces with the
/// first object as center.
inline std::vector<SingularWitness> singular_faces(const BundleCache& bundles,
                                                   const Family& tuple) {
    if (tuple.size() != 3 && tuple.size() != 4)
        raise(ErrorKind::Precondition, "singular tuples have 3 or 4 objects");
    if (!family_independent(tuple))
        raise(ErrorKind::NotIndependent, "tuple objects overlap");
    const VoronoiBundle& b = bundles.get(tuple);
    const PlanarGraph& g = b.graph();
    // map role positions to family indices
    std::vector<std::size_t> fi;
    for (const GraphObject* p : tuple)
        for (std::size_t i = 0; i < b.family_size(); ++i)
            if (b.family()[i]->id == p->id) fi.push_back(i);

    std::vector<SingularWitness> out;
    if (tuple.size() == 3) {
        for (FaceId f = 0; f < g.num_faces(); ++f) {
            auto vs = g.face_vertices(f);
            std::size_t o0 = b.owner(vs[0]), o1 = b.owner(vs[1]), o2 = b.owner(vs[2]);
            if (o0 != o1 && o1 != o2 && o0 != o2) {
                out.push_back({f, 1, family_ids(tuple)});
                continue;
            }
            // ordered type-2 roles are forced by the owner pattern up to p3
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t c = 0; c < 3; ++c) {
                    if (a == c) continue;
                    std::size_t bb = 3 - a - c;
                    if (face_is_type2(b, f, fi[a], fi[bb], fi[c]))
                        out.push_back({f, 2,
                                       {tuple[a]->id, tuple[bb]->id, tuple[c]->id}});
                }
        }
        // Lemma bound: at most two type-1 faces per triple
        std::size_t t1 = 0;
        for (const auto& w : out)
            if (w.type == 1) ++t1;
        check_consistency(t1 <= 2, "more than two type-1 singular faces for a triple");
    } else {
        for (FaceId f = 0; f < g.num_faces(); ++f)
            if (face_is_type3(b, f, fi[0], fi[1], fi[2], fi[3]))
                out.push_back({f, 3, family_ids(tuple)});
        check_consistency(out.size() <= 1,
                          "more than one type-3 singular face for a quadruple");
    }
    return out;
}

/// Witness tuple from the family under which branching point f is singular,
/// with f persisting as a branching point of the tuple's diagram carrying
/// the same three labelled spokes.
inline SingularWitness classify_branching_point(const BundleCache& bundles,
                                                const VoronoiBundle& bundle, FaceId f) {
    const PlanarGraph& g = bundle.graph();
    check_consistency(bundle.is_branching(f), "face is not a branching point");
    auto vs = g.face_vertices(f);
    std::size_t o0 = bundle.owner(vs[0]), o1 = bundle.owner(vs[1]), o2 = bundle.owner(vs[2]);

    auto spokes_persist = [&](const Family& tuple) {
        const VoronoiBundle& tb = bundles.get(tuple);
        if (!tb.is_branching(f)) return false;
        // owners restrict and shortest paths are family-independent, so it
        // suffices that the labels map to the same objects
        for (Vertex v : vs) {
            ObjectId a = bundle.object(bundle.owner(v)).id;
            ObjectId c = tb.object(tb.owner(v)).id;
            if (a != c) return false;
        }
        return true;
    };

    if (o0 != o1 && o1 != o2 && o0 != o2) {
        Family tuple{bundle.family()[o0], bundle.family()[o1], bundle.family()[o2]};
        SingularWitness w{f, 1, {}};
        for (const GraphObject* p : tuple) w.tuple.push_back(p->id);
        check_consistency(spokes_persist(tuple), "type-1 witness does not persist");
        return w;
    }

    if (o0 == o1 && o1 == o2) {
        // type 3: search satellite triples in id order
        std::size_t p0 = o0;
        const std::size_t k = bundle.family_size();
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t bb = a + 1; bb < k; ++bb)
                for (std::size_t c = bb + 1; c < k; ++c) {
                    if (a == p0 || bb == p0 || c == p0) continue;
                    if (!face_is_type3(bundle, f, p0, a, bb, c)) continue;
                    Family tuple{bundle.family()[p0], bundle.family()[a],
                                 bundle.family()[bb], bundle.family()[c]};
                    if (!spokes_persist(tuple)) continue;
                    return {f, 3,
                            {bundle.object(p0).id, bundle.object(a).id,
                             bundle.object(bb).id, bundle.object(c).id}};
                }
        raise(ErrorKind::Consistency, "branching point admits no type-3 witness");
    }

    // pattern (p, p, q): type 2 with p1, p2 forced
    std::size_t p1 = o0 == o1 ? o0 : (o0 == o2 ? o0 : o1);
    std::size_t p2 = o0 == o1 ? o2 : (o0 == o2 ? o1 : o0);
    for (std::size_t r = 0; r < bundle.family_size(); ++r) {
        if (r == p1 || r == p2) continue;
        Family tuple{bundle.family()[p1], bundle.family()[p2], bundle.family()[r]};
        const VoronoiBundle& tb = bundles.get(tuple);
        std::size_t t1 = kNone, t2 = kNone, t3 = kNone;
        for (std::size_t i = 0; i < 3; ++i) {
            ObjectId id = tb.family()[i]->id;
            if (id == bundle.object(p1).id) t1 = i;
            if (id == bundle.object(p2).id) t2 = i;
            if (id == bundle.object(r).id) t3 = i;
        }
        if (!face_is_type2(tb, f, t1, t2, t3)) continue;
        if (!spokes_persist(tuple)) continue;
        return {f, 2, {bundle.object(p1).id, bundle.object(p2).id, bundle.object(r).id}};
    }
    raise(ErrorKind::Consistency, "branching point admits no type-2 witness");
}

}  // namespace cheese
