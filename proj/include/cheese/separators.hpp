#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheese/singular.hpp"
#include "cheese/voronoi.hpp"
#include "cheese/walks.hpp"

namespace cheese {

/// Shared per-instance state: metric, distance arrays and memoized bundles.
struct Context {
    const Instance* inst;
    PerturbedMetric metric;
    DistCache dc;
    BundleCache bundles;

    explicit Context(const Instance& i)
        : inst(&i), metric(i.build_metric()), dc(metric), bundles(metric, dc) {}

    Family family(const std::vector<ObjectId>& ids) const { return make_family(*inst, ids); }
    const VoronoiBundle& bundle(const std::vector<ObjectId>& ids) const {
        return bundles.get(family(ids));
    }
    Family all_objects() const {
        Family fam;
        for (const GraphObject& p : inst->objects) fam.push_back(&p);
        return fam;
    }
    const GraphObject& object(ObjectId id) const {
        for (const GraphObject& p : inst->objects)
            if (p.id == id) return p;
        raise(ErrorKind::InvalidObject, "unknown object id " + std::to_string(id));
    }
};

/// Radial edges named independently of the family: (branching face, label).
/// A cycle alternates ascend/descend; even positions go object -> branching.
struct RadialCycleRef {
    std::vector<std::pair<FaceId, Vertex>> edges;

    std::size_t length() const { return edges.size(); }

    /// Lexicographically minimal even rotation over both orientations.
    std::vector<std::pair<FaceId, Vertex>> canonical() const {
        auto best = edges;
        bool first = true;
        for (int orient = 0; orient < 2; ++orient) {
            std::vector<std::pair<FaceId, Vertex>> seq = edges;
            if (orient == 1) std::reverse(seq.begin(), seq.end());
            for (std::size_t s = 0; s < seq.size(); s += 2) {
                std::vector<std::pair<FaceId, Vertex>> rot;
                rot.reserve(seq.size());
                for (std::size_t i = 0; i < seq.size(); ++i)
                    rot.push_back(seq[(s + i) % seq.size()]);
                if (first || rot < best) {
                    best = std::move(rot);
                    first = false;
                }
            }
        }
        return best;
    }

    std::string canonical_string() const {
        std::ostringstream os;
        for (auto [f, u] : canonical()) os << f << "." << u << ",";
        return os.str();
    }

    bool operator==(const RadialCycleRef& o) const { return canonical() == o.canonical(); }
};

/// Cycle as radial edge ids of a concrete bundle; validates alternation.
inline std::vector<std::size_t> cycle_edge_ids(const VoronoiBundle& b,
                                               const RadialCycleRef& c) {
    if (c.edges.size() < 2 || c.edges.size() % 2 != 0)
        raise(ErrorKind::InvalidCycle, "cycle needs an even number of edges");
    std::vector<std::size_t> ids;
    for (auto [f, u] : c.edges) ids.push_back(b.radial_edge_id(f, u));
    for (std::size_t i = 0; i < ids.size(); i += 2) {
        const RadialEdge& up = b.radial_edge(ids[i]);
        const RadialEdge& down = b.radial_edge(ids[(i + 1) % ids.size()]);
        const RadialEdge& next = b.radial_edge(ids[(i + 2) % ids.size()]);
        if (up.branch_index != down.branch_index || ids[i] == ids[i + 1])
            raise(ErrorKind::InvalidCycle, "edges do not meet at a branching");
        if (down.object_index != next.object_index)
            raise(ErrorKind::InvalidCycle, "edges do not meet at an object");
    }
    return ids;
}

inline RadialCycleRef cycle_ref(const VoronoiBundle& b, const std::vector<std::size_t>& ids) {
    RadialCycleRef c;
    for (std::size_t re : ids)
        c.edges.emplace_back(b.radial_edge(re).branch_face, b.radial_edge(re).label);
    return c;
}

inline bool cycle_is_simple(const VoronoiBundle& b, const std::vector<std::size_t>& ids) {
    std::set<std::size_t> objs, branches;
    for (std::size_t i = 0; i < ids.size(); i += 2) {
        if (!objs.insert(b.radial_edge(ids[i]).object_index).second) return false;
        if (!branches.insert(b.radial_edge(ids[i]).branch_index).second) return false;
    }
    return true;
}

/// A radial separator (P, C): support family plus a cycle in its radial graph.
struct RadialSeparator {
    std::vector<ObjectId> support;  // sorted
    RadialCycleRef cycle;

    std::size_t length() const { return cycle.length(); }
};

namespace detail {

/// Spokes incident to branching points traversed by the cycle (all three
/// spokes per branching).
inline std::vector<std::size_t> incident_spokes(const VoronoiBundle& b,
                                                const std::vector<std::size_t>& ids) {
    std::set<std::size_t> branches;
    for (std::size_t i = 0; i < ids.size(); i += 2)
        branches.insert(b.radial_edge(ids[i]).branch_index);
    std::vector<std::size_t> out;
    for (std::size_t bi : branches)
        for (std::size_t j = 0; j < 3; ++j) out.push_back(3 * bi + j);
    return out;
}

}  // namespace detail

/// True iff support is contained in F and no spoke incident to a cycle
/// branching conflicts with any object of F outside the support.
inline bool is_compatible(const Context& ctx, const RadialSeparator& sep, const Family& f) {
    std::set<ObjectId> fids;
    for (const GraphObject* p : f) fids.insert(p->id);
    for (ObjectId id : sep.support)
        if (!fids.count(id)) return false;
    const VoronoiBundle& b = ctx.bundle(sep.support);
    auto ids = cycle_edge_ids(b, sep.cycle);
    std::set<ObjectId> sup(sep.support.begin(), sep.support.end());
    for (std::size_t re : detail::incident_spokes(b, ids)) {
        const RadialEdge& e = b.radial_edge(re);
        for (const GraphObject* q : f) {
            if (sup.count(q->id)) continue;
            if (in_conflict(ctx.dc, *q, e.spoke, b.object(e.object_index))) return false;
        }
    }
    return true;
}

/// The identical edge sequence as a cycle of Rad_F; every branching of the
/// cycle must persist with identical labelled spokes.
inline RadialCycleRef lift_cycle(const Context& ctx, const RadialSeparator& sep,
                                 const Family& f) {
    if (!is_compatible(ctx, sep, f))
        raise(ErrorKind::Precondition, "separator is not compatible with the family");
    const VoronoiBundle& bp = ctx.bundle(sep.support);
    const VoronoiBundle& bf = ctx.bundles.get(f);
    auto idsP = cycle_edge_ids(bp, sep.cycle);
    auto idsF = cycle_edge_ids(bf, sep.cycle);  // throws if structure lost
    for (std::size_t i = 0; i < idsP.size(); ++i) {
        const RadialEdge& ep = bp.radial_edge(idsP[i]);
        const RadialEdge& ef = bf.radial_edge(idsF[i]);
        check_consistency(ep.spoke == ef.spoke && ep.label == ef.label,
                          "spoke changed under compatible extension");
        check_consistency(bp.object(ep.object_index).id == bf.object(ef.object_index).id,
                          "label owner changed under compatible extension");
    }
    return sep.cycle;
}

/// Support reduction: the cycle's own objects plus one classification
/// witness per traversed branching. |P'| <= (5/2) * cycle length, the cycle
/// persists in Rad_P', and (P', C) is compatible with P.
inline std::vector<ObjectId> reduce_support(const Context& ctx, const RadialSeparator& sep) {
    const VoronoiBundle& b = ctx.bundle(sep.support);
    auto ids = cycle_edge_ids(b, sep.cycle);
    std::set<ObjectId> out;
    std::set<std::size_t> branches;
    for (std::size_t i = 0; i < ids.size(); i += 2) {
        out.insert(b.object(b.radial_edge(ids[i]).object_index).id);
        out.insert(b.object(b.radial_edge(ids[i + 1]).object_index).id);
        branches.insert(b.radial_edge(ids[i]).branch_index);
    }
    for (std::size_t bi : branches) {
        SingularWitness w =
            classify_branching_point(ctx.bundles, b, b.branchings()[bi]);
        out.insert(w.tuple.begin(), w.tuple.end());
    }
    std::vector<ObjectId> support(out.begin(), out.end());
    check_consistency(2 * support.size() <= 5 * sep.length(),
                      "support reduction exceeded the 5/2 bound");
    // the cycle must persist in the reduced radial graph
    RadialSeparator reduced{support, sep.cycle};
    lift_cycle(ctx, reduced, ctx.family(sep.support));
    return support;
}

/// Swiss-cheese separator (P, K, f): support, edge-disjoint non-crossing
/// cycles in Rad_P, and one region of the sphere minus their walks whose
/// boundary carries every cycle. The region is materialized as the set of
/// faces of G inside it.
class SwissCheeseSeparator {
public:
    /// Root separator (empty support, no cycles, whole sphere).
    static SwissCheeseSeparator root(const Context& ctx) {
        SwissCheeseSeparator s;
        s.ctx_ = &ctx;
        const std::size_t nf = ctx.metric.graph().num_faces();
        s.region_.resize(nf);
        for (FaceId t = 0; t < nf; ++t) s.region_[t] = t;
        s.region_mask_.assign(nf, 1);
        s.boundary_vertex_.assign(ctx.metric.graph().num_vertices(), 0);
        s.build_key();
        s.compute_allowed();
        return s;
    }

    /// Separator with support and cycles; the region is the face of the
    /// cycles' union subgraph whose drawing contains `witness_face`.
    SwissCheeseSeparator(const Context& ctx, std::vector<ObjectId> support,
                         std::vector<RadialCycleRef> cycles, FaceId witness_face)
        : ctx_(&ctx), support_(std::move(support)), cycles_(std::move(cycles)) {
        std::sort(support_.begin(), support_.end());
        if (cycles_.empty())
            raise(ErrorKind::Precondition, "use root() for the separator without cycles");
        const VoronoiBundle& b = ctx.bundle(support_);
        const PlanarGraph& g = b.graph();

        std::vector<std::vector<std::size_t>> ids;
        for (const RadialCycleRef& c : cycles_) {
            ids.push_back(cycle_edge_ids(b, c));
            if (!cycle_is_simple(b, ids.back()))
                raise(ErrorKind::InvalidCycle, "separator cycle is not simple");
        }
        // edge-disjoint
        std::set<std::size_t> used;
        for (const auto& cyc : ids)
            for (std::size_t re : cyc)
                if (!used.insert(re).second)
                    raise(ErrorKind::InvalidCycle, "separator cycles share a radial edge");
        // non-crossing at shared objects
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t c = a + 1; c < ids.size(); ++c)
                if (cycles_cross(b, ids[a], ids[c]))
                    raise(ErrorKind::InvalidCycle, "separator cycles cross");

        boundary_vertex_.assign(g.num_vertices(), 0);
        for (const auto& cyc : ids)
            for (Dart d : b.realize_cycle(cyc)) boundary_vertex_[g.tail(d)] = 1;

        // region: the face of the union subgraph holding the witness
        DiamondGrouping grp = diamond_grouping(b, used);
        std::size_t witness_diamond = kNone;
        for (std::size_t di = 0; di < b.diamonds().size(); ++di)
            if (b.diamonds()[di].face_in_region(witness_face)) witness_diamond = di;
        if (witness_diamond == kNone)
            raise(ErrorKind::Precondition, "witness face lies on the drawing");
        region_group_ = grp.group_of_diamond[witness_diamond];

        // every cycle must lie on the region's boundary
        for (const auto& cyc : ids) {
            bool flanks = false;
            for (std::size_t re : cyc)
                for (int dir : {0, 1})
                    if (grp.group_of_diamond[b.diamond_of_dart(re, dir)] == region_group_)
                        flanks = true;
            if (!flanks)
                raise(ErrorKind::InvalidCycle, "a cycle does not bound the region");
        }

        // faces: member diamonds' regions plus pockets of interior branchings
        std::vector<char> traversed(b.branchings().size(), 0);
        for (const auto& cyc : ids)
            for (std::size_t i = 0; i < cyc.size(); i += 2)
                traversed[b.radial_edge(cyc[i]).branch_index] = 1;
        region_mask_.assign(g.num_faces(), 0);
        member_comps_.clear();
        for (std::size_t di = 0; di < b.diamonds().size(); ++di) {
            if (grp.group_of_diamond[di] != region_group_) continue;
            member_diamonds_.push_back(di);
            if (b.diamonds()[di].comp != kNone) member_comps_.insert(b.diamonds()[di].comp);
            for (FaceId t : b.diamonds()[di].region) region_mask_[t] = 1;
        }
        for (std::size_t bi = 0; bi < b.branchings().size(); ++bi) {
            if (traversed[bi]) continue;
            if (branching_group(b, grp, bi) != region_group_) continue;
            region_mask_[b.branchings()[bi]] = 1;
            member_comps_.insert(b.arrangement().comp_of_face(b.branchings()[bi]));
        }
        for (FaceId t = 0; t < g.num_faces(); ++t)
            if (region_mask_[t]) region_.push_back(t);
        build_key();
        compute_allowed();
    }

    const std::vector<ObjectId>& support() const { return support_; }
    const std::vector<RadialCycleRef>& cycles() const { return cycles_; }
    const std::vector<FaceId>& region() const { return region_; }
    bool face_in_region(FaceId t) const { return region_mask_[t]; }

    std::size_t complexity() const {
        std::size_t c = 0;
        for (const auto& cyc : cycles_) c += cyc.length();
        return c;
    }

    /// |P| <= (5/2) * complexity; the root (0 cycles, empty support) is ripe.
    bool ripe() const { return 2 * support_.size() <= 5 * complexity(); }

    const std::string& key() const { return key_; }

    bool is_root() const { return cycles_.empty(); }

    /// Region containment (the partial order of the dynamic program).
    bool region_subset_of(const SwissCheeseSeparator& other) const {
        for (FaceId t : region_)
            if (!other.region_mask_[t]) return false;
        return true;
    }
    bool region_equals(const SwissCheeseSeparator& other) const {
        return region_ == other.region_;
    }

    /// Every vertex strictly inside the region: off all boundary walks and
    /// with its corners inside member components of the drawing.
    bool vertex_strictly_inside(Vertex v) const {
        if (is_root()) return true;
        if (boundary_vertex_[v]) return false;
        const CornerComponents& arr = ctx_->bundle(support_).arrangement();
        for (std::size_t j = 0; j < ctx_->metric.graph().degree(v); ++j)
            if (member_comps_.count(arr.comp_of_corner(v, j))) return true;
        return false;
    }

    bool object_inside(const GraphObject& p) const {
        for (Vertex v : p.vertices)
            if (!vertex_strictly_inside(v)) return false;
        return true;
    }

    /// Object ids inside the region, not banned by any cycle, and disjoint
    /// from the support.
    const std::vector<ObjectId>& allowed() const { return allowed_; }

    bool is_allowed(ObjectId id) const {
        return std::binary_search(allowed_.begin(), allowed_.end(), id);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["support"] = support_;
        auto& ks = j["cycles"] = nlohmann::json::array();
        for (const RadialCycleRef& c : cycles_) {
            nlohmann::json jc = nlohmann::json::array();
            for (auto [f, u] : c.edges) jc.push_back({f, u});
            ks.push_back(std::move(jc));
        }
        j["region"] = region_;
        j["complexity"] = complexity();
        j["ripe"] = ripe();
        return j;
    }

private:
    SwissCheeseSeparator() = default;

    static bool cycles_cross(const VoronoiBundle& b, const std::vector<std::size_t>& c1,
                             const std::vector<std::size_t>& c2) {
        // only object nodes can be shared; cycles cross iff their edge pairs
        // interleave in the rotation around a shared object
        for (std::size_t i = 0; i < c1.size(); i += 2) {
            std::size_t obj = b.radial_edge(c1[i]).object_index;
            std::size_t a1 = c1[i];
            std::size_t b1 = c1[(i + c1.size() - 1) % c1.size()];
            for (std::size_t j = 0; j < c2.size(); j += 2) {
                if (b.radial_edge(c2[j]).object_index != obj) continue;
                std::size_t a2 = c2[j];
                std::size_t b2 = c2[(j + c2.size() - 1) % c2.size()];
                const auto& rot = b.object_rotation(obj);
                auto pos = [&](std::size_t re) {
                    return std::find(rot.begin(), rot.end(), re) - rot.begin();
                };
                std::size_t pa1 = pos(a1), pb1 = pos(b1);
                // walk the arc from a1 to b1; count how many of {a2,b2} fall inside
                int inside = 0;
                for (std::size_t t = (pa1 + 1) % rot.size(); t != pb1;
                     t = (t + 1) % rot.size()) {
                    if (rot[t] == a2 || rot[t] == b2) ++inside;
                }
                if (inside == 1) return true;
            }
        }
        return false;
    }

    void build_key() {
        std::ostringstream os;
        os << "P:";
        for (ObjectId id : support_) os << id << ",";
        std::vector<std::string> ck;
        for (const RadialCycleRef& c : cycles_) ck.push_back(c.canonical_string());
        std::sort(ck.begin(), ck.end());
        os << "|K:";
        for (const auto& s : ck) os << s << ";";
        os << "|R:";
        for (FaceId t : region_) os << t << ",";
        key_ = os.str();
    }

    void compute_allowed() {
        allowed_.clear();
        const Instance& inst = *ctx_->inst;
        // spokes incident to branchings of any cycle, evaluated in Rad_P
        std::vector<std::pair<const GraphObject*, const std::vector<Vertex>*>> bans;
        const VoronoiBundle* b = nullptr;
        if (!is_root()) {
            b = &ctx_->bundle(support_);
            std::set<std::size_t> res;
            for (const RadialCycleRef& c : cycles_)
                for (std::size_t re : detail::incident_spokes(*b, cycle_edge_ids(*b, c)))
                    res.insert(re);
            for (std::size_t re : res)
                bans.emplace_back(&b->object(b->radial_edge(re).object_index),
                                  &b->radial_edge(re).spoke);
        }
        for (const GraphObject& p : inst.objects) {
            if (!object_inside(p)) continue;
            bool ok = true;
            for (ObjectId sid : support_)
                if (!objects_disjoint(p, ctx_->object(sid))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (auto [owner, spoke] : bans) {
                if (owner->id == p.id) continue;
                if (in_conflict(ctx_->dc, p, *spoke, *owner)) {
                    ok = false;
                    break;
                }
            }
            if (ok) allowed_.push_back(p.id);
        }
        std::sort(allowed_.begin(), allowed_.end());
    }

    const Context* ctx_ = nullptr;
    std::vector<ObjectId> support_;
    std::vector<RadialCycleRef> cycles_;
    std::vector<FaceId> region_;
    std::vector<char> region_mask_;
    std::vector<char> boundary_vertex_;
    std::size_t region_group_ = 0;
    std::vector<std::size_t> member_diamonds_;
    std::set<std::size_t> member_comps_;
    std::vector<ObjectId> allowed_;
    std::string key_;
};

}  // namespace cheese
