#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/metric.hpp"
#include "cheese/objects.hpp"
#include "cheese/planar_graph.hpp"
#include "cheese/walks.hpp"

namespace cheese {

/// A family is a set of objects, kept sorted by id. Cells, diagram faces and
/// weights are indexed by position in the family.
using Family = std::vector<const GraphObject*>;

inline Family make_family(const Instance& inst, const std::vector<ObjectId>& ids) {
    Family fam;
    for (ObjectId id : ids) {
        const GraphObject* found = nullptr;
        for (const GraphObject& p : inst.objects)
            if (p.id == id) found = &p;
        if (!found) raise(ErrorKind::InvalidObject, "unknown object id " + std::to_string(id));
        fam.push_back(found);
    }
    std::sort(fam.begin(), fam.end(),
              [](const GraphObject* a, const GraphObject* b) { return a->id < b->id; });
    return fam;
}

inline bool family_independent(const Family& fam) {
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            if (!objects_disjoint(*fam[i], *fam[j])) return false;
    return true;
}

inline std::vector<ObjectId> family_ids(const Family& fam) {
    std::vector<ObjectId> ids;
    ids.reserve(fam.size());
    for (const GraphObject* p : fam) ids.push_back(p->id);
    return ids;
}

/// Per-object distance arrays dist(v, p), shared across diagram builds.
class DistCache {
public:
    explicit DistCache(const PerturbedMetric& m) : m_(&m) {}

    const std::vector<Rational>& dists(const GraphObject& p) const {
        auto it = cache_.find(p.id);
        if (it != cache_.end()) return it->second;
        const std::size_t n = m_->graph().num_vertices();
        std::vector<Rational> d(n);
        for (Vertex v = 0; v < n; ++v) d[v] = m_->dist_to_object(v, p.vertices).first;
        return cache_.emplace(p.id, std::move(d)).first->second;
    }

    void precompute(const Instance& inst) const {
        for (const GraphObject& p : inst.objects) dists(p);
    }

    const PerturbedMetric& metric() const { return *m_; }

private:
    const PerturbedMetric* m_;
    mutable std::map<ObjectId, std::vector<Rational>> cache_;
};

struct VoronoiPartition {
    std::vector<std::size_t> owner;  // vertex -> family index
};

/// q is in conflict with the spoke of p when some spoke vertex is strictly
/// closer to q than to p.
inline bool in_conflict(const DistCache& cache, const GraphObject& q,
                        const std::vector<Vertex>& spoke, const GraphObject& p) {
    const auto& dq = cache.dists(q);
    const auto& dp = cache.dists(p);
    for (Vertex v : spoke)
        if (dq[v] < dp[v]) return true;
    return false;
}

struct DiagramEdge {
    FaceId endpoint_f = 0;            // branching faces of G (may coincide)
    FaceId endpoint_g = 0;
    std::vector<Dart> darts;          // dual darts f -> g; primal dart d crosses
                                      // from face_of(d) into face_of(rev d)
    std::vector<EdgeId> crossed;      // primal edges crossed, in order
    std::vector<FaceId> via;          // interior chain faces (degree-2 nodes)
    std::size_t orbit_a = 0;          // diagram face flanking on the tail(d) side
    std::size_t orbit_b = 0;          // and the head(d) side
};

/// A radial edge joins branching point `branch` to the object owning its
/// label vertex; the spoke is the unique shortest path from the label into
/// the object. Edge id = 3 * branch_index + corner, where corner j sits
/// between boundary positions j and j+1 of the branching triangle.
struct RadialEdge {
    std::size_t branch_index = 0;
    FaceId branch_face = 0;
    std::size_t corner = 0;
    Vertex label = 0;
    std::size_t object_index = 0;     // family index
    std::vector<Vertex> spoke;        // label .. vertex inside the object
};

struct Diamond {
    std::size_t diag_edge = 0;
    std::array<std::size_t, 4> redges{};  // cycle p -(0)- f -(1)- q -(2)- g -(3)- p
    std::size_t comp = kNone;         // drawing-arrangement component; kNone = empty
    std::vector<FaceId> region;       // faces of G whose interior lies in the diamond
    std::vector<char> boundary_vertex;       // on the realized 4-gon walk
    const CornerComponents* arrangement = nullptr;

    bool face_in_region(FaceId t) const {
        return comp != kNone && arrangement->comp_of_face(t) == comp;
    }
    /// Vertex lies in the closed diamond (boundary included).
    bool vertex_touches(Vertex v) const {
        if (boundary_vertex[v]) return true;
        return comp != kNone && arrangement->vertex_touches_comp(v, comp);
    }
};

/// Voronoi partition, spanning trees, diagram, radial graph and diamonds of
/// an independent family. With fewer than three objects only the partition
/// and trees exist and the bundle reports itself degenerate.
class VoronoiBundle {
public:
    VoronoiBundle(const PerturbedMetric& metric, Family family, const DistCache& cache)
        : metric_(&metric), cache_(&cache), family_(std::move(family)) {
        std::sort(family_.begin(), family_.end(),
                  [](const GraphObject* a, const GraphObject* b) { return a->id < b->id; });
        if (family_.empty()) raise(ErrorKind::NotIndependent, "empty family");
        if (!family_independent(family_))
            raise(ErrorKind::NotIndependent, "family objects overlap");
        build_partition();
        build_trees();
        if (family_.size() >= 3) {
            build_diagram();
            build_radial();
            build_diamonds();
        }
    }

    const PerturbedMetric& metric() const { return *metric_; }
    const DistCache& cache() const { return *cache_; }
    const PlanarGraph& graph() const { return metric_->graph(); }
    const Family& family() const { return family_; }
    std::size_t family_size() const { return family_.size(); }
    const GraphObject& object(std::size_t fi) const { return *family_[fi]; }

    bool degenerate() const { return family_.size() < 3; }

    // ── partition ──
    std::size_t owner(Vertex v) const { return owner_[v]; }
    const std::vector<std::size_t>& owners() const { return owner_; }
    const std::vector<Rational>& object_dists(std::size_t fi) const {
        return cache_->dists(*family_[fi]);
    }

    // ── trees ──
    /// Next vertex toward the owning object (kNone inside the object).
    Vertex cell_parent(Vertex v) const { return cell_parent_[v]; }
    const std::vector<char>& tree_edge_mask() const { return that_edge_; }

    /// The unique path from u into its owning object along tight edges; the
    /// path is the unique shortest path from u to the object.
    std::vector<Vertex> path_to_object(Vertex u) const {
        std::vector<Vertex> path{u};
        while (cell_parent_[path.back()] != kNone) path.push_back(cell_parent_[path.back()]);
        return path;
    }

    /// Tree path between two vertices of the same object within T(p).
    std::vector<Vertex> object_tree_path(std::size_t fi, Vertex a, Vertex b) const {
        const auto& par = tree_parent_[fi];
        std::vector<Vertex> pa{a}, pb{b};
        while (par.at(pa.back()) != kNone) pa.push_back(par.at(pa.back()));
        while (par.at(pb.back()) != kNone) pb.push_back(par.at(pb.back()));
        // splice at the lowest common ancestor
        std::size_t i = pa.size(), j = pb.size();
        while (i > 0 && j > 0 && pa[i - 1] == pb[j - 1]) {
            --i;
            --j;
        }
        std::vector<Vertex> out(pa.begin(), pa.begin() + i + 1);
        for (std::size_t t = j; t-- > 0;) out.push_back(pb[t]);
        return out;
    }

    /// Tree path between two vertices of the same cell within T̂(p).
    std::vector<Vertex> cell_tree_path(Vertex a, Vertex b) const {
        check_consistency(owner_[a] == owner_[b], "cell tree path across cells");
        std::vector<Vertex> pa = path_to_object(a), pb = path_to_object(b);
        // both descend into the object; bridge the object ends with T(p)
        std::vector<Vertex> mid = object_tree_path(owner_[a], pa.back(), pb.back());
        std::vector<Vertex> walk = pa;
        walk.insert(walk.end(), mid.begin() + 1, mid.end());
        for (std::size_t t = pb.size() - 1; t-- > 0;) walk.push_back(pb[t]);
        // contract backtracking to obtain the unique simple tree path
        std::vector<Vertex> out;
        for (Vertex v : walk) {
            auto it = std::find(out.begin(), out.end(), v);
            if (it != out.end())
                out.erase(it + 1, out.end());
            else
                out.push_back(v);
        }
        return out;
    }

    // ── diagram ──
    const std::vector<FaceId>& branchings() const { return branchings_; }
    std::size_t branch_index(FaceId f) const {
        auto it = branch_index_.find(f);
        check_consistency(it != branch_index_.end(), "not a branching point");
        return it->second;
    }
    bool is_branching(FaceId f) const { return branch_index_.count(f) > 0; }
    const std::vector<DiagramEdge>& diagram_edges() const { return diagram_edges_; }
    std::size_t num_orbits() const { return num_orbits_; }
    std::size_t family_of_orbit(std::size_t orbit) const { return family_of_orbit_[orbit]; }
    /// Triangle on the diagram drawing (a chain or branching node).
    bool face_on_diagram(FaceId t) const { return alive_deg_[t] >= 2; }
    /// Diagram face (as family index) whose region contains triangle t.
    std::size_t region_of_face(FaceId t) const { return region_of_face_[t]; }

    // ── radial graph ──
    const std::vector<RadialEdge>& radial_edges() const { return radial_edges_; }
    const RadialEdge& radial_edge(std::size_t re) const { return radial_edges_[re]; }
    std::size_t radial_edge_id(FaceId branch, Vertex label) const {
        std::size_t b = branch_index(branch);
        for (std::size_t j = 0; j < 3; ++j)
            if (radial_edges_[3 * b + j].label == label) return 3 * b + j;
        raise(ErrorKind::InvalidCycle, "no radial edge with this label");
    }
    /// Radial edges around an object in embedding order.
    const std::vector<std::size_t>& object_rotation(std::size_t fi) const {
        return rot_obj_[fi];
    }
    const std::vector<Diamond>& diamonds() const { return diamonds_; }

    /// The unique radial face (diamond) whose boundary traverses this dart.
    std::size_t diamond_of_dart(std::size_t re, int dir) const {
        return diamond_of_dart_[2 * re + dir];
    }

    /// Complement components of the full radial drawing (diamond interiors
    /// and branching pockets).
    const CornerComponents& arrangement() const { return *arrangement_; }

    /// Face orbit of the full radial graph starting at a dart; a radial dart
    /// is (edge id, direction), direction 0 = object->branch.
    struct RadialDart {
        std::size_t re;
        int dir;
        bool operator==(const RadialDart& o) const = default;
    };

    RadialDart radial_face_next(RadialDart d) const {
        RadialDart r{d.re, 1 - d.dir};
        return rotation_next_radial(r);
    }

    RadialDart rotation_next_radial(RadialDart d) const {
        if (d.dir == 0) {
            // leaving the object owning the edge
            const auto& rot = rot_obj_[radial_edges_[d.re].object_index];
            std::size_t pos = obj_rot_pos_[d.re];
            return {rot[(pos + 1) % rot.size()], 0};
        }
        // corner order at a branching runs opposite to the object rotations
        // derived from the dual orbits; face orbits are then the diamonds
        std::size_t b = radial_edges_[d.re].branch_index;
        std::size_t j = radial_edges_[d.re].corner;
        return {3 * b + (j + 2) % 3, 1};
    }

    // ── walk realization ──

    /// Closed walk in G realizing a cyclic radial edge sequence
    /// [o0-b0, b0-o1, o1-b1, ...] (even positions ascend object->branch).
    std::vector<Dart> realize_cycle(const std::vector<std::size_t>& redges) const {
        if (redges.size() < 2 || redges.size() % 2 != 0)
            raise(ErrorKind::InvalidCycle, "radial cycle needs an even edge count >= 2");
        const std::size_t k = redges.size() / 2;
        const PlanarGraph& g = graph();
        std::vector<Dart> walk;
        auto append_path = [&](const std::vector<Vertex>& vs, bool rev) {
            if (vs.size() < 2) return;
            if (!rev) {
                for (std::size_t i = 0; i + 1 < vs.size(); ++i)
                    walk.push_back(g.dart(g.find_edge(vs[i], vs[i + 1]), vs[i]));
            } else {
                for (std::size_t i = vs.size(); i-- > 1;)
                    walk.push_back(g.dart(g.find_edge(vs[i], vs[i - 1]), vs[i]));
            }
        };
        for (std::size_t i = 0; i < k; ++i) {
            const RadialEdge& up = radial_edges_[redges[2 * i]];
            const RadialEdge& down = radial_edges_[redges[2 * i + 1]];
            if (up.branch_index != down.branch_index || up.corner == down.corner)
                raise(ErrorKind::InvalidCycle, "consecutive edges do not meet at a branching");
            const RadialEdge& next_up = radial_edges_[redges[(2 * i + 2) % redges.size()]];
            if (down.object_index != next_up.object_index)
                raise(ErrorKind::InvalidCycle, "consecutive edges do not meet at an object");
            append_path(up.spoke, true);  // ascend: object end -> label
            EdgeId te = g.find_edge(up.label, down.label);
            check_consistency(te != kNone, "branching labels not adjacent");
            walk.push_back(g.dart(te, up.label));
            append_path(down.spoke, false);  // descend: label -> object end
            append_path(object_tree_path(down.object_index, down.spoke.back(),
                                         next_up.spoke.back()),
                        false);
        }
        check_consistency(!walk.empty(), "cycle realized to an empty walk");
        return walk;
    }

private:
    void build_partition() {
        const std::size_t n = graph().num_vertices();
        owner_.assign(n, 0);
        std::vector<const std::vector<Rational>*> od;
        for (const GraphObject* p : family_) od.push_back(&cache_->dists(*p));
        for (Vertex v = 0; v < n; ++v) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < family_.size(); ++i)
                if ((*od[i])[v] < (*od[best])[v]) best = i;
            for (std::size_t i = 0; i < family_.size(); ++i)
                check_consistency(i == best || (*od[i])[v] != (*od[best])[v],
                                  "tied object distances");
            owner_[v] = best;
        }
    }

    void build_trees() {
        const PlanarGraph& g = graph();
        const std::size_t n = g.num_vertices();
        tree_parent_.clear();
        for (const GraphObject* p : family_) tree_parent_.push_back(object_spanning_tree(*p));

        cell_parent_.assign(n, kNone);
        that_edge_.assign(g.num_edges(), 0);
        for (std::size_t fi = 0; fi < family_.size(); ++fi)
            for (const auto& [v, par] : tree_parent_[fi])
                if (par != kNone) that_edge_[g.find_edge(v, par)] = 1;

        for (Vertex v = 0; v < n; ++v) {
            std::size_t fi = owner_[v];
            if (family_[fi]->contains(v)) continue;
            const auto& dp = cache_->dists(*family_[fi]);
            Vertex parent = kNone;
            unsigned tight = 0;
            for (Dart d : g.darts_at(v)) {
                Vertex w = g.head(d);
                if (dp[w] + metric_->edge_length(PlanarGraph::edge_of(d)) == dp[v]) {
                    ++tight;
                    parent = w;
                }
            }
            check_consistency(tight == 1, "tight predecessor toward object not unique");
            check_consistency(owner_[parent] == fi, "shortest path leaves its cell");
            cell_parent_[v] = parent;
            that_edge_[g.find_edge(v, parent)] = 1;
        }
    }

    void build_diagram() {
        const PlanarGraph& g = graph();
        alive_.assign(g.num_edges(), 1);
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (that_edge_[e]) alive_[e] = 0;

        alive_deg_.assign(g.num_faces(), 0);
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (alive_[e]) {
                auto [a, b] = g.edge_faces(e);
                ++alive_deg_[a];
                ++alive_deg_[b];
            }
        // iteratively remove degree-1 dual vertices
        std::vector<FaceId> stack;
        for (FaceId t = 0; t < g.num_faces(); ++t)
            if (alive_deg_[t] == 1) stack.push_back(t);
        while (!stack.empty()) {
            FaceId t = stack.back();
            stack.pop_back();
            if (alive_deg_[t] != 1) continue;
            for (Dart d : g.face_darts(t)) {
                EdgeId e = PlanarGraph::edge_of(d);
                if (!alive_[e]) continue;
                alive_[e] = 0;
                auto [a, b] = g.edge_faces(e);
                if (--alive_deg_[a] == 1) stack.push_back(a);
                if (--alive_deg_[b] == 1) stack.push_back(b);
                break;
            }
        }
        for (FaceId t = 0; t < g.num_faces(); ++t)
            check_consistency(alive_deg_[t] != 1, "trimming left a degree-1 dual node");

        branchings_.clear();
        branch_index_.clear();
        for (FaceId t = 0; t < g.num_faces(); ++t) {
            check_consistency(alive_deg_[t] <= 3, "dual degree above 3 in a triangulation");
            if (alive_deg_[t] == 3) {
                branch_index_[t] = branchings_.size();
                branchings_.push_back(t);
            }
        }
        check_consistency(!branchings_.empty(), "diagram has no branching points");

        // chains between branchings
        diagram_edges_.clear();
        std::vector<char> dart_used(g.num_darts(), 0);
        auto alive_dart = [&](Dart d) { return alive_[PlanarGraph::edge_of(d)]; };
        for (FaceId f : branchings_) {
            for (Dart d0 : g.face_darts(f)) {
                if (!alive_dart(d0) || dart_used[d0]) continue;
                DiagramEdge de;
                de.endpoint_f = f;
                Dart d = d0;
                while (true) {
                    dart_used[d] = 1;
                    de.darts.push_back(d);
                    de.crossed.push_back(PlanarGraph::edge_of(d));
                    FaceId t = g.face_of(PlanarGraph::rev(d));
                    if (alive_deg_[t] == 3) {
                        de.endpoint_g = t;
                        dart_used[PlanarGraph::rev(d)] = 1;
                        break;
                    }
                    de.via.push_back(t);
                    // continue through the unique other alive edge of t
                    Dart next = kNone;
                    for (Dart cand : g.face_darts(t))
                        if (alive_dart(cand) && cand != PlanarGraph::rev(d)) next = cand;
                    check_consistency(next != kNone, "chain dead-ends");
                    dart_used[PlanarGraph::rev(d)] = 1;
                    d = next;
                }
                diagram_edges_.push_back(std::move(de));
            }
        }
        for (Dart d = 0; d < g.num_darts(); ++d)
            check_consistency(!alive_dart(d) || dart_used[d],
                              "diagram contains a cycle without branching points");

        // diagram face orbits over the surviving dual subgraph
        orbit_of_dart_.assign(g.num_darts(), kNone);
        num_orbits_ = 0;
        std::vector<std::vector<std::pair<FaceId, Vertex>>> swept;
        for (Dart d0 = 0; d0 < g.num_darts(); ++d0) {
            if (!alive_dart(d0) || orbit_of_dart_[d0] != kNone) continue;
            std::size_t oid = num_orbits_++;
            swept.emplace_back();
            Dart d = d0;
            do {
                orbit_of_dart_[d] = oid;
                FaceId t = g.face_of(PlanarGraph::rev(d));
                const auto& bd = g.face_darts(t);
                std::size_t j0 = 0;
                while (bd[j0] != PlanarGraph::rev(d)) ++j0;
                std::size_t j = j0;
                while (true) {
                    swept[oid].emplace_back(t, g.head(bd[j]));
                    j = (j + 1) % bd.size();
                    if (alive_dart(bd[j])) break;
                }
                d = bd[j];
            } while (d != d0);
        }

        // match each orbit to the object whose cell its region contains
        family_of_orbit_.assign(num_orbits_, kNone);
        std::vector<std::size_t> orbit_of_family(family_.size(), kNone);
        for (std::size_t o = 0; o < num_orbits_; ++o) {
            for (auto [t, x] : swept[o]) {
                std::size_t fi = owner_[x];
                if (family_of_orbit_[o] == kNone) family_of_orbit_[o] = fi;
                check_consistency(family_of_orbit_[o] == fi,
                                  "diagram face sweeps two different cells");
            }
            std::size_t fi = family_of_orbit_[o];
            check_consistency(fi != kNone && orbit_of_family[fi] == kNone,
                              "diagram faces do not biject with objects");
            orbit_of_family[fi] = o;
        }
        check_consistency(num_orbits_ == family_.size(),
                          "diagram face count differs from family size");

        for (auto& de : diagram_edges_) {
            de.orbit_a = orbit_of_dart_[de.darts.front()];
            de.orbit_b = orbit_of_dart_[PlanarGraph::rev(de.darts.front())];
        }

        // regions of triangles not on the drawing
        region_of_face_.assign(g.num_faces(), kNone);
        for (FaceId t = 0; t < g.num_faces(); ++t) {
            if (alive_deg_[t] >= 2) continue;
            auto vs = g.face_vertices(t);
            std::size_t fi = owner_[vs[0]];
            check_consistency(owner_[vs[1]] == fi && owner_[vs[2]] == fi,
                              "off-diagram triangle straddles cells");
            region_of_face_[t] = fi;
        }

        // store sweep record for radial rotations
        swept_ = std::move(swept);
    }

    void build_radial() {
        const PlanarGraph& g = graph();
        radial_edges_.clear();
        radial_edges_.resize(3 * branchings_.size());
        for (std::size_t b = 0; b < branchings_.size(); ++b) {
            FaceId t = branchings_[b];
            const auto& bd = g.face_darts(t);
            for (std::size_t j = 0; j < 3; ++j) {
                RadialEdge re;
                re.branch_index = b;
                re.branch_face = t;
                re.corner = j;
                re.label = g.head(bd[j]);
                re.object_index = owner_[re.label];
                re.spoke = path_to_object(re.label);
                for (Vertex v : re.spoke)
                    check_consistency(owner_[v] == re.object_index, "spoke leaves its cell");
                radial_edges_[3 * b + j] = std::move(re);
            }
        }

        // rotation around each object: branching corners in its orbit order
        rot_obj_.assign(family_.size(), {});
        obj_rot_pos_.assign(radial_edges_.size(), 0);
        for (std::size_t o = 0; o < num_orbits_; ++o) {
            std::size_t fi = family_of_orbit_[o];
            for (auto [t, x] : swept_[o]) {
                auto it = branch_index_.find(t);
                if (it == branch_index_.end()) continue;
                const auto& bd = g.face_darts(t);
                std::size_t j = 0;
                while (g.head(bd[j]) != x) ++j;
                rot_obj_[fi].push_back(3 * it->second + j);
            }
        }
        std::vector<char> seen(radial_edges_.size(), 0);
        for (std::size_t fi = 0; fi < family_.size(); ++fi) {
            check_consistency(!rot_obj_[fi].empty(), "object with no radial edges");
            for (std::size_t pos = 0; pos < rot_obj_[fi].size(); ++pos) {
                std::size_t re = rot_obj_[fi][pos];
                check_consistency(!seen[re], "radial edge appears twice in rotations");
                check_consistency(radial_edges_[re].object_index == fi,
                                  "radial rotation lists a foreign edge");
                seen[re] = 1;
                obj_rot_pos_[re] = pos;
            }
        }
        for (char c : seen) check_consistency(c, "radial edge missing from rotations");
    }

    void build_diamonds() {
        const PlanarGraph& g = graph();
        // the radial drawing: spanning trees with their shortest-path
        // extensions, plus every branching triangle edge. Its complement
        // components are the diamond interiors and the branching pockets.
        {
            std::vector<char> drawn = that_edge_;
            for (FaceId f : branchings_)
                for (Dart d : g.face_darts(f)) drawn[PlanarGraph::edge_of(d)] = 1;
            arrangement_ = std::make_unique<CornerComponents>(g, drawn);
        }
        diamonds_.clear();
        diamonds_.reserve(diagram_edges_.size());
        for (std::size_t ei = 0; ei < diagram_edges_.size(); ++ei) {
            const DiagramEdge& de = diagram_edges_[ei];
            Dart d0 = de.darts.front();
            Dart dl = de.darts.back();
            FaceId f = de.endpoint_f, gface = de.endpoint_g;
            const auto& fd = g.face_darts(f);
            const auto& gd = g.face_darts(gface);
            std::size_t jf = 0;
            while (fd[jf] != d0) ++jf;
            std::size_t jg = 0;
            while (gd[jg] != PlanarGraph::rev(dl)) ++jg;

            Diamond dm;
            dm.diag_edge = ei;
            std::size_t bf = branch_index_.at(f), bg = branch_index_.at(gface);
            // corners flanking the chain: tail side (orbit_a) and head side
            std::size_t rA_f = 3 * bf + (jf + 2) % 3;  // label tail(d0)
            std::size_t rB_f = 3 * bf + jf;            // label head(d0)
            std::size_t rA_g = 3 * bg + jg;            // label tail(dl)
            std::size_t rB_g = 3 * bg + (jg + 2) % 3;  // label head(dl)
            check_consistency(radial_edges_[rA_f].label == g.tail(d0) &&
                                  radial_edges_[rB_f].label == g.head(d0) &&
                                  radial_edges_[rA_g].label == g.tail(dl) &&
                                  radial_edges_[rB_g].label == g.head(dl),
                              "diamond corner labels misaligned");
            check_consistency(radial_edges_[rA_f].object_index == family_of_orbit_[de.orbit_a] &&
                                  radial_edges_[rA_g].object_index == family_of_orbit_[de.orbit_a] &&
                                  radial_edges_[rB_f].object_index == family_of_orbit_[de.orbit_b] &&
                                  radial_edges_[rB_g].object_index == family_of_orbit_[de.orbit_b],
                              "diamond side objects misaligned");
            dm.redges = {rA_f, rB_f, rB_g, rA_g};

            dm.boundary_vertex.assign(g.num_vertices(), 0);
            for (Dart wd : realize_cycle({rA_f, rB_f, rB_g, rA_g}))
                dm.boundary_vertex[g.tail(wd)] = 1;
            dm.arrangement = arrangement_.get();
            if (!de.via.empty()) {
                dm.comp = arrangement_->comp_of_face(de.via.front());
                for (FaceId t : de.via)
                    check_consistency(arrangement_->comp_of_face(t) == dm.comp,
                                      "diamond chain spans two drawing regions");
                for (FaceId t = 0; t < g.num_faces(); ++t)
                    if (arrangement_->comp_of_face(t) == dm.comp) dm.region.push_back(t);
            }
            diamonds_.push_back(std::move(dm));
        }
        // interiors are pairwise distinct components of the drawing
        {
            std::set<std::size_t> comps;
            for (const Diamond& dm : diamonds_)
                if (dm.comp != kNone)
                    check_consistency(comps.insert(dm.comp).second,
                                      "two diamonds share a drawing region");
        }

        // face orbits of the radial graph are exactly the diamonds; walking
        // them pins each radial dart to the diamond it flanks
        std::map<std::array<std::size_t, 4>, std::size_t> by_edges;
        for (std::size_t di = 0; di < diamonds_.size(); ++di) {
            auto key = diamonds_[di].redges;
            std::sort(key.begin(), key.end());
            check_consistency(by_edges.emplace(key, di).second,
                              "two diamonds share an edge multiset");
        }
        diamond_of_dart_.assign(2 * radial_edges_.size(), kNone);
        for (std::size_t re = 0; re < radial_edges_.size(); ++re)
            for (int dir : {0, 1}) {
                if (diamond_of_dart_[2 * re + dir] != kNone) continue;
                std::array<std::size_t, 4> key{};
                std::vector<std::pair<std::size_t, int>> orbit;
                RadialDart d{re, dir};
                do {
                    check_consistency(orbit.size() < 4, "radial face orbit longer than 4");
                    key[orbit.size()] = d.re;
                    orbit.emplace_back(d.re, d.dir);
                    d = radial_face_next(d);
                } while (!(d.re == re && d.dir == dir));
                check_consistency(orbit.size() == 4, "radial face orbit shorter than 4");
                std::sort(key.begin(), key.end());
                auto it = by_edges.find(key);
                check_consistency(it != by_edges.end(),
                                  "radial face orbit matches no diamond");
                for (auto [re2, dir2] : orbit) {
                    check_consistency(diamond_of_dart_[2 * re2 + dir2] == kNone,
                                      "radial dart on two diamond boundaries");
                    diamond_of_dart_[2 * re2 + dir2] = it->second;
                }
            }
        for (std::size_t x : diamond_of_dart_)
            check_consistency(x != kNone, "radial dart on no diamond boundary");
    }


    const PerturbedMetric* metric_;
    const DistCache* cache_;
    Family family_;

    std::vector<std::size_t> owner_;
    std::vector<std::map<Vertex, Vertex>> tree_parent_;
    std::vector<Vertex> cell_parent_;
    std::vector<char> that_edge_;

    std::vector<char> alive_;
    std::vector<std::size_t> alive_deg_;
    std::vector<FaceId> branchings_;
    std::map<FaceId, std::size_t> branch_index_;
    std::vector<DiagramEdge> diagram_edges_;
    std::vector<std::size_t> orbit_of_dart_;
    std::size_t num_orbits_ = 0;
    std::vector<std::size_t> family_of_orbit_;
    std::vector<std::size_t> region_of_face_;
    std::vector<std::vector<std::pair<FaceId, Vertex>>> swept_;

    std::vector<RadialEdge> radial_edges_;
    std::vector<std::vector<std::size_t>> rot_obj_;
    std::vector<std::size_t> obj_rot_pos_;
    std::vector<Diamond> diamonds_;
    std::vector<std::size_t> diamond_of_dart_;
    std::unique_ptr<CornerComponents> arrangement_;
};

/// Faces of a subgraph R of the radial graph, as a grouping of the diamonds:
/// diamonds merge across every radial edge outside R.
struct DiamondGrouping {
    std::vector<std::size_t> group_of_diamond;
    std::size_t num_groups = 0;
};

template <typename EdgeSet>
inline DiamondGrouping diamond_grouping(const VoronoiBundle& b, const EdgeSet& redges) {
    const std::size_t nd = b.diamonds().size();
    std::vector<std::size_t> parent(nd);
    for (std::size_t i = 0; i < nd; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t re = 0; re < b.radial_edges().size(); ++re) {
        if (redges.count(re)) continue;
        std::size_t a = find(b.diamond_of_dart(re, 0));
        std::size_t c = find(b.diamond_of_dart(re, 1));
        if (a != c) parent[a] = c;
    }
    DiamondGrouping out;
    out.group_of_diamond.assign(nd, 0);
    std::map<std::size_t, std::size_t> label;
    for (std::size_t i = 0; i < nd; ++i) {
        std::size_t r = find(i);
        auto it = label.find(r);
        if (it == label.end()) it = label.emplace(r, label.size()).first;
        out.group_of_diamond[i] = it->second;
    }
    out.num_groups = label.size();
    return out;
}

/// Side of a non-traversed branching point: the group of any incident
/// diamond (they all agree for branchings off the subgraph).
inline std::size_t branching_group(const VoronoiBundle& b, const DiamondGrouping& grp,
                                   std::size_t branch_index) {
    return grp.group_of_diamond[b.diamond_of_dart(3 * branch_index, 0)];
}

/// The closed walk realizing a radial cycle together with the two regions
/// it cuts the sphere into. Regions list faces without walk-edge contact;
/// the full classification (boundary contact included) is in side_mask.
struct ClosedWalk {
    std::vector<Dart> darts;
    std::array<std::vector<FaceId>, 2> regions;
    std::array<std::vector<char>, 2> side_mask;
    std::vector<char> walk_vertex;
};

inline ClosedWalk gamma_walk(const VoronoiBundle& b,
                             const std::vector<std::size_t>& cycle_ids) {
    const PlanarGraph& g = b.graph();
    ClosedWalk out;
    out.darts = b.realize_cycle(cycle_ids);
    out.walk_vertex.assign(g.num_vertices(), 0);
    for (Dart d : out.darts) out.walk_vertex[g.tail(d)] = 1;

    std::set<std::size_t> on_cycle(cycle_ids.begin(), cycle_ids.end());
    DiamondGrouping grp = diamond_grouping(b, on_cycle);
    check_consistency(grp.num_groups == 2, "radial cycle does not split the sphere in two");

    std::vector<char> traversed(b.branchings().size(), 0);
    for (std::size_t i = 0; i < cycle_ids.size(); i += 2)
        traversed[b.radial_edge(cycle_ids[i]).branch_index] = 1;

    for (int s = 0; s < 2; ++s) out.side_mask[s].assign(g.num_faces(), 0);
    for (std::size_t di = 0; di < b.diamonds().size(); ++di)
        for (FaceId t : b.diamonds()[di].region)
            out.side_mask[grp.group_of_diamond[di]][t] = 1;
    for (std::size_t bi = 0; bi < b.branchings().size(); ++bi) {
        if (traversed[bi]) continue;  // boundary pockets stay unassigned
        out.side_mask[branching_group(b, grp, bi)][b.branchings()[bi]] = 1;
    }

    std::vector<char> touched(g.num_faces(), 0);
    for (Dart d : out.darts) {
        touched[g.face_of(d)] = 1;
        touched[g.face_of(PlanarGraph::rev(d))] = 1;
    }
    for (FaceId t = 0; t < g.num_faces(); ++t)
        for (int s = 0; s < 2; ++s)
            if (out.side_mask[s][t] && !touched[t]) out.regions[s].push_back(t);
    return out;
}

/// Spec-facing partition operation.
inline VoronoiPartition partition(const PerturbedMetric& metric, const Family& family,
                                  const DistCache& cache) {
    VoronoiBundle b(metric, family, cache);
    return VoronoiPartition{b.owners()};
}

/// Number of family objects intersecting the closed diamond, excluding the
/// two objects that define it.
inline std::size_t diamond_weight(const VoronoiBundle& bundle, const Diamond& dm,
                                  const Family& candidates) {
    const auto& rf = bundle.radial_edge(dm.redges[0]);
    const auto& rg = bundle.radial_edge(dm.redges[1]);
    ObjectId pa = bundle.object(rf.object_index).id;
    ObjectId pb = bundle.object(rg.object_index).id;
    std::size_t count = 0;
    for (const GraphObject* q : candidates) {
        if (q->id == pa || q->id == pb) continue;
        bool touches = false;
        for (Vertex v : q->vertices)
            if (dm.vertex_touches(v)) {
                touches = true;
                break;
            }
        if (touches) ++count;
    }
    return count;
}

}  // namespace cheese
