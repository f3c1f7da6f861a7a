#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "cheese/singular.hpp"
#include "fixtures.hpp"

using namespace cheese;

namespace {

struct Ctx {
    Instance inst;
    PerturbedMetric metric;
    DistCache dc;
    BundleCache bundles;

    Ctx(Instance i)
        : inst(std::move(i)), metric(inst.build_metric()), dc(metric), bundles(metric, dc) {}
};

std::vector<ObjectId> greedy_family(const Instance& inst, std::size_t k) {
    std::vector<ObjectId> ids;
    std::vector<const GraphObject*> chosen;
    for (const GraphObject& p : inst.objects) {
        bool ok = true;
        for (const GraphObject* q : chosen)
            if (!objects_disjoint(p, *q)) ok = false;
        if (ok) {
            ids.push_back(p.id);
            chosen.push_back(&p);
            if (ids.size() == k) break;
        }
    }
    return ids;
}

}  // namespace

TEST_CASE("triple whose diagram branchings are type 1 yields those faces") {
    Ctx c(generate_grid(4, 4, "rect:1x1:3", 9));
    auto ids = greedy_family(c.inst, 3);
    Family fam = make_family(c.inst, ids);
    const VoronoiBundle& vb = c.bundles.get(fam);
    auto ws = singular_faces(c.bundles, fam);
    // both branching points must appear among the witnesses
    std::set<FaceId> wfaces;
    std::size_t type1 = 0;
    for (const auto& w : ws) {
        wfaces.insert(w.face);
        if (w.type == 1) ++type1;
    }
    for (FaceId b : vb.branchings()) REQUIRE(wfaces.count(b));
    REQUIRE(type1 <= 2);
}

TEST_CASE("singular face count bounds hold exhaustively") {
    for (std::size_t seed : {5u, 9u}) {
        Ctx c(generate_grid(4, 4, "rect:1x1:4;rect:2x2:2", seed));
        auto ids = greedy_family(c.inst, 5);
        Family fam = make_family(c.inst, ids);
        const std::size_t k = fam.size();
        // triples: <= 2 type-1 faces per unordered triple, <= 1 type-2 face
        // per ordered triple
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                for (std::size_t cc = b + 1; cc < k; ++cc) {
                    Family t{fam[a], fam[b], fam[cc]};
                    auto ws = singular_faces(c.bundles, t);
                    std::size_t t1 = 0;
                    std::map<std::vector<ObjectId>, std::size_t> t2;
                    for (const auto& w : ws) {
                        if (w.type == 1) ++t1;
                        if (w.type == 2) ++t2[w.tuple];
                    }
                    REQUIRE(t1 <= 2);
                    for (const auto& [roles, cnt] : t2) REQUIRE(cnt <= 1);
                }
        // quadruples: <= 1 type-3 face per ordered center choice
        for (std::size_t p0 = 0; p0 < k; ++p0)
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = a + 1; b < k; ++b)
                    for (std::size_t cc = b + 1; cc < k; ++cc) {
                        if (a == p0 || b == p0 || cc == p0) continue;
                        Family t{fam[p0], fam[a], fam[b], fam[cc]};
                        auto ws = singular_faces(c.bundles, t);
                        REQUIRE(ws.size() <= 1);
                    }
    }
}

TEST_CASE("every branching point classifies with a persistent witness") {
    for (std::size_t seed : {3u, 13u, 23u}) {
        Ctx c(generate_grid(5, 5, "rect:1x1:4;rect:2x2:3", seed));
        for (std::size_t k = 3; k <= 5; ++k) {
            auto ids = greedy_family(c.inst, k);
            if (ids.size() < k) continue;
            Family fam = make_family(c.inst, ids);
            const VoronoiBundle& vb = c.bundles.get(fam);
            if (vb.degenerate()) continue;
            for (FaceId f : vb.branchings()) {
                SingularWitness w = classify_branching_point(c.bundles, vb, f);
                REQUIRE((w.type >= 1 && w.type <= 3));
                REQUIRE(w.face == f);
                // witness tuple comes from the family
                for (ObjectId id : w.tuple) {
                    bool found = false;
                    for (const GraphObject* p : fam)
                        if (p->id == id) found = true;
                    REQUIRE(found);
                }
                // the tuple's diagram keeps f as a branching point with the
                // same labelled spokes
                Family tuple = make_family(c.inst, w.tuple);
                const VoronoiBundle& tb = c.bundles.get(tuple);
                REQUIRE(tb.is_branching(f));
                for (Vertex v : vb.graph().face_vertices(f)) {
                    std::size_t re_a = vb.radial_edge_id(f, v);
                    std::size_t re_b = tb.radial_edge_id(f, v);
                    REQUIRE(vb.radial_edge(re_a).spoke == tb.radial_edge(re_b).spoke);
                }
            }
        }
    }
}

TEST_CASE("type-1 face vertices lie in three distinct witness cells") {
    Ctx c(generate_grid(4, 4, "rect:1x1:3", 9));
    auto ids = greedy_family(c.inst, 3);
    Family fam = make_family(c.inst, ids);
    const VoronoiBundle& vb = c.bundles.get(fam);
    for (const auto& w : singular_faces(c.bundles, fam)) {
        if (w.type != 1) continue;
        std::set<std::size_t> owners;
        for (Vertex v : vb.graph().face_vertices(w.face)) owners.insert(vb.owner(v));
        REQUIRE(owners.size() == 3);
    }
}

TEST_CASE("singular_faces rejects overlapping tuples") {
    Ctx c(generate_grid(4, 4, "rect:2x2:4", 2));
    Family overlapping;
    for (const GraphObject& p : c.inst.objects) overlapping.push_back(&p);
    bool indep = family_independent(overlapping);
    if (!indep)
        REQUIRE_THROWS_AS(
            singular_faces(c.bundles, Family{overlapping[0], overlapping[1], overlapping[2]}),
            Error);
}
