#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "cheese/sampling.hpp"
#include "fixtures.hpp"

using namespace cheese;

namespace {

std::vector<ObjectId> all_ids(const Instance& inst) {
    std::vector<ObjectId> ids;
    for (const GraphObject& p : inst.objects) ids.push_back(p.id);
    return ids;
}

/// Instance with many disjoint singletons spread over a grid (deterministic
/// diagonal-stride placement).
Instance spread_singletons(std::size_t rows, std::size_t cols, std::size_t count,
                           std::uint64_t seed) {
    PlanarGraph g = grid_graph(rows, cols);
    std::vector<GraphObject> objs;
    Rng rng(derive_seed(seed, "spread"));
    std::set<Vertex> used;
    while (objs.size() < count) {
        Vertex v = rng.below(rows * cols);
        if (!used.insert(v).second) continue;
        objs.push_back({objs.size(), {v}, {}});
    }
    return Instance{std::move(g), derive_seed(seed, "metric"), std::move(objs)};
}

}  // namespace

TEST_CASE("size parameter formula and monotonicity") {
    // eps = 1/e: s = 1e10 * 1 * e^2
    double e = std::exp(1.0);
    REQUIRE(size_parameter(1.0 / e) == Catch::Approx(1e10 * e * e).epsilon(1e-12));
    // eps = 0.01: 1e14 * ln(100)^2 ~ 2.12e15
    double l = std::log(100.0);
    REQUIRE(size_parameter(0.01) == Catch::Approx(1e14 * l * l).epsilon(1e-12));
    REQUIRE(size_parameter(0.01) == Catch::Approx(2.1207e15).epsilon(1e-3));
    // decreasing in eps
    REQUIRE(size_parameter(0.001) > size_parameter(0.01));
    REQUIRE(size_parameter(0.01) > size_parameter(0.5));
    REQUIRE_THROWS_AS(size_parameter(0.0), Error);
    REQUIRE_THROWS_AS(size_parameter(1.5), Error);
    // inverse tracks the formula
    for (double s : {1e11, 1e13, 4.0, 100.0}) {
        double eps = implied_epsilon(s);
        REQUIRE(size_parameter(eps) == Catch::Approx(s).epsilon(1e-6));
    }
}

TEST_CASE("sampling includes the support and is deterministic") {
    std::vector<ObjectId> support{100, 200};
    std::vector<ObjectId> family{1, 2, 3, 4, 5, 6, 7, 8};
    auto s1 = sample(support, family, 0.5, 42);
    auto s2 = sample(support, family, 0.5, 42);
    REQUIRE(s1 == s2);
    for (ObjectId id : support) REQUIRE(std::count(s1.begin(), s1.end(), id) == 1);
    // lambda = 1 takes everything
    auto s3 = sample(support, family, 1.0, 7);
    REQUIRE(s3.size() == support.size() + family.size());
    // lambda = 0 takes only the support
    auto s4 = sample(support, family, 0.0, 7);
    REQUIRE(s4.size() == support.size());
}

TEST_CASE("binomial statistics of the sample size") {
    std::vector<ObjectId> family(20);
    for (std::size_t i = 0; i < 20; ++i) family[i] = i;
    double sum = 0;
    const std::size_t draws = 2000;
    for (std::size_t t = 0; t < draws; ++t)
        sum += static_cast<double>(sample({}, family, 0.5, derive_seed(1, "draw", t)).size());
    double mean = sum / draws;
    // Bin(20, 1/2): mean 10, sigma of the mean = sqrt(5)/sqrt(draws)
    double sigma_mean = std::sqrt(20 * 0.25 / static_cast<double>(draws));
    REQUIRE(std::abs(mean - 10.0) <= 3 * sigma_mean);
}

TEST_CASE("lambda above one is a parameter error") {
    SamplingParams p;
    p.s_override = 16;
    REQUIRE_THROWS_AS(p.lambda(8), Error);
}

TEST_CASE("heavy spokes and diamonds: threshold edge cases") {
    Instance inst = spread_singletons(6, 6, 12, 3);
    Context ctx(inst);
    auto ids = all_ids(inst);
    std::vector<ObjectId> sids(ids.begin(), ids.begin() + 4);
    const VoronoiBundle& bs = ctx.bundle(sids);
    Family fam = ctx.family(ids);

    // eta above |F| leaves nothing heavy
    REQUIRE(heavy_spokes(ctx, bs, fam, ids.size() + 1.0).empty());
    REQUIRE(heavy_diamonds(bs, fam, ids.size() + 1.0).empty());

    // family inside the sample: nothing conflicts
    Family sample_fam = ctx.family(sids);
    REQUIRE(heavy_spokes(ctx, bs, sample_fam, 1.0).empty());
    REQUIRE(heavy_diamonds(bs, sample_fam, 0.0).empty());

    // an object strictly inside a diamond makes it heavy at eta = 0
    for (const GraphObject& q : inst.objects) {
        if (std::count(sids.begin(), sids.end(), q.id)) continue;
        for (std::size_t di = 0; di < bs.diamonds().size(); ++di) {
            const Diamond& dm = bs.diamonds()[di];
            bool strictly_inside = dm.comp != kNone;
            for (Vertex v : q.vertices)
                if (dm.comp == kNone || dm.boundary_vertex[v] ||
                    !bs.arrangement().vertex_touches_comp(v, dm.comp))
                    strictly_inside = false;
            if (!strictly_inside) continue;
            auto heavy = heavy_diamonds(bs, Family{&q}, 0.0);
            REQUIRE(std::count(heavy.begin(), heavy.end(), di) == 1);
        }
    }

    // brute-force agreement of the conflict counting
    for (double eta : {1.0, 2.0, 3.0}) {
        auto hs = heavy_spokes(ctx, bs, fam, eta);
        for (std::size_t re = 0; re < bs.radial_edges().size(); ++re) {
            const RadialEdge& e = bs.radial_edge(re);
            std::size_t cnt = 0;
            for (const GraphObject* q : fam) {
                if (q->id == bs.object(e.object_index).id) continue;
                for (Vertex v : e.spoke)
                    if (ctx.dc.dists(*q)[v] < ctx.dc.dists(bs.object(e.object_index))[v]) {
                        ++cnt;
                        break;
                    }
            }
            REQUIRE((std::count(hs.begin(), hs.end(), re) == 1) ==
                    (static_cast<double>(cnt) >= eta));
        }
    }
}

TEST_CASE("mu_bal sums to one and respects the no-heavy-diamond bound") {
    Instance inst = spread_singletons(7, 7, 16, 5);
    Context ctx(inst);
    auto ids = all_ids(inst);
    std::vector<ObjectId> sids(ids.begin(), ids.begin() + 5);
    const VoronoiBundle& bs = ctx.bundle(sids);
    Family fam = ctx.family(ids);
    WeightFunction wb = mu_bal(bs, fam);
    REQUIRE(wb.total() == 1);
    // Claim: without heavy diamonds, every point weight is at most
    // (3 eta + 3) / |F| for any eta above the max diamond weight
    double max_weight = 0;
    for (const Diamond& dm : bs.diamonds())
        max_weight =
            std::max(max_weight, static_cast<double>(diamond_weight(bs, dm, fam)));
    double eta = max_weight + 0.5;
    REQUIRE(heavy_diamonds(bs, fam, eta).empty());
    Rational cap = ratio(static_cast<long>(3 * std::ceil(eta) + 3),
                         static_cast<unsigned long>(fam.size()));
    for (const Rational& x : wb.w) REQUIRE(x <= cap);
}

TEST_CASE("mu_len puts 2/l on traversed branchings and sums to one") {
    Instance inst = spread_singletons(6, 6, 10, 7);
    Context ctx(inst);
    std::vector<ObjectId> sids{0, 1, 2, 3};
    const VoronoiBundle& bs = ctx.bundle(sids);
    auto cycles = enumerate_radial_cycles(bs, 8);
    REQUIRE_FALSE(cycles.empty());
    // pick the longest enumerated cycle
    std::size_t pick = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        if (cycles[i].size() > cycles[pick].size()) pick = i;
    auto wl = mu_len(bs, {cycles[pick]});
    REQUIRE(wl.has_value());
    REQUIRE(wl->total() == 1);
    Rational expect = ratio(2, static_cast<unsigned long>(cycles[pick].size()));
    std::set<std::size_t> on;
    for (std::size_t i = 0; i < cycles[pick].size(); i += 2)
        on.insert(bs.radial_edge(cycles[pick][i]).branch_index);
    for (std::size_t bi = 0; bi < bs.branchings().size(); ++bi)
        REQUIRE(wl->w[bi] == (on.count(bi) ? expect : Rational(0)));
    // no cycles: undefined-weights signal
    REQUIRE_FALSE(mu_len(bs, {}).has_value());
}

TEST_CASE("balanced cycle: theta diagram under the uniform weight") {
    Instance inst = spread_singletons(6, 6, 8, 9);
    Context ctx(inst);
    std::vector<ObjectId> sids{0, 1, 2};
    const VoronoiBundle& bs = ctx.bundle(sids);
    REQUIRE(bs.branchings().size() == 2);
    WeightFunction uniform;
    uniform.w = {ratio(1, 2), ratio(1, 2)};
    // cap for 2 branchings: floor(sqrt(36)) = 6
    REQUIRE(balanced_cycle_cap(bs) == 6);
    auto cyc = find_balanced_cycle_search(bs, uniform, 6);
    // any cycle through both branchings leaves zero weight strictly inside
    std::set<std::size_t> on;
    for (std::size_t i = 0; i < cyc.size(); i += 2)
        on.insert(bs.radial_edge(cyc[i]).branch_index);
    REQUIRE(on.size() == 2);
    // all weight on one point: any cycle through it certifies
    WeightFunction point;
    point.w = {Rational(1), Rational(0)};
    auto cyc2 = find_balanced_cycle_search(bs, point, 6);
    REQUIRE_FALSE(cyc2.empty());
}

TEST_CASE("balanced cycle exists for random rational weights") {
    Instance inst = spread_singletons(7, 7, 12, 11);
    Context ctx(inst);
    std::vector<ObjectId> sids{0, 1, 2, 3, 4};
    const VoronoiBundle& bs = ctx.bundle(sids);
    REQUIRE(bs.branchings().size() == 6);
    auto sides = precompute_cycle_sides(bs, balanced_cycle_cap(bs));
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        WeightFunction w;
        unsigned long total = 0;
        std::vector<unsigned long> raw;
        for (std::size_t i = 0; i < 6; ++i) {
            raw.push_back(rng.below(100));
            total += raw.back();
        }
        if (total == 0) continue;
        for (unsigned long r : raw) w.w.push_back(ratio(static_cast<long>(r), total));
        const CycleSides& found = find_balanced_cycle(sides, w);
        REQUIRE(found.cycle.size() <= balanced_cycle_cap(bs));
        // agreement with the streaming search on certification
        auto via_search = find_balanced_cycle_search(bs, w, balanced_cycle_cap(bs));
        REQUIRE_FALSE(via_search.empty());
    }
}

TEST_CASE("split: postconditions on the root separator") {
    Instance inst = spread_singletons(8, 8, 28, 17);
    Context ctx(inst);
    SwissCheeseSeparator root = SwissCheeseSeparator::root(ctx);
    SamplingParams params;
    params.s_override = 8;
    params.eta_frac_override = 0.4;
    params.seed = 99;
    auto ids = all_ids(inst);
    SplitResult res = split(ctx, root, ids, params);

    REQUIRE_FALSE(res.children.empty());
    double eps = params.effective_epsilon(ids.size());
    // (a) conflict loss
    REQUIRE(static_cast<double>(res.lost.size()) <= eps * static_cast<double>(ids.size()));
    // (b) each child holds at most 3/4 |F| family objects strictly inside
    for (const SplitChild& ch : res.children) {
        std::size_t inside = 0;
        for (ObjectId id : ids)
            if (ch.separator.object_inside(ctx.object(id))) ++inside;
        REQUIRE(4 * inside <= 3 * ids.size());
        // (c) ripe children of complexity at most s
        REQUIRE(ch.separator.ripe());
        REQUIRE(static_cast<double>(ch.separator.complexity()) <= params.s_override);
        // strictly smaller regions
        REQUIRE(ch.separator.region_subset_of(root));
        REQUIRE(ch.separator.region().size() < root.region().size());
    }
    // children's regions are pairwise disjoint
    for (std::size_t i = 0; i < res.children.size(); ++i)
        for (std::size_t j = i + 1; j < res.children.size(); ++j) {
            std::set<FaceId> a(res.children[i].separator.region().begin(),
                               res.children[i].separator.region().end());
            for (FaceId t : res.children[j].separator.region()) REQUIRE(!a.count(t));
        }
    // every non-lost family object lands strictly inside at most one child
    // and is allowed there
    for (ObjectId id : ids) {
        if (std::count(res.lost.begin(), res.lost.end(), id)) continue;
        std::size_t inside = 0;
        for (const SplitChild& ch : res.children)
            if (ch.separator.object_inside(ctx.object(id))) ++inside;
        REQUIRE(inside <= 1);
    }
}

TEST_CASE("recursive split: child separators split again") {
    Instance inst = spread_singletons(9, 9, 36, 23);
    Context ctx(inst);
    SwissCheeseSeparator root = SwissCheeseSeparator::root(ctx);
    SamplingParams params;
    params.s_override = 8;
    params.eta_frac_override = 0.4;
    params.seed = 5;
    auto ids = all_ids(inst);
    SplitResult res = split(ctx, root, ids, params);
    REQUIRE_FALSE(res.children.empty());
    // pick the child with the most allowed family objects and split it
    const SplitChild* best = nullptr;
    for (const SplitChild& ch : res.children) {
        if (!best || ch.separator.allowed().size() > best->separator.allowed().size())
            best = &ch;
    }
    std::vector<ObjectId> sub;
    for (ObjectId id : ids)
        if (best->separator.is_allowed(id)) sub.push_back(id);
    if (sub.size() >= 8) {
        SamplingParams p2 = params;
        p2.seed = 6;
        SplitResult res2 = split(ctx, best->separator, sub, p2);
        for (const SplitChild& ch : res2.children) {
            REQUIRE(ch.separator.ripe());
            REQUIRE(ch.separator.region_subset_of(best->separator));
            REQUIRE(ch.separator.region().size() < best->separator.region().size());
        }
    }
}

TEST_CASE("estimate_success edge regimes") {
    Instance inst = spread_singletons(6, 6, 16, 29);
    Context ctx(inst);
    SwissCheeseSeparator root = SwissCheeseSeparator::root(ctx);
    auto ids = all_ids(inst);
    // lambda = 1 (s = |F|): size window holds iff s/2 <= |F| <= 2s, always
    SamplingParams p1;
    p1.s_override = static_cast<double>(ids.size());
    p1.eta_frac_override = 2.0;  // eta above |F|: nothing heavy
    p1.seed = 1;
    SuccessStats st = estimate_success(ctx, root, ids, p1, 50);
    REQUIRE(st.freq_size() == 1.0);
    REQUIRE(st.freq_no_spoke() == 1.0);
    REQUIRE(st.freq_no_diamond() == 1.0);
    REQUIRE(st.freq_joint() == 1.0);
}

TEST_CASE("chernoff-shaped size window failure rates") {
    // P(out of window) <= e^(-s/8) + e^(-s/3) within Monte-Carlo error
    Instance inst = spread_singletons(6, 6, 16, 31);
    Context ctx(inst);
    auto ids = all_ids(inst);
    for (double s : {8.0}) {
        std::size_t fails = 0;
        const std::size_t trials = 400;
        for (std::size_t t = 0; t < trials; ++t) {
            auto sm = sample({}, ids, s / static_cast<double>(ids.size()),
                             derive_seed(77, "chern", t));
            double picked = static_cast<double>(sm.size());
            if (picked < s / 2 || picked > 2 * s) ++fails;
        }
        double bound = std::exp(-s / 8) + std::exp(-s / 3);
        double p = static_cast<double>(fails) / trials;
        double sigma = std::sqrt(std::max(p * (1 - p), 0.25 / trials) / trials);
        REQUIRE(p <= bound + 3 * sigma);
    }
}
