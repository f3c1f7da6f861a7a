#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cheese/cycles.hpp"
#include "cheese/rng.hpp"
#include "cheese/separators.hpp"

namespace cheese {

/// s(eps) = 1e10 * ln^2(1/eps) / eps^2. The formula value is astronomically
/// large for any interesting accuracy; every execution path accepts an
/// override and reports the formula value alongside.
inline double size_parameter(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) raise(ErrorKind::Parameter, "epsilon must be in (0,1)");
    double l = std::log(1.0 / eps);
    return 1e10 * l * l / (eps * eps);
}

/// Monotone inverse of size_parameter on (0,1).
inline double implied_epsilon(double s) {
    if (!(s > 0)) raise(ErrorKind::Parameter, "size parameter must be positive");
    double lo = 1e-12, hi = 1.0 - 1e-15;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (size_parameter(mid) > s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct SamplingParams {
    double epsilon = 0.5;
    double s_override = -1;        // < 0: s = s(epsilon)
    double eta_frac_override = -1; // < 0: eta = 100 ln(1/eps)/s * |F|
    std::uint64_t seed = 0;
    unsigned retry_budget = 64;

    double s() const { return s_override >= 0 ? s_override : size_parameter(epsilon); }

    double lambda(std::size_t family_size) const {
        if (family_size == 0 || s() > static_cast<double>(family_size))
            raise(ErrorKind::Parameter, "inclusion probability above 1: |F| < s");
        return s() / static_cast<double>(family_size);
    }

    double eta(std::size_t family_size) const {
        double e = eta_frac_override >= 0
                       ? eta_frac_override * static_cast<double>(family_size)
                       : 100.0 * std::log(1.0 / epsilon) / s() *
                             static_cast<double>(family_size);
        if (!(e > 0)) raise(ErrorKind::Parameter, "heaviness threshold must be positive");
        return e;
    }

    /// Accuracy implied by the effective thresholds: eta = 100 ln(1/eps)/s |F|.
    double effective_epsilon(std::size_t family_size) const {
        if (eta_frac_override < 0 && s_override < 0) return epsilon;
        double s_eff = s();
        double eta_eff = eta(family_size);
        return std::exp(-eta_eff * s_eff / (100.0 * static_cast<double>(family_size)));
    }
};

/// Bernoulli(lambda) inclusion of family members on top of the support.
/// Deterministic per seed; iterates the family in id order.
inline std::vector<ObjectId> sample(const std::vector<ObjectId>& support,
                                    const std::vector<ObjectId>& family, double lambda,
                                    std::uint64_t seed) {
    if (lambda < 0 || lambda > 1) raise(ErrorKind::Parameter, "lambda outside [0,1]");
    std::vector<ObjectId> out = support;
    Rng rng(seed);
    const std::uint64_t den = 1ULL << 53;
    const std::uint64_t num =
        static_cast<std::uint64_t>(std::llround(lambda * static_cast<double>(den)));
    for (ObjectId id : family)
        if (rng.bernoulli_ratio(num, den)) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

/// Weight per branching point, exact rationals summing to 1.
struct WeightFunction {
    std::vector<Rational> w;  // indexed by branch index

    Rational total() const {
        Rational t(0);
        for (const Rational& x : w) t += x;
        return t;
    }
};

/// Radial edges whose spokes conflict with at least eta family objects.
inline std::vector<std::size_t> heavy_spokes(const Context& ctx, const VoronoiBundle& b,
                                             const Family& family, double eta) {
    std::vector<std::size_t> out;
    for (std::size_t re = 0; re < b.radial_edges().size(); ++re) {
        const RadialEdge& e = b.radial_edge(re);
        std::size_t cnt = 0;
        for (const GraphObject* q : family)
            if (q->id != b.object(e.object_index).id &&
                in_conflict(ctx.dc, *q, e.spoke, b.object(e.object_index)))
                ++cnt;
        if (static_cast<double>(cnt) >= eta) out.push_back(re);
    }
    return out;
}

/// Diamonds whose weight with respect to the family exceeds eta.
inline std::vector<std::size_t> heavy_diamonds(const VoronoiBundle& b, const Family& family,
                                               double eta) {
    std::vector<std::size_t> out;
    for (std::size_t di = 0; di < b.diamonds().size(); ++di)
        if (static_cast<double>(diamond_weight(b, b.diamonds()[di], family)) > eta)
            out.push_back(di);
    return out;
}

/// Balance weights: every family object is assigned to the lowest-index
/// diamond whose closed region it touches, and every diamond to the
/// lexicographically smaller endpoint of its diagram edge.
inline WeightFunction mu_bal(const VoronoiBundle& b, const Family& family) {
    WeightFunction wf;
    wf.w.assign(b.branchings().size(), Rational(0));
    const Rational unit = ratio(1, static_cast<unsigned long>(family.size()));
    for (const GraphObject* p : family) {
        std::size_t chosen = kNone;
        for (std::size_t di = 0; di < b.diamonds().size() && chosen == kNone; ++di) {
            for (Vertex v : p->vertices)
                if (b.diamonds()[di].vertex_touches(v)) {
                    chosen = di;
                    break;
                }
        }
        check_consistency(chosen != kNone, "object touches no diamond");
        const DiagramEdge& de = b.diagram_edges()[b.diamonds()[chosen].diag_edge];
        FaceId endpoint = std::min(de.endpoint_f, de.endpoint_g);
        wf.w[b.branch_index(endpoint)] += unit;
    }
    return wf;
}

/// Length weights: 2/l on branchings traversed by the cycles, 0 elsewhere.
/// Returns nothing when the cycles are empty (the root separator).
inline std::optional<WeightFunction> mu_len(const VoronoiBundle& b,
                                            const std::vector<std::vector<std::size_t>>& cycles) {
    std::size_t ell = 0;
    for (const auto& c : cycles) ell += c.size();
    if (ell == 0) return std::nullopt;
    WeightFunction wf;
    wf.w.assign(b.branchings().size(), Rational(0));
    const Rational val = ratio(2, static_cast<unsigned long>(ell));
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); i += 2) {
            std::size_t bi = b.radial_edge(c[i]).branch_index;
            check_consistency(wf.w[bi] == 0, "branching traversed by two cycles");
            wf.w[bi] = val;
        }
    return wf;
}

/// Branchings strictly inside each side of a cycle's walk, cached so many
/// weight functions can be evaluated against one enumeration.
struct CycleSides {
    std::vector<std::size_t> cycle;         // radial edge ids
    std::string canonical;
    std::vector<char> traversed;            // per branch index
    std::array<std::vector<std::size_t>, 2> side;  // branch indices per side
};

inline std::vector<CycleSides> precompute_cycle_sides(const VoronoiBundle& b,
                                                      std::size_t max_len) {
    std::vector<CycleSides> out;
    for (auto& cyc : enumerate_radial_cycles(b, max_len)) {
        CycleSides cs;
        cs.canonical = cycle_ref(b, cyc).canonical_string();
        cs.traversed.assign(b.branchings().size(), 0);
        for (std::size_t i = 0; i < cyc.size(); i += 2)
            cs.traversed[b.radial_edge(cyc[i]).branch_index] = 1;
        std::set<std::size_t> on(cyc.begin(), cyc.end());
        DiamondGrouping grp = diamond_grouping(b, on);
        check_consistency(grp.num_groups == 2,
                          "cycle does not split the radial sphere in two");
        for (std::size_t bi = 0; bi < b.branchings().size(); ++bi) {
            if (cs.traversed[bi]) continue;
            cs.side[branching_group(b, grp, bi)].push_back(bi);
        }
        cs.cycle = std::move(cyc);
        out.push_back(std::move(cs));
    }
    std::sort(out.begin(), out.end(),
              [](const CycleSides& a, const CycleSides& c) { return a.canonical < c.canonical; });
    return out;
}

/// Both strict sides of the cycle carry omega-weight at most 2/3 of total.
/// Sides are read off the radial sphere: the cycle two-colors the diamonds.
inline bool cycle_is_balanced(const VoronoiBundle& b, const std::vector<std::size_t>& cyc,
                              const WeightFunction& omega, const Rational& total) {
    std::set<std::size_t> on(cyc.begin(), cyc.end());
    DiamondGrouping grp = diamond_grouping(b, on);
    check_consistency(grp.num_groups == 2, "cycle does not split the radial sphere in two");
    std::vector<char> traversed(b.branchings().size(), 0);
    for (std::size_t i = 0; i < cyc.size(); i += 2)
        traversed[b.radial_edge(cyc[i]).branch_index] = 1;
    Rational side0(0), side1(0);
    for (std::size_t bi = 0; bi < b.branchings().size(); ++bi) {
        if (traversed[bi] || omega.w[bi] == 0) continue;
        (branching_group(b, grp, bi) == 0 ? side0 : side1) += omega.w[bi];
    }
    return side0 * 3 <= total * 2 && side1 * 3 <= total * 2;
}

/// Cycle of length at most max_len whose two strict sides each carry weight
/// at most 2/3; the lexicographically smallest certified cycle is returned.
inline const CycleSides& find_balanced_cycle(const std::vector<CycleSides>& cycles,
                                             const WeightFunction& omega) {
    Rational total;
    for (const Rational& x : omega.w) total += x;
    for (const CycleSides& cs : cycles) {
        bool ok = true;
        for (int s = 0; s < 2 && ok; ++s) {
            Rational sum(0);
            for (std::size_t bi : cs.side[s]) sum += omega.w[bi];
            if (sum * 3 > total * 2) ok = false;
        }
        if (ok) return cs;
    }
    raise(ErrorKind::Consistency,
          "no balanced cycle within the length bound (theorem violation)");
}

inline std::size_t balanced_cycle_cap(const VoronoiBundle& b) {
    return static_cast<std::size_t>(
        std::floor(std::sqrt(18.0 * static_cast<double>(b.branchings().size()))));
}

/// Iterative-deepening search for a certified balanced cycle (both strict
/// sides at most 2/3). Among certified cycles the search minimizes the
/// child-mass bound max(side) + traversed weight, deepening until a cycle
/// reaches `stop_score`; lexicographic canonical encoding breaks ties.
/// Certification work is capped; running out of budget returns the best
/// certificate found so far, or fails if there is none.
inline std::vector<std::size_t> find_balanced_cycle_search(
    const VoronoiBundle& b, const WeightFunction& omega, std::size_t cap,
    const Rational& stop_score = ratio(3, 4), std::size_t test_budget = 500000) {
    Rational total;
    for (const Rational& x : omega.w) total += x;
    std::size_t tested = 0;
    std::vector<std::size_t> best;
    std::string best_key;
    Rational best_score;
    for (std::size_t len = 2; len <= cap; len += 2) {
        bool out_of_budget = false;
        visit_radial_cycles(b, len, [&](const std::vector<std::size_t>& cyc) {
            if (cyc.size() != len) return true;
            if (++tested > test_budget) {
                out_of_budget = true;
                return false;
            }
            std::set<std::size_t> on(cyc.begin(), cyc.end());
            DiamondGrouping grp = diamond_grouping(b, on);
            check_consistency(grp.num_groups == 2,
                              "cycle does not split the radial sphere in two");
            std::vector<char> traversed(b.branchings().size(), 0);
            for (std::size_t i = 0; i < cyc.size(); i += 2)
                traversed[b.radial_edge(cyc[i]).branch_index] = 1;
            Rational side0(0), side1(0), on_cycle(0);
            for (std::size_t bi = 0; bi < b.branchings().size(); ++bi) {
                if (omega.w[bi] == 0) continue;
                if (traversed[bi])
                    on_cycle += omega.w[bi];
                else
                    (branching_group(b, grp, bi) == 0 ? side0 : side1) += omega.w[bi];
            }
            if (side0 * 3 > total * 2 || side1 * 3 > total * 2) return true;
            Rational score = std::max(side0, side1) + on_cycle;
            if (best.empty() || score < best_score ||
                (score == best_score &&
                 cycle_ref(b, cyc).canonical_string() < best_key)) {
                best = cyc;
                best_key = cycle_ref(b, cyc).canonical_string();
                best_score = score;
            }
            return true;
        });
        if (!best.empty() && best_score <= stop_score * total) break;
        if (out_of_budget) {
            if (best.empty())
                raise(ErrorKind::Budget,
                      "balanced-cycle search found no certificate within its budget");
            break;
        }
    }
    if (best.empty())
        raise(ErrorKind::Consistency,
              "no balanced cycle within the length bound (theorem violation)");
    return best;
}

/// One face of the union subgraph R: its boundary decomposition and region.
struct SplitChild {
    SwissCheeseSeparator separator;
    std::vector<std::size_t> diamond_group;  // diamonds of Diag_S inside the face
};

struct SplitResult {
    std::vector<ObjectId> sample_ids;
    RadialCycleRef c1;
    std::optional<RadialCycleRef> c2;
    std::vector<SplitChild> children;
    std::vector<ObjectId> lost;      // family objects in conflict with C1 or C2
    unsigned trials_used = 0;
    double s = 0, lambda = 0, eta = 0;
};

namespace detail {

/// Decomposes the boundary walks of every face of the subgraph R of the
/// radial graph into simple cycles, grouped per face. R is given as a set
/// of radial edge ids; faces are identified with groups of diamonds.
struct RFaces {
    // group id per diamond
    std::vector<std::size_t> group_of_diamond;
    std::size_t num_groups = 0;
    // per group: boundary cycles (radial edge id sequences)
    std::vector<std::vector<std::vector<std::size_t>>> boundary;
};

inline RFaces r_subgraph_faces(const VoronoiBundle& b, const std::set<std::size_t>& redges) {
    RFaces out;
    DiamondGrouping grp = diamond_grouping(b, redges);
    out.group_of_diamond = std::move(grp.group_of_diamond);
    out.num_groups = grp.num_groups;
    out.boundary.assign(out.num_groups, {});

    // orbit traversal of R; each orbit belongs to the group of the diamonds
    // its darts flank
    std::set<std::pair<std::size_t, int>> seen;
    for (std::size_t re : redges)
        for (int dir : {0, 1}) {
            if (seen.count({re, dir})) continue;
            std::vector<std::pair<std::size_t, int>> orbit;
            VoronoiBundle::RadialDart d{re, dir};
            std::size_t group = kNone;
            do {
                seen.insert({d.re, d.dir});
                orbit.emplace_back(d.re, d.dir);
                std::size_t g = out.group_of_diamond[b.diamond_of_dart(d.re, d.dir)];
                check_consistency(group == kNone || group == g,
                                  "face orbit flanks two different regions");
                group = g;
                // next R-dart: scan rotation from the reversal
                VoronoiBundle::RadialDart r{d.re, 1 - d.dir};
                do {
                    r = b.rotation_next_radial(r);
                } while (!redges.count(r.re));
                d = r;
            } while (!(d.re == re && d.dir == dir));

            // decompose the orbit walk into simple cycles by splitting at
            // node repeats (node = object or branching, tracked per parity)
            std::vector<std::vector<std::pair<std::size_t, int>>> stack_cycles;
            std::vector<std::pair<std::size_t, int>> stk;
            std::map<std::pair<char, std::size_t>, std::size_t> pos;  // node -> stack depth
            auto node_of = [&](std::size_t re2, int dir2) -> std::pair<char, std::size_t> {
                // node the dart points *to*
                const RadialEdge& e = b.radial_edge(re2);
                return dir2 == 0 ? std::make_pair('b', e.branch_index)
                                 : std::make_pair('o', e.object_index);
            };
            // the walk starts at the target of its last dart; seeding it at
            // depth zero lets the final edge close the outermost cycle
            pos.emplace(node_of(orbit.back().first, orbit.back().second), 0);
            for (auto [re2, dir2] : orbit) {
                stk.emplace_back(re2, dir2);
                auto key = node_of(re2, dir2);
                auto it = pos.find(key);
                if (it != pos.end()) {
                    std::vector<std::pair<std::size_t, int>> cyc(stk.begin() + it->second,
                                                                 stk.end());
                    // remove popped nodes from the map
                    for (std::size_t t = it->second; t + 1 < stk.size(); ++t)
                        pos.erase(node_of(stk[t].first, stk[t].second));
                    stk.resize(it->second);
                    stack_cycles.push_back(std::move(cyc));
                } else {
                    pos.emplace(key, stk.size());
                }
            }
            check_consistency(stk.empty(), "boundary walk did not close into cycles");

            for (auto& cyc : stack_cycles) {
                std::vector<std::size_t> ids;
                ids.reserve(cyc.size());
                // normalize: start ascending (object -> branching)
                std::size_t shift = cyc[0].second == 0 ? 0 : 1;
                for (std::size_t i = 0; i < cyc.size(); ++i)
                    ids.push_back(cyc[(i + shift) % cyc.size()].first);
                out.boundary[group].push_back(std::move(ids));
            }
        }
    return out;
}

}  // namespace detail

/// Randomized balanced split of a ripe separator against an independent
/// family inside it. Resamples until the sample-size window holds and no
/// spoke or diamond is heavy, then cuts along one or two balanced cycles
/// and re-expresses every face inside the region as a ripe child separator.
inline SplitResult split(const Context& ctx, const SwissCheeseSeparator& scs,
                         const std::vector<ObjectId>& family_ids,
                         const SamplingParams& params) {
    const double s = params.s();
    if (!scs.ripe() || static_cast<double>(scs.complexity()) > s)
        raise(ErrorKind::Precondition, "separator not ripe or too complex for s");
    for (ObjectId id : family_ids)
        if (!scs.is_allowed(id))
            raise(ErrorKind::Precondition, "family object not allowed by the separator");
    Family family = ctx.family(family_ids);
    if (!family_independent(family))
        raise(ErrorKind::NotIndependent, "family objects overlap");
    const double lambda = params.lambda(family_ids.size());
    const double eta = params.eta(family_ids.size());

    SplitResult res;
    res.s = s;
    res.lambda = lambda;
    res.eta = eta;

    for (unsigned trial = 0; trial < params.retry_budget; ++trial) {
        std::uint64_t tseed = derive_seed(params.seed, "split-trial", trial);
        std::vector<ObjectId> sample_ids = sample(scs.support(), family_ids, lambda, tseed);
        const std::size_t picked = sample_ids.size() - scs.support().size();
        if (static_cast<double>(picked) < s / 2 || static_cast<double>(picked) > 2 * s)
            continue;
        if (sample_ids.size() < 3) continue;
        {
            // probe heavy conditions on a throwaway bundle
            VoronoiBundle probe(ctx.metric, ctx.family(sample_ids), ctx.dc);
            if (!heavy_spokes(ctx, probe, family, eta).empty()) continue;
            if (!heavy_diamonds(probe, family, eta).empty()) continue;
        }
        const VoronoiBundle& bs = ctx.bundle(sample_ids);

        res.trials_used = trial + 1;
        res.sample_ids = sample_ids;

        // the standing cycles persist in Rad_S
        std::vector<std::vector<std::size_t>> k_ids;
        for (const RadialCycleRef& c : scs.cycles()) {
            RadialSeparator sitting{scs.support(), c};
            lift_cycle(ctx, sitting, ctx.family(sample_ids));
            k_ids.push_back(cycle_edge_ids(bs, c));
        }

        // the cycle length cap keeps child boundaries within the size
        // parameter; without a certificate under it the trial is retried
        const std::size_t cycle_cap = std::min<std::size_t>(
            balanced_cycle_cap(bs), static_cast<std::size_t>(std::floor(s)));
        std::vector<std::size_t> c1;
        std::optional<std::vector<std::size_t>> c2;
        try {
            c1 = find_balanced_cycle_search(bs, mu_bal(bs, family), cycle_cap,
                                            ratio(3, 4));
            auto ml = mu_len(bs, k_ids);
            if (ml)
                c2 = find_balanced_cycle_search(bs, *ml, cycle_cap, Rational(1));
        } catch (const Error&) {
            continue;
        }
        res.c1 = cycle_ref(bs, c1);
        std::set<std::size_t> redges(c1.begin(), c1.end());
        if (c2) {
            res.c2 = cycle_ref(bs, *c2);
            redges.insert(c2->begin(), c2->end());
        }
        for (const auto& c : k_ids) redges.insert(c.begin(), c.end());

        // conflicts with the fresh cycles
        res.lost.clear();
        {
            std::set<std::size_t> fresh(c1.begin(), c1.end());
            if (c2) fresh.insert(c2->begin(), c2->end());
            std::set<std::size_t> branches;
            for (std::size_t re : fresh)
                branches.insert(bs.radial_edge(re).branch_index);
            for (const GraphObject* q : family) {
                bool conflicted = false;
                for (std::size_t bi : branches) {
                    for (std::size_t j = 0; j < 3 && !conflicted; ++j) {
                        const RadialEdge& e = bs.radial_edge(3 * bi + j);
                        if (bs.object(e.object_index).id == q->id) continue;
                        if (in_conflict(ctx.dc, *q, e.spoke, bs.object(e.object_index)))
                            conflicted = true;
                    }
                    if (conflicted) break;
                }
                if (conflicted) res.lost.push_back(q->id);
            }
        }

        // faces of R inside the region become the children; a trial whose
        // children break the complexity or ripeness contract is retried
        res.children.clear();
        bool children_ok = true;
        detail::RFaces rf = detail::r_subgraph_faces(bs, redges);
        for (std::size_t group = 0; group < rf.num_groups && children_ok; ++group) {
            // witness face for the group's region
            FaceId witness = kNone;
            std::vector<std::size_t> dgroup;
            for (std::size_t di = 0; di < bs.diamonds().size(); ++di) {
                if (rf.group_of_diamond[di] != group) continue;
                dgroup.push_back(di);
                if (witness == kNone && !bs.diamonds()[di].region.empty())
                    witness = bs.diamonds()[di].region.front();
            }
            if (witness == kNone) continue;  // zero-area face, holds no object
            if (!scs.face_in_region(witness)) continue;  // outside or a hole

            // support: union of per-cycle reductions
            std::set<ObjectId> support;
            std::vector<RadialCycleRef> krefs;
            std::size_t total_len = 0;
            for (const auto& cyc : rf.boundary[group]) {
                total_len += cyc.size();
                RadialCycleRef ref = cycle_ref(bs, cyc);
                RadialSeparator rsep{sample_ids, ref};
                std::vector<ObjectId> red = reduce_support(ctx, rsep);
                support.insert(red.begin(), red.end());
                krefs.push_back(std::move(ref));
            }
            if (static_cast<double>(total_len) > s) {
                children_ok = false;
                break;
            }
            SwissCheeseSeparator child(
                ctx, std::vector<ObjectId>(support.begin(), support.end()), krefs, witness);
            if (!child.ripe()) {
                children_ok = false;
                break;
            }
            if (!child.region_subset_of(scs) || child.region().size() >= scs.region().size())
                continue;
            res.children.push_back({std::move(child), std::move(dgroup)});
        }
        if (!children_ok) continue;
        return res;
    }
    raise(ErrorKind::Budget, "split retry budget exhausted: no admissible sample");
}

/// Empirical frequencies of the per-trial sampling conditions.
struct SuccessStats {
    struct Trial {
        std::size_t picked = 0;
        bool size_ok = false, spoke_ok = false, diamond_ok = false;
    };
    std::size_t trials = 0;
    std::size_t size_ok = 0, no_heavy_spoke = 0, no_heavy_diamond = 0, joint = 0;
    std::vector<Trial> per_trial;

    double freq_size() const { return static_cast<double>(size_ok) / trials; }
    double freq_no_spoke() const { return static_cast<double>(no_heavy_spoke) / trials; }
    double freq_no_diamond() const { return static_cast<double>(no_heavy_diamond) / trials; }
    double freq_joint() const { return static_cast<double>(joint) / trials; }
    static double sigma(double p, std::size_t n) {
        return std::sqrt(p * (1 - p) / static_cast<double>(n));
    }
    double sigma_joint() const { return sigma(freq_joint(), trials); }
};

/// Per-trial seeds derive from the trial index, so the aggregate is
/// independent of the thread count.
inline SuccessStats estimate_success(const Context& ctx, const SwissCheeseSeparator& scs,
                                     const std::vector<ObjectId>& family_ids,
                                     const SamplingParams& params, std::size_t trials,
                                     unsigned threads = 1) {
    if (trials < 50) raise(ErrorKind::Parameter, "need at least 50 trials");
    Family family = ctx.family(family_ids);
    if (!family_independent(family))
        raise(ErrorKind::NotIndependent, "family objects overlap");
    const double s = params.s();
    const double lambda = params.lambda(family_ids.size());
    const double eta = params.eta(family_ids.size());
    SuccessStats st;
    st.trials = trials;
    st.per_trial.resize(trials);
    auto run_trial = [&](std::size_t t) {
        std::uint64_t tseed = derive_seed(params.seed, "success-trial", t);
        std::vector<ObjectId> sample_ids = sample(scs.support(), family_ids, lambda, tseed);
        SuccessStats::Trial row;
        row.picked = sample_ids.size() - scs.support().size();
        row.size_ok = static_cast<double>(row.picked) >= s / 2 &&
                      static_cast<double>(row.picked) <= 2 * s;
        row.spoke_ok = row.diamond_ok = true;
        if (sample_ids.size() >= 3) {
            // trial bundles are throwaway; keep them off the shared cache
            VoronoiBundle bs(ctx.metric, ctx.family(sample_ids), ctx.dc);
            row.spoke_ok = heavy_spokes(ctx, bs, family, eta).empty();
            row.diamond_ok = heavy_diamonds(bs, family, eta).empty();
        }
        st.per_trial[t] = row;
    };
    if (threads <= 1) {
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        ctx.dc.precompute(*ctx.inst);  // share the distance arrays read-only
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
                    run_trial(t);
            });
        for (auto& th : pool) th.join();
    }
    for (const auto& row : st.per_trial) {
        st.size_ok += row.size_ok;
        st.no_heavy_spoke += row.spoke_ok;
        st.no_heavy_diamond += row.diamond_ok;
        st.joint += row.size_ok && row.spoke_ok && row.diamond_ok;
    }
    return st;
}

}  // namespace cheese
