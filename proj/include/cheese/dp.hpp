#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheese/cycles.hpp"
#include "cheese/sampling.hpp"
#include "cheese/separators.hpp"

namespace cheese {

enum class Mode { Exhaustive, Sampled };

inline const char* mode_name(Mode m) {
    return m == Mode::Exhaustive ? "exhaustive" : "sampled";
}

// ── Prop-style inequality helpers ───────────────────────────────────

/// For delta, c in (0,1), positive a_i and A with cA >= a_i and
/// sum a_i >= c^delta A, it holds that sum a_i^(1-delta) >= A^(1-delta).
/// Preconditions are enforced; the conclusion is returned for fuzzing.
inline bool check_inequality(double delta, double c, double A,
                             const std::vector<double>& a) {
    if (!(delta > 0 && delta < 1) || !(c > 0 && c < 1) || !(A > 0))
        raise(ErrorKind::Precondition, "delta, c in (0,1) and A > 0 required");
    double sum = 0;
    for (double x : a) {
        if (!(x > 0)) raise(ErrorKind::Precondition, "terms must be positive");
        if (x > c * A * (1 + 1e-12))
            raise(ErrorKind::Precondition, "term exceeds c*A");
        sum += x;
    }
    if (sum < std::pow(c, delta) * A * (1 - 1e-12))
        raise(ErrorKind::Precondition, "terms sum below c^delta * A");
    double lhs = 0;
    for (double x : a) lhs += std::pow(x, 1 - delta);
    return lhs >= std::pow(A, 1 - delta) * (1 - 1e-9);
}

/// Bernoulli variant used by the induction: (1-x)^r <= 1 - r x on [0,1].
inline bool bernoulli_variant_holds(double r, double x) {
    if (!(r >= 0 && r <= 1 && x >= 0 && x <= 1))
        raise(ErrorKind::Precondition, "r, x must lie in [0,1]");
    return std::pow(1 - x, r) <= 1 - r * x + 1e-12;
}

// ── Separator catalog ───────────────────────────────────────────────

/// All ripe Swiss-cheese separators known to the solver, keyed canonically
/// and layered by region size (strict region containment implies strictly
/// fewer faces, so the order refines the containment partial order).
class SepCatalog {
public:
    std::size_t add(SwissCheeseSeparator scs) {
        auto it = by_key_.find(scs.key());
        if (it != by_key_.end()) return it->second;
        std::size_t id = seps_.size();
        by_key_.emplace(scs.key(), id);
        seps_.push_back(std::move(scs));
        return id;
    }

    bool contains(const std::string& key) const { return by_key_.count(key) > 0; }
    std::size_t id_of(const std::string& key) const { return by_key_.at(key); }
    const SwissCheeseSeparator& at(std::size_t id) const { return seps_[id]; }
    std::size_t size() const { return seps_.size(); }

    /// ids sorted by ascending region size, then key.
    std::vector<std::size_t> fill_order() const {
        std::vector<std::size_t> ids(seps_.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
        std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
            if (seps_[a].region().size() != seps_[b].region().size())
                return seps_[a].region().size() < seps_[b].region().size();
            return seps_[a].key() < seps_[b].key();
        });
        return ids;
    }

private:
    std::deque<SwissCheeseSeparator> seps_;  // stable references under add
    std::map<std::string, std::size_t> by_key_;
};

inline bool precedes(const SwissCheeseSeparator& a, const SwissCheeseSeparator& b) {
    return a.region_subset_of(b);
}

// ── Independent-set search over allowed objects ─────────────────────

namespace dp_detail {

/// Max independent subset of `ids`, capped at `cap`; branch and bound with
/// early exit once the cap is reached.
inline std::vector<ObjectId> max_independent_capped(const Context& ctx,
                                                    const std::vector<ObjectId>& ids,
                                                    std::size_t cap) {
    const std::size_t n = ids.size();
    if (cap == 0 || n == 0) return {};
    std::vector<const GraphObject*> objs;
    for (ObjectId id : ids) objs.push_back(&ctx.object(id));
    std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!objects_disjoint(*objs[i], *objs[j]))
                conflict[i][j] = conflict[j][i] = 1;

    std::vector<std::size_t> best, cur;
    auto dfs = [&](auto&& self, std::size_t from) -> bool {
        if (cur.size() > best.size()) best = cur;
        if (best.size() >= cap) return true;
        if (cur.size() + (n - from) <= best.size()) return false;
        for (std::size_t v = from; v < n; ++v) {
            bool ok = true;
            for (std::size_t u : cur)
                if (conflict[u][v]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(v);
            if (self(self, v + 1)) return true;
            cur.pop_back();
        }
        return false;
    };
    dfs(dfs, 0);
    std::vector<ObjectId> out;
    for (std::size_t v : best) out.push_back(ids[v]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dp_detail

/// min(s, opt) over Allowed(scs): the base table of the dynamic program.
inline std::vector<ObjectId> small_sol(const Context& ctx, const SwissCheeseSeparator& scs,
                                       double s) {
    std::size_t cap = static_cast<std::size_t>(std::floor(s));
    return dp_detail::max_independent_capped(ctx, scs.allowed(), cap);
}

// ── Candidate split enumeration ─────────────────────────────────────

struct CandidateFamily {
    std::vector<std::size_t> children;  // catalog ids, sorted
};

/// Children induced by cutting the separator's region along the union
/// subgraph R = K ∪ extra; shared by the sampled split and the exhaustive
/// candidate enumeration. Faces with zero-area regions hold no objects and
/// are dropped.
inline std::vector<SplitChild> cut_children(const Context& ctx,
                                            const SwissCheeseSeparator& scs,
                                            const VoronoiBundle& bs,
                                            const std::vector<ObjectId>& sample_ids,
                                            const std::set<std::size_t>& redges) {
    std::vector<SplitChild> out;
    detail::RFaces rf = detail::r_subgraph_faces(bs, redges);
    for (std::size_t group = 0; group < rf.num_groups; ++group) {
        FaceId witness = kNone;
        std::vector<std::size_t> dgroup;
        for (std::size_t di = 0; di < bs.diamonds().size(); ++di) {
            if (rf.group_of_diamond[di] != group) continue;
            dgroup.push_back(di);
            if (witness == kNone && !bs.diamonds()[di].region.empty())
                witness = bs.diamonds()[di].region.front();
        }
        if (witness == kNone) continue;
        if (!scs.face_in_region(witness)) continue;
        std::set<ObjectId> support;
        std::vector<RadialCycleRef> krefs;
        for (const auto& cyc : rf.boundary[group]) {
            RadialCycleRef ref = cycle_ref(bs, cyc);
            RadialSeparator rsep{sample_ids, ref};
            std::vector<ObjectId> red = reduce_support(ctx, rsep);
            support.insert(red.begin(), red.end());
            krefs.push_back(std::move(ref));
        }
        SwissCheeseSeparator child(ctx, std::vector<ObjectId>(support.begin(), support.end()),
                                   krefs, witness);
        if (!child.region_subset_of(scs) || child.region().size() >= scs.region().size())
            continue;
        out.push_back({std::move(child), std::move(dgroup)});
    }
    return out;
}

struct CandOptions {
    double s = 4;
    std::size_t combo_budget = 2000000;  // (sample, cycle pair) combinations
};

/// Exhaustive candidate splits per the enumeration contract: all independent
/// subsets of Allowed up to size 2s joined with the support, all cycle pairs
/// up to the witness length bound, every inside face re-expressed as a ripe
/// separator already present in the catalog.
inline std::vector<CandidateFamily> enumerate_cand(const Context& ctx, SepCatalog& catalog,
                                                   std::size_t scs_id,
                                                   const CandOptions& opt) {
    const SwissCheeseSeparator& scs = catalog.at(scs_id);
    const double s = opt.s;
    const std::size_t max_extra = static_cast<std::size_t>(std::floor(2 * s));
    const std::size_t cycle_cap = static_cast<std::size_t>(std::floor(std::sqrt(162.0 * s)));

    std::set<std::vector<std::size_t>> families;
    std::size_t combos = 0;

    // independent subsets of allowed, by DFS in id order
    const std::vector<ObjectId>& allowed = scs.allowed();
    std::vector<ObjectId> extra;
    auto process_sample = [&](const std::vector<ObjectId>& extra_ids) {
        std::vector<ObjectId> sample_ids = scs.support();
        sample_ids.insert(sample_ids.end(), extra_ids.begin(), extra_ids.end());
        std::sort(sample_ids.begin(), sample_ids.end());
        if (sample_ids.size() < 3) return;
        const VoronoiBundle& bs = ctx.bundle(sample_ids);
        std::vector<std::vector<std::size_t>> k_ids;
        for (const RadialCycleRef& c : scs.cycles()) k_ids.push_back(cycle_edge_ids(bs, c));
        auto cycles = enumerate_radial_cycles(bs, std::min<std::size_t>(cycle_cap, 2 * s));
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            for (std::size_t j = i; j < cycles.size(); ++j) {
                if (++combos > opt.combo_budget)
                    raise(ErrorKind::Budget,
                          "exhaustive candidate budget exceeded; use sampled mode");
                std::set<std::size_t> redges(cycles[i].begin(), cycles[i].end());
                redges.insert(cycles[j].begin(), cycles[j].end());
                for (const auto& kc : k_ids) redges.insert(kc.begin(), kc.end());
                std::vector<SplitChild> children;
                try {
                    children = cut_children(ctx, scs, bs, sample_ids, redges);
                } catch (const Error&) {
                    continue;  // ill-formed cut (support reduction failed)
                }
                if (children.empty()) continue;
                bool all_ok = true;
                std::vector<std::size_t> fam;
                for (SplitChild& ch : children) {
                    if (!ch.separator.ripe() ||
                        static_cast<double>(ch.separator.complexity()) > s) {
                        all_ok = false;
                        break;
                    }
                    fam.push_back(catalog.add(std::move(ch.separator)));
                }
                if (!all_ok) continue;
                std::sort(fam.begin(), fam.end());
                fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
                families.insert(std::move(fam));
            }
        }
    };

    auto dfs = [&](auto&& self, std::size_t from) -> void {
        if (!extra.empty()) process_sample(extra);
        if (extra.size() >= max_extra) return;
        for (std::size_t v = from; v < allowed.size(); ++v) {
            const GraphObject& p = ctx.object(allowed[v]);
            bool ok = true;
            for (ObjectId u : extra)
                if (!objects_disjoint(p, ctx.object(u))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            extra.push_back(allowed[v]);
            self(self, v + 1);
            extra.pop_back();
        }
    };
    dfs(dfs, 0);

    std::vector<CandidateFamily> out;
    for (const auto& fam : families) out.push_back({fam});
    return out;
}

// ── Separator enumeration ───────────────────────────────────────────

/// Rotation-interleaving test at shared objects (branchings cannot repeat
/// across edge-disjoint cycles).
inline bool radial_cycles_cross(const VoronoiBundle& b, const std::vector<std::size_t>& c1,
                                const std::vector<std::size_t>& c2);

struct SepOptions {
    double s = 4;
    std::size_t support_budget = 2000000;
    std::size_t max_separators = 2000000;
};

/// Exhaustive catalog: every ripe separator of complexity at most s over
/// every independent support, plus the root.
inline SepCatalog enumerate_sep(const Context& ctx, const SepOptions& opt) {
    SepCatalog catalog;
    catalog.add(SwissCheeseSeparator::root(ctx));
    const double s = opt.s;
    if (s < 2) return catalog;  // no cycle fits
    const std::size_t max_support =
        std::min<std::size_t>(ctx.inst->objects.size(),
                              static_cast<std::size_t>(std::floor(2.5 * s)));

    std::vector<ObjectId> all;
    for (const GraphObject& p : ctx.inst->objects) all.push_back(p.id);
    std::sort(all.begin(), all.end());

    std::size_t supports = 0;
    std::vector<ObjectId> cur;

    auto process_support = [&](const std::vector<ObjectId>& support) {
        if (support.size() < 3) return;
        if (++supports > opt.support_budget)
            raise(ErrorKind::Budget, "support enumeration budget exceeded; use sampled mode");
        const VoronoiBundle& b = ctx.bundle(support);
        auto cycles =
            enumerate_radial_cycles(b, static_cast<std::size_t>(std::floor(s)));
        // subsets of pairwise edge-disjoint cycles of total length <= s
        std::vector<std::size_t> chosen;
        std::set<std::size_t> used;
        auto emit = [&]() {
            if (chosen.empty()) return;
            std::vector<RadialCycleRef> refs;
            for (std::size_t ci : chosen) refs.push_back(cycle_ref(b, cycles[ci]));
            DiamondGrouping grp = diamond_grouping(b, used);
            // candidate regions: faces of the union flanked by every cycle
            std::vector<char> cand(grp.num_groups, 1);
            for (std::size_t ci : chosen) {
                std::vector<char> flank(grp.num_groups, 0);
                for (std::size_t re : cycles[ci])
                    for (int dir : {0, 1})
                        flank[grp.group_of_diamond[b.diamond_of_dart(re, dir)]] = 1;
                for (std::size_t gi = 0; gi < grp.num_groups; ++gi)
                    cand[gi] = cand[gi] && flank[gi];
            }
            for (std::size_t gi = 0; gi < grp.num_groups; ++gi) {
                if (!cand[gi]) continue;
                FaceId witness = kNone;
                for (std::size_t di = 0; di < b.diamonds().size() && witness == kNone; ++di)
                    if (grp.group_of_diamond[di] == gi && !b.diamonds()[di].region.empty())
                        witness = b.diamonds()[di].region.front();
                if (witness == kNone) continue;  // zero-area region holds nothing
                SwissCheeseSeparator scs(ctx, support, refs, witness);
                if (!scs.ripe()) continue;
                if (catalog.size() >= opt.max_separators)
                    raise(ErrorKind::Budget,
                          "separator budget exceeded; use sampled mode");
                catalog.add(std::move(scs));
            }
        };
        auto pick = [&](auto&& self, std::size_t from, std::size_t total) -> void {
            emit();
            for (std::size_t ci = from; ci < cycles.size(); ++ci) {
                if (total + cycles[ci].size() > static_cast<std::size_t>(std::floor(s)))
                    continue;
                bool disjoint = true;
                for (std::size_t re : cycles[ci])
                    if (used.count(re)) {
                        disjoint = false;
                        break;
                    }
                if (!disjoint) continue;
                // crossing pairs are rejected by the separator constructor;
                // filter here to keep the enumeration tight
                bool crosses = false;
                for (std::size_t cj : chosen)
                    if (radial_cycles_cross(b, cycles[cj], cycles[ci])) crosses = true;
                if (crosses) continue;
                for (std::size_t re : cycles[ci]) used.insert(re);
                chosen.push_back(ci);
                self(self, ci + 1, total + cycles[ci].size());
                chosen.pop_back();
                for (std::size_t re : cycles[ci]) used.erase(re);
            }
        };
        pick(pick, 0, 0);
    };

    auto dfs = [&](auto&& self, std::size_t from) -> void {
        process_support(cur);
        if (cur.size() >= max_support) return;
        for (std::size_t v = from; v < all.size(); ++v) {
            const GraphObject& p = ctx.object(all[v]);
            bool ok = true;
            for (ObjectId u : cur)
                if (!objects_disjoint(p, ctx.object(u))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(all[v]);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    dfs(dfs, 0);
    return catalog;
}

// ── The solver ──────────────────────────────────────────────────────

struct SolveOptions {
    double epsilon = 0.5;
    double s_override = -1;
    Mode mode = Mode::Sampled;
    std::uint64_t seed = 0;
    bool with_exact = false;
    double eta_frac_override = -1;
    unsigned split_attempts = 3;     // sampled-mode attempts per table entry
    unsigned split_retry_budget = 64;
    std::size_t max_depth = 64;
    CandOptions cand;
    SepOptions sep;

    double s() const { return s_override >= 0 ? s_override : size_parameter(epsilon); }
    double effective_epsilon() const {
        return s_override >= 0 ? implied_epsilon(s_override) : epsilon;
    }
};

struct SolveResult {
    std::size_t value = 0;
    std::vector<ObjectId> solution;
    std::optional<std::size_t> exact_opt;
    double guarantee_exponent = 0;
    std::string mode;
    nlohmann::json stats;
};

namespace dp_detail {

struct Entry {
    std::size_t value = 0;
    std::vector<ObjectId> base_witness;           // SmallSol witness
    std::vector<std::string> child_keys;          // chosen split, if better
};

struct Solver {
    const Context& ctx;
    SolveOptions opt;
    std::map<std::string, Entry> table;
    std::size_t splits_tried = 0, splits_ok = 0, entries = 0;

    /// Greedy plus capped search: a large independent subset of allowed.
    std::vector<ObjectId> pick_family(const SwissCheeseSeparator& scs) {
        std::vector<ObjectId> greedy;
        for (ObjectId id : scs.allowed()) {
            bool ok = true;
            for (ObjectId u : greedy)
                if (!objects_disjoint(ctx.object(id), ctx.object(u))) {
                    ok = false;
                    break;
                }
            if (ok) greedy.push_back(id);
        }
        return greedy;
    }

    const Entry& solve(const SwissCheeseSeparator& scs, std::size_t depth) {
        auto it = table.find(scs.key());
        if (it != table.end()) return it->second;
        Entry e;
        e.base_witness = small_sol(ctx, scs, opt.s());
        e.value = e.base_witness.size();
        ++entries;
        const std::size_t cap = static_cast<std::size_t>(std::floor(opt.s()));
        // a base solution below the cap is exact; recurse only past it
        if (e.value >= cap && depth < opt.max_depth) {
            std::vector<ObjectId> fam = pick_family(scs);
            if (fam.size() >= cap && static_cast<double>(fam.size()) >= opt.s()) {
                for (unsigned attempt = 0; attempt < opt.split_attempts; ++attempt) {
                    SamplingParams params;
                    params.epsilon = opt.epsilon;
                    params.s_override = opt.s_override;
                    params.eta_frac_override = opt.eta_frac_override;
                    params.retry_budget = opt.split_retry_budget;
                    params.seed = derive_seed(opt.seed, scs.key(), attempt);
                    ++splits_tried;
                    SplitResult res;
                    try {
                        res = split(ctx, scs, fam, params);
                    } catch (const Error&) {
                        continue;
                    }
                    ++splits_ok;
                    std::size_t sum = 0;
                    std::vector<std::string> keys;
                    for (const SplitChild& ch : res.children) {
                        const Entry& ce = solve(ch.separator, depth + 1);
                        sum += ce.value;
                        keys.push_back(ch.separator.key());
                    }
                    if (sum > e.value) {
                        e.value = sum;
                        e.child_keys = std::move(keys);
                    }
                }
            }
        }
        return table.emplace(scs.key(), std::move(e)).first->second;
    }

    std::vector<ObjectId> reconstruct(const std::string& key) {
        const Entry& e = table.at(key);
        if (e.child_keys.empty()) return e.base_witness;
        std::vector<ObjectId> out;
        for (const std::string& ck : e.child_keys) {
            auto part = reconstruct(ck);
            out.insert(out.end(), part.begin(), part.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline void verify_witness(const Context& ctx, const std::vector<ObjectId>& sol) {
    for (std::size_t i = 0; i < sol.size(); ++i)
        for (std::size_t j = i + 1; j < sol.size(); ++j)
            check_consistency(objects_disjoint(ctx.object(sol[i]), ctx.object(sol[j])),
                              "reconstructed witness is not independent");
}

}  // namespace dp_detail

/// Approximate maximum independent set of objects. Exhaustive mode fills
/// SmallSol and ApproxIS over the full separator catalog in region order;
/// sampled mode grows the catalog lazily from randomized splits. Returns the
/// table value at the root along with a verified witness.
inline SolveResult approx_is(const Context& ctx, const SolveOptions& opt) {
    SolveResult out;
    out.mode = mode_name(opt.mode);
    const double s = opt.s();
    const std::size_t cap = static_cast<std::size_t>(std::floor(s));
    double eps_eff = opt.effective_epsilon();
    out.guarantee_exponent = 1.0 - 4.0 * eps_eff;

    if (opt.mode == Mode::Exhaustive) {
        SepOptions sep_opt = opt.sep;
        sep_opt.s = s;
        SepCatalog catalog = enumerate_sep(ctx, sep_opt);
        std::size_t root_id = kNone;
        std::map<std::size_t, dp_detail::Entry> entries;
        std::size_t cand_total = 0;
        for (std::size_t id : catalog.fill_order()) {
            const SwissCheeseSeparator& scs = catalog.at(id);
            if (scs.is_root()) root_id = id;
            dp_detail::Entry e;
            e.base_witness = small_sol(ctx, scs, s);
            e.value = e.base_witness.size();
            if (e.value >= cap) {
                CandOptions copt = opt.cand;
                copt.s = s;
                for (const CandidateFamily& fam : enumerate_cand(ctx, catalog, id, copt)) {
                    ++cand_total;
                    std::size_t sum = 0;
                    bool all_filled = true;
                    for (std::size_t ch : fam.children) {
                        auto it = entries.find(ch);
                        if (it == entries.end()) {
                            all_filled = false;  // equal-region artifacts; skip
                            break;
                        }
                        sum += it->second.value;
                    }
                    if (!all_filled) continue;
                    if (sum > e.value) {
                        e.value = sum;
                        e.child_keys.clear();
                        for (std::size_t ch : fam.children)
                            e.child_keys.push_back(catalog.at(ch).key());
                    }
                }
            }
            entries.emplace(id, std::move(e));
        }
        check_consistency(root_id != kNone, "catalog lost the root separator");
        // reconstruct
        auto rec = [&](auto&& self, std::size_t id) -> std::vector<ObjectId> {
            const dp_detail::Entry& e = entries.at(id);
            if (e.child_keys.empty()) return e.base_witness;
            std::vector<ObjectId> sol;
            for (const std::string& ck : e.child_keys) {
                auto part = self(self, catalog.id_of(ck));
                sol.insert(sol.end(), part.begin(), part.end());
            }
            std::sort(sol.begin(), sol.end());
            return sol;
        };
        out.solution = rec(rec, root_id);
        out.value = entries.at(root_id).value;
        out.stats["separators"] = catalog.size();
        out.stats["candidate_families"] = cand_total;
    } else {
        dp_detail::Solver solver{ctx, opt, {}, 0, 0, 0};
        SwissCheeseSeparator root = SwissCheeseSeparator::root(ctx);
        dp_detail::Entry e = solver.solve(root, 0);
        out.value = e.value;
        out.solution = solver.reconstruct(root.key());
        out.stats["splits_tried"] = solver.splits_tried;
        out.stats["splits_succeeded"] = solver.splits_ok;
        out.stats["table_entries"] = solver.entries;
    }

    dp_detail::verify_witness(ctx, out.solution);
    check_consistency(out.solution.size() == out.value,
                      "witness size differs from the table value");
    out.stats["s"] = s;
    out.stats["s_formula"] = size_parameter(eps_eff);
    out.stats["epsilon_effective"] = eps_eff;
    return out;
}

inline bool radial_cycles_cross(const VoronoiBundle& b, const std::vector<std::size_t>& c1,
                                const std::vector<std::size_t>& c2) {
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
                return static_cast<std::size_t>(
                    std::find(rot.begin(), rot.end(), re) - rot.begin());
            };
            int inside = 0;
            for (std::size_t t = (pos(a1) + 1) % rot.size(); t != pos(b1);
                 t = (t + 1) % rot.size())
                if (rot[t] == a2 || rot[t] == b2) ++inside;
            if (inside == 1) return true;
        }
    }
    return false;
}

}  // namespace cheese
