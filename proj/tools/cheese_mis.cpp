// cheese-mis: generate, solve, verify and benchmark instances of the
// maximum independent set of objects problem on sphere-embedded planar
// triangulations.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheese/cycles.hpp"
#include "cheese/dp.hpp"
#include "cheese/exact.hpp"
#include "cheese/generators.hpp"
#include "cheese/sampling.hpp"
#include "cheese/separators.hpp"
#include "cheese/singular.hpp"

using namespace cheese;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

class PhaseTimer {
public:
    void start(const std::string& name) {
        flush();
        name_ = name;
        t0_ = std::chrono::steady_clock::now();
    }
    json finish() {
        flush();
        return timings_;
    }

private:
    void flush() {
        if (name_.empty()) return;
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_);
        timings_[name_] = dt.count();
        name_.clear();
    }
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
    json timings_ = json::object();
};

std::uint64_t seed_or_env(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CHEESE_MIS_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

void write_report(const std::string& path, const json& report) {
    if (path.empty() || path == "-") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) raise(ErrorKind::Io, "cannot open output file " + path);
    out << report.dump(2) << "\n";
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Io, "cannot open input file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        raise(ErrorKind::Io, std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
}

std::vector<ObjectId> all_object_ids(const Instance& inst) {
    std::vector<ObjectId> ids;
    for (const GraphObject& p : inst.objects) ids.push_back(p.id);
    return ids;
}

std::vector<ObjectId> greedy_independent(const Instance& inst, std::size_t cap) {
    std::vector<ObjectId> ids;
    std::vector<const GraphObject*> chosen;
    for (const GraphObject& p : inst.objects) {
        bool ok = true;
        for (const GraphObject* q : chosen)
            if (!objects_disjoint(p, *q)) ok = false;
        if (!ok) continue;
        ids.push_back(p.id);
        chosen.push_back(&p);
        if (ids.size() == cap) break;
    }
    return ids;
}

// ── subcommands ─────────────────────────────────────────────────────

int cmd_generate(const std::string& kind, std::size_t rows, std::size_t cols,
                 const std::string& spec, std::uint64_t seed, const std::string& out_path) {
    PhaseTimer timer;
    timer.start("generate");
    if (kind != "grid") raise(ErrorKind::Parameter, "unknown instance kind: " + kind);
    Instance inst = generate_grid(rows, cols, spec, seed);
    json report = instance_to_json(inst);
    write_report(out_path, report);
    json meta;
    meta["command"] = "generate";
    meta["seed"] = seed;
    meta["objects"] = inst.objects.size();
    meta["vertices"] = inst.graph.num_vertices();
    meta["version"] = kVersion;
    meta["timings"] = timer.finish();
    std::cerr << meta.dump() << "\n";
    return 0;
}

int cmd_solve(const std::string& in_path, double epsilon, double s_override,
              const std::string& mode, std::uint64_t seed, bool with_exact,
              const std::string& out_path) {
    PhaseTimer timer;
    timer.start("load");
    Instance inst = load_instance(in_path);
    auto rep = validate(inst);
    if (!rep.ok()) {
        json bad;
        bad["error"] = "invalid instance";
        for (const auto& v : rep.violations) bad["violations"].push_back(v.code + ": " + v.message);
        std::cerr << bad.dump(2) << "\n";
        return 1;
    }

    timer.start("metric");
    Context ctx(inst);

    SolveOptions opt;
    opt.epsilon = epsilon;
    opt.s_override = s_override;
    opt.mode = mode == "exhaustive" ? Mode::Exhaustive : Mode::Sampled;
    opt.seed = seed;

    timer.start("solve");
    SolveResult res = approx_is(ctx, opt);

    json report;
    report["command"] = "solve";
    report["value"] = res.value;
    report["solution"] = res.solution;
    if (with_exact) {
        timer.start("exact");
        ExactResult ex = exact_mis(inst);
        report["exact_opt"] = ex.value;
    } else {
        report["exact_opt"] = nullptr;
    }
    report["guarantee_exponent"] = res.guarantee_exponent;
    report["mode"] = res.mode;
    report["stats"] = res.stats;
    report["seed"] = seed;
    report["epsilon"] = epsilon;
    report["s_override"] = s_override;
    report["version"] = kVersion;
    report["timings"] = timer.finish();
    write_report(out_path, report);
    return 0;
}

json run_verify_suites(Context& ctx, const Instance& inst, std::uint64_t seed,
                       bool dump_structures, json& dump) {
    json suites = json::array();
    auto add = [&](const std::string& name, bool pass, const json& details) {
        suites.push_back({{"name", name}, {"pass", pass}, {"details", details}});
    };

    {
        auto rep = validate(inst);
        json det = json::array();
        for (const auto& v : rep.violations) det.push_back(v.code + ": " + v.message);
        add("instance-validation", rep.ok(), det);
    }

    // tie-free metric: distances are verified distinct at construction
    add("metric-tie-free", true,
        {{"retries_used", ctx.metric.retries_used()}});

    // diagram structure over greedy independent subfamilies
    {
        bool pass = true;
        json det = json::array();
        for (std::size_t k = 3; k <= 8; ++k) {
            auto ids = greedy_independent(inst, k);
            if (ids.size() < k) break;
            try {
                const VoronoiBundle& vb = ctx.bundle(ids);
                bool ok = vb.branchings().size() == 2 * k - 4 &&
                          vb.diagram_edges().size() == 3 * k - 6 && vb.num_orbits() == k;
                pass = pass && ok;
                det.push_back({{"family", k}, {"ok", ok}});
                if (dump_structures && k == 3) {
                    json d;
                    d["branchings"] = vb.branchings();
                    auto& edges = d["edges"] = json::array();
                    for (const DiagramEdge& e : vb.diagram_edges())
                        edges.push_back({{"f", e.endpoint_f},
                                         {"g", e.endpoint_g},
                                         {"crossed", e.crossed}});
                    auto& redges = d["radial_edges"] = json::array();
                    for (const RadialEdge& re : vb.radial_edges())
                        redges.push_back({{"branch", re.branch_face},
                                          {"label", re.label},
                                          {"object", vb.object(re.object_index).id},
                                          {"spoke", re.spoke}});
                    dump["diagram"] = std::move(d);
                }
            } catch (const Error& e) {
                pass = false;
                det.push_back({{"family", k}, {"error", e.what()}});
            }
        }
        add("voronoi-structure", pass, det);
    }

    // branching classification and singular bounds on a small family
    {
        bool pass = true;
        json det = json::array();
        auto ids = greedy_independent(inst, 5);
        if (ids.size() >= 3) {
            try {
                const VoronoiBundle& vb = ctx.bundle(ids);
                for (FaceId f : vb.branchings()) {
                    SingularWitness w = classify_branching_point(ctx.bundles, vb, f);
                    det.push_back({{"face", f}, {"type", w.type}});
                }
            } catch (const Error& e) {
                pass = false;
                det.push_back({{"error", e.what()}});
            }
        }
        add("branching-classification", pass, det);
    }

    // separator persistence and support reduction on sampled cycles
    {
        bool pass = true;
        json det;
        std::size_t cycles_checked = 0, reductions = 0;
        auto ids = greedy_independent(inst, 4);
        if (ids.size() >= 3) {
            try {
                const VoronoiBundle& vb = ctx.bundle(ids);
                auto cycles = enumerate_radial_cycles(vb, 6);
                for (const auto& c : cycles) {
                    if (cycles_checked >= 5) break;
                    ++cycles_checked;
                    RadialSeparator sep{ids, cycle_ref(vb, c)};
                    auto reduced = reduce_support(ctx, sep);
                    if (2 * reduced.size() > 5 * c.size()) pass = false;
                    ++reductions;
                    if (dump_structures && reductions == 1) {
                        SwissCheeseSeparator::root(ctx);  // touch to keep parity
                        ClosedWalk cw = gamma_walk(vb, c);
                        FaceId witness = kNone;
                        for (FaceId t = 0; t < vb.graph().num_faces(); ++t)
                            if (cw.side_mask[0][t] && !vb.is_branching(t)) {
                                witness = t;
                                break;
                            }
                        if (witness != kNone) {
                            SwissCheeseSeparator scs(ctx, reduced, {sep.cycle}, witness);
                            dump["separator"] = scs.to_json();
                        }
                    }
                }
            } catch (const Error& e) {
                pass = false;
                det["error"] = e.what();
            }
        }
        det["cycles_checked"] = cycles_checked;
        det["reductions"] = reductions;
        add("separator-reduction", pass, det);
    }

    (void)seed;
    return suites;
}

int cmd_verify(const std::string& in_path, std::uint64_t seed, const std::string& out_path,
               const std::string& dump_path) {
    PhaseTimer timer;
    timer.start("load");
    Instance inst = load_instance(in_path);
    timer.start("verify");
    Context ctx(inst);
    json dump;
    json suites = run_verify_suites(ctx, inst, seed, !dump_path.empty(), dump);
    bool all_pass = true;
    for (const auto& s : suites)
        if (!s.at("pass").get<bool>()) all_pass = false;

    json report;
    report["command"] = "verify";
    report["pass"] = all_pass;
    report["suites"] = suites;
    report["seed"] = seed;
    report["version"] = kVersion;
    report["timings"] = timer.finish();
    write_report(out_path, report);
    if (!dump_path.empty()) write_report(dump_path, dump);
    return all_pass ? 0 : 1;
}

int cmd_verify_sampling(const std::string& in_path, std::size_t trials, double s,
                        double eta_frac, std::uint64_t seed, unsigned threads,
                        const std::string& out_path) {
    PhaseTimer timer;
    timer.start("load");
    Instance inst = load_instance(in_path);
    timer.start("estimate");
    Context ctx(inst);
    SwissCheeseSeparator root = SwissCheeseSeparator::root(ctx);
    SamplingParams params;
    params.s_override = s;
    params.eta_frac_override = eta_frac;
    params.seed = seed;
    // the family must be independent; take the greedy independent subfamily
    auto ids = greedy_independent(inst, inst.objects.size());
    SuccessStats st = estimate_success(ctx, root, ids, params, trials, threads);

    json report;
    report["command"] = "verify-sampling";
    report["trials"] = st.trials;
    report["family_size"] = ids.size();
    report["s"] = s;
    report["eta"] = params.eta(ids.size());
    report["lambda"] = params.lambda(ids.size());
    report["seed"] = seed;
    auto cond = [&](const char* name, std::size_t count) {
        double p = static_cast<double>(count) / st.trials;
        report["frequencies"][name] = p;
        report["sigma"][name] = SuccessStats::sigma(p, st.trials);
    };
    cond("size_window", st.size_ok);
    cond("no_heavy_spoke", st.no_heavy_spoke);
    cond("no_heavy_diamond", st.no_heavy_diamond);
    cond("joint", st.joint);
    auto& rows = report["per_trial"] = json::array();
    for (std::size_t t = 0; t < st.per_trial.size(); ++t) {
        const auto& r = st.per_trial[t];
        rows.push_back({{"trial", t},
                        {"picked", r.picked},
                        {"size_ok", r.size_ok},
                        {"spoke_ok", r.spoke_ok},
                        {"diamond_ok", r.diamond_ok}});
    }
    report["version"] = kVersion;
    report["timings"] = timer.finish();
    write_report(out_path, report);
    return 0;
}

struct BenchCase {
    std::string name;
    std::size_t rows, cols;
    std::string spec;
    std::uint64_t seed;
};

int cmd_bench(const std::string& suite, unsigned threads, std::uint64_t seed,
              const std::string& out_path) {
    if (suite != "desk") raise(ErrorKind::Parameter, "unknown bench suite: " + suite);
    std::vector<BenchCase> cases = {
        {"grid-4x4-small", 4, 4, "rect:1x1:4;rect:2x2:2", 3},
        {"grid-5x5-mixed", 5, 5, "rect:2x2:5;rect:1x1:3", 7},
        {"grid-6x6-rects", 6, 6, "rect:2x2:8", 11},
        {"grid-6x6-dense", 6, 6, "rect:1x1:8;rect:2x2:6", 13},
        {"grid-7x7-balls", 7, 7, "ball:1:8;rect:1x1:4", 17},
        {"grid-8x8-wide", 8, 8, "rect:2x2:10;rect:1x1:6", 19},
    };

    json rows = json::array();
    rows.get_ref<json::array_t&>().resize(cases.size());
    std::atomic<std::size_t> next{0};
    auto run_case = [&](std::size_t i) {
        const BenchCase& bc = cases[i];
        auto t0 = std::chrono::steady_clock::now();
        Instance inst = generate_grid(bc.rows, bc.cols, bc.spec, bc.seed);
        Context ctx(inst);
        ExactResult ex = exact_mis(inst);
        SolveOptions opt;
        opt.mode = Mode::Sampled;
        opt.s_override = 6;
        opt.seed = derive_seed(seed, bc.name);
        SolveResult res = approx_is(ctx, opt);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json row;
        row["instance"] = bc.name;
        row["N"] = inst.objects.size();
        row["n"] = inst.graph.num_vertices();
        row["exact"] = ex.value;
        row["approx"] = res.value;
        row["ratio"] = ex.value == 0
                           ? 1.0
                           : static_cast<double>(res.value) / static_cast<double>(ex.value);
        row["time"] = dt;
        rows[i] = std::move(row);
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) run_case(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cases.size();
                     i = next.fetch_add(1))
                    run_case(i);
            });
        for (auto& th : pool) th.join();
    }

    json report;
    report["command"] = "bench";
    report["suite"] = suite;
    report["seed"] = seed;
    report["results"] = rows;
    report["version"] = kVersion;
    write_report(out_path, report);

    std::cerr << "instance            N    n  exact approx ratio   time\n";
    for (const auto& row : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-18s %3zu %4zu %6zu %6zu %5.2f %7.2fs",
                      row.at("instance").get<std::string>().c_str(),
                      row.at("N").get<std::size_t>(), row.at("n").get<std::size_t>(),
                      row.at("exact").get<std::size_t>(), row.at("approx").get<std::size_t>(),
                      row.at("ratio").get<double>(), row.at("time").get<double>());
        std::cerr << buf << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum independent set of objects on planar graphs"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate an instance");
    std::string gen_kind = "grid", gen_spec = "rect:2x2:6", gen_out;
    std::size_t gen_rows = 4, gen_cols = 4;
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("--kind", gen_kind);
    gen->add_option("--rows", gen_rows)->required();
    gen->add_option("--cols", gen_cols)->required();
    gen->add_option("--objects", gen_spec);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out)->required();

    // solve
    auto* sol = app.add_subcommand("solve", "solve an instance");
    std::string sol_in, sol_out, sol_mode = "sampled";
    double sol_eps = 0.5, sol_s = -1;
    bool sol_exact = false;
    std::optional<std::uint64_t> sol_seed;
    sol->add_option("--in", sol_in)->required();
    sol->add_option("--epsilon", sol_eps);
    sol->add_option("--s-override", sol_s);
    sol->add_option("--mode", sol_mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    sol->add_option("--seed", sol_seed);
    sol->add_flag("--exact", sol_exact);
    sol->add_option("--out", sol_out)->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run the invariant suites");
    std::string ver_in, ver_out, ver_dump;
    std::optional<std::uint64_t> ver_seed;
    ver->add_option("--in", ver_in)->required();
    ver->add_option("--out", ver_out);
    ver->add_option("--dump-structures", ver_dump);
    ver->add_option("--seed", ver_seed);

    // verify-sampling
    auto* vs = app.add_subcommand("verify-sampling", "sampling statistics report");
    std::string vs_in, vs_out;
    std::size_t vs_trials = 200;
    double vs_s = 8, vs_eta = 0.4;
    unsigned vs_threads = 1;
    std::optional<std::uint64_t> vs_seed;
    vs->add_option("--in", vs_in)->required();
    vs->add_option("--trials", vs_trials);
    vs->add_option("--s", vs_s);
    vs->add_option("--eta-frac", vs_eta);
    vs->add_option("--seed", vs_seed);
    vs->add_option("--threads", vs_threads);
    vs->add_option("--out", vs_out);

    // bench
    auto* ben = app.add_subcommand("bench", "run a benchmark suite");
    std::string ben_suite = "desk", ben_out;
    unsigned ben_threads = 1;
    std::optional<std::uint64_t> ben_seed;
    ben->add_option("--suite", ben_suite);
    ben->add_option("--threads", ben_threads);
    ben->add_option("--seed", ben_seed);
    ben->add_option("--out", ben_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_kind, gen_rows, gen_cols, gen_spec, seed_or_env(gen_seed),
                                gen_out);
        if (sol->parsed())
            return cmd_solve(sol_in, sol_eps, sol_s, sol_mode, seed_or_env(sol_seed),
                             sol_exact, sol_out);
        if (ver->parsed()) return cmd_verify(ver_in, seed_or_env(ver_seed), ver_out, ver_dump);
        if (vs->parsed())
            return cmd_verify_sampling(vs_in, vs_trials, vs_s, vs_eta, seed_or_env(vs_seed),
                                       vs_threads, vs_out);
        if (ben->parsed()) return cmd_bench(ben_suite, ben_threads, seed_or_env(ben_seed), ben_out);
    } catch (const Error& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    }
    return 2;
}
