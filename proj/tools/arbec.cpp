// command line front end: generate traces, replay them through the engine
// with verification, run the static peel-and-color pass, and check files.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "arbec/engine.hpp"
#include "arbec/errors.hpp"
#include "arbec/generators.hpp"
#include "arbec/oracles.hpp"
#include "arbec/replay.hpp"
#include "arbec/trace.hpp"

namespace {

arbec::Mode parse_mode(const std::string& s) {
    return s == "warmup" ? arbec::Mode::warmup : arbec::Mode::full;
}

int run_gen(const std::string& kind, std::size_t n, std::size_t events, std::uint64_t seed,
            const std::string& mode_str, double epsilon, std::optional<int> alpha,
            const std::string& out) {
    arbec::GenRequest req;
    req.kind = kind;
    req.n = n;
    req.events = events;
    req.seed = seed;
    req.mode = parse_mode(mode_str);
    req.epsilon = epsilon;
    req.alpha = alpha;
    arbec::Trace t = arbec::gen_trace(req);
    if (out.empty()) {
        arbec::write_trace(std::cout, t);
    } else {
        arbec::save_trace(out, t);
        std::cout << "wrote " << t.events.size() << " events to " << out << '\n';
    }
    return 0;
}

int run_replay(const std::string& trace_path, std::size_t every, bool exact,
               const std::string& csv, const std::optional<std::string>& mode_ov,
               std::optional<double> eps_ov, std::optional<int> alpha_ov) {
    arbec::Trace tr = arbec::load_trace(trace_path);
    arbec::validate_trace(tr);
    arbec::ReplayOptions opts;
    opts.verify_every = every;
    opts.exact_alpha = exact;
    if (mode_ov) opts.mode = parse_mode(*mode_ov);
    opts.epsilon = eps_ov;
    opts.alpha = alpha_ov;
    arbec::ReplayResult res = arbec::replay(tr, opts);

    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw arbec::parse_error("cannot open " + csv + " for writing");
        arbec::write_metrics_csv(f, res.rows);
    }
    if (!res.rows.empty()) {
        arbec::Summary s = arbec::summarize(res.rows);
        std::cout << "events " << s.steps << " (" << s.inserts << " inserts, " << s.deletes
                  << " deletes)\n"
                  << "recolored " << s.total_recolored << " total, " << s.avg_recolored
                  << " per event\n"
                  << "uncolored " << s.total_uncolored << " total\n"
                  << "level changes " << s.total_levels_changed << '\n'
                  << "peak max color " << s.peak_max_color << '\n'
                  << "engine time " << static_cast<double>(s.total_wall_nanos) / 1e6 << " ms\n";
    }
    for (const auto& v : res.violations)
        std::cout << "violation " << arbec::to_string(v.kind) << ": " << v.detail << '\n';
    if (!res.ok) {
        std::cout << "FAIL at step " << res.violation_step << '\n';
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

int run_static_cmd(const std::string& graph_path, const std::string& out_coloring) {
    std::ifstream f(graph_path);
    if (!f) throw arbec::parse_error("cannot open " + graph_path);
    arbec::DynGraph g = arbec::parse_graph_file(f);
    arbec::StaticReport rep = arbec::run_static(g);
    std::cout << "n " << rep.n << " m " << rep.m << '\n'
              << "max color " << rep.max_color << '\n'
              << "max degree " << rep.delta << '\n';
    if (rep.alpha)
        std::cout << "arboricity " << *rep.alpha << " (greedy bound " << *rep.bound << ")\n";
    else
        std::cout << "arboricity not computed (n > 20)\n";
    std::cout << "proper " << (rep.proper ? "yes" : "no") << '\n'
              << "bucket ops " << rep.bucket_ops << '\n';
    if (!out_coloring.empty()) {
        std::ofstream out(out_coloring);
        if (!out) throw arbec::parse_error("cannot open " + out_coloring + " for writing");
        arbec::write_coloring_file(out, rep.coloring);
    }
    const bool within = !rep.bound || rep.m == 0 || rep.max_color <= *rep.bound;
    return rep.proper && within ? 0 : 1;
}

int run_verify(const std::string& trace_path, const std::string& graph_path,
               const std::string& coloring_path) {
    if (!trace_path.empty()) {
        arbec::Trace tr = arbec::load_trace(trace_path);
        arbec::validate_trace(tr);
        std::cout << "trace ok: " << tr.events.size() << " events on " << tr.n << " vertices\n";
        return 0;
    }
    if (graph_path.empty() || coloring_path.empty())
        throw arbec::parse_error("verify needs a trace, or both --graph and --coloring");
    std::ifstream gf(graph_path);
    if (!gf) throw arbec::parse_error("cannot open " + graph_path);
    arbec::DynGraph g = arbec::parse_graph_file(gf);
    std::ifstream cf(coloring_path);
    if (!cf) throw arbec::parse_error("cannot open " + coloring_path);
    auto chi = arbec::parse_coloring_file(cf);

    int rc = 0;
    int max_color = 0;
    for (const auto& [e, c] : chi) {
        max_color = std::max(max_color, c);
        if (!g.has_edge(e)) {
            std::cout << "violation: coloring names absent edge " << e.str() << '\n';
            rc = 1;
        }
    }
    auto color_fn = [&](const arbec::EdgeKey& e) {
        auto it = chi.find(e);
        return it == chi.end() ? 0 : it->second;
    };
    auto bad = arbec::is_proper_coloring(g, color_fn, /*allow_partial=*/false);
    for (const auto& v : bad)
        std::cout << "violation " << arbec::to_string(v.kind) << ": " << v.detail << '\n';
    if (!bad.empty()) rc = 1;
    if (rc == 0)
        std::cout << "coloring ok: total and proper, max color " << max_color << '\n';
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic low-arboricity edge coloring toolkit"};
    app.require_subcommand(1);
    const std::vector<std::string> modes = {"warmup", "full"};

    auto* gen = app.add_subcommand("gen", "generate an update trace");
    std::string g_kind;
    std::size_t g_n = 16, g_events = 0;
    std::uint64_t g_seed = 0;
    std::string g_mode = "full";
    double g_eps = 0.5;
    std::optional<int> g_alpha;
    std::string g_out;
    gen->add_option("--kind", g_kind,
                    "forest-union(k) | star-heavy | erdos-renyi(p) | sliding-window(w) | "
                    "clique-then-drain")
        ->required();
    gen->add_option("--n", g_n, "vertex count")->required();
    gen->add_option("--events", g_events, "trace length")->required();
    gen->add_option("--seed", g_seed, "rng seed");
    gen->add_option("--mode", g_mode)->check(CLI::IsMember(modes));
    gen->add_option("--epsilon", g_eps, "slack parameter in (0,1)");
    gen->add_option("--alpha", g_alpha, "warmup density promise (default: the certificate)");
    gen->add_option("--out", g_out, "output path (stdout when omitted)");

    auto* rp = app.add_subcommand("replay", "replay a trace through the engine, verifying as it goes");
    std::string r_trace;
    std::size_t r_every = 0;
    bool r_exact = false;
    std::string r_csv;
    std::optional<std::string> r_mode;
    std::optional<double> r_eps;
    std::optional<int> r_alpha;
    rp->add_option("trace", r_trace, "trace file")->required();
    rp->add_option("--verify-every", r_every, "check cadence in events (0 = auto)");
    rp->add_flag("--exact-alpha", r_exact, "recompute arboricity per event (n <= 14 only)");
    rp->add_option("--csv", r_csv, "write per-event metrics to this file");
    rp->add_option("--mode", r_mode)->check(CLI::IsMember(modes));
    rp->add_option("--epsilon", r_eps, "override the trace epsilon");
    rp->add_option("--alpha", r_alpha, "override the warmup bound");

    auto* st = app.add_subcommand("static", "peel-and-color a whole graph in one pass");
    std::string s_graph, s_out;
    st->add_option("graph", s_graph, "graph file")->required();
    st->add_option("--out", s_out, "write the coloring to this file");

    auto* vf = app.add_subcommand("verify", "validate a trace file, or a coloring against a graph");
    std::string v_trace, v_graph, v_coloring;
    vf->add_option("trace", v_trace, "trace file to validate");
    vf->add_option("--graph", v_graph, "graph file");
    vf->add_option("--coloring", v_coloring, "coloring file to check against --graph");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return run_gen(g_kind, g_n, g_events, g_seed, g_mode, g_eps, g_alpha, g_out);
        if (rp->parsed())
            return run_replay(r_trace, r_every, r_exact, r_csv, r_mode, r_eps, r_alpha);
        if (st->parsed()) return run_static_cmd(s_graph, s_out);
        if (vf->parsed()) return run_verify(v_trace, v_graph, v_coloring);
    } catch (const arbec::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const arbec::invalid_config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const arbec::internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
