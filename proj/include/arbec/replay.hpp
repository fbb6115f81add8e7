#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "arbec/engine.hpp"
#include "arbec/errors.hpp"
#include "arbec/oracles.hpp"
#include "arbec/static_greedy.hpp"
#include "arbec/trace.hpp"

namespace arbec {

// One row per replayed event. wall_nanos times the engine update alone; the
// verification pass and any hook run off the clock.
struct MetricsRow {
    std::size_t step = 0; // 1-based position in the trace
    char op = 'I';
    int recolored = 0;
    int uncolored = 0;
    int levels_changed = 0;
    int max_color = 0;
    int delta_t = 0;    // max degree after this event
    int alpha_cert = 0; // density certificate in effect, 0 when unknown
    std::uint64_t wall_nanos = 0;
};

inline constexpr const char* metrics_csv_header =
    "step,op,recolored,uncolored,levels_changed,max_color,delta_t,alpha_cert,wall_nanos";

inline void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << metrics_csv_header << '\n';
    for (const auto& r : rows) {
        out << r.step << ',' << r.op << ',' << r.recolored << ',' << r.uncolored << ','
            << r.levels_changed << ',' << r.max_color << ',' << r.delta_t << ','
            << r.alpha_cert << ',' << r.wall_nanos << '\n';
    }
}

struct ReplayOptions {
    // how often to run the full state verification; 0 picks a default of
    // every step for n <= 64 and every 32 steps otherwise
    std::size_t verify_every = 0;
    // recompute the arboricity oracle per row instead of trusting the trace
    // certificate; only honoured for n <= 14 where the oracle is affordable
    bool exact_alpha = false;
    std::optional<Mode> mode;      // override the trace header
    std::optional<double> epsilon; // override the trace header
    std::optional<int> alpha;      // override the trace header (warmup bound)
    // runs after every event, before the verification pass
    std::function<void(Engine&, std::size_t)> post_update_hook;
};

struct ReplayResult {
    std::vector<MetricsRow> rows;
    std::vector<Violation> violations;
    std::size_t violation_step = 0; // step of the first failed check, 0 when clean
    bool ok = true;
};

// Cross-checks every maintained structure against scratch recomputation:
// totality and properness, all layer decompositions, the color mirrors, and
// in full mode the per-edge color bound. Warmup never repairs after deletes,
// so its colors may legitimately sit above a shrunken head degree; only the
// run-wide palette bound applies there, and replay() checks that separately.
inline std::vector<Violation> verify_engine_state(const Engine& eng) {
    std::vector<Violation> out;
    const DynGraph& g = eng.graph();
    const DecompositionSystem& sys = eng.system();
    auto color_fn = [&](const EdgeKey& e) { return eng.colors().color_of(e); };
    auto prop = is_proper_coloring(g, color_fn, /*allow_partial=*/false);
    out.insert(out.end(), prop.begin(), prop.end());
    for (int j = 1; j <= sys.layer_count(); ++j) {
        auto dec = verify_decomposition(g, sys.layer(j));
        out.insert(out.end(), dec.begin(), dec.end());
    }
    auto mirrors = verify_color_mirrors(g, sys, eng.colors());
    out.insert(out.end(), mirrors.begin(), mirrors.end());
    if (eng.config().mode == Mode::full) {
        auto good = verify_good_coloring(g, sys, eng.colors());
        out.insert(out.end(), good.begin(), good.end());
    }
    return out;
}

// Feeds a trace through a fresh engine, capturing one metrics row per event
// and stopping at the first verification failure. Full mode checks the
// palette against the instantaneous max degree plus 2*beta*(1+eps)^2 times
// the density certificate; warmup mode checks the running max color against
// the running max degree plus 2*beta*(1+eps) times the configured bound.
inline ReplayResult replay(const Trace& tr, const ReplayOptions& opts = {}) {
    const Mode mode = opts.mode.value_or(tr.mode);
    const double eps = opts.epsilon.value_or(tr.epsilon);
    const std::optional<int> alpha = opts.alpha ? opts.alpha : tr.alpha;
    if (mode == Mode::warmup && !alpha)
        throw invalid_config_error("warmup replay needs an alpha bound in the trace header or options");

    EngineConfig cfg;
    cfg.mode = mode;
    cfg.epsilon = eps;
    cfg.alpha_bound = mode == Mode::warmup ? *alpha : 0;
    cfg.n = tr.n;
    Engine eng(cfg);

    std::size_t every = opts.verify_every;
    if (every == 0) every = tr.n <= 64 ? 1 : 32;
    const bool exact = opts.exact_alpha && tr.n <= 14;

    ReplayResult res;
    res.rows.reserve(tr.events.size());
    const double beta = eng.system().beta();
    int run_delta = 0;
    int run_max_color = 0;

    for (std::size_t i = 0; i < tr.events.size(); ++i) {
        const TraceEvent& ev = tr.events[i];
        const EdgeKey e(ev.u, ev.v);
        const auto t0 = std::chrono::steady_clock::now();
        const UpdateStats st = ev.is_insert ? eng.insert(e) : eng.erase(e);
        const auto t1 = std::chrono::steady_clock::now();

        MetricsRow row;
        row.step = i + 1;
        row.op = ev.is_insert ? 'I' : 'D';
        row.recolored = st.recolored;
        row.uncolored = st.uncolored;
        row.levels_changed = st.levels_changed;
        row.max_color = eng.max_color_used();
        row.delta_t = eng.graph().max_degree();
        row.alpha_cert = exact ? exact_arboricity(eng.graph()) : tr.cert.value_or(0);
        row.wall_nanos = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        res.rows.push_back(row);

        run_delta = std::max(run_delta, row.delta_t);
        run_max_color = std::max(run_max_color, row.max_color);
        if (opts.post_update_hook) opts.post_update_hook(eng, row.step);

        const bool last = i + 1 == tr.events.size();
        if (row.step % every != 0 && !last) continue;

        std::vector<Violation> bad = verify_engine_state(eng);
        if (mode == Mode::full) {
            if (row.alpha_cert > 0) {
                const double bound =
                    row.delta_t + 2.0 * beta * (1.0 + eps) * (1.0 + eps) * row.alpha_cert;
                if (static_cast<double>(row.max_color) > bound)
                    bad.push_back({ViolationKind::palette_exceeded,
                                   "max color " + std::to_string(row.max_color) + " exceeds " +
                                       std::to_string(bound) + " at step " +
                                       std::to_string(row.step)});
            }
        } else {
            const double bound = run_delta + 2.0 * beta * (1.0 + eps) * static_cast<double>(*alpha);
            if (static_cast<double>(run_max_color) > bound)
                bad.push_back({ViolationKind::palette_exceeded,
                               "running max color " + std::to_string(run_max_color) + " exceeds " +
                                   std::to_string(bound) + " at step " + std::to_string(row.step)});
        }
        if (!bad.empty()) {
            res.violations = std::move(bad);
            res.violation_step = row.step;
            res.ok = false;
            break;
        }
    }
    return res;
}

struct Summary {
    std::size_t steps = 0;
    std::size_t inserts = 0;
    std::size_t deletes = 0;
    long long total_recolored = 0;
    long long total_uncolored = 0;
    long long total_levels_changed = 0;
    double avg_recolored = 0.0;
    int peak_max_color = 0;
    std::uint64_t total_wall_nanos = 0;
};

inline Summary summarize(const std::vector<MetricsRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("summarize: no rows");
    Summary s;
    s.steps = rows.size();
    for (const auto& r : rows) {
        if (r.op == 'I') ++s.inserts;
        else ++s.deletes;
        s.total_recolored += r.recolored;
        s.total_uncolored += r.uncolored;
        s.total_levels_changed += r.levels_changed;
        s.peak_max_color = std::max(s.peak_max_color, r.max_color);
        s.total_wall_nanos += r.wall_nanos;
    }
    s.avg_recolored = static_cast<double>(s.total_recolored) / static_cast<double>(s.steps);
    return s;
}

// Result of the one-shot static pass: the peel-and-color run plus everything
// needed to judge it. alpha and bound are filled only when the instance is
// small enough for the exact oracle.
struct StaticReport {
    std::size_t n = 0;
    std::size_t m = 0;
    int max_color = 0;
    int delta = 0;
    std::optional<int> alpha;
    std::optional<int> bound; // delta + 2*alpha - 1 when alpha is known
    bool proper = false;
    std::uint64_t bucket_ops = 0;
    std::map<EdgeKey, int> coloring;
};

inline StaticReport run_static(const DynGraph& g) {
    StaticReport rep;
    rep.n = g.vertex_count();
    rep.m = g.edge_count();
    rep.delta = g.max_degree();
    PeelOrder po = peel_order(g);
    rep.bucket_ops = po.bucket_ops;
    rep.coloring = color_peeled(po);
    for (const auto& [e, c] : rep.coloring) rep.max_color = std::max(rep.max_color, c);
    auto color_fn = [&](const EdgeKey& e) {
        auto it = rep.coloring.find(e);
        return it == rep.coloring.end() ? 0 : it->second;
    };
    rep.proper = is_proper_coloring(g, color_fn, /*allow_partial=*/false).empty();
    if (rep.n <= 20) {
        rep.alpha = exact_arboricity(g);
        rep.bound = rep.m == 0 ? 0 : rep.delta + 2 * *rep.alpha - 1;
    }
    return rep;
}

} // namespace arbec
