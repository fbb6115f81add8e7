#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arbec/color_state.hpp"
#include "arbec/decomposition.hpp"
#include "arbec/decomposition_system.hpp"
#include "arbec/errors.hpp"
#include "arbec/graph.hpp"
#include "arbec/oracles.hpp"
#include "arbec/order_stat_set.hpp"

namespace arbec {

// warmup: one layer, built from a promised density bound, recoloring only on
// insertions. full: an adaptive layer bank, recoloring on both update kinds
// and keeping every color under its head-degree headroom so the palette
// tracks the current graph instead of its history.
enum class Mode { warmup, full };

struct EngineConfig {
    Mode mode = Mode::full;
    double epsilon = 0.5;
    int alpha_bound = 0; // promised density bound, warmup only
    std::size_t n = 0;
};

struct UpdateStats {
    int recolored = 0;      // color assignments made by the cascade
    int uncolored = 0;      // size of the repair set handed to the cascade
    int levels_changed = 0; // merged change log entries besides the new edge
    int cascade_steps = 0;
};

class Engine {
  public:
    explicit Engine(const EngineConfig& cfg)
        : cfg_(validated(cfg)), g_(cfg_.n),
          sys_(cfg_.mode == Mode::warmup
                   ? DecompositionSystem::fixed_alpha(g_, cfg_.epsilon, cfg_.alpha_bound)
                   : DecompositionSystem::adaptive(g_, cfg_.epsilon)),
          cs_(cfg_.n, sys_.layer_count()) {}

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const EngineConfig& config() const { return cfg_; }
    const DynGraph& graph() const { return g_; }
    const DecompositionSystem& system() const { return sys_; }
    const ColorState& colors() const { return cs_; }

    UpdateStats insert(const EdgeKey& e) {
        UpdateStats st;
        g_.insert_edge(e);
        ChangeLog log = sys_.update(DecompositionSystem::Op::insert, e, observer());
        std::vector<EdgeKey> repair;
        if (cfg_.mode == Mode::full) {
            repair.reserve(log.size());
            for (const EdgeLevelChange& c : log) {
                repair.push_back(c.e);
                if (!c.is_new) ++st.levels_changed;
            }
            for (const EdgeKey& f : repair)
                if (cs_.color_of(f) != 0) clear_color(f);
        } else {
            // level churn does not touch warmup colors; only the new edge needs one.
            for (const EdgeLevelChange& c : log)
                if (!c.is_new) ++st.levels_changed;
            repair.push_back(e);
        }
        st.uncolored = static_cast<int>(repair.size());
        extend_coloring(std::move(repair), st);
        return st;
    }

    UpdateStats erase(const EdgeKey& e) {
        if (!g_.has_edge(e)) throw missing_edge_error("edge not present " + e.str());
        UpdateStats st;
        if (cs_.color_of(e) != 0) clear_color(e);
        g_.delete_edge(e);
        std::vector<EdgeKey> repair;
        std::set<EdgeKey> seen;
        if (cfg_.mode == Mode::full) {
            // violating edges are found against post-deletion degrees but
            // pre-update layers, before any level moves.
            for (Vertex w : {e.a, e.b})
                for (const EdgeKey& f : collect_bad_edges(w))
                    if (seen.insert(f).second) repair.push_back(f);
        }
        ChangeLog log = sys_.update(DecompositionSystem::Op::erase, e, observer());
        for (const EdgeLevelChange& c : log) {
            ++st.levels_changed;
            if (cfg_.mode == Mode::full && seen.insert(c.e).second) repair.push_back(c.e);
        }
        if (cfg_.mode == Mode::full) {
            for (const EdgeKey& f : repair)
                if (cs_.color_of(f) != 0) clear_color(f);
            st.uncolored = static_cast<int>(repair.size());
            extend_coloring(std::move(repair), st);
        }
        return st;
    }

    int color_of(const EdgeKey& e) const {
        if (!g_.has_edge(e)) throw missing_edge_error("edge not present " + e.str());
        return cs_.color_of(e);
    }

    // max over the current coloring, not the engine's history.
    int max_color_used() const { return cs_.max_color(); }
    int max_color_ever() const { return max_color_ever_; }

    std::uint64_t lifetime_recolor_events() const { return lifetime_recolor_events_; }
    std::uint64_t lifetime_uncolor_events() const { return lifetime_uncolor_events_; }

    // cascade steps whose evicted edge failed to rank strictly below the
    // evictor; stays zero unless an invariant broke.
    std::uint64_t potential_violations() const { return potential_violations_; }

    // eviction rank of an edge: its level in the single warmup layer, or
    // levels * (layer - 1) + level-in-layer in full mode. bounded by levels^2.
    int potential_of(const EdgeKey& f) const {
        if (cfg_.mode == Mode::warmup) return sys_.layer(1).edge_level(f);
        int j = sys_.edge_layer(f);
        return sys_.level_count() * (j - 1) + sys_.layer(j).edge_level(f);
    }

    // colored edges headed at w whose color exceeds w's current degree plus
    // their layer's headroom. per layer, a violating color can only be the one
    // integer just above the bound, so a handful of set probes per layer
    // suffice; the float guard probes the two neighbors of the rounded bound.
    std::vector<EdgeKey> collect_bad_edges(Vertex w) const {
        std::vector<EdgeKey> out;
        if (cfg_.mode != Mode::full) return out;
        std::set<EdgeKey> seen;
        const double deg = static_cast<double>(g_.degree(w));
        for (int j = 1; j <= sys_.layer_count(); ++j) {
            long long c0 = static_cast<long long>(std::floor(deg + sys_.color_slack(j)));
            for (long long c = c0; c <= c0 + 2; ++c) {
                if (c < 1) continue;
                int ci = static_cast<int>(c);
                if (!cs_.colors_at[w].contains(ci)) continue;
                EdgeKey f = cs_.colors_at[w].payload_of(ci);
                int jf = sys_.edge_layer(f);
                if (jf != j) continue;
                if (sys_.layer(jf).tail(f) != f.other(w)) continue;
                if (static_cast<double>(ci) > deg + sys_.color_slack(jf) && seen.insert(f).second)
                    out.push_back(f);
            }
        }
        if (static_cast<int>(out.size()) > sys_.layer_count())
            throw internal_error("more violating edges than layers at node " + std::to_string(w));
        return out;
    }

    std::vector<std::pair<EdgeKey, int>> colored_edges() const { return sorted_coloring(cs_); }

    // fault hooks for the verification tests. set/clear keep mirrors
    // consistent; poke_chi desyncs them on purpose.
    void debug_set_color(const EdgeKey& e, int c) {
        if (!g_.has_edge(e)) throw missing_edge_error("edge not present " + e.str());
        if (cs_.color_of(e) != 0) clear_color(e);
        set_color(e, c);
    }

    void debug_clear_color(const EdgeKey& e) {
        if (cs_.color_of(e) != 0) clear_color(e);
    }

    void debug_poke_chi(const EdgeKey& e, int c) { cs_.chi[e] = c; }

  private:
    static EngineConfig validated(EngineConfig c) {
        if (c.n == 0) throw invalid_config_error("engine needs at least one vertex");
        if (c.epsilon <= 0.0 || c.epsilon >= 1.0)
            throw invalid_config_error("epsilon must be in (0,1)");
        if (c.mode == Mode::warmup && c.alpha_bound < 1)
            throw invalid_config_error("warmup mode needs a positive density bound");
        if (c.mode == Mode::full) c.alpha_bound = 0;
        return c;
    }

    DecompositionSystem::LayerMoveObserver observer() {
        return [this](int j, Vertex u, int o, int n) { on_node_move(j, u, o, n); };
    }

    // a move in layer j can flip up-set membership for the mover and for any
    // neighbor whose relative order against it changed; marking the whole
    // neighborhood stale is cheaper than deciding which.
    void on_node_move(int j, Vertex u, int, int) {
        cs_.mark_up_stale(u, j);
        for (Vertex v : g_.neighbors(u)) cs_.mark_up_stale(v, j);
    }

    // serve the up-color set of u in layer j, rebuilding it from the live
    // coloring and levels when something moved since the last read.
    const ColorSet& up_colors_fresh(Vertex u, int j) {
        char& stale = cs_.up_stale[u][static_cast<std::size_t>(j - 1)];
        ColorSet& up = cs_.up_colors[u][static_cast<std::size_t>(j - 1)];
        if (stale) {
            up.clear();
            const LayerDecomposition& lay = sys_.layer(j);
            const int lu = lay.node_level(u);
            for (Vertex v : g_.neighbors(u)) {
                int c = cs_.color_of(EdgeKey(u, v));
                if (c != 0 && lay.node_level(v) >= lu) up.insert(c);
            }
            stale = 0;
        }
        return up;
    }

    void set_color(const EdgeKey& e, int c) {
        cs_.chi[e] = c;
        cs_.colors_at[e.a].insert(c, e);
        cs_.colors_at[e.b].insert(c, e);
        cs_.mark_up_stale(e.a);
        cs_.mark_up_stale(e.b);
        cs_.in_use.insert(c);
        max_color_ever_ = std::max(max_color_ever_, c);
        ++lifetime_recolor_events_;
    }

    void clear_color(const EdgeKey& e) {
        auto it = cs_.chi.find(e);
        if (it == cs_.chi.end()) throw internal_error("clearing uncolored edge " + e.str());
        int c = it->second;
        cs_.chi.erase(it);
        cs_.colors_at[e.a].erase(c);
        cs_.colors_at[e.b].erase(c);
        cs_.mark_up_stale(e.a);
        cs_.mark_up_stale(e.b);
        cs_.in_use.erase(cs_.in_use.find(c));
        ++lifetime_uncolor_events_;
    }

    // LIFO repair. each popped edge is oriented fresh in its own layer, takes
    // the first color free among its tail's up-colors and its head's colors,
    // and may evict the one strictly lower-ranked edge holding that color at
    // the tail. the budget converts a broken rank order into a hard error.
    void extend_coloring(std::vector<EdgeKey> stack, UpdateStats& st) {
        if (stack.empty()) return;
        const long long L = sys_.level_count();
        const long long size0 = static_cast<long long>(stack.size());
        const long long cap =
            cfg_.mode == Mode::full ? L * L * size0 + size0 : L * size0;
        while (!stack.empty()) {
            if (++st.cascade_steps > cap)
                throw internal_error("recoloring cascade exceeded its budget");
            EdgeKey f = stack.back();
            stack.pop_back();
            int j = cfg_.mode == Mode::full ? sys_.edge_layer(f) : 1;
            LayerDecomposition& lay = sys_.layer(j);
            lay.reorient(f);
            Vertex u = lay.tail(f);
            Vertex v = f.other(u);
            int rank_f = potential_of(f);
            int c = new_element(up_colors_fresh(u, j), cs_.colors_at[v]);
            if (cs_.colors_at[u].contains(c)) {
                EdgeKey bumped = cs_.colors_at[u].payload_of(c);
                if (potential_of(bumped) >= rank_f) ++potential_violations_;
                clear_color(bumped);
                stack.push_back(bumped);
            }
            set_color(f, c);
            ++st.recolored;
        }
    }

    EngineConfig cfg_;
    DynGraph g_;
    DecompositionSystem sys_;
    ColorState cs_;
    int max_color_ever_ = 0;
    std::uint64_t lifetime_recolor_events_ = 0;
    std::uint64_t lifetime_uncolor_events_ = 0;
    std::uint64_t potential_violations_ = 0;
};

// extend a proper coloring of g minus e to all of g with at most
// level_count_for(n, eps) changes, against a fresh static peel at threshold
// 2 * (1+eps) * density. the input palette may not exceed
// max_degree + 2 * (1+eps) * density, and neither will the output's.
inline int structural_extend(const DynGraph& g, std::map<EdgeKey, int>& chi, const EdgeKey& e,
                             double eps) {
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("epsilon must be in (0,1)");
    if (!g.has_edge(e)) throw std::invalid_argument("edge " + e.str() + " not in the graph");
    if (auto it = chi.find(e); it != chi.end() && it->second != 0)
        throw std::invalid_argument("edge " + e.str() + " already colored");
    for (const EdgeKey& f : g.edges()) {
        if (f == e) continue;
        auto it = chi.find(f);
        if (it == chi.end() || it->second < 1)
            throw std::invalid_argument("edge " + f.str() + " must arrive colored");
    }
    auto color_fn = [&chi](const EdgeKey& f) {
        auto it = chi.find(f);
        return it == chi.end() ? 0 : it->second;
    };
    if (!is_proper_coloring(g, color_fn, true).empty())
        throw std::invalid_argument("input coloring is not proper");

    const int alpha = exact_arboricity(g);
    const double d = 2.0 * (1.0 + eps) * std::max(alpha, 1);
    const double palette_bound = static_cast<double>(g.max_degree()) + d;
    for (const EdgeKey& f : g.edges())
        if (f != e && static_cast<double>(chi.at(f)) > palette_bound)
            throw std::invalid_argument("input palette exceeds " + std::to_string(palette_bound));

    const int L = level_count_for(g.vertex_count(), eps);
    LayerDecomposition dec = static_peel(g, d, L);

    const std::size_t n = g.vertex_count();
    std::vector<ColorSet> at(n), up(n);
    for (const EdgeKey& f : g.edges()) {
        int c = color_fn(f);
        if (c == 0) continue;
        at[f.a].insert(c, f);
        at[f.b].insert(c, f);
        if (dec.node_level(f.b) >= dec.node_level(f.a)) up[f.a].insert(c);
        if (dec.node_level(f.a) >= dec.node_level(f.b)) up[f.b].insert(c);
    }

    auto assign = [&](const EdgeKey& f, int c) {
        chi[f] = c;
        at[f.a].insert(c, f);
        at[f.b].insert(c, f);
        if (dec.node_level(f.b) >= dec.node_level(f.a)) up[f.a].insert(c);
        if (dec.node_level(f.a) >= dec.node_level(f.b)) up[f.b].insert(c);
    };
    auto unassign = [&](const EdgeKey& f) {
        int c = chi.at(f);
        chi.erase(f);
        at[f.a].erase(c);
        at[f.b].erase(c);
        if (dec.node_level(f.b) >= dec.node_level(f.a)) up[f.a].erase(c);
        if (dec.node_level(f.a) >= dec.node_level(f.b)) up[f.b].erase(c);
    };

    int recolored = 0;
    std::vector<EdgeKey> stack{e};
    while (!stack.empty()) {
        if (recolored >= L) throw internal_error("static extension cascade exceeded its budget");
        EdgeKey f = stack.back();
        stack.pop_back();
        dec.reorient(f);
        Vertex u = dec.tail(f);
        Vertex v = f.other(u);
        int c = new_element(up[u], at[v]);
        if (at[u].contains(c)) {
            EdgeKey bumped = at[u].payload_of(c);
            unassign(bumped);
            stack.push_back(bumped);
        }
        assign(f, c);
        ++recolored;
    }
    return recolored;
}

} // namespace arbec
