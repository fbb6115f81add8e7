#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <unordered_map>
#include <vector>

#include "arbec/errors.hpp"
#include "arbec/graph.hpp"

namespace arbec {

// one level structure over the graph: every node sits on a level in
// [1, levels], inducing nested sets Z_i = {u : level(u) >= i}. maintained
// conditions, checked against the node's own neighborhood:
//   promote: a node below the top with more than beta*d neighbors at its own
//            level or above cannot stay,
//   demote:  a node above level 1 that would keep fewer than d neighbors at
//            the level below cannot stay.
// anything in between is left alone, so maintained states carry hysteresis
// and are not canonical. an edge's level is the min of its endpoint levels.
struct DecompParams {
    double beta = 1.0; // promote slack; 1 for static peels, larger when maintained
    double d = 1.0;    // density threshold
    int levels = 2;

    double promote_threshold() const { return beta * d; }
};

// levels needed so the top density threshold outgrows any simple graph on n
// nodes: 2 + ceil(log base (1+eps) of n). the loop guards the ceil against
// a misrounded quotient.
inline int level_count_for(std::size_t n, double eps) {
    if (n == 0) throw std::invalid_argument("need at least one vertex");
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("epsilon must be in (0,1)");
    int L = 2;
    if (n > 1) L += static_cast<int>(std::ceil(std::log(static_cast<double>(n)) / std::log(1.0 + eps)));
    while (std::pow(1.0 + eps, L - 2) < static_cast<double>(n)) ++L;
    return L;
}

struct EdgeLevelChange {
    EdgeKey e;
    int old_level = 0;
    int new_level = 0;
    bool is_new = false; // the edge whose insertion triggered this update
};

// net edge-level changes of one update, each edge at most once, in first-touch
// order. entries that ended where they started are dropped; a deleted edge is
// never reported.
using ChangeLog = std::vector<EdgeLevelChange>;

// fires after a node's level and all neighbor count caches moved; colored-set
// mirrors hang off this.
using MoveObserver = std::function<void(Vertex u, int old_level, int new_level)>;

class LayerDecomposition {
  public:
    LayerDecomposition(const DynGraph& g, DecompParams p)
        : LayerDecomposition(g, p, std::vector<int>(g.vertex_count(), 1)) {}

    // adopt externally computed levels (static peels, validity fixtures).
    static LayerDecomposition from_levels(const DynGraph& g, DecompParams p,
                                          const std::vector<int>& levels) {
        if (levels.size() != g.vertex_count())
            throw std::invalid_argument("one level per vertex required");
        for (int l : levels)
            if (l < 1 || l > p.levels) throw std::invalid_argument("level out of range");
        return LayerDecomposition(g, p, levels);
    }

    const DecompParams& params() const { return p_; }

    int node_level(Vertex u) const {
        check_vertex(u);
        return level_[u];
    }

    int max_level() const { return *std::max_element(level_.begin(), level_.end()); }

    int edge_level(const EdgeKey& e) const { return find_edge(e).level; }

    Vertex tail(const EdgeKey& e) const { return find_edge(e).tail; }

    // re-point the stored tail at the currently lower endpoint (ties go to the
    // smaller id). called when an edge is (re)colored; otherwise the stored
    // orientation stays frozen.
    void reorient(const EdgeKey& e) {
        EdgeState& st = find_edge(e);
        st.tail = level_[e.a] <= level_[e.b] ? e.a : e.b;
    }

    // cached count of u's neighbors sitting exactly on lvl.
    int neighbor_level_count(Vertex u, int lvl) const {
        check_vertex(u);
        check_level(lvl);
        return cnt_[u][lvl];
    }

    // u's degree into Z_lvl, from the cache.
    int deg_at_least(Vertex u, int lvl) const {
        check_vertex(u);
        check_level(lvl);
        int s = 0;
        for (int i = lvl; i <= p_.levels; ++i) s += cnt_[u][i];
        return s;
    }

    int up_degree(Vertex u) const { return deg_at_least(u, node_level(u)); }

    std::vector<EdgeKey> up_neighbors(Vertex u) const {
        check_vertex(u);
        std::vector<EdgeKey> out;
        for (Vertex v : g_->neighbors(u))
            if (level_[v] >= level_[u]) out.push_back(EdgeKey(u, v));
        return out;
    }

    std::size_t tracked_edges() const { return estate_.size(); }

    // pre: e was just inserted into the underlying graph.
    ChangeLog on_insert(const EdgeKey& e, const MoveObserver& obs = {}) {
        if (!g_->has_edge(e))
            throw missing_edge_error("insert into the graph before the structure " + e.str());
        if (estate_.count(e)) throw duplicate_edge_error("edge already tracked " + e.str());
        begin_log();
        register_edge(e);
        pending_index_[e] = pending_.size();
        pending_.push_back({e, estate_[e].level, estate_[e].level, true});
        enqueue(e.a);
        enqueue(e.b);
        settle(obs);
        return finish_log();
    }

    // pre: e was just deleted from the underlying graph.
    ChangeLog on_delete(const EdgeKey& e, const MoveObserver& obs = {}) {
        if (g_->has_edge(e))
            throw std::invalid_argument("delete from the graph before the structure " + e.str());
        auto it = estate_.find(e);
        if (it == estate_.end()) throw missing_edge_error("edge not tracked " + e.str());
        begin_log();
        cnt_[e.a][level_[e.b]]--;
        cnt_[e.b][level_[e.a]]--;
        estate_.erase(it);
        enqueue(e.a);
        enqueue(e.b);
        settle(obs);
        return finish_log();
    }

    // fault hooks for the verification oracles. force_level moves a node while
    // keeping every cache consistent (invalid but coherent states);
    // corrupt_count desyncs one cache cell.
    void debug_force_level(Vertex u, int lvl) {
        check_vertex(u);
        check_level(lvl);
        int from = level_[u];
        if (from == lvl) return;
        level_[u] = lvl;
        for (Vertex v : g_->neighbors(u)) {
            cnt_[v][from]--;
            cnt_[v][lvl]++;
            EdgeState& st = estate_.at(EdgeKey(u, v));
            st.level = std::min(level_[u], level_[v]);
        }
    }

    void debug_corrupt_count(Vertex u, int lvl, int delta) {
        check_vertex(u);
        check_level(lvl);
        cnt_[u][lvl] += delta;
    }

  private:
    struct EdgeState {
        int level = 1;
        Vertex tail = 0;
    };

    LayerDecomposition(const DynGraph& g, DecompParams p, std::vector<int> levels)
        : g_(&g), p_(p), level_(std::move(levels)),
          cnt_(g.vertex_count(), std::vector<int>(static_cast<std::size_t>(p.levels) + 1, 0)),
          in_queue_(g.vertex_count(), 0) {
        if (p.beta < 1.0 || p.d <= 0.0 || p.levels < 2)
            throw std::invalid_argument("bad decomposition parameters");
        for (const EdgeKey& e : g.edges()) register_edge(e);
    }

    void check_vertex(Vertex u) const {
        if (u >= level_.size())
            throw std::invalid_argument("vertex " + std::to_string(u) + " out of range");
    }

    void check_level(int lvl) const {
        if (lvl < 1 || lvl > p_.levels)
            throw std::invalid_argument("level " + std::to_string(lvl) + " out of range");
    }

    const EdgeState& find_edge(const EdgeKey& e) const {
        auto it = estate_.find(e);
        if (it == estate_.end()) throw missing_edge_error("edge not tracked " + e.str());
        return it->second;
    }

    EdgeState& find_edge(const EdgeKey& e) {
        auto it = estate_.find(e);
        if (it == estate_.end()) throw missing_edge_error("edge not tracked " + e.str());
        return it->second;
    }

    void register_edge(const EdgeKey& e) {
        int la = level_[e.a], lb = level_[e.b];
        EdgeState st;
        st.level = std::min(la, lb);
        st.tail = la <= lb ? e.a : e.b;
        estate_[e] = st;
        cnt_[e.a][lb]++;
        cnt_[e.b][la]++;
    }

    void enqueue(Vertex u) {
        if (!in_queue_[u]) {
            in_queue_[u] = 1;
            queue_.push_back(u);
        }
    }

    void begin_log() {
        pending_.clear();
        pending_index_.clear();
    }

    ChangeLog finish_log() {
        ChangeLog out;
        for (const EdgeLevelChange& c : pending_)
            if (c.is_new || c.old_level != c.new_level) out.push_back(c);
        begin_log();
        return out;
    }

    void record_change(const EdgeKey& e, int old_level, int new_level) {
        auto it = pending_index_.find(e);
        if (it != pending_index_.end()) {
            pending_[it->second].new_level = new_level;
        } else {
            pending_index_[e] = pending_.size();
            pending_.push_back({e, old_level, new_level, false});
        }
    }

    void move_node(Vertex u, int from, int to, const MoveObserver& obs) {
        level_[u] = to;
        for (Vertex v : g_->neighbors(u)) {
            cnt_[v][from]--;
            cnt_[v][to]++;
            auto it = estate_.find(EdgeKey(u, v));
            int nl = std::min(to, level_[v]);
            if (nl != it->second.level) {
                record_change(it->first, it->second.level, nl);
                it->second.level = nl;
            }
            enqueue(v);
        }
        enqueue(u);
        if (obs) obs(u, from, to);
    }

    // FIFO fixpoint over dirty nodes. each move re-marks the mover and its
    // neighborhood; the budget turns a non-converging loop into a hard error
    // instead of a hang.
    void settle(const MoveObserver& obs) {
        std::size_t moves = 0;
        const std::size_t cap = level_.size() * static_cast<std::size_t>(p_.levels);
        while (!queue_.empty()) {
            Vertex u = queue_.front();
            queue_.pop_front();
            in_queue_[u] = 0;
            int lu = level_[u];
            if (lu < p_.levels && deg_at_least(u, lu) > p_.promote_threshold())
                move_node(u, lu, lu + 1, obs);
            else if (lu > 1 && deg_at_least(u, lu - 1) < p_.d)
                move_node(u, lu, lu - 1, obs);
            else
                continue;
            if (++moves > cap) throw internal_error("level maintenance exceeded its move budget");
        }
    }

    const DynGraph* g_;
    DecompParams p_;
    std::vector<int> level_;
    std::vector<std::vector<int>> cnt_; // cnt_[u][lvl], lvl in [1, levels]
    std::unordered_map<EdgeKey, EdgeState, EdgeKeyHash> estate_;
    std::deque<Vertex> queue_;
    std::vector<char> in_queue_;
    std::vector<EdgeLevelChange> pending_;
    std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> pending_index_;
};

// batch peel with beta = 1: repeatedly drop every node whose degree among the
// survivors is at most d; whoever never drops ends on the top level. produces
// a valid structure without hysteresis.
inline LayerDecomposition static_peel(const DynGraph& g, double d, int levels) {
    const std::size_t n = g.vertex_count();
    std::vector<int> level(n, levels);
    std::vector<char> active(n, 1);
    for (int i = 1; i < levels; ++i) {
        std::vector<Vertex> drop;
        for (Vertex u = 0; u < n; ++u) {
            if (!active[u]) continue;
            int deg = 0;
            for (Vertex v : g.neighbors(u)) deg += active[v];
            if (!(deg > d)) drop.push_back(u);
        }
        if (drop.empty()) break;
        for (Vertex u : drop) {
            active[u] = 0;
            level[u] = i;
        }
    }
    DecompParams p;
    p.beta = 1.0;
    p.d = d;
    p.levels = levels;
    return LayerDecomposition::from_levels(g, p, level);
}

} // namespace arbec
