#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "arbec/errors.hpp"
#include "arbec/graph.hpp"
#include "arbec/prng.hpp"
#include "arbec/trace.hpp"

namespace arbec {

// trace families. every family carries a density certificate valid at every
// step of the trace: forest counts for the structured families, a peel bound
// for the random ones.

struct GenRequest {
    std::string kind; // e.g. "forest-union(2)", "star-heavy", "erdos-renyi(0.1)",
                      // "sliding-window(64)", "clique-then-drain"
    std::size_t n = 0;
    std::size_t events = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::full;
    double epsilon = 0.5;
    std::optional<int> alpha; // warmup promise; defaults to the certificate
};

namespace detail {

struct ParsedKind {
    std::string name;
    std::optional<double> knob;
};

inline ParsedKind parse_kind(const std::string& s) {
    auto open = s.find('(');
    if (open == std::string::npos) return {s, std::nullopt};
    if (s.back() != ')') throw parse_error("bad kind '" + s + "'");
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    try {
        std::size_t used = 0;
        double v = std::stod(inner, &used);
        if (used != inner.size()) throw std::invalid_argument(inner);
        return {s.substr(0, open), v};
    } catch (const std::exception&) {
        throw parse_error("bad kind knob in '" + s + "'");
    }
}

// live edge multiplicity-free pool with O(1) uniform pick.
class EdgePool {
  public:
    bool contains(const EdgeKey& e) const { return idx_.count(e) != 0; }
    std::size_t size() const { return vec_.size(); }
    bool empty() const { return vec_.empty(); }

    void add(const EdgeKey& e) {
        idx_[e] = vec_.size();
        vec_.push_back(e);
    }

    void remove(const EdgeKey& e) {
        auto it = idx_.find(e);
        std::size_t i = it->second;
        idx_.erase(it);
        if (i + 1 != vec_.size()) {
            vec_[i] = vec_.back();
            idx_[vec_[i]] = i;
        }
        vec_.pop_back();
    }

    EdgeKey pick(SplitMix64& rng) const { return vec_[rng.below(vec_.size())]; }

  private:
    std::vector<EdgeKey> vec_;
    std::map<EdgeKey, std::size_t> idx_;
};

// max over the peel of the current min degree; upper bounds the graph's
// density at this instant. lazy bins with stale entries keep it linear, since
// the generators call this after every insertion.
inline int degeneracy(const std::vector<std::set<Vertex>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> deg(n);
    int maxdeg = 0;
    for (Vertex u = 0; u < n; ++u) {
        deg[u] = static_cast<int>(adj[u].size());
        maxdeg = std::max(maxdeg, deg[u]);
    }
    std::vector<std::vector<Vertex>> bin(static_cast<std::size_t>(maxdeg) + 1);
    for (Vertex u = 0; u < n; ++u) bin[static_cast<std::size_t>(deg[u])].push_back(u);
    std::vector<char> gone(n, 0);
    int best = 0, fl = 0;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex u;
        for (;;) {
            while (bin[static_cast<std::size_t>(fl)].empty()) ++fl;
            u = bin[static_cast<std::size_t>(fl)].back();
            bin[static_cast<std::size_t>(fl)].pop_back();
            if (!gone[u] && deg[u] == fl) break; // skip stale entries
        }
        gone[u] = 1;
        best = std::max(best, fl);
        for (Vertex v : adj[u]) {
            if (gone[v]) continue;
            bin[static_cast<std::size_t>(--deg[v])].push_back(v);
        }
        if (fl > 0) --fl;
    }
    return best;
}

// connectivity inside one forest; forests stay tiny so BFS is fine.
inline bool forest_connected(const std::vector<std::set<Vertex>>& adj, Vertex s, Vertex t) {
    if (s == t) return true;
    std::vector<char> seen(adj.size(), 0);
    std::queue<Vertex> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex v : adj[u]) {
            if (v == t) return true;
            if (!seen[v]) {
                seen[v] = 1;
                q.push(v);
            }
        }
    }
    return false;
}

inline Trace finish(const GenRequest& req, std::vector<TraceEvent> events, int cert) {
    Trace t;
    t.n = req.n;
    t.epsilon = req.epsilon;
    t.mode = req.mode;
    t.cert = cert;
    if (req.mode == Mode::warmup)
        t.alpha = req.alpha ? *req.alpha : cert;
    else
        t.alpha = req.alpha;
    t.events = std::move(events);
    return t;
}

// edges spread over k forests: inserts while any forest has room, uniform
// deletes once everything is saturated, so short traces are pure build-up.
inline Trace gen_forest_union(const GenRequest& req, int k) {
    const std::size_t n = req.n;
    SplitMix64 rng(req.seed);
    std::vector<std::vector<std::set<Vertex>>> forest(
        static_cast<std::size_t>(k), std::vector<std::set<Vertex>>(n));
    std::vector<std::size_t> forest_edges(static_cast<std::size_t>(k), 0);
    std::map<EdgeKey, int> owner;
    EdgePool pool;
    std::vector<TraceEvent> events;
    while (events.size() < req.events) {
        bool inserted = false;
        std::uint64_t start = rng.below(static_cast<std::uint64_t>(k));
        for (int t = 0; t < k && !inserted; ++t) {
            int fi = static_cast<int>((start + static_cast<std::uint64_t>(t)) % k);
            if (forest_edges[static_cast<std::size_t>(fi)] + 1 >= n) continue;
            for (int attempt = 0; attempt < 64 && !inserted; ++attempt) {
                Vertex u = static_cast<Vertex>(rng.below(n));
                Vertex v = static_cast<Vertex>(rng.below(n));
                if (u == v) continue;
                EdgeKey e(u, v);
                if (pool.contains(e)) continue;
                if (forest_connected(forest[static_cast<std::size_t>(fi)], u, v)) continue;
                forest[static_cast<std::size_t>(fi)][u].insert(v);
                forest[static_cast<std::size_t>(fi)][v].insert(u);
                forest_edges[static_cast<std::size_t>(fi)]++;
                owner[e] = fi;
                pool.add(e);
                events.push_back({true, e.a, e.b});
                inserted = true;
            }
        }
        if (inserted) continue;
        if (pool.empty()) throw internal_error("forest generator starved");
        EdgeKey e = pool.pick(rng);
        int fi = owner.at(e);
        forest[static_cast<std::size_t>(fi)][e.a].erase(e.b);
        forest[static_cast<std::size_t>(fi)][e.b].erase(e.a);
        forest_edges[static_cast<std::size_t>(fi)]--;
        owner.erase(e);
        pool.remove(e);
        events.push_back({false, e.a, e.b});
    }
    return finish(req, std::move(events), k);
}

// a star around node 0 plus a churning forest on the rest: degree at the
// center climbs toward n-1 while the density never passes 2.
inline Trace gen_star_heavy(const GenRequest& req) {
    const std::size_t n = req.n;
    SplitMix64 rng(req.seed);
    std::vector<char> starred(n, 0);
    std::size_t star_count = 0;
    std::vector<std::set<Vertex>> extra(n);
    EdgePool star_pool, extra_pool;
    std::vector<TraceEvent> events;

    auto insert_star = [&]() {
        std::size_t missing = (n - 1) - star_count;
        std::uint64_t pick = rng.below(missing);
        for (Vertex v = 1; v < n; ++v) {
            if (starred[v]) continue;
            if (pick-- == 0) {
                starred[v] = 1;
                ++star_count;
                star_pool.add(EdgeKey(0, v));
                events.push_back({true, 0, v});
                return;
            }
        }
    };
    auto delete_star = [&]() {
        EdgeKey e = star_pool.pick(rng);
        starred[e.b] = 0;
        --star_count;
        star_pool.remove(e);
        events.push_back({false, e.a, e.b});
    };
    auto try_insert_extra = [&]() {
        if (n < 3) return false;
        for (int attempt = 0; attempt < 64; ++attempt) {
            Vertex u = static_cast<Vertex>(1 + rng.below(n - 1));
            Vertex v = static_cast<Vertex>(1 + rng.below(n - 1));
            if (u == v) continue;
            EdgeKey e(u, v);
            if (extra_pool.contains(e)) continue;
            if (forest_connected(extra, u, v)) continue;
            extra[u].insert(v);
            extra[v].insert(u);
            extra_pool.add(e);
            events.push_back({true, e.a, e.b});
            return true;
        }
        return false;
    };
    auto delete_extra = [&]() {
        EdgeKey e = extra_pool.pick(rng);
        extra[e.a].erase(e.b);
        extra[e.b].erase(e.a);
        extra_pool.remove(e);
        events.push_back({false, e.a, e.b});
    };

    while (events.size() < req.events) {
        if (star_count < n - 1 && rng.chance(3, 5)) {
            insert_star();
        } else if (star_count == n - 1 && star_count > 0 && rng.chance(1, 8)) {
            delete_star();
        } else if (!extra_pool.empty() && rng.chance(1, 4)) {
            delete_extra();
        } else if (try_insert_extra()) {
        } else if (!extra_pool.empty()) {
            delete_extra();
        } else if (star_count < n - 1) {
            insert_star();
        } else if (star_count > 0) {
            delete_star();
        } else {
            throw internal_error("star generator starved");
        }
    }
    return finish(req, std::move(events), 2);
}

// random pairs drifting around a target density p * C(n, 2); the certificate
// is the running max of the peel bound.
inline Trace gen_erdos_renyi(const GenRequest& req, double p) {
    const std::size_t n = req.n;
    SplitMix64 rng(req.seed);
    const std::size_t max_edges = n * (n - 1) / 2;
    const std::size_t target =
        std::min(max_edges, std::max<std::size_t>(1, static_cast<std::size_t>(p * static_cast<double>(max_edges) + 0.5)));
    std::vector<std::set<Vertex>> adj(n);
    EdgePool pool;
    std::vector<TraceEvent> events;
    int cert = 0;
    while (events.size() < req.events) {
        bool want_insert =
            pool.empty() || (pool.size() < target ? rng.chance(5, 6) : rng.chance(1, 3));
        bool inserted = false;
        if (want_insert && pool.size() < max_edges) {
            for (int attempt = 0; attempt < 128 && !inserted; ++attempt) {
                Vertex u = static_cast<Vertex>(rng.below(n));
                Vertex v = static_cast<Vertex>(rng.below(n));
                if (u == v) continue;
                EdgeKey e(u, v);
                if (pool.contains(e)) continue;
                adj[u].insert(v);
                adj[v].insert(u);
                pool.add(e);
                events.push_back({true, e.a, e.b});
                cert = std::max(cert, degeneracy(adj));
                inserted = true;
            }
        }
        if (inserted) continue;
        if (pool.empty()) throw internal_error("pair generator starved");
        EdgeKey e = pool.pick(rng);
        adj[e.a].erase(e.b);
        adj[e.b].erase(e.a);
        pool.remove(e);
        events.push_back({false, e.a, e.b});
    }
    return finish(req, std::move(events), cert);
}

// fresh random edges; once more than w are live, each next step retires the
// oldest one, so the steady state alternates insert and delete.
inline Trace gen_sliding_window(const GenRequest& req, std::size_t w) {
    const std::size_t n = req.n;
    SplitMix64 rng(req.seed);
    std::vector<std::set<Vertex>> adj(n);
    std::set<EdgeKey> live;
    std::deque<EdgeKey> fifo;
    std::vector<TraceEvent> events;
    int cert = 0;
    const std::size_t max_edges = n * (n - 1) / 2;
    while (events.size() < req.events) {
        if (fifo.size() > w || live.size() == max_edges) {
            EdgeKey e = fifo.front();
            fifo.pop_front();
            live.erase(e);
            adj[e.a].erase(e.b);
            adj[e.b].erase(e.a);
            events.push_back({false, e.a, e.b});
            continue;
        }
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 256) throw internal_error("window generator starved");
            Vertex u = static_cast<Vertex>(rng.below(n));
            Vertex v = static_cast<Vertex>(rng.below(n));
            if (u == v) continue;
            EdgeKey e(u, v);
            if (live.count(e)) continue;
            live.insert(e);
            fifo.push_back(e);
            adj[u].insert(v);
            adj[v].insert(u);
            events.push_back({true, e.a, e.b});
            cert = std::max(cert, degeneracy(adj));
            break;
        }
    }
    return finish(req, std::move(events), cert);
}

// build a clique in shuffled order, tear it down in another shuffle, repeat.
// the clique is sized so one build-drain cycle roughly fills the budget.
inline Trace gen_clique_then_drain(const GenRequest& req) {
    const std::size_t n = req.n;
    SplitMix64 rng(req.seed);
    std::size_t q = 2;
    while (q < n && (q + 1) * q / 2 <= std::max<std::size_t>(1, req.events / 2)) ++q;
    std::vector<EdgeKey> deck;
    for (Vertex u = 0; u < q; ++u)
        for (Vertex v = u + 1; v < q; ++v) deck.push_back(EdgeKey(u, v));
    auto shuffle = [&rng](std::vector<EdgeKey>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[rng.below(i)]);
    };
    std::vector<TraceEvent> events;
    std::vector<EdgeKey> order = deck;
    bool building = true;
    std::size_t pos = 0;
    shuffle(order);
    while (events.size() < req.events) {
        if (pos == order.size()) {
            building = !building;
            order = deck;
            shuffle(order);
            pos = 0;
        }
        const EdgeKey& e = order[pos++];
        events.push_back({building, e.a, e.b});
    }
    return finish(req, std::move(events), static_cast<int>((q + 1) / 2));
}

} // namespace detail

inline Trace gen_trace(const GenRequest& req) {
    if (req.n < 2) throw std::invalid_argument("traces need at least two vertices");
    if (req.epsilon <= 0.0 || req.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must be in (0,1)");
    detail::ParsedKind kind = detail::parse_kind(req.kind);
    if (kind.name == "forest-union") {
        int k = static_cast<int>(kind.knob.value_or(1));
        if (k < 1) throw std::invalid_argument("forest count must be positive");
        return detail::gen_forest_union(req, k);
    }
    if (kind.name == "star-heavy") return detail::gen_star_heavy(req);
    if (kind.name == "erdos-renyi") {
        double p = kind.knob.value_or(0.1);
        if (p <= 0.0 || p > 1.0) throw std::invalid_argument("edge probability must be in (0,1]");
        return detail::gen_erdos_renyi(req, p);
    }
    if (kind.name == "sliding-window") {
        std::size_t w = static_cast<std::size_t>(kind.knob.value_or(static_cast<double>(2 * req.n)));
        if (w < 1) throw std::invalid_argument("window must be positive");
        return detail::gen_sliding_window(req, w);
    }
    if (kind.name == "clique-then-drain") return detail::gen_clique_then_drain(req);
    throw std::invalid_argument("unknown trace kind '" + req.kind + "'");
}

} // namespace arbec
