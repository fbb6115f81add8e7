#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arbec/color_state.hpp"
#include "arbec/decomposition.hpp"
#include "arbec/decomposition_system.hpp"
#include "arbec/errors.hpp"
#include "arbec/graph.hpp"

namespace arbec {

// slow, independent checkers. they recompute everything from first principles
// and never mutate their inputs; the fast structures are tested against them.

enum class ViolationKind {
    improper_pair,    // two edges sharing an endpoint carry the same color
    uncolored_edge,   // totality failure
    palette_exceeded, // a color above the promised bound is in use
    decomp_promote,   // a node stayed although its up-degree forces it higher
    decomp_demote,    // a node stayed although the level below cannot hold it
    level_mismatch,   // cached level data disagrees with a recount
    mirror_mismatch,  // coloring mirrors disagree with chi
    good_coloring     // an edge's color exceeds its head's degree headroom
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::improper_pair: return "improper-pair";
        case ViolationKind::uncolored_edge: return "uncolored-edge";
        case ViolationKind::palette_exceeded: return "palette-exceeded";
        case ViolationKind::decomp_promote: return "decomp-promote";
        case ViolationKind::decomp_demote: return "decomp-demote";
        case ViolationKind::level_mismatch: return "level-mismatch";
        case ViolationKind::mirror_mismatch: return "mirror-mismatch";
        case ViolationKind::good_coloring: return "good-coloring";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::string detail;
};

// exact density by subset enumeration: the max over vertex sets S, |S| >= 2,
// of ceil(edges inside S / (|S| - 1)). exponential, so hard-capped.
inline int exact_arboricity(const DynGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 20) throw unsupported_error("exact density oracle capped at 20 vertices");
    std::vector<EdgeKey> edges = g.edges();
    if (edges.empty()) return 0;
    int best = 0;
    const std::uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int k = std::popcount(mask);
        if (k < 2) continue;
        int inside = 0;
        for (const EdgeKey& e : edges)
            inside += ((mask >> e.a) & 1u) && ((mask >> e.b) & 1u);
        if (inside == 0) continue;
        best = std::max(best, (inside + k - 2) / (k - 1));
    }
    return best;
}

// properness and, unless allow_partial, totality. chi maps an edge to its
// color, 0 meaning uncolored.
template <class ColorFn>
std::vector<Violation> is_proper_coloring(const DynGraph& g, ColorFn&& chi, bool allow_partial) {
    std::vector<Violation> out;
    std::vector<EdgeKey> edges = g.edges();
    std::vector<std::map<int, EdgeKey>> at(g.vertex_count());
    for (const EdgeKey& e : edges) {
        int c = chi(e);
        if (c == 0) {
            if (!allow_partial)
                out.push_back({ViolationKind::uncolored_edge, "edge " + e.str() + " has no color"});
            continue;
        }
        if (c < 0) {
            out.push_back({ViolationKind::improper_pair, "edge " + e.str() + " has negative color"});
            continue;
        }
        for (Vertex u : {e.a, e.b}) {
            auto [it, fresh] = at[u].emplace(c, e);
            if (!fresh)
                out.push_back({ViolationKind::improper_pair,
                               "color " + std::to_string(c) + " on " + it->second.str() + " and " +
                                   e.str() + " at node " + std::to_string(u)});
        }
    }
    return out;
}

// recount levels and degrees from the graph alone, then check the cached
// counts and both stay conditions for every node, and the min rule for every
// edge.
inline std::vector<Violation> verify_decomposition(const DynGraph& g,
                                                   const LayerDecomposition& dec) {
    std::vector<Violation> out;
    const std::size_t n = g.vertex_count();
    const DecompParams& p = dec.params();
    std::vector<std::vector<int>> cnt(n, std::vector<int>(static_cast<std::size_t>(p.levels) + 1, 0));
    for (Vertex u = 0; u < n; ++u) {
        int lu = dec.node_level(u);
        if (lu < 1 || lu > p.levels) {
            out.push_back({ViolationKind::level_mismatch,
                           "node " + std::to_string(u) + " level " + std::to_string(lu) +
                               " out of range"});
            return out;
        }
        for (Vertex v : g.neighbors(u)) cnt[u][dec.node_level(v)]++;
    }
    auto deg_at_least = [&](Vertex u, int lvl) {
        int s = 0;
        for (int i = lvl; i <= p.levels; ++i) s += cnt[u][i];
        return s;
    };
    for (Vertex u = 0; u < n; ++u) {
        for (int lvl = 1; lvl <= p.levels; ++lvl)
            if (cnt[u][lvl] != dec.neighbor_level_count(u, lvl))
                out.push_back({ViolationKind::level_mismatch,
                               "node " + std::to_string(u) + " cached count at level " +
                                   std::to_string(lvl) + " is " +
                                   std::to_string(dec.neighbor_level_count(u, lvl)) +
                                   ", recount " + std::to_string(cnt[u][lvl])});
        int lu = dec.node_level(u);
        if (lu < p.levels && static_cast<double>(deg_at_least(u, lu)) > p.promote_threshold())
            out.push_back({ViolationKind::decomp_promote,
                           "node " + std::to_string(u) + " at level " + std::to_string(lu) +
                               " has up-degree " + std::to_string(deg_at_least(u, lu))});
        if (lu > 1 && static_cast<double>(deg_at_least(u, lu - 1)) < p.d)
            out.push_back({ViolationKind::decomp_demote,
                           "node " + std::to_string(u) + " at level " + std::to_string(lu) +
                               " would keep only " + std::to_string(deg_at_least(u, lu - 1)) +
                               " below"});
    }
    for (const EdgeKey& e : g.edges()) {
        int want = std::min(dec.node_level(e.a), dec.node_level(e.b));
        if (dec.edge_level(e) != want)
            out.push_back({ViolationKind::level_mismatch,
                           "edge " + e.str() + " level " + std::to_string(dec.edge_level(e)) +
                               ", endpoints give " + std::to_string(want)});
    }
    return out;
}

// colored edges in canonical order, for deterministic reports.
inline std::vector<std::pair<EdgeKey, int>> sorted_coloring(const ColorState& cs) {
    std::vector<std::pair<EdgeKey, int>> out(cs.chi.begin(), cs.chi.end());
    std::sort(out.begin(), out.end());
    return out;
}

// every colored edge must fit under its stored head's current degree plus the
// headroom of its current layer.
inline std::vector<Violation> verify_good_coloring(const DynGraph& g,
                                                   const DecompositionSystem& sys,
                                                   const ColorState& cs) {
    std::vector<Violation> out;
    for (const auto& [e, c] : sorted_coloring(cs)) {
        int j = sys.edge_layer(e);
        Vertex head = e.other(sys.layer(j).tail(e));
        double bound = static_cast<double>(g.degree(head)) + sys.color_slack(j);
        if (static_cast<double>(c) > bound)
            out.push_back({ViolationKind::good_coloring,
                           "edge " + e.str() + " color " + std::to_string(c) + " exceeds " +
                               std::to_string(bound) + " at head " + std::to_string(head)});
    }
    return out;
}

// full-scan agreement between chi and its mirrors: payload-backed colors at
// both endpoints, level-correct up-color sets, and the in-use multiset.
inline std::vector<Violation> verify_color_mirrors(const DynGraph& g,
                                                   const DecompositionSystem& sys,
                                                   const ColorState& cs) {
    std::vector<Violation> out;
    auto colored = sorted_coloring(cs);
    std::size_t at_total = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        at_total += static_cast<std::size_t>(cs.colors_at[u].size());
    if (at_total != 2 * colored.size())
        out.push_back({ViolationKind::mirror_mismatch,
                       "per-node color sets hold " + std::to_string(at_total) +
                           " entries, expected " + std::to_string(2 * colored.size())});
    if (cs.in_use.size() != colored.size() ||
        (!colored.empty() && cs.max_color() !=
                                 std::max_element(colored.begin(), colored.end(),
                                                  [](auto& x, auto& y) { return x.second < y.second; })
                                     ->second))
        out.push_back({ViolationKind::mirror_mismatch, "in-use color multiset out of sync"});
    for (const auto& [e, c] : colored) {
        if (!g.has_edge(e)) {
            out.push_back({ViolationKind::mirror_mismatch, "colored edge " + e.str() + " not in graph"});
            continue;
        }
        for (Vertex u : {e.a, e.b}) {
            if (!cs.colors_at[u].contains(c) || !(cs.colors_at[u].payload_of(c) == e))
                out.push_back({ViolationKind::mirror_mismatch,
                               "edge " + e.str() + " color " + std::to_string(c) +
                                   " not mirrored at node " + std::to_string(u)});
        }
    }
    // up-color caches are rebuilt on demand; a stale entry makes no claim yet,
    // but a clean one must equal the set recomputed from colors and levels.
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (int j = 1; j <= sys.layer_count(); ++j) {
            if (cs.up_stale[u][static_cast<std::size_t>(j - 1)]) continue;
            const LayerDecomposition& lay = sys.layer(j);
            int expected = 0;
            for (Vertex v : g.neighbors(u)) {
                int c = cs.color_of(EdgeKey(u, v));
                if (c == 0 || lay.node_level(v) < lay.node_level(u)) continue;
                ++expected;
                if (!cs.up_colors[u][static_cast<std::size_t>(j - 1)].contains(c))
                    out.push_back({ViolationKind::mirror_mismatch,
                                   "up-color " + std::to_string(c) + " of " +
                                       EdgeKey(u, v).str() + " missing at node " +
                                       std::to_string(u) + " layer " + std::to_string(j)});
            }
            if (cs.up_colors[u][static_cast<std::size_t>(j - 1)].size() != expected)
                out.push_back({ViolationKind::mirror_mismatch,
                               "up-color set of node " + std::to_string(u) + " layer " +
                                   std::to_string(j) + " holds " +
                                   std::to_string(cs.up_colors[u][static_cast<std::size_t>(j - 1)].size()) +
                                   ", expected " + std::to_string(expected)});
        }
    }
    return out;
}

// all currently violating edges headed at w, found by scanning w's whole
// neighborhood; the engine's candidate-color probe is checked against this.
inline std::vector<EdgeKey> scan_bad_edges(const DynGraph& g, const DecompositionSystem& sys,
                                           const ColorState& cs, Vertex w) {
    std::vector<EdgeKey> out;
    for (Vertex v : g.neighbors(w)) {
        EdgeKey e(w, v);
        int c = cs.color_of(e);
        if (c == 0) continue;
        int j = sys.edge_layer(e);
        if (sys.layer(j).tail(e) != v) continue; // w must be the head
        if (static_cast<double>(c) > static_cast<double>(g.degree(w)) + sys.color_slack(j))
            out.push_back(e);
    }
    return out;
}

// reference for the halving search: the smallest color in neither set.
inline int brute_new_element(const std::set<int>& a, const std::set<int>& b) {
    for (int c = 1;; ++c)
        if (!a.count(c) && !b.count(c)) return c;
}

} // namespace arbec
