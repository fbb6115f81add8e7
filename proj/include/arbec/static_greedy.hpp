#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "arbec/errors.hpp"
#include "arbec/graph.hpp"
#include "arbec/order_stat_set.hpp"

namespace arbec {

// greedy headroom of an edge in the current graph: the degree sum of its
// endpoints. the color an edge receives in the reverse pass stays below the
// value phi had when the edge was peeled.
inline int phi(const DynGraph& g, const EdgeKey& e) {
    if (!g.has_edge(e)) throw missing_edge_error("edge not present " + e.str());
    return static_cast<int>(g.degree(e.a) + g.degree(e.b));
}

struct PeelOrder {
    std::size_t n = 0;
    std::vector<EdgeKey> edges; // removal order
    // (deg a, deg b) at removal time, in canonical endpoint order
    std::vector<std::pair<int, int>> residual_degrees;
    std::uint64_t bucket_ops = 0; // bucket inserts, erases and scan probes
};

// peel one edge at a time off the current min-degree vertex (ties to the
// smaller id, then to its smallest neighbor). degree buckets make the whole
// pass linear: the scan floor drops by at most one per removal.
inline PeelOrder peel_order(const DynGraph& g) {
    const std::size_t n = g.vertex_count();
    PeelOrder po;
    po.n = n;
    std::vector<std::set<Vertex>> adj(n);
    std::vector<int> deg(n, 0);
    std::vector<std::set<Vertex>> bucket(n + 1);
    for (Vertex u = 0; u < n; ++u) {
        adj[u] = g.neighbors(u);
        deg[u] = static_cast<int>(adj[u].size());
        if (deg[u] > 0) {
            bucket[static_cast<std::size_t>(deg[u])].insert(u);
            ++po.bucket_ops;
        }
    }
    auto drop_degree = [&](Vertex x) {
        bucket[static_cast<std::size_t>(deg[x])].erase(x);
        ++po.bucket_ops;
        if (--deg[x] > 0) {
            bucket[static_cast<std::size_t>(deg[x])].insert(x);
            ++po.bucket_ops;
        }
    };
    const std::size_t m = g.edge_count();
    std::size_t floor_deg = 1;
    for (std::size_t step = 0; step < m; ++step) {
        while (floor_deg <= n && bucket[floor_deg].empty()) {
            ++floor_deg;
            ++po.bucket_ops;
        }
        Vertex u = *bucket[floor_deg].begin();
        ++po.bucket_ops;
        Vertex v = *adj[u].begin();
        EdgeKey e(u, v);
        po.edges.push_back(e);
        po.residual_degrees.emplace_back(deg[e.a], deg[e.b]);
        drop_degree(u);
        drop_degree(v);
        adj[u].erase(v);
        adj[v].erase(u);
        if (floor_deg > 1) --floor_deg;
    }
    return po;
}

// color in reverse removal order; each edge takes the first color free at
// both endpoints among the already colored later edges. the peel guarantees
// the edge count at either endpoint stays small when its turn comes.
inline std::map<EdgeKey, int> color_peeled(const PeelOrder& po) {
    std::vector<ColorSet> at(po.n);
    std::map<EdgeKey, int> chi;
    for (std::size_t i = po.edges.size(); i-- > 0;) {
        const EdgeKey& e = po.edges[i];
        int c = new_element(at[e.a], at[e.b]);
        chi[e] = c;
        at[e.a].insert(c);
        at[e.b].insert(c);
    }
    return chi;
}

inline std::map<EdgeKey, int> clever_greedy(const DynGraph& g) {
    return color_peeled(peel_order(g));
}

} // namespace arbec
