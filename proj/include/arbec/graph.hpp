#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "arbec/errors.hpp"

namespace arbec {

using Vertex = std::uint32_t;

// undirected simple edge, canonicalized so a < b.
struct EdgeKey {
    Vertex a = 0;
    Vertex b = 0;

    EdgeKey() = default;
    EdgeKey(Vertex u, Vertex v) : a(u < v ? u : v), b(u < v ? v : u) {
        if (u == v) throw std::invalid_argument("self-loop edge (" + std::to_string(u) + ")");
    }

    Vertex other(Vertex u) const { return u == a ? b : a; }
    auto operator<=>(const EdgeKey&) const = default;

    std::string str() const { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& e) const {
        return std::hash<std::uint64_t>{}((std::uint64_t(e.a) << 32) | e.b);
    }
};

// dynamic simple graph on a fixed vertex set [0, n).
// adjacency is an ordered set per vertex so iteration order is deterministic.
class DynGraph {
  public:
    explicit DynGraph(std::size_t n) : adj_(n) {
        if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return m_; }

    bool has_edge(const EdgeKey& e) const {
        check_vertex(e.b);
        return adj_[e.a].count(e.b) != 0;
    }

    void insert_edge(const EdgeKey& e) {
        check_vertex(e.b);
        if (adj_[e.a].count(e.b)) throw duplicate_edge_error("edge already present " + e.str());
        adj_[e.a].insert(e.b);
        adj_[e.b].insert(e.a);
        ++m_;
    }

    void delete_edge(const EdgeKey& e) {
        check_vertex(e.b);
        if (!adj_[e.a].count(e.b)) throw missing_edge_error("edge not present " + e.str());
        adj_[e.a].erase(e.b);
        adj_[e.b].erase(e.a);
        --m_;
    }

    std::size_t degree(Vertex u) const {
        check_vertex(u);
        return adj_[u].size();
    }

    const std::set<Vertex>& neighbors(Vertex u) const {
        check_vertex(u);
        return adj_[u];
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& s : adj_) d = std::max(d, s.size());
        return d;
    }

    // edges in canonical (a, b) ascending order.
    std::vector<EdgeKey> edges() const {
        std::vector<EdgeKey> out;
        out.reserve(m_);
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (v > u) out.push_back(EdgeKey(u, v));
        return out;
    }

    // full-scan consistency check: adjacency symmetry and the edge counter.
    void validate() const {
        std::size_t half = 0;
        for (Vertex u = 0; u < adj_.size(); ++u) {
            for (Vertex v : adj_[u]) {
                if (v >= adj_.size() || v == u || !adj_[v].count(u))
                    throw internal_error("asymmetric adjacency at " + std::to_string(u));
                ++half;
            }
        }
        if (half != 2 * m_) throw internal_error("edge counter out of sync");
    }

  private:
    void check_vertex(Vertex u) const {
        if (u >= adj_.size())
            throw std::invalid_argument("vertex " + std::to_string(u) + " out of range");
    }

    std::vector<std::set<Vertex>> adj_;
    std::size_t m_ = 0;
};

} // namespace arbec
