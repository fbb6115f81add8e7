#pragma once

#include <cstddef>
#include <set>
#include <unordered_map>
#include <vector>

#include "arbec/graph.hpp"
#include "arbec/order_stat_set.hpp"

namespace arbec {

// coloring storage plus the mirrors the engine queries during recoloring:
//   chi        edge -> color, absent means uncolored
//   colors_at  per node, colors on incident edges, payload points back at the
//              owning edge so a clash resolves to its edge in O(log)
//   up_colors  per node and layer, the subset of colors_at on edges whose
//              other endpoint sits at the node's level or above in that layer
//   in_use     all assigned colors with multiplicity, for the current max
// up_colors entries are rebuilt on demand: a color change or a level move
// only flips up_stale bits, and the engine refreshes an entry before reading
// it. a clean entry always equals the recomputed set; stale entries make no
// claim until the next read.
struct ColorState {
    ColorState(std::size_t n, int layer_count)
        : colors_at(n), up_colors(n),
          up_stale(n, std::vector<char>(static_cast<std::size_t>(layer_count), 0)) {
        for (auto& per_layer : up_colors)
            per_layer = std::vector<ColorSet>(static_cast<std::size_t>(layer_count));
    }

    void mark_up_stale(Vertex u) {
        for (char& f : up_stale[u]) f = 1;
    }

    void mark_up_stale(Vertex u, int layer) { up_stale[u][static_cast<std::size_t>(layer - 1)] = 1; }

    int color_of(const EdgeKey& e) const {
        auto it = chi.find(e);
        return it == chi.end() ? 0 : it->second;
    }

    int max_color() const { return in_use.empty() ? 0 : *in_use.rbegin(); }

    std::size_t colored_count() const { return chi.size(); }

    std::unordered_map<EdgeKey, int, EdgeKeyHash> chi;
    std::vector<ColorSet> colors_at;
    std::vector<std::vector<ColorSet>> up_colors;
    std::vector<std::vector<char>> up_stale;
    std::multiset<int> in_use;
};

} // namespace arbec
