#pragma once

#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "arbec/decomposition.hpp"
#include "arbec/errors.hpp"
#include "arbec/graph.hpp"

namespace arbec {

// a bank of level structures over one graph. layer j guesses the graph's
// density at alpha_tilde(j) and runs its structure with d_j proportional to
// that guess. the adaptive bank sweeps guesses 1, (1+eps), (1+eps)^2, ... so
// some layer always brackets the true density; the fixed bank is a single
// layer built from a promised bound. a node's layer is the first one where it
// settles below the top level; an edge's layer is the min over its endpoints.
class DecompositionSystem {
  public:
    enum class Op { insert, erase };
    using LayerMoveObserver = std::function<void(int j, Vertex u, int old_level, int new_level)>;

    static DecompositionSystem adaptive(const DynGraph& g, double eps) {
        int L = level_count_for(g.vertex_count(), eps);
        std::vector<double> guesses(static_cast<std::size_t>(L));
        for (int j = 1; j <= L; ++j) guesses[j - 1] = std::pow(1.0 + eps, j - 1);
        return DecompositionSystem(g, eps, std::move(guesses));
    }

    static DecompositionSystem fixed_alpha(const DynGraph& g, double eps, int alpha) {
        if (alpha < 1) throw std::invalid_argument("density bound must be at least 1");
        return DecompositionSystem(g, eps, {static_cast<double>(alpha)});
    }

    int layer_count() const { return static_cast<int>(layers_.size()); }
    int level_count() const { return levels_; }
    double epsilon() const { return eps_; }
    double beta() const { return beta_; }

    double alpha_tilde(int j) const { return alpha_tilde_[index(j)]; }
    double d_of(int j) const { return layers_[index(j)].params().d; }

    // color headroom granted to layer j edges: beta * d_j.
    double color_slack(int j) const { return beta_ * d_of(j); }

    LayerDecomposition& layer(int j) { return layers_[index(j)]; }
    const LayerDecomposition& layer(int j) const { return layers_[index(j)]; }

    // run every layer in ascending order; merged log lists each touched edge
    // once, keeping its first record. per-layer logs stay readable until the
    // next update.
    ChangeLog update(Op op, const EdgeKey& e, const LayerMoveObserver& obs = {}) {
        ChangeLog merged;
        std::set<EdgeKey> seen;
        for (int j = 1; j <= layer_count(); ++j) {
            MoveObserver layer_obs;
            if (obs) layer_obs = [&obs, j](Vertex u, int o, int n) { obs(j, u, o, n); };
            ChangeLog& log = last_logs_[index(j)];
            log = op == Op::insert ? layers_[index(j)].on_insert(e, layer_obs)
                                   : layers_[index(j)].on_delete(e, layer_obs);
            for (const EdgeLevelChange& c : log)
                if (seen.insert(c.e).second) merged.push_back(c);
        }
        return merged;
    }

    const std::vector<ChangeLog>& last_layer_logs() const { return last_logs_; }

    // first layer where u sits below the top level. defined whenever the
    // promised density holds; the adaptive top layer always qualifies.
    int node_layer(Vertex u) const {
        for (int j = 1; j <= layer_count(); ++j)
            if (layers_[index(j)].node_level(u) < levels_) return j;
        throw internal_error("node " + std::to_string(u) + " saturated every layer");
    }

    int edge_layer(const EdgeKey& e) const {
        return std::min(node_layer(e.a), node_layer(e.b));
    }

  private:
    DecompositionSystem(const DynGraph& g, double eps, std::vector<double> guesses)
        : eps_(eps), beta_(2.0 + 3.0 * eps), levels_(level_count_for(g.vertex_count(), eps)),
          alpha_tilde_(std::move(guesses)) {
        layers_.reserve(alpha_tilde_.size());
        for (double a : alpha_tilde_) {
            DecompParams p;
            p.beta = beta_;
            p.d = 2.0 * (1.0 + eps_) * a;
            p.levels = levels_;
            layers_.emplace_back(g, p);
        }
        last_logs_.resize(layers_.size());
    }

    std::size_t index(int j) const {
        if (j < 1 || j > layer_count()) throw std::invalid_argument("layer out of range");
        return static_cast<std::size_t>(j - 1);
    }

    double eps_;
    double beta_;
    int levels_;
    std::vector<double> alpha_tilde_;
    std::vector<LayerDecomposition> layers_;
    std::vector<ChangeLog> last_logs_;
};

} // namespace arbec
