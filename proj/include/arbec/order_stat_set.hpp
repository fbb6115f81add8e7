#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "arbec/errors.hpp"
#include "arbec/graph.hpp"

namespace arbec {

// probe counters for the complexity tests. thread local so parallel test
// runners do not race; reset around the operation under measurement.
struct SetProbeStats {
    std::uint64_t nodes_visited = 0;
    std::uint64_t range_queries = 0;
    void reset() { *this = {}; }
};

inline thread_local SetProbeStats set_probe_stats;

// ordered set of colors (positive ints) as an AVL tree augmented with subtree
// sizes, so rank queries cost one root-to-leaf walk. each element can carry
// an edge payload; the coloring engine uses that to find the edge holding a
// clashing color without scanning adjacency.
class ColorSet {
    struct Node {
        int key;
        EdgeKey payload;
        std::unique_ptr<Node> left, right;
        int height = 1;
        int size = 1;
    };
    using NodePtr = std::unique_ptr<Node>;

  public:
    ColorSet() = default;
    ColorSet(ColorSet&&) = default;
    ColorSet& operator=(ColorSet&&) = default;
    ColorSet(const ColorSet&) = delete;
    ColorSet& operator=(const ColorSet&) = delete;

    int size() const { return size_of(root_.get()); }
    bool empty() const { return root_ == nullptr; }
    void clear() { root_.reset(); }

    void insert(int x) { insert(x, EdgeKey{}); }

    void insert(int x, const EdgeKey& payload) {
        check_color(x);
        root_ = insert_node(std::move(root_), x, payload);
    }

    void erase(int x) {
        check_color(x);
        root_ = erase_node(std::move(root_), x);
    }

    bool contains(int x) const { return find(x) != nullptr; }

    EdgeKey payload_of(int x) const {
        const Node* n = find(x);
        if (!n) throw missing_element_error("color " + std::to_string(x) + " not in set");
        return n->payload;
    }

    // number of stored colors in [k1, k2]; requires 1 <= k1 <= k2.
    int count_in_range(int k1, int k2) const {
        if (k1 < 1 || k1 > k2)
            throw std::invalid_argument("bad range [" + std::to_string(k1) + "," +
                                        std::to_string(k2) + "]");
        ++set_probe_stats.range_queries;
        return count_at_most(k2) - count_at_most(k1 - 1);
    }

    template <class F>
    void for_each(F&& f) const {
        walk(root_.get(), f);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int x, const EdgeKey&) { out.push_back(x); });
        return out;
    }

  private:
    static void check_color(int x) {
        if (x < 1) throw std::invalid_argument("colors are positive, got " + std::to_string(x));
    }

    static int size_of(const Node* n) { return n ? n->size : 0; }
    static int height_of(const Node* n) { return n ? n->height : 0; }

    static void pull(Node* n) {
        n->height = 1 + std::max(height_of(n->left.get()), height_of(n->right.get()));
        n->size = 1 + size_of(n->left.get()) + size_of(n->right.get());
    }

    static NodePtr rotate_right(NodePtr n) {
        NodePtr l = std::move(n->left);
        n->left = std::move(l->right);
        pull(n.get());
        l->right = std::move(n);
        pull(l.get());
        return l;
    }

    static NodePtr rotate_left(NodePtr n) {
        NodePtr r = std::move(n->right);
        n->right = std::move(r->left);
        pull(n.get());
        r->left = std::move(n);
        pull(r.get());
        return r;
    }

    static NodePtr rebalance(NodePtr n) {
        pull(n.get());
        int bal = height_of(n->left.get()) - height_of(n->right.get());
        if (bal > 1) {
            if (height_of(n->left->left.get()) < height_of(n->left->right.get()))
                n->left = rotate_left(std::move(n->left));
            return rotate_right(std::move(n));
        }
        if (bal < -1) {
            if (height_of(n->right->right.get()) < height_of(n->right->left.get()))
                n->right = rotate_right(std::move(n->right));
            return rotate_left(std::move(n));
        }
        return n;
    }

    static NodePtr insert_node(NodePtr n, int x, const EdgeKey& payload) {
        ++set_probe_stats.nodes_visited;
        if (!n) {
            auto fresh = std::make_unique<Node>();
            fresh->key = x;
            fresh->payload = payload;
            return fresh;
        }
        if (x == n->key) throw duplicate_element_error("color " + std::to_string(x) + " already in set");
        if (x < n->key)
            n->left = insert_node(std::move(n->left), x, payload);
        else
            n->right = insert_node(std::move(n->right), x, payload);
        return rebalance(std::move(n));
    }

    static NodePtr erase_node(NodePtr n, int x) {
        ++set_probe_stats.nodes_visited;
        if (!n) throw missing_element_error("color " + std::to_string(x) + " not in set");
        if (x < n->key) {
            n->left = erase_node(std::move(n->left), x);
        } else if (x > n->key) {
            n->right = erase_node(std::move(n->right), x);
        } else {
            if (!n->left) return std::move(n->right);
            if (!n->right) return std::move(n->left);
            // swap in the in-order successor, then erase it below.
            Node* succ = n->right.get();
            while (succ->left) {
                ++set_probe_stats.nodes_visited;
                succ = succ->left.get();
            }
            n->key = succ->key;
            n->payload = succ->payload;
            n->right = erase_node(std::move(n->right), succ->key);
        }
        return rebalance(std::move(n));
    }

    const Node* find(int x) const {
        const Node* n = root_.get();
        while (n) {
            ++set_probe_stats.nodes_visited;
            if (x == n->key) return n;
            n = x < n->key ? n->left.get() : n->right.get();
        }
        return nullptr;
    }

    // stored colors <= k, via subtree sizes.
    int count_at_most(int k) const {
        int total = 0;
        const Node* n = root_.get();
        while (n) {
            ++set_probe_stats.nodes_visited;
            if (n->key <= k) {
                total += 1 + size_of(n->left.get());
                n = n->right.get();
            } else {
                n = n->left.get();
            }
        }
        return total;
    }

    template <class F>
    static void walk(const Node* n, F& f) {
        if (!n) return;
        walk(n->left.get(), f);
        f(n->key, n->payload);
        walk(n->right.get(), f);
    }

    NodePtr root_;
};

// smallest color absent from both sets, found by interval halving on counts:
// an interval holding fewer stored colors than slots must contain a free
// color. the left half takes floor(len/2) slots, and the search goes left
// whenever the left half has a free slot, so the result is deterministic
// (though not always the globally smallest free color). always at most
// |a| + |b| + 1, and O(log(|a| + |b|)) range queries.
inline int new_element(const ColorSet& a, const ColorSet& b) {
    long long lo = 1;
    long long hi = static_cast<long long>(a.size()) + b.size() + 1;
    while (lo < hi) {
        long long left_len = (hi - lo + 1) / 2;
        long long mid = lo + left_len - 1;
        long long used = a.count_in_range(static_cast<int>(lo), static_cast<int>(mid)) +
                         b.count_in_range(static_cast<int>(lo), static_cast<int>(mid));
        if (used < left_len)
            hi = mid;
        else
            lo = mid + 1;
    }
    return static_cast<int>(lo);
}

} // namespace arbec
