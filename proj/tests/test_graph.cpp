#include "doctest.h"

#include <set>
#include <vector>

#include "arbec/graph.hpp"
#include "arbec/prng.hpp"

using namespace arbec;

TEST_SUITE("graph") {

TEST_CASE("edge keys canonicalize their endpoints") {
    EdgeKey e(7, 3);
    CHECK(e.a == 3);
    CHECK(e.b == 7);
    CHECK(e == EdgeKey(3, 7));
    CHECK(e.other(3) == 7);
    CHECK(e.other(7) == 3);
    CHECK(e.str() == "(3,7)");
    CHECK_THROWS_AS(EdgeKey(4, 4), std::invalid_argument);
}

TEST_CASE("edge keys order lexicographically") {
    CHECK(EdgeKey(0, 1) < EdgeKey(0, 2));
    CHECK(EdgeKey(0, 9) < EdgeKey(1, 2));
    std::set<EdgeKey> s{EdgeKey(2, 1), EdgeKey(1, 2), EdgeKey(0, 3)};
    CHECK(s.size() == 2);
}

TEST_CASE("hash separates nearby edges") {
    EdgeKeyHash h;
    CHECK(h(EdgeKey(1, 2)) != h(EdgeKey(2, 3)));
    CHECK(h(EdgeKey(1, 2)) == h(EdgeKey(2, 1)));
}

TEST_CASE("graph construction rejects an empty vertex set") {
    CHECK_THROWS_AS(DynGraph(0), std::invalid_argument);
}

TEST_CASE("insert and delete maintain adjacency both ways") {
    DynGraph g(5);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 0);
    g.insert_edge(EdgeKey(0, 1));
    g.insert_edge(EdgeKey(1, 2));
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(EdgeKey(1, 0)));
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(0) == 1);
    CHECK(g.neighbors(1) == std::set<Vertex>{0, 2});
    g.delete_edge(EdgeKey(0, 1));
    CHECK(!g.has_edge(EdgeKey(0, 1)));
    CHECK(g.degree(1) == 1);
    CHECK(g.edge_count() == 1);
    g.validate();
}

TEST_CASE("duplicate insert and missing delete throw") {
    DynGraph g(3);
    g.insert_edge(EdgeKey(0, 1));
    CHECK_THROWS_AS(g.insert_edge(EdgeKey(1, 0)), duplicate_edge_error);
    CHECK_THROWS_AS(g.delete_edge(EdgeKey(0, 2)), missing_edge_error);
}

TEST_CASE("vertices outside the fixed set are rejected") {
    DynGraph g(3);
    CHECK_THROWS_AS(g.insert_edge(EdgeKey(0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(g.degree(3), std::invalid_argument);
    CHECK_THROWS_AS((void)g.neighbors(99), std::invalid_argument);
}

TEST_CASE("edges() lists every edge once in sorted order") {
    DynGraph g(4);
    g.insert_edge(EdgeKey(2, 3));
    g.insert_edge(EdgeKey(0, 1));
    g.insert_edge(EdgeKey(1, 3));
    std::vector<EdgeKey> want{EdgeKey(0, 1), EdgeKey(1, 3), EdgeKey(2, 3)};
    CHECK(g.edges() == want);
}

TEST_CASE("max degree tracks the densest vertex") {
    DynGraph g(4);
    CHECK(g.max_degree() == 0);
    g.insert_edge(EdgeKey(0, 1));
    g.insert_edge(EdgeKey(0, 2));
    g.insert_edge(EdgeKey(0, 3));
    CHECK(g.max_degree() == 3);
    g.delete_edge(EdgeKey(0, 2));
    CHECK(g.max_degree() == 2);
}

TEST_CASE("random insert and delete churn stays consistent") {
    SplitMix64 rng(42);
    DynGraph g(9);
    std::set<EdgeKey> mirror;
    for (int step = 0; step < 3000; ++step) {
        Vertex u = static_cast<Vertex>(rng.below(9));
        Vertex v = static_cast<Vertex>(rng.below(9));
        if (u == v) continue;
        EdgeKey e(u, v);
        if (mirror.count(e)) {
            g.delete_edge(e);
            mirror.erase(e);
        } else {
            g.insert_edge(e);
            mirror.insert(e);
        }
        CHECK(g.edge_count() == mirror.size());
    }
    g.validate();
    std::vector<EdgeKey> want(mirror.begin(), mirror.end());
    CHECK(g.edges() == want);
}

TEST_CASE("splitmix64 bounded draws are deterministic and in range") {
    SplitMix64 a(7), b(7);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t x = a.below(13);
        CHECK(x == b.below(13));
        CHECK(x < 13);
    }
    SplitMix64 c(8);
    bool differs = false;
    SplitMix64 d(7);
    for (int i = 0; i < 16; ++i) differs = differs || c.next() != d.next();
    CHECK(differs);
}

} // TEST_SUITE
