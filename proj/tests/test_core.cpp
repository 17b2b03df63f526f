#include "doctest.h"

#include <functional>
#include <random>

#include "fbp/graph.hpp"

using namespace fbp;

namespace {

Graph complete(int n) {
    Graph g;
    for (int i = 1; i <= n; ++i) g.add_vertex(std::to_string(i));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph k23() {
    Graph g = load_graph(
        "p 5 6\n"
        "l 1 0\nl 2 0\nl 3 1\nl 4 1\nl 5 1\n"
        "e 1 3\ne 1 4\ne 1 5\ne 2 3\ne 2 4\ne 2 5\n");
    return g;
}

// Brute-force connectivity level for small graphs: remove every vertex subset
// of size < k and test connectedness.
int brute_level(const Graph& g) {
    int n = g.vertex_count();
    if (n <= 1 || !is_connected(g)) return 0;
    for (int k = 1; k <= 3; ++k) {
        if (n <= k) return k - 1;
        // all subsets of size k
        std::vector<int> idx(k);
        std::function<bool(int, int)> any_cut = [&](int at, int from) {
            if (at == k) {
                Graph h;
                std::vector<int> map(n, -1);
                for (int v = 0; v < n; ++v) {
                    bool removed = false;
                    for (int i : idx)
                        if (i == v) removed = true;
                    if (!removed) map[v] = h.add_vertex(g.name(v));
                }
                for (auto [u, v] : g.edges())
                    if (map[u] >= 0 && map[v] >= 0) h.add_edge(map[u], map[v]);
                return !is_connected(h);
            }
            for (int v = from; v < n; ++v) {
                idx[at] = v;
                if (any_cut(at + 1, v + 1)) return true;
            }
            return false;
        };
        if (any_cut(0, 0)) return k;
    }
    return 3;
}

}  // namespace

TEST_CASE("graph file parsing") {
    Graph g = load_graph("p 2 1\ne 1 2\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);

    Graph b = k23();
    CHECK(b.vertex_count() == 5);
    CHECK(b.edge_count() == 6);
    CHECK(b.layer(b.vertex("1")) == 0);
    CHECK(b.layer(b.vertex("4")) == 1);

    CHECK_THROWS_AS(load_graph("p 2 1\ne 1 1\n"), parse_error);          // self-loop
    CHECK_THROWS_AS(load_graph("p 2 2\ne 1 2\ne 2 1\n"), parse_error);   // duplicate
    CHECK_THROWS_AS(load_graph("p 2 1\nl 1 0\nl 2 0\ne 1 2\n"), parse_error);
    CHECK_THROWS_AS(load_graph("e 1 2\n"), parse_error);                 // no header
    CHECK_THROWS_AS(load_graph("p 2 2\ne 1 2\n"), parse_error);          // count mismatch

    // Isolated vertices via integer tokens.
    Graph iso = load_graph("p 3 1\ne 1 3\n");
    CHECK(iso.vertex_count() == 3);
    CHECK(iso.degree(iso.vertex("2")) == 0);

    // Arbitrary tokens register in first-use order.
    Graph named = load_graph("p 3 2\ne alpha beta\ne beta gamma\n");
    CHECK(named.name(0) == "alpha");
    CHECK(named.name(2) == "gamma");
}

TEST_CASE("graph round trip") {
    for (const Graph& g : {k23(), complete(4), load_graph("p 6 3\ne 1 2\ne 3 4\ne 5 6\n")}) {
        Graph h = load_graph(save_graph(g));
        CHECK(g.same_graph(h));
        if (g.has_layers())
            for (VertexId v = 0; v < g.vertex_count(); ++v)
                CHECK(g.layer(v) == h.layer(h.vertex(g.name(v))));
    }
}

TEST_CASE("connectivity level") {
    CHECK(connectivity_level(complete(4)) == 3);
    CHECK(connectivity_level(k23()) == 2);
    Graph p4 = load_graph("p 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    CHECK(connectivity_level(p4) == 1);
    Graph disc = load_graph("p 4 2\ne 1 2\ne 3 4\n");
    CHECK(connectivity_level(disc) == 0);
    CHECK(connectivity_level(load_graph("p 1 0\n")) == 0);
    CHECK(connectivity_level(complete(3)) == 2);
    CHECK(connectivity_level(complete(2)) == 1);
}

TEST_CASE("connectivity agrees with brute force on small graphs") {
    std::mt19937 rng(7);
    for (int n = 2; n <= 6; ++n) {
        int pairs = n * (n - 1) / 2;
        for (int trial = 0; trial < 60; ++trial) {
            unsigned mask = static_cast<unsigned>(rng()) & ((1u << pairs) - 1);
            Graph g;
            for (int i = 1; i <= n; ++i) g.add_vertex(std::to_string(i));
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask >> bit & 1) g.add_edge(u, v);
            CAPTURE(n);
            CAPTURE(mask);
            CHECK(connectivity_level(g) == brute_level(g));
        }
    }
}

TEST_CASE("degree profile") {
    auto p = degree_profile(complete(4));
    CHECK(p.sorted_degrees == std::vector<int>{3, 3, 3, 3});
    CHECK(p.over_three.empty());
    auto q = degree_profile(k23());
    CHECK(q.sorted_degrees == std::vector<int>{2, 2, 2, 3, 3});
    long sum = 0;
    for (int d : q.sorted_degrees) sum += d;
    CHECK(sum == 2 * k23().edge_count());
}

TEST_CASE("rotation system io") {
    Graph g = complete(3);
    RotationSystem r = load_rotation("r 1 1-2 1-3\nr 2 1-2 2-3\nr 3 1-3 2-3\n", g);
    CHECK(r.order_at.size() == 3);
    RotationSystem r2 = load_rotation(save_rotation(r, g), g);
    CHECK(r.order_at == r2.order_at);
    CHECK_THROWS_AS(load_rotation("r 1 1-2\n", g), parse_error);  // missing edge
}
