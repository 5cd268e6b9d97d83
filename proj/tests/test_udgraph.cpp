#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "rydmis/graph_io.hpp"
#include "rydmis/rng.hpp"
#include "rydmis/udgraph.hpp"

using namespace rydmis;

TEST_CASE("torus distance basics") {
    CHECK(torus_distance({0, 0}, {0, 0}, 10) == doctest::Approx(0.0));
    CHECK(torus_distance({0.1, 0}, {9.9, 0}, 10) == doctest::Approx(0.2));
    CHECK(torus_distance({1, 1}, {4, 5}, 100) == doctest::Approx(5.0));  // 3-4-5, no wrap
    CHECK_THROWS_AS(torus_distance({0, 0}, {1, 1}, 0.0), std::invalid_argument);
}

TEST_CASE("torus metric properties on random triples") {
    Rng rng(7);
    const double L = 4.0;
    for (int it = 0; it < 200; ++it) {
        Point2D a{rng.next_double() * L, rng.next_double() * L};
        Point2D b{rng.next_double() * L, rng.next_double() * L};
        Point2D c{rng.next_double() * L, rng.next_double() * L};
        const double ab = torus_distance(a, b, L);
        const double ba = torus_distance(b, a, L);
        const double ac = torus_distance(a, c, L);
        const double cb = torus_distance(c, b, L);
        CHECK(ab == doctest::Approx(ba));
        CHECK(ab <= ac + cb + 1e-12);
        CHECK(ab <= L * std::numbers::sqrt2 / 2.0 + 1e-12);
    }
}

TEST_CASE("generation basics and preconditions") {
    UDGraph g1 = generate_random_udgraph(1, 1.0, 3);
    CHECK(g1.n == 1);
    CHECK(g1.edge_count() == 0);
    CHECK(g1.box_side == doctest::Approx(1.0));

    CHECK_THROWS_AS(generate_random_udgraph(0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random_udgraph(5, -1.0, 1), std::invalid_argument);
    // L < 1 rejected rather than handling multi-wrap edges
    CHECK_THROWS_AS(generate_random_udgraph(4, 9.0, 1), std::invalid_argument);

    UDGraph g40 = generate_random_udgraph(40, 1.5, 12345);
    CHECK(g40.box_side == doctest::Approx(std::sqrt(40.0 / 1.5)));

    // two points in a huge box: almost surely farther apart than 1
    UDGraph g2 = generate_random_udgraph(2, 1e-4, 11);
    const double d = torus_distance(g2.positions[0], g2.positions[1], g2.box_side);
    if (d > 1.0) CHECK(g2.edge_count() == 0);
    if (d < 1.0) CHECK(g2.edge_count() == 1);
}

TEST_CASE("adjacency equals brute-force recomputation from positions") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        UDGraph g = generate_random_udgraph(200, 1.4, seed);
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v) {
                const bool expect =
                    torus_distance(g.positions[u], g.positions[v], g.box_side) < 1.0;
                CHECK(g.has_edge(u, v) == expect);
            }
    }
}

TEST_CASE("same seed gives a byte-identical graph") {
    UDGraph a = generate_random_udgraph(64, 2.0, 99);
    UDGraph b = generate_random_udgraph(64, 2.0, 99);
    CHECK(udgraph_to_json(a) == udgraph_to_json(b));
    CHECK(a.hash() == b.hash());
    UDGraph c = generate_random_udgraph(64, 2.0, 100);
    CHECK(a.hash() != c.hash());
}

TEST_CASE("connected components") {
    UDGraph empty3 = udgraph_from_edges(3, {});
    CHECK(connected_components(empty3).size() == 3);

    UDGraph path = udgraph_from_edges(3, {{0, 1}, {1, 2}});
    auto blocks = connected_components(path);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == std::vector<int>{0, 1, 2});

    UDGraph two = udgraph_from_edges(4, {{0, 1}, {2, 3}});
    blocks = connected_components(two);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].size() == 2);
    CHECK(blocks[1].size() == 2);
}

TEST_CASE("percolation regimes around rho_c") {
    // subcritical rho = 0.5: giant component absent; supercritical rho = 3:
    // giant component present, in >= 95% of seeds each
    int small_ok = 0, big_ok = 0;
    const int trials = 100, n = 200;
    for (int s = 0; s < trials; ++s) {
        if (largest_component_size(generate_random_udgraph(n, 0.5, 1000 + s)) < n / 2)
            ++small_ok;
        if (largest_component_size(generate_random_udgraph(n, 3.0, 2000 + s)) > n / 2)
            ++big_ok;
    }
    CHECK(small_ok >= 95);
    CHECK(big_ok >= 95);
}

TEST_CASE("blockade radius") {
    CHECK(blockade_radius({1.0, 0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(blockade_radius({1.0, 0.0, 64.0}) == doctest::Approx(0.5));
    CHECK(blockade_radius({2.0, 0.5, 0.0}) == doctest::Approx(std::pow(2.0, 1.0 / 6.0)));
    CHECK_THROWS_AS(blockade_radius({1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(blockade_radius({-1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("graph file round trip preserves adjacency bit-for-bit") {
    UDGraph g = generate_random_udgraph(30, 2.0, 424242);
    const std::string text = udgraph_to_json(g);
    UDGraph back = udgraph_from_json(text);
    CHECK(back.n == g.n);
    CHECK(back.edges() == g.edges());
    CHECK(udgraph_to_json(back) == text);
    CHECK(back.hash() == g.hash());

    // hand-built graphs (no geometry) survive the round trip through edges
    UDGraph path = udgraph_from_edges(3, {{0, 1}, {1, 2}});
    path.positions.assign(3, Point2D{});
    UDGraph back2 = udgraph_from_json(udgraph_to_json(path));
    CHECK(back2.edges() == path.edges());
}
