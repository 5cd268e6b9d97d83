#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rydmis/rng.hpp"

namespace rydmis {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

// Euclidean distance on the L x L torus, minimized over the 3x3 grid of
// periodic images. Requires L >= 1 in generated graphs so a single wrap per
// axis is always enough (unit-disk radius is 1).
inline double torus_distance(const Point2D& a, const Point2D& b, double box_side) {
    if (box_side <= 0.0) throw std::invalid_argument("torus_distance: box_side must be > 0");
    double dx = std::fabs(a.x - b.x);
    double dy = std::fabs(a.y - b.y);
    dx = std::min(dx, box_side - dx);
    dy = std::min(dy, box_side - dy);
    return std::hypot(dx, dy);
}

// Random unit-disk graph in a periodic box. Vertices are points in [0,L)^2
// with L = sqrt(n/rho); (u,v) is an edge iff the torus distance is strictly
// below the unit radius r = 1.
struct UDGraph {
    int n = 0;
    double rho = 0.0;
    double box_side = 0.0;
    std::vector<Point2D> positions;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists, symmetric, irreflexive
    std::optional<std::uint64_t> seed;  // absent for hand-built graphs

    bool has_edge(int u, int v) const {
        const auto& nb = adj[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    int edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adj) twice += nb.size();
        return static_cast<int>(twice / 2);
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n; ++u)
            for (int v : adj[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    // Neighbor bitmasks for the solvers; requires n <= 64.
    std::vector<std::uint64_t> adjacency_masks() const {
        if (n > 64) throw std::invalid_argument("adjacency_masks: n > 64");
        std::vector<std::uint64_t> m(static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u)
            for (int v : adj[u]) m[u] |= (1ULL << v);
        return m;
    }

    std::uint64_t hash() const;
};

// Build a graph from explicit positions (adjacency recomputed from the
// unit-disk rule). Used by generation and by file loading.
inline UDGraph udgraph_from_positions(std::vector<Point2D> positions, double rho,
                                      double box_side,
                                      std::optional<std::uint64_t> seed = std::nullopt) {
    UDGraph g;
    g.n = static_cast<int>(positions.size());
    g.rho = rho;
    g.box_side = box_side;
    g.positions = std::move(positions);
    g.seed = seed;
    g.adj.assign(g.n, {});
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (torus_distance(g.positions[u], g.positions[v], box_side) < 1.0) {
                g.adj[u].push_back(v);
                g.adj[v].push_back(u);
            }
    return g;
}

// Hand-built graph with explicit edges and no geometry (positions on a line
// far apart, box large enough to be irrelevant). Handy in tests and for
// algorithmic inputs that are not unit-disk.
inline UDGraph udgraph_from_edges(int n, const std::vector<std::pair<int, int>>& edge_list) {
    if (n < 0) throw std::invalid_argument("udgraph_from_edges: n < 0");
    UDGraph g;
    g.n = n;
    g.rho = 0.0;
    g.box_side = 0.0;
    g.adj.assign(n, {});
    for (auto [u, v] : edge_list) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("udgraph_from_edges: bad edge");
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

// n points i.i.d. uniform in [0,L)^2, L = sqrt(n/rho). Sampling order is
// fixed (x then y, vertex 0 first) so a seed reproduces the same graph
// byte-for-byte everywhere. Rejects L < 1: with the unit-disk radius fixed
// at 1, a box smaller than the disk would need multi-wrap edge handling.
inline UDGraph generate_random_udgraph(int n, double rho, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_random_udgraph: n must be >= 1");
    if (rho <= 0.0) throw std::invalid_argument("generate_random_udgraph: rho must be > 0");
    const double box_side = std::sqrt(static_cast<double>(n) / rho);
    if (box_side < 1.0)
        throw std::invalid_argument("generate_random_udgraph: box side L = sqrt(n/rho) < 1");
    Rng rng(seed);
    std::vector<Point2D> pos(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        pos[v].x = rng.next_double() * box_side;
        pos[v].y = rng.next_double() * box_side;
    }
    return udgraph_from_positions(std::move(pos), rho, box_side, seed);
}

// Maximal connected vertex sets; blocks are disjoint, cover V, and are
// listed with increasing smallest member.
inline std::vector<std::vector<int>> connected_components(const UDGraph& g) {
    std::vector<std::vector<int>> blocks;
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> block;
        stack.push_back(s);
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            block.push_back(u);
            for (int v : g.adj[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
    }
    return blocks;
}

inline std::size_t largest_component_size(const UDGraph& g) {
    std::size_t best = 0;
    for (const auto& b : connected_components(g)) best = std::max(best, b.size());
    return best;
}

struct BlockadeParams {
    double c6 = 0.0;    // interaction coefficient C (energy * length^6)
    double omega = 0.0; // Rabi frequency (hbar = 1)
    double delta = 0.0; // detuning
};

// r_B = (C / sqrt((2*Omega)^2 + Delta^2))^(1/6). Maps physical drive
// parameters to the distance below which double excitation is suppressed;
// the graphs themselves always use unit radius.
inline double blockade_radius(const BlockadeParams& p) {
    if (p.c6 <= 0.0) throw std::invalid_argument("blockade_radius: c6 must be > 0");
    const double s = std::hypot(2.0 * p.omega, p.delta);
    if (s <= 0.0) throw std::invalid_argument("blockade_radius: omega and delta both zero");
    return std::pow(p.c6 / s, 1.0 / 6.0);
}

inline std::uint64_t UDGraph::hash() const {
    // FNV-1a over the defining fields; identifies a graph instance in
    // serialized state checkpoints.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    auto mixd = [&](double d) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        __builtin_memcpy(&bits, &d, sizeof(bits));
        mix(bits);
    };
    mix(static_cast<std::uint64_t>(n));
    mixd(rho);
    mixd(box_side);
    for (const auto& p : positions) {
        mixd(p.x);
        mixd(p.y);
    }
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) mix((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v));
    return h;
}

}  // namespace rydmis
