#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rydmis/errors.hpp"
#include "rydmis/udgraph.hpp"

namespace rydmis {

// Vertex subsets are bitmasks over indices 0..n-1 (n <= 64).
using VertexSet = std::uint64_t;

inline int set_size(VertexSet s) { return std::popcount(s); }

inline std::vector<int> set_members(VertexSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

// Lexicographic order on vertex sets viewed as ascending member lists.
// Used as the deterministic tie-break among maximum independent sets.
inline bool lex_less(VertexSet a, VertexSet b) {
    while (a && b) {
        int va = std::countr_zero(a);
        int vb = std::countr_zero(b);
        if (va != vb) return va < vb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

struct MISResult {
    int size = 0;
    VertexSet witness = 0;
    std::uint64_t nodes_explored = 0;
    double wall_time_s = 0.0;
    bool optimal = true;  // false when a time limit expired with only a lower bound
};

inline bool is_independent(const std::vector<std::uint64_t>& adj_masks, VertexSet s) {
    VertexSet rest = s;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if (adj_masks[static_cast<std::size_t>(v)] & s) return false;
    }
    return true;
}

inline bool is_independent(const UDGraph& g, VertexSet s) {
    if (g.n > 64) throw std::invalid_argument("is_independent: n > 64");
    if (g.n < 64 && (s >> g.n)) throw std::invalid_argument("is_independent: set out of range");
    return is_independent(g.adjacency_masks(), s);
}

// Exhaustive 2^n scan; the oracle everything else is checked against.
// The witness is the lexicographically smallest maximum independent set.
inline MISResult brute_force_mis(const UDGraph& g) {
    if (g.n > 24) throw std::invalid_argument("brute_force_mis: n > 24");
    const auto t0 = std::chrono::steady_clock::now();
    const auto masks = g.adjacency_masks();
    MISResult r;
    r.size = 0;
    r.witness = 0;
    const std::uint64_t end = 1ULL << g.n;
    for (std::uint64_t s = 0; s < end; ++s) {
        if (!is_independent(masks, s)) continue;
        ++r.nodes_explored;
        int sz = set_size(s);
        if (sz > r.size || (sz == r.size && lex_less(s, r.witness))) {
            r.size = sz;
            r.witness = s;
        }
    }
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace detail {

// Greedy clique cover of the candidate set: each clique contributes at most
// one vertex to any independent set, so the cover size bounds what remains.
inline int clique_cover_bound(const std::vector<std::uint64_t>& masks, VertexSet cand) {
    int cliques = 0;
    VertexSet rest = cand;
    std::vector<VertexSet> groups;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        bool placed = false;
        for (auto& grp : groups) {
            // v joins a clique iff adjacent to all its members
            if ((grp & ~masks[static_cast<std::size_t>(v)]) == 0) {
                grp |= (1ULL << v);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back(1ULL << v);
            ++cliques;
        }
    }
    return cliques;
}

struct BnBState {
    const std::vector<std::uint64_t>* masks = nullptr;
    MISResult best;
    std::uint64_t node_budget_check = 0;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    void recurse(VertexSet current, VertexSet cand) {
        ++best.nodes_explored;
        if ((++node_budget_check & 0x3f) == 0 &&
            std::chrono::steady_clock::now() >= deadline) {
            timed_out = true;
            return;
        }
        int cur_size = set_size(current);
        if (cur_size > best.size ||
            (cur_size == best.size && lex_less(current, best.witness))) {
            best.size = cur_size;
            best.witness = current;
        }
        if (!cand) return;
        if (cur_size + clique_cover_bound(*masks, cand) <= best.size) return;

        // Branch on the candidate with the most candidate neighbors;
        // ties go to the lowest index.
        int pivot = -1, pivot_deg = -1;
        for (VertexSet rest = cand; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            int d = std::popcount((*masks)[static_cast<std::size_t>(v)] & cand);
            if (d > pivot_deg) {
                pivot_deg = d;
                pivot = v;
            }
        }
        const VertexSet vbit = 1ULL << pivot;
        // Include first: good incumbents early make the bound effective and
        // give the anytime (time-limited) path something to return.
        recurse(current | vbit, cand & ~(vbit | (*masks)[static_cast<std::size_t>(pivot)]));
        if (timed_out) return;
        recurse(current, cand & ~vbit);
    }
};

}  // namespace detail

// Exact branch and bound with a greedy clique-cover upper bound. On time
// limit expiry the best incumbent is returned with optimal = false.
inline MISResult branch_and_bound_mis(
    const UDGraph& g,
    std::chrono::duration<double> time_limit = std::chrono::duration<double>(3600.0)) {
    if (g.n > 64) throw std::invalid_argument("branch_and_bound_mis: n > 64");
    const auto t0 = std::chrono::steady_clock::now();
    const auto masks = g.adjacency_masks();
    detail::BnBState st;
    st.masks = &masks;
    st.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(time_limit);
    const VertexSet all = (g.n == 64) ? ~0ULL : ((1ULL << g.n) - 1);
    st.recurse(0, all);
    st.best.optimal = !st.timed_out;
    st.best.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return st.best;
}

// All maximal independent sets, via Bron-Kerbosch with pivoting on the
// complement graph (a maximal independent set of G is a maximal clique of
// the complement). Pivot: highest complement-degree within P, ties to the
// lowest index. Throws CapExceededError when the output exceeds max_output.
inline std::vector<VertexSet> enumerate_maximal_independent_sets(
    const UDGraph& g, std::size_t max_output = (1u << 20)) {
    if (g.n > 40) throw std::invalid_argument("enumerate_maximal_independent_sets: n > 40");
    const auto masks = g.adjacency_masks();
    const VertexSet all = (g.n == 64) ? ~0ULL : ((1ULL << g.n) - 1);
    std::vector<std::uint64_t> comp(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v)
        comp[static_cast<std::size_t>(v)] = all & ~(masks[static_cast<std::size_t>(v)] | (1ULL << v));

    std::vector<VertexSet> out;
    auto bk = [&](auto&& self, VertexSet r, VertexSet p, VertexSet x) -> void {
        if (!p && !x) {
            if (out.size() >= max_output)
                throw CapExceededError("enumerate_maximal_independent_sets: output cap exceeded");
            out.push_back(r);
            return;
        }
        // pivot from P | X maximizing |N_comp(u) & P|
        int pivot = -1, pivot_deg = -1;
        for (VertexSet rest = p | x; rest;) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            int d = std::popcount(comp[static_cast<std::size_t>(u)] & p);
            if (d > pivot_deg) {
                pivot_deg = d;
                pivot = u;
            }
        }
        VertexSet ext = p & ~comp[static_cast<std::size_t>(pivot)];
        while (ext) {
            int v = std::countr_zero(ext);
            ext &= ext - 1;
            const VertexSet vbit = 1ULL << v;
            self(self, r | vbit, p & comp[static_cast<std::size_t>(v)],
                 x & comp[static_cast<std::size_t>(v)]);
            p &= ~vbit;
            x |= vbit;
        }
    };
    bk(bk, 0, all, 0);
    return out;
}

}  // namespace rydmis
