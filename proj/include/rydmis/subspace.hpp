#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rydmis/errors.hpp"
#include "rydmis/exactmis.hpp"
#include "rydmis/udgraph.hpp"

namespace rydmis {

using Complex = std::complex<double>;

// Ordered enumeration of every independent set of a graph, including the
// empty set. This is the computational basis of the blockade-projected
// Hilbert space. Ordering is fixed: by set size ascending, then by bitmask
// ascending, so index 0 is the empty set and serialized indices are
// portable.
struct ISBasis {
    int n = 0;
    std::vector<std::uint64_t> adj_masks;  // neighbor bitmasks of the source graph
    std::vector<VertexSet> states;
    std::uint64_t graph_hash = 0;

    std::size_t dim() const { return states.size(); }
    int mis_size() const { return states.empty() ? 0 : set_size(states.back()); }

    // Inverse map state -> basis index (binary search in the basis order).
    std::size_t index_of(VertexSet s) const {
        auto key = [](VertexSet v) { return std::pair<int, VertexSet>(set_size(v), v); };
        auto it = std::lower_bound(states.begin(), states.end(), s,
                                   [&](VertexSet a, VertexSet b) { return key(a) < key(b); });
        if (it == states.end() || *it != s)
            throw std::invalid_argument("ISBasis::index_of: state not in basis");
        return static_cast<std::size_t>(it - states.begin());
    }
};

// Enumerate all independent sets by backtracking over vertices with
// forbidden-neighbor pruning: each branch either skips vertex v or takes it
// and removes its neighbors from the remaining candidates. Every
// independent set is produced exactly once.
inline ISBasis build_is_basis(const UDGraph& g, std::size_t dim_cap = (1ull << 22)) {
    if (g.n > 64) throw std::invalid_argument("build_is_basis: n > 64");
    ISBasis b;
    b.n = g.n;
    b.adj_masks = g.adjacency_masks();
    b.graph_hash = g.hash();

    std::vector<VertexSet>& states = b.states;
    auto rec = [&](auto&& self, int start, VertexSet current, VertexSet allowed) -> void {
        if (states.size() >= dim_cap)
            throw CapExceededError("build_is_basis: dimension cap exceeded");
        states.push_back(current);
        for (int v = start; v < g.n; ++v) {
            const VertexSet vbit = 1ULL << v;
            if (!(allowed & vbit)) continue;
            self(self, v + 1, current | vbit, allowed & ~(vbit | b.adj_masks[static_cast<std::size_t>(v)]));
        }
    };
    const VertexSet all = (g.n == 64) ? ~0ULL : ((1ULL << g.n) - 1);
    rec(rec, 0, 0, all);
    std::sort(states.begin(), states.end(), [](VertexSet a, VertexSet b2) {
        int sa = set_size(a), sb = set_size(b2);
        return sa != sb ? sa < sb : a < b2;
    });
    return b;
}

// Complex amplitudes over an ISBasis (basis == nullptr marks a full 2^n
// state used by the Trotter routines). The basis must outlive the state.
struct StateVector {
    const ISBasis* basis = nullptr;
    std::vector<Complex> amp;

    std::size_t dim() const { return amp.size(); }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amp) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline StateVector make_initial_state(const ISBasis& basis) {
    // all qubits in |0>: the empty independent set, basis index 0
    StateVector psi;
    psi.basis = &basis;
    psi.amp.assign(basis.dim(), Complex(0, 0));
    psi.amp[0] = Complex(1, 0);
    return psi;
}

// Probability of measuring a maximum independent set (degenerate maxima
// summed). Relies on the size-ascending basis order: maximum sets form the
// tail of the state vector.
inline double p_mis_of_state(const StateVector& psi) {
    const ISBasis& b = *psi.basis;
    const int mis = b.mis_size();
    double p = 0.0;
    for (std::size_t i = b.dim(); i-- > 0;) {
        if (set_size(b.states[i]) != mis) break;
        p += std::norm(psi.amp[i]);
    }
    return p;
}

// Expected measured independent-set size divided by |MIS|.
inline double approximation_ratio_of_state(const StateVector& psi) {
    const ISBasis& b = *psi.basis;
    if (b.mis_size() == 0) return 1.0;
    double mean_size = 0.0;
    for (std::size_t i = 0; i < b.dim(); ++i)
        mean_size += std::norm(psi.amp[i]) * set_size(b.states[i]);
    return mean_size / b.mis_size();
}

// The blockade-projected Hamiltonian in structural form:
//   H(Omega, Delta, phi) = Omega * sum_hops (e^{i phi}|without><with| + h.c.)
//                          - Delta * sum_i |s_i| |i><i|
// diag stores -|s_i| (the unit-detuning cost); hop edges connect basis
// states differing by one vertex v whose neighbors are absent in both. The
// phase multiplies the lowering direction |0><1|, i.e. the with -> without
// matrix element.
struct ProjectedHamiltonian {
    struct Hop {
        std::uint32_t without;  // index of the smaller state (v absent)
        std::uint32_t with;     // index of the larger state (v present)
        std::uint16_t vertex;
    };
    std::size_t dim = 0;
    std::vector<double> diag;  // -|s_i| at unit Delta
    std::vector<Hop> hops;
    int max_size = 0;      // max |s_i|, for norm bounds
    int max_degree = 0;    // max hop count at any basis state

    // Upper bound on the spectral norm of H(omega, delta, 0), by Gershgorin.
    double norm_bound(double omega, double delta) const {
        return std::abs(delta) * max_size + std::abs(omega) * max_degree;
    }
};

inline ProjectedHamiltonian build_projected_hamiltonian(const ISBasis& basis) {
    ProjectedHamiltonian h;
    h.dim = basis.dim();
    h.diag.resize(h.dim);
    std::vector<int> degree(h.dim, 0);
    for (std::size_t i = 0; i < h.dim; ++i) {
        int sz = set_size(basis.states[i]);
        h.diag[i] = -static_cast<double>(sz);
        h.max_size = std::max(h.max_size, sz);
    }
    // every (state, member vertex) pair yields one hop to the state without
    // that vertex; removing a vertex from an independent set keeps it
    // independent, so the partner always exists
    for (std::size_t j = 0; j < h.dim; ++j) {
        VertexSet s = basis.states[j];
        VertexSet rest = s;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            std::size_t i = basis.index_of(s & ~(1ULL << v));
            h.hops.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                              static_cast<std::uint16_t>(v)});
            ++degree[i];
            ++degree[j];
        }
    }
    for (int d : degree) h.max_degree = std::max(h.max_degree, d);
    return h;
}

// y += (Omega * Hop(phi) - Delta * N) x, matrix-free.
inline void apply_hamiltonian_add(const ProjectedHamiltonian& h, double omega, double delta,
                                  double phase, const std::vector<Complex>& x,
                                  std::vector<Complex>& y) {
    const std::size_t d = h.dim;
    if (x.size() != d || y.size() != d)
        throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
    if (delta != 0.0) {
        for (std::size_t i = 0; i < d; ++i) y[i] += delta * h.diag[i] * x[i];
    }
    if (omega != 0.0) {
        const Complex c = omega * std::polar(1.0, phase);   // on |0><1|
        const Complex cc = std::conj(c);                    // on |1><0|
        for (const auto& e : h.hops) {
            y[e.without] += c * x[e.with];
            y[e.with] += cc * x[e.without];
        }
    }
}

inline StateVector apply_hamiltonian(const ProjectedHamiltonian& h, double omega, double delta,
                                     double phase, const StateVector& psi) {
    if (psi.dim() != h.dim) throw std::invalid_argument("apply_hamiltonian: basis mismatch");
    StateVector out;
    out.basis = psi.basis;
    out.amp.assign(h.dim, Complex(0, 0));
    apply_hamiltonian_add(h, omega, delta, phase, psi.amp, out.amp);
    return out;
}

}  // namespace rydmis
