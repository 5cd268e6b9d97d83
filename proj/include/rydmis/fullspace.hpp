#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rydmis/subspace.hpp"
#include "rydmis/udgraph.hpp"

namespace rydmis {

// Full 2^n Rydberg Hamiltonian with 1/x^6 interaction tails,
//   H = sum_v (Omega sigma^x_v - Delta n_v) + sum_{v<w} C/|x_v-x_w|^6 n_v n_w,
// with homogeneous drive. Basis index b encodes vertex v's state in bit v.
// Distances use the torus metric when box_side is given, open Euclidean
// otherwise. Small-n validation only.
inline Eigen::MatrixXcd build_full_rydberg_hamiltonian(
    const std::vector<Point2D>& positions, const BlockadeParams& params,
    std::optional<double> box_side = std::nullopt) {
    const int n = static_cast<int>(positions.size());
    if (n > 14) throw std::invalid_argument("build_full_rydberg_hamiltonian: n > 14");
    std::vector<double> pair_v;  // interaction of pair (v,w), v < w
    pair_v.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w) {
            double d = box_side ? torus_distance(positions[v], positions[w], *box_side)
                                : std::hypot(positions[v].x - positions[w].x,
                                             positions[v].y - positions[w].y);
            if (d <= 0.0)
                throw std::invalid_argument("build_full_rydberg_hamiltonian: coincident atoms");
            pair_v.push_back(params.c6 / std::pow(d, 6.0));
        }

    const std::size_t dim = 1ull << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        double e = -params.delta * std::popcount(b);
        std::size_t k = 0;
        for (int v = 0; v < n; ++v)
            for (int w = v + 1; w < n; ++w, ++k)
                if ((b >> v & 1) && (b >> w & 1)) e += pair_v[k];
        h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = e;
        for (int v = 0; v < n; ++v) {
            std::size_t b2 = b ^ (1ull << v);
            h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b2)) += params.omega;
        }
    }
    return h;
}

// Full-space state with amplitude on basis state b = bitmask of excited
// vertices. Used by the stroboscopic Trotter evolution.
inline std::vector<Complex> full_state_all_zero(int n) {
    std::vector<Complex> psi(1ull << n, Complex(0, 0));
    psi[0] = Complex(1, 0);
    return psi;
}

// Embed an independent-set-subspace state into the full 2^n space.
inline std::vector<Complex> embed_in_full_space(const StateVector& psi) {
    const ISBasis& b = *psi.basis;
    std::vector<Complex> full(1ull << b.n, Complex(0, 0));
    for (std::size_t i = 0; i < b.dim(); ++i) full[b.states[i]] = psi.amp[i];
    return full;
}

// Project a full-space state onto an ISBasis; returns the projected state
// and the leaked probability (weight outside the independent-set subspace).
inline std::pair<StateVector, double> project_to_is_basis(const std::vector<Complex>& full,
                                                          const ISBasis& basis) {
    StateVector psi;
    psi.basis = &basis;
    psi.amp.assign(basis.dim(), Complex(0, 0));
    double inside = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        psi.amp[i] = full[basis.states[i]];
        inside += std::norm(psi.amp[i]);
    }
    double total = 0.0;
    for (const auto& a : full) total += std::norm(a);
    return {std::move(psi), total - inside};
}

}  // namespace rydmis
