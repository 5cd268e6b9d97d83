#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rydmis/subspace.hpp"
#include "rydmis/udgraph.hpp"

namespace rydmis {

// The annealing sweep: Delta(t) = Delta0 (2t/T - 1), Omega(t) = Omega0 sin^2(pi t/T).
struct Schedule {
    double omega0 = 1.0;
    double delta0 = 6.0;
    double total_time = 0.0;
};

struct DriveValues {
    double omega = 0.0;
    double delta = 0.0;
};

inline DriveValues schedule_eval(const Schedule& s, double t) {
    if (s.omega0 <= 0.0 || s.total_time <= 0.0)
        throw std::invalid_argument("schedule_eval: omega0 and total_time must be > 0");
    if (t < 0.0 || t > s.total_time)
        throw std::invalid_argument("schedule_eval: t outside [0, T]");
    const double u = t / s.total_time;
    const double sp = std::sin(std::numbers::pi * u);
    return {s.omega0 * sp * sp, s.delta0 * (2.0 * u - 1.0)};
}

struct PropagatorConfig {
    double step_tol = 1e-8;    // local accuracy target; the halving contract is 10x this
    double max_step = 0.01;    // in units of 1/Omega0
    int taylor_order_cap = 64; // max series terms per scaled substep
};

namespace detail {

// y = exp(-i (omega*Hop(phi) + delta*(-N))) x by truncated Taylor series
// with scaling: the generator is split into enough substeps that its norm
// bound per substep is <= 1, where each series term then shrinks
// factorially and the truncation reaches machine precision in ~20 terms.
// No operator is ever formed; only matrix-free applies.
inline void expm_apply(const ProjectedHamiltonian& h, double omega, double delta, double phase,
                       std::vector<Complex>& x, std::vector<Complex>& term,
                       std::vector<Complex>& accum, int order_cap) {
    const double nb = h.norm_bound(omega, delta);
    const int substeps = std::max(1, static_cast<int>(std::ceil(nb)));
    const double so = omega / substeps;
    const double sd = delta / substeps;
    const std::size_t d = h.dim;
    for (int s = 0; s < substeps; ++s) {
        accum = x;
        term = x;
        double term_norm2 = 1.0;
        for (int k = 1;; ++k) {
            // term <- (-i/k) H term
            std::fill(x.begin(), x.end(), Complex(0, 0));
            apply_hamiltonian_add(h, so, sd, phase, term, x);
            const Complex scale = Complex(0, -1.0 / k);
            term_norm2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                term[i] = scale * x[i];
                accum[i] += term[i];
                term_norm2 += std::norm(term[i]);
            }
            if (term_norm2 < 1e-32) break;  // ~1e-16 in norm: series converged
            if (k >= order_cap)
                throw std::runtime_error("expm_apply: Taylor series did not converge within order cap");
        }
        x = accum;
    }
}

}  // namespace detail

// Exponential action exp(-i t H(omega, delta, phase)) psi for a fixed
// Hamiltonian; the building block of the propagator and of the QAOA pulses.
inline void expm_apply_inplace(const ProjectedHamiltonian& h, double t, double omega,
                               double delta, double phase, StateVector& psi,
                               const PropagatorConfig& cfg = {}) {
    if (psi.dim() != h.dim) throw std::invalid_argument("expm_apply: basis mismatch");
    std::vector<Complex> term(h.dim), accum(h.dim);
    detail::expm_apply(h, t * omega, t * delta, phase, psi.amp, term, accum, cfg.taylor_order_cap);
}

// Propagate i d|psi>/dt = H(t)|psi> from t=0 to t=T under the annealing
// sweep, H(t) = Omega(t) Hop - Delta(t) N. Uses the 4th-order two-exponential
// commutator-free Magnus scheme on Gauss-Legendre nodes; because H(t) lives
// in the two-dimensional operator span {Hop, N}, each node combination is
// again a (omega, delta) pair and reuses the Taylor kernel.
inline StateVector propagate(const StateVector& psi0, const ProjectedHamiltonian& h,
                             const Schedule& s, const PropagatorConfig& cfg = {}) {
    if (psi0.dim() != h.dim) throw std::invalid_argument("propagate: basis mismatch");
    if (s.total_time <= 0.0) throw std::invalid_argument("propagate: total_time must be > 0");
    const double T = s.total_time;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(T / cfg.max_step)));
    const double dt = T / n_steps;

    constexpr double kNode = 0.5 / std::numbers::sqrt3;  // sqrt(3)/6
    const double c1 = 0.5 - kNode, c2 = 0.5 + kNode;
    const double a1 = 0.25 + kNode, a2 = 0.25 - kNode;

    StateVector psi = psi0;
    std::vector<Complex> term(h.dim), accum(h.dim);
    for (int k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        const DriveValues f1 = schedule_eval(s, t + c1 * dt);
        const DriveValues f2 = schedule_eval(s, t + c2 * dt);
        // first exponential weights the early node, second the late one
        detail::expm_apply(h, dt * (a1 * f1.omega + a2 * f2.omega),
                           dt * (a1 * f1.delta + a2 * f2.delta), 0.0, psi.amp, term, accum,
                           cfg.taylor_order_cap);
        detail::expm_apply(h, dt * (a2 * f1.omega + a1 * f2.omega),
                           dt * (a2 * f1.delta + a1 * f2.delta), 0.0, psi.amp, term, accum,
                           cfg.taylor_order_cap);
    }
    return psi;
}

// One stroboscopic Trotter factor on the full 2^n space: the rotation
// exp(-i dt (Omega sigma^x_v - Delta n_v)) applied on the block where every
// neighbor of v is in |0>, identity elsewhere. Unitary; preserves the
// independent-set subspace.
inline void trotter_step_general(std::vector<Complex>& psi, int v, double omega, double delta,
                                 double phase, double dt, const UDGraph& g) {
    if (psi.size() != (1ull << g.n)) throw std::invalid_argument("trotter_step: state size");
    std::uint64_t nmask = 0;
    for (int u : g.adj[v]) nmask |= (1ull << u);
    const std::uint64_t vbit = 1ull << v;

    // 2x2 block exp(-i dt [[0, W],[conj(W), -Delta]]) with W = Omega e^{i phase}:
    // split off the trace, rotate by the traceless remainder
    const double half_delta = 0.5 * delta;
    const double w = std::hypot(omega, half_delta);
    const Complex tracephase = std::polar(1.0, half_delta * dt);
    Complex u00, u01, u10, u11;
    if (w == 0.0) {
        u00 = u11 = tracephase;
        u01 = u10 = Complex(0, 0);
    } else {
        const double c = std::cos(w * dt), sn = std::sin(w * dt) / w;
        const Complex offdiag = omega * std::polar(1.0, phase);
        u00 = tracephase * Complex(c, -sn * half_delta);
        u01 = tracephase * Complex(0, -sn) * offdiag;
        u10 = tracephase * Complex(0, -sn) * std::conj(offdiag);
        u11 = tracephase * Complex(c, sn * half_delta);
    }

    const std::uint64_t dim = psi.size();
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & vbit) continue;       // visit each pair once via its v=0 member
        if (b & nmask) continue;      // a neighbor is excited: blocked, identity
        const Complex x0 = psi[b];
        const Complex x1 = psi[b | vbit];
        psi[b] = u00 * x0 + u01 * x1;
        psi[b | vbit] = u10 * x0 + u11 * x1;
    }
}

// First-order stroboscopic evolution for arbitrary graphs: per slice, the
// drive is sampled at the slice start and swept over vertices in ascending
// index order (the output depends on this order; it is fixed here).
inline std::vector<Complex> trotter_evolve_general(std::vector<Complex> psi, const UDGraph& g,
                                                   const Schedule& s, int n_slices) {
    if (g.n > 14) throw std::invalid_argument("trotter_evolve_general: n > 14");
    if (n_slices < 0) throw std::invalid_argument("trotter_evolve_general: n_slices < 0");
    if (n_slices == 0) return psi;
    const double dt = s.total_time / n_slices;
    for (int j = 0; j < n_slices; ++j) {
        const DriveValues f = schedule_eval(s, j * dt);
        for (int v = 0; v < g.n; ++v)
            trotter_step_general(psi, v, f.omega, f.delta, 0.0, dt, g);
    }
    return psi;
}

}  // namespace rydmis
