// Test-only reference implementations, deliberately independent of the
// library's computation paths: dense operator assembly by pair scanning,
// a fixed-step RK4 integrator for time-dependent dense systems, subset-scan
// independent-set enumeration, and small statistics helpers.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rydmis/subspace.hpp"
#include "rydmis/udgraph.hpp"

namespace oracles {

using rydmis::Complex;
using rydmis::ISBasis;
using rydmis::StateVector;
using rydmis::UDGraph;
using rydmis::VertexSet;

// Dense projected Hamiltonian assembled directly from the basis states:
// any two independent sets differing in exactly one vertex are coupled by
// the drive; the phase sits on the lowering (with -> without) element.
inline Eigen::MatrixXcd dense_hamiltonian(const ISBasis& basis, double omega, double delta,
                                          double phase = 0.0) {
    const Eigen::Index d = static_cast<Eigen::Index>(basis.dim());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        h(i, i) = -delta * rydmis::set_size(basis.states[static_cast<std::size_t>(i)]);
    const Complex lower = omega * std::polar(1.0, phase);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            VertexSet a = basis.states[static_cast<std::size_t>(i)];
            VertexSet b = basis.states[static_cast<std::size_t>(j)];
            if (std::popcount(a ^ b) != 1) continue;
            // basis order puts the smaller set first: i = without, j = with
            h(i, j) += lower;
            h(j, i) += std::conj(lower);
        }
    return h;
}

inline Eigen::VectorXcd to_eigen(const StateVector& psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi.amp[i];
    return v;
}

// Classic RK4 on i d psi/dt = H(t) psi with a fixed step count.
inline Eigen::VectorXcd rk4_propagate(const std::function<Eigen::MatrixXcd(double)>& ham,
                                      Eigen::VectorXcd psi, double total_time, int n_steps) {
    const double dt = total_time / n_steps;
    const Complex mi(0, -1);
    for (int k = 0; k < n_steps; ++k) {
        const double t = k * dt;
        Eigen::VectorXcd k1 = mi * (ham(t) * psi);
        Eigen::VectorXcd k2 = mi * (ham(t + 0.5 * dt) * (psi + 0.5 * dt * k1));
        Eigen::VectorXcd k3 = mi * (ham(t + 0.5 * dt) * (psi + 0.5 * dt * k2));
        Eigen::VectorXcd k4 = mi * (ham(t + dt) * (psi + dt * k3));
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

// exp(-i t H) psi for Hermitian H via full diagonalization.
inline Eigen::VectorXcd expm_apply_dense(const Eigen::MatrixXcd& h, double t,
                                         const Eigen::VectorXcd& psi) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd z = es.eigenvectors().adjoint() * psi;
    for (Eigen::Index i = 0; i < z.size(); ++i)
        z(i) *= std::polar(1.0, -t * es.eigenvalues()(i));
    return es.eigenvectors() * z;
}

// Subset-scan enumeration of independent sets (growth order, no pruning):
// the reference for basis dimension and membership.
inline std::vector<VertexSet> all_independent_sets(const UDGraph& g) {
    const auto masks = g.adjacency_masks();
    std::vector<VertexSet> out;
    const std::uint64_t end = 1ULL << g.n;
    for (std::uint64_t s = 0; s < end; ++s)
        if (rydmis::is_independent(masks, s)) out.push_back(s);
    return out;
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Regularized upper incomplete gamma Q(a, x), series/continued-fraction
// split as in standard references; used for chi-square p-values.
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // lower series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

// Chi-square p-value with expected-count pooling: bins with expectation
// below 5 are merged into one tail bin before the statistic is formed.
inline double chi_square_p_value(const std::vector<double>& expected,
                                 const std::vector<std::size_t>& observed) {
    double chi2 = 0.0;
    int dof = -1;
    double pool_exp = 0.0, pool_obs = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] < 5.0) {
            pool_exp += expected[i];
            pool_obs += static_cast<double>(observed[i]);
            continue;
        }
        const double d = static_cast<double>(observed[i]) - expected[i];
        chi2 += d * d / expected[i];
        ++dof;
    }
    if (pool_exp > 0.0) {
        const double d = pool_obs - pool_exp;
        chi2 += d * d / pool_exp;
        ++dof;
    }
    if (dof < 1) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

}  // namespace oracles
