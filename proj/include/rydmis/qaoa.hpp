#pragma once

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rydmis/evolve.hpp"
#include "rydmis/optimize.hpp"
#include "rydmis/subspace.hpp"

namespace rydmis {

// Level-p variational parameters in the gamma/beta formulation:
// gamma in R^{p-1} (cost-phase angles), beta in R^p (drive durations).
struct QAOAParams {
    int p = 0;
    std::vector<double> gammas;  // length p-1
    std::vector<double> betas;   // length p

    void validate() const {
        if (p < 1 || gammas.size() != static_cast<std::size_t>(p - 1) ||
            betas.size() != static_cast<std::size_t>(p))
            throw std::invalid_argument("QAOAParams: length mismatch");
    }
};

// The same state as a sequence of p phased resonant pulses of duration t_k
// and phase phi_k.
struct PulseParams {
    int p = 0;
    std::vector<double> durations;  // t_k, length p
    std::vector<double> phases;     // phi_k, length p
};

// phi_k = sum_{j >= k} gamma_j (suffix sums, phi_p = 0), t_k = beta_k.
inline PulseParams to_pulse_params(const QAOAParams& q) {
    q.validate();
    PulseParams pp;
    pp.p = q.p;
    pp.durations = q.betas;
    pp.phases.assign(static_cast<std::size_t>(q.p), 0.0);
    double acc = 0.0;
    for (int k = q.p - 1; k >= 1; --k) {
        acc += q.gammas[static_cast<std::size_t>(k - 1)];
        pp.phases[static_cast<std::size_t>(k - 1)] = acc;
    }
    return pp;
}

// F_p = <psi|H_P|psi> at unit detuning: minus the mean independent-set size.
inline double objective_fp(const StateVector& psi) {
    const ISBasis& b = *psi.basis;
    double f = 0.0;
    for (std::size_t i = 0; i < b.dim(); ++i)
        f -= std::norm(psi.amp[i]) * set_size(b.states[i]);
    return f;
}

namespace detail {

// exp(-i gamma H_P) with H_P = -sum_v n_v: a diagonal phase e^{+i gamma |s|}.
inline void apply_cost_phase(const ISBasis& basis, double gamma, StateVector& psi) {
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        int sz = set_size(basis.states[i]);
        if (sz) psi.amp[i] *= std::polar(1.0, gamma * sz);
    }
}

}  // namespace detail

// Variational state in the gamma/beta formulation (drive and cost both at
// unit strength), built by alternating exact exponentials from the all-|0>
// state; k = 1 acts first. Drive exponentials use the matrix-free Taylor
// kernel.
inline StateVector qaoa_state(const ISBasis& basis, const ProjectedHamiltonian& h,
                              const QAOAParams& q, const PropagatorConfig& cfg = {}) {
    q.validate();
    StateVector psi = make_initial_state(basis);
    for (int k = 1; k <= q.p; ++k) {
        expm_apply_inplace(h, q.betas[static_cast<std::size_t>(k - 1)], 1.0, 0.0, 0.0, psi, cfg);
        if (k < q.p) detail::apply_cost_phase(basis, q.gammas[static_cast<std::size_t>(k - 1)], psi);
    }
    return psi;
}

// Variational state as a product of phased-drive pulses, k = 1 acting
// first. With the cost phases commuted onto the initial state, the phase
// phi_k multiplies the raising direction |1><0|, which is the lowering
// phase argument negated; this sign makes the suffix-sum identification
// with the gamma/beta formulation exact.
inline StateVector qaoa_state_pulses(const ISBasis& basis, const ProjectedHamiltonian& h,
                                     const PulseParams& pp, const PropagatorConfig& cfg = {}) {
    if (pp.durations.size() != static_cast<std::size_t>(pp.p) ||
        pp.phases.size() != static_cast<std::size_t>(pp.p))
        throw std::invalid_argument("PulseParams: length mismatch");
    StateVector psi = make_initial_state(basis);
    std::vector<Complex> term(h.dim), accum(h.dim);
    for (int k = 0; k < pp.p; ++k)
        detail::expm_apply(h, pp.durations[static_cast<std::size_t>(k)], 0.0,
                           -pp.phases[static_cast<std::size_t>(k)], psi.amp, term, accum,
                           cfg.taylor_order_cap);
    return psi;
}

// Seeding for level p+1 from optimized level-p parameters: endpoints are
// copied, interior entries are the convex combinations
//   gamma'_i = (i-1)/(p-1) gamma_{i-1} + (p-i)/(p-1) gamma_i,  2 <= i <= p-1
//   beta'_j  = (j-1)/p     beta_{j-1}  + (p-j+1)/p   beta_j,   2 <= j <= p
// (1-based indices into the new vectors).
inline QAOAParams interpolate_params(const QAOAParams& q) {
    q.validate();
    if (q.p < 2) throw std::invalid_argument("interpolate_params: requires p >= 2");
    const int p = q.p;
    QAOAParams out;
    out.p = p + 1;
    out.gammas.resize(static_cast<std::size_t>(p));
    out.betas.resize(static_cast<std::size_t>(p + 1));
    auto g = [&](int i) { return q.gammas[static_cast<std::size_t>(i - 1)]; };
    auto b = [&](int j) { return q.betas[static_cast<std::size_t>(j - 1)]; };
    out.gammas.front() = g(1);
    out.gammas.back() = g(p - 1);
    for (int i = 2; i <= p - 1; ++i)
        out.gammas[static_cast<std::size_t>(i - 1)] =
            (static_cast<double>(i - 1) * g(i - 1) + static_cast<double>(p - i) * g(i)) /
            static_cast<double>(p - 1);
    out.betas.front() = b(1);
    out.betas.back() = b(p);
    for (int j = 2; j <= p; ++j)
        out.betas[static_cast<std::size_t>(j - 1)] =
            (static_cast<double>(j - 1) * b(j - 1) + static_cast<double>(p - j + 1) * b(j)) /
            static_cast<double>(p);
    return out;
}

inline std::vector<double> pack_params(const QAOAParams& q) {
    std::vector<double> x;
    x.reserve(q.gammas.size() + q.betas.size());
    x.insert(x.end(), q.gammas.begin(), q.gammas.end());
    x.insert(x.end(), q.betas.begin(), q.betas.end());
    return x;
}

inline QAOAParams unpack_params(int p, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(2 * p - 1))
        throw std::invalid_argument("unpack_params: length mismatch");
    QAOAParams q;
    q.p = p;
    q.gammas.assign(x.begin(), x.begin() + (p - 1));
    q.betas.assign(x.begin() + (p - 1), x.end());
    return q;
}

// The educated-guess starting point for the level-3 optimization.
inline QAOAParams heuristic_seed_p3() {
    return QAOAParams{3, {1.73, -1.77}, {0.19, 1.02, 0.39}};
}

// Prepares variational states repeatedly for one instance. For small
// dimensions the drive Hamiltonian is diagonalized once (it is real
// symmetric) and every drive exponential becomes two real mat-vecs; above
// the threshold the Taylor kernel is used per pulse.
class QaoaEvolver {
public:
    QaoaEvolver(const ISBasis& basis, const ProjectedHamiltonian& h,
                std::size_t dense_threshold = 1500, PropagatorConfig cfg = {})
        : basis_(&basis), h_(&h), cfg_(cfg) {
        if (h.dim <= dense_threshold) {
            Eigen::MatrixXd hq = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(h.dim),
                                                       static_cast<Eigen::Index>(h.dim));
            for (const auto& e : h.hops) {
                hq(e.without, e.with) = 1.0;
                hq(e.with, e.without) = 1.0;
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hq);
            vecs_ = es.eigenvectors();
            vals_ = es.eigenvalues();
            dense_ = true;
        }
    }

    const ISBasis& basis() const { return *basis_; }

    StateVector state(const QAOAParams& q) const {
        q.validate();
        StateVector psi = make_initial_state(*basis_);
        for (int k = 1; k <= q.p; ++k) {
            apply_drive_exp(q.betas[static_cast<std::size_t>(k - 1)], psi);
            if (k < q.p)
                detail::apply_cost_phase(*basis_, q.gammas[static_cast<std::size_t>(k - 1)], psi);
        }
        return psi;
    }

    double objective(const QAOAParams& q) const { return objective_fp(state(q)); }

private:
    void apply_drive_exp(double beta, StateVector& psi) const {
        if (!dense_) {
            expm_apply_inplace(*h_, beta, 1.0, 0.0, 0.0, psi, cfg_);
            return;
        }
        const Eigen::Index d = vecs_.rows();
        Eigen::VectorXd re(d), im(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            re(i) = psi.amp[static_cast<std::size_t>(i)].real();
            im(i) = psi.amp[static_cast<std::size_t>(i)].imag();
        }
        Eigen::VectorXd zre = vecs_.transpose() * re;
        Eigen::VectorXd zim = vecs_.transpose() * im;
        for (Eigen::Index i = 0; i < d; ++i) {
            const double c = std::cos(beta * vals_(i)), s = std::sin(beta * vals_(i));
            const double r = zre(i), m = zim(i);
            zre(i) = c * r + s * m;   // multiply by e^{-i beta lambda}
            zim(i) = c * m - s * r;
        }
        re.noalias() = vecs_ * zre;
        im.noalias() = vecs_ * zim;
        for (Eigen::Index i = 0; i < d; ++i)
            psi.amp[static_cast<std::size_t>(i)] = Complex(re(i), im(i));
    }

    const ISBasis* basis_;
    const ProjectedHamiltonian* h_;
    PropagatorConfig cfg_;
    bool dense_ = false;
    Eigen::MatrixXd vecs_;
    Eigen::VectorXd vals_;
};

struct QaoaLevelResult {
    QAOAParams params;
    double f_p = 0.0;
    double p_mis = 0.0;
    std::size_t evals = 0;
    OptStatus status = OptStatus::max_evals;
    double wall_time_s = 0.0;
};

// The interpolation ladder: optimize level 3 from the fixed seed point,
// then seed each next level by linear interpolation of the previous
// optimum, up to p_max. A level whose optimization fails is recorded and
// the ladder continues from its best point. The objective defaults to the
// exact F_p; passing a custom evaluation (e.g. a measurement-noise
// estimator) reuses the same ladder.
inline std::vector<QaoaLevelResult> heuristic_schedule_optimize(
    const QaoaEvolver& evolver, int p_max, const OptimizerConfig& cfg,
    const std::function<double(const StateVector&)>& state_objective = objective_fp) {
    if (p_max < 3) throw std::invalid_argument("heuristic_schedule_optimize: p_max < 3");
    std::vector<QaoaLevelResult> trace;
    QAOAParams current = heuristic_seed_p3();
    for (int p = 3; p <= p_max; ++p) {
        const auto t0 = std::chrono::steady_clock::now();
        Objective f = [&](const std::vector<double>& x) {
            return state_objective(evolver.state(unpack_params(p, x)));
        };
        OptResult r = optimize(f, pack_params(current), cfg);
        QaoaLevelResult lev;
        lev.params = unpack_params(p, r.x);
        StateVector best_state = evolver.state(lev.params);
        lev.f_p = objective_fp(best_state);
        lev.p_mis = p_mis_of_state(best_state);
        lev.evals = r.evals;
        lev.status = r.status;
        lev.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        trace.push_back(lev);
        current = lev.params;
        if (p < p_max) current = interpolate_params(current);
    }
    return trace;
}

}  // namespace rydmis
