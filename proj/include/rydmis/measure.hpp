#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydmis/anneal.hpp"
#include "rydmis/qaoa.hpp"
#include "rydmis/rng.hpp"
#include "rydmis/subspace.hpp"

namespace rydmis {

struct MeasurementRecord {
    VertexSet outcome = 0;
    int is_size = 0;
    std::uint64_t sequence_index = 0;  // global measurement counter m within an experiment
};

// Precomputed cumulative Born-rule distribution of a state; draws are a
// binary search per measurement.
class DiscreteSampler {
public:
    explicit DiscreteSampler(const StateVector& psi) : basis_(psi.basis) {
        cum_.resize(psi.dim());
        double acc = 0.0;
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            acc += std::norm(psi.amp[i]);
            cum_[i] = acc;
        }
        // guard against rounding: the last bucket absorbs the remainder
        if (!cum_.empty()) cum_.back() = std::max(cum_.back(), 1.0);
    }

    MeasurementRecord sample(Rng& rng) const {
        const double u = rng.next_double();
        const std::size_t i = static_cast<std::size_t>(
            std::lower_bound(cum_.begin(), cum_.end(), u,
                             [](double c, double val) { return c <= val; }) -
            cum_.begin());
        const VertexSet s = basis_->states[std::min(i, cum_.size() - 1)];
        return {s, set_size(s), 0};
    }

private:
    const ISBasis* basis_;
    std::vector<double> cum_;
};

// One projective measurement in the independent-set basis.
inline MeasurementRecord sample_measurement(const StateVector& psi, Rng& rng) {
    return DiscreteSampler(psi).sample(rng);
}

struct NoisyEstimate {
    double mean = 0.0;   // sample mean of f = -(outcome size)
    std::size_t m_used = 0;
    double sem = 0.0;    // Bessel-corrected standard error of the mean
    bool capped = false; // budget ran out before the SEM criterion was met
};

// Estimate F_p from simulated measurements: draw f_i = -(measured set
// size) until the standard error of the mean sqrt(sum (f_i - mean)^2 /
// (M(M-1))) falls to eps_m or below, with a floor of at least 10
// measurements. Welford accumulation keeps the running variance stable.
// The observer sees every raw measurement (for experiment histories).
inline NoisyEstimate estimate_objective(
    const DiscreteSampler& sampler, double eps_m, Rng& rng,
    std::size_t budget_cap = static_cast<std::size_t>(-1),
    const std::function<void(const MeasurementRecord&)>& observer = {}) {
    if (eps_m <= 0.0) throw std::invalid_argument("estimate_objective: eps_m must be > 0");
    NoisyEstimate est;
    double mean = 0.0, m2 = 0.0;
    std::size_t m = 0;
    while (true) {
        if (m >= budget_cap) {
            est.capped = true;
            break;
        }
        MeasurementRecord rec = sampler.sample(rng);
        if (observer) observer(rec);
        ++m;
        const double f = -static_cast<double>(rec.is_size);
        const double d1 = f - mean;
        mean += d1 / static_cast<double>(m);
        m2 += d1 * (f - mean);
        if (m >= 10) {
            const double sem =
                std::sqrt(m2 / (static_cast<double>(m) * static_cast<double>(m - 1)));
            if (sem <= eps_m) {
                est.sem = sem;
                break;
            }
            est.sem = sem;
        }
    }
    est.mean = mean;
    est.m_used = m;
    return est;
}

inline NoisyEstimate estimate_objective(const StateVector& psi, double eps_m, Rng& rng,
                                        std::size_t budget_cap = static_cast<std::size_t>(-1)) {
    DiscreteSampler sampler(psi);
    return estimate_objective(sampler, eps_m, rng, budget_cap);
}

enum class MeasurementPhase { objective_eval, final_sampling };

inline const char* to_string(MeasurementPhase p) {
    return p == MeasurementPhase::objective_eval ? "objective_eval" : "final_sampling";
}

struct HistoryEntry {
    MeasurementRecord rec;
    MeasurementPhase phase = MeasurementPhase::objective_eval;
    int level_p = 0;
};

struct ExperimentHistory {
    std::vector<HistoryEntry> entries;

    // largest independent set seen up to and including measurement m (1-based)
    std::vector<int> best_is_curve() const {
        std::vector<int> best(entries.size());
        int cur = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            cur = std::max(cur, entries[i].rec.is_size);
            best[i] = cur;
        }
        return best;
    }

    // first m at which a set of the given size was measured; 0 if never
    std::uint64_t first_hit(int target_size) const {
        for (const auto& e : entries)
            if (e.rec.is_size >= target_size) return e.rec.sequence_index;
        return 0;
    }
};

enum class QaoaSeedMode { heuristic, random };

struct NoisyQaoaConfig {
    int p = 3;
    double eps = 0.2;      // optimizer objective tolerance
    double delta = 0.2;    // optimizer step tolerance (and FD increment)
    double eps_m = 0.05;   // measurement precision
    QaoaSeedMode seed_mode = QaoaSeedMode::heuristic;
    OptAlgorithm algorithm = OptAlgorithm::nelder_mead;
    std::size_t measurement_budget = 10000;
    bool final_sampling = true;  // spend leftover budget measuring the optimized state
};

// Closed-loop simulated experiment: a classical optimizer minimizes the
// measured objective, every objective evaluation consumes real simulated
// measurements, and the full measurement log is kept. Random seeding draws
// gamma from [-2,2) and beta from [0,2) per entry.
inline ExperimentHistory run_noisy_qaoa_experiment(const QaoaEvolver& evolver,
                                                   const NoisyQaoaConfig& cfg, Rng& rng) {
    if (cfg.measurement_budget == 0)
        throw std::invalid_argument("run_noisy_qaoa_experiment: budget must be > 0");
    ExperimentHistory hist;
    std::uint64_t counter = 0;

    QAOAParams seed;
    if (cfg.seed_mode == QaoaSeedMode::heuristic) {
        if (cfg.p != 3) throw std::invalid_argument("heuristic seed point is defined at p=3");
        seed = heuristic_seed_p3();
    } else {
        seed.p = cfg.p;
        for (int k = 0; k < cfg.p - 1; ++k) seed.gammas.push_back(rng.next_double(-2.0, 2.0));
        for (int k = 0; k < cfg.p; ++k) seed.betas.push_back(rng.next_double(0.0, 2.0));
    }

    struct BudgetExhausted {};
    auto log_measurement = [&](const MeasurementRecord& rec, MeasurementPhase phase) {
        MeasurementRecord r = rec;
        r.sequence_index = ++counter;
        hist.entries.push_back({r, phase, cfg.p});
    };

    Objective noisy_objective = [&](const std::vector<double>& x) {
        StateVector psi = evolver.state(unpack_params(cfg.p, x));
        DiscreteSampler sampler(psi);
        if (counter >= cfg.measurement_budget) throw BudgetExhausted{};
        NoisyEstimate est = estimate_objective(
            sampler, cfg.eps_m, rng, cfg.measurement_budget - counter,
            [&](const MeasurementRecord& rec) {
                log_measurement(rec, MeasurementPhase::objective_eval);
            });
        if (est.capped) throw BudgetExhausted{};
        return est.mean;
    };

    OptimizerConfig ocfg;
    ocfg.step_tol = cfg.delta;
    ocfg.objective_tol = cfg.eps;
    ocfg.fd_increment = cfg.delta;
    ocfg.algorithm = cfg.algorithm;
    std::vector<double> xbest = pack_params(seed);
    try {
        OptResult r = optimize(noisy_objective, xbest, ocfg);
        xbest = r.x;
    } catch (const BudgetExhausted&) {
        return hist;  // clean partial history
    }

    if (cfg.final_sampling && counter < cfg.measurement_budget) {
        StateVector psi = evolver.state(unpack_params(cfg.p, xbest));
        DiscreteSampler sampler(psi);
        while (counter < cfg.measurement_budget)
            log_measurement(sampler.sample(rng), MeasurementPhase::final_sampling);
    }
    return hist;
}

// Repeated projective measurements of one annealed state.
inline ExperimentHistory run_noisy_qaa_experiment(const ISBasis& basis,
                                                  const ProjectedHamiltonian& h, double omega0,
                                                  double delta0, double total_time,
                                                  std::size_t n_repeats, Rng& rng,
                                                  const PropagatorConfig& pcfg = {}) {
    if (total_time <= 0.0) throw std::invalid_argument("run_noisy_qaa_experiment: T must be > 0");
    AnnealResult ar = run_qaa(basis, h, omega0, delta0, total_time, pcfg);
    DiscreteSampler sampler(ar.final_state);
    ExperimentHistory hist;
    for (std::size_t m = 1; m <= n_repeats; ++m) {
        MeasurementRecord rec = sampler.sample(rng);
        rec.sequence_index = m;
        hist.entries.push_back({rec, MeasurementPhase::final_sampling, 0});
    }
    return hist;
}

// Mean best-IS curve over experiments; shorter histories are extended by
// their last value so every trajectory contributes at every m.
inline std::vector<double> mean_best_is_curves(const std::vector<std::vector<int>>& curves) {
    std::size_t len = 0;
    for (const auto& c : curves) len = std::max(len, c.size());
    std::vector<double> mean(len, 0.0);
    if (curves.empty()) return mean;
    for (const auto& c : curves)
        for (std::size_t m = 0; m < len; ++m)
            mean[m] += c.empty() ? 0.0 : static_cast<double>(m < c.size() ? c[m] : c.back());
    for (auto& v : mean) v /= static_cast<double>(curves.size());
    return mean;
}

}  // namespace rydmis
