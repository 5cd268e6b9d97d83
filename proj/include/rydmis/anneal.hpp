#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydmis/errors.hpp"
#include "rydmis/evolve.hpp"
#include "rydmis/rng.hpp"
#include "rydmis/subspace.hpp"

namespace rydmis {

struct AnnealResult {
    StateVector final_state;
    double p_mis = 0.0;
    double approx_ratio = 0.0;
    double total_time = 0.0;
};

// One annealing sweep from the all-|0> state under the standard schedule.
// p_mis sums the weight of all maximum independent sets (degeneracy
// included); the approximation ratio is the mean measured set size over
// |MIS|.
inline AnnealResult run_qaa(const ISBasis& basis, const ProjectedHamiltonian& h, double omega0,
                            double delta0, double total_time,
                            const PropagatorConfig& cfg = {}) {
    StateVector psi = make_initial_state(basis);
    AnnealResult r;
    r.final_state = propagate(psi, h, Schedule{omega0, delta0, total_time}, cfg);
    r.p_mis = p_mis_of_state(r.final_state);
    r.approx_ratio = approximation_ratio_of_state(r.final_state);
    r.total_time = total_time;
    return r;
}

enum class LZOutcome {
    accepted,        // fit computed, R^2 >= threshold
    rejected_r2,     // fit computed, R^2 below threshold
    t_max_exceeded,  // doubling hit T_max before P_MIS crossed the threshold
    degenerate,      // all four fit points numerically at P_MIS = 1
};

inline const char* to_string(LZOutcome o) {
    switch (o) {
        case LZOutcome::accepted: return "accepted";
        case LZOutcome::rejected_r2: return "rejected_r2";
        case LZOutcome::t_max_exceeded: return "t_max_exceeded";
        case LZOutcome::degenerate: return "degenerate";
    }
    return "?";
}

struct LZFitResult {
    LZOutcome outcome = LZOutcome::t_max_exceeded;
    bool accepted = false;
    double t_lz = 0.0;
    double a = 0.0;         // fit intercept
    double r_squared = 0.0;
    double t_star = 0.0;    // first doubling time with P_MIS > threshold
    std::array<std::pair<double, double>, 4> fit_points{};  // (T, P_MIS)
    bool clamped = false;   // some P_MIS was clamped just below 1 before the log transform
};

struct LZConfig {
    double t_min = 5.0;
    double t_max = 16384.0;  // 2^14; the protocol itself never caps
    double p_threshold = 0.9;
    double r2_threshold = 0.99;
};

// Linear least squares of ln(1 - P_MIS) = a - T/T_LZ over the given points.
// Probabilities at or above 1 - 1e-12 are clamped there and flagged; a fit
// whose points are all clamped is reported degenerate.
inline LZFitResult fit_landau_zener(const std::array<std::pair<double, double>, 4>& points,
                                    double r2_threshold = 0.99) {
    LZFitResult r;
    r.fit_points = points;
    int n_clamped = 0;
    std::array<double, 4> xs{}, ys{};
    for (std::size_t k = 0; k < 4; ++k) {
        double p = points[k].second;
        if (p >= 1.0 - 1e-12) {
            p = 1.0 - 1e-12;
            ++n_clamped;
            r.clamped = true;
        }
        xs[k] = points[k].first;
        ys[k] = std::log(1.0 - p);
    }
    if (n_clamped == 4) {
        r.outcome = LZOutcome::degenerate;
        return r;
    }
    double sx = 0, sy = 0;
    for (int k = 0; k < 4; ++k) {
        sx += xs[k];
        sy += ys[k];
    }
    const double mx = sx / 4, my = sy / 4;
    double sxx = 0, sxy = 0, syy = 0;
    for (int k = 0; k < 4; ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    const double slope = sxy / sxx;  // = -1/T_LZ
    r.a = my - slope * mx;
    double ss_res = 0;
    for (int k = 0; k < 4; ++k) {
        const double e = ys[k] - (r.a + slope * xs[k]);
        ss_res += e * e;
    }
    r.r_squared = (syy > 0) ? 1.0 - ss_res / syy : 1.0;
    r.t_lz = (slope < 0) ? -1.0 / slope : std::numeric_limits<double>::infinity();
    r.accepted = std::isfinite(r.t_lz) && r.r_squared >= r2_threshold;
    r.outcome = r.accepted ? LZOutcome::accepted : LZOutcome::rejected_r2;
    return r;
}

// Adiabatic-timescale extraction protocol: double T from t_min until
// P_MIS(T) > 0.9 (that T is T*), evaluate P_MIS at 1.5 T*, 2 T*, 2.5 T*,
// and fit the Landau-Zener tail over the four points. Generic over the
// P_MIS(T) evaluation so the fitting protocol can be driven by synthetic
// curves in tests as well as by real sweeps.
inline LZFitResult extract_t_lz(const std::function<double(double)>& p_mis_of_T,
                                const LZConfig& cfg = {}) {
    double t_star = cfg.t_min;
    double p = p_mis_of_T(t_star);
    while (p <= cfg.p_threshold) {
        t_star *= 2.0;
        if (t_star > cfg.t_max) {
            LZFitResult r;
            r.outcome = LZOutcome::t_max_exceeded;
            return r;
        }
        p = p_mis_of_T(t_star);
    }
    std::array<std::pair<double, double>, 4> pts{{{t_star, p},
                                                  {1.5 * t_star, p_mis_of_T(1.5 * t_star)},
                                                  {2.0 * t_star, p_mis_of_T(2.0 * t_star)},
                                                  {2.5 * t_star, p_mis_of_T(2.5 * t_star)}}};
    LZFitResult r = fit_landau_zener(pts, cfg.r2_threshold);
    r.t_star = t_star;
    return r;
}

inline LZFitResult extract_t_lz(const ISBasis& basis, const ProjectedHamiltonian& h,
                                double omega0, double delta0, const PropagatorConfig& pcfg = {},
                                const LZConfig& lzcfg = {}) {
    return extract_t_lz(
        [&](double T) { return run_qaa(basis, h, omega0, delta0, T, pcfg).p_mis; }, lzcfg);
}

enum class SweepMode { t_lz, p_mis_at_fixed_T, approx_ratio_at_fixed_T };

inline const char* to_string(SweepMode m) {
    switch (m) {
        case SweepMode::t_lz: return "t_lz";
        case SweepMode::p_mis_at_fixed_T: return "p_mis_at_fixed_T";
        case SweepMode::approx_ratio_at_fixed_T: return "approx_ratio_at_fixed_T";
    }
    return "?";
}

// One instance row of the hardness sweep. Fields not meaningful for the
// mode (or for skipped instances) stay NaN.
struct SweepRecord {
    int n = 0;
    double rho = 0.0;
    std::uint64_t seed = 0;
    std::size_t dim_is = 0;
    int mis_size = 0;
    SweepMode mode = SweepMode::t_lz;
    double t_or_tstar = std::numeric_limits<double>::quiet_NaN();
    double p_mis = std::numeric_limits<double>::quiet_NaN();
    double approx_ratio = std::numeric_limits<double>::quiet_NaN();
    double t_lz = std::numeric_limits<double>::quiet_NaN();
    double a = std::numeric_limits<double>::quiet_NaN();
    double r_squared = std::numeric_limits<double>::quiet_NaN();
    bool accepted = false;
    std::string skip_reason;  // empty when the instance contributed a value
    double wall_time_s = 0.0;
};

struct SweepCellSummary {
    int n = 0;
    double rho = 0.0;
    SweepMode mode = SweepMode::t_lz;
    std::size_t n_instances = 0;
    std::size_t n_skipped = 0;
    double median = std::numeric_limits<double>::quiet_NaN();
};

inline double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return (v.size() % 2) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct SweepConfig {
    double omega0 = 1.0;
    double delta0 = 6.0;
    double fixed_T = 10.0;
    std::uint64_t master_seed = 1;
    std::size_t dim_cap = (1ull << 22);
    PropagatorConfig prop{};
    LZConfig lz{};
};

// Evaluate one sweep instance. Instance seeds derive from the master seed
// and the global instance index, so a cell's records do not depend on
// which worker ran them.
inline SweepRecord sweep_instance(int n, double rho, std::uint64_t instance_seed, SweepMode mode,
                                  const SweepConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.n = n;
    rec.rho = rho;
    rec.seed = instance_seed;
    rec.mode = mode;
    try {
        UDGraph g = generate_random_udgraph(n, rho, instance_seed);
        ISBasis basis = build_is_basis(g, cfg.dim_cap);
        rec.dim_is = basis.dim();
        rec.mis_size = basis.mis_size();
        ProjectedHamiltonian h = build_projected_hamiltonian(basis);
        if (mode == SweepMode::t_lz) {
            LZFitResult lz = extract_t_lz(basis, h, cfg.omega0, cfg.delta0, cfg.prop, cfg.lz);
            rec.t_or_tstar = lz.t_star;
            rec.t_lz = lz.t_lz;
            rec.a = lz.a;
            rec.r_squared = lz.r_squared;
            rec.accepted = lz.accepted;
            if (!lz.accepted) rec.skip_reason = to_string(lz.outcome);
        } else {
            AnnealResult ar = run_qaa(basis, h, cfg.omega0, cfg.delta0, cfg.fixed_T, cfg.prop);
            rec.t_or_tstar = cfg.fixed_T;
            rec.p_mis = ar.p_mis;
            rec.approx_ratio = ar.approx_ratio;
            rec.accepted = true;
        }
    } catch (const CapExceededError&) {
        rec.skip_reason = "dim_cap";
    }
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline double sweep_record_value(const SweepRecord& rec) {
    switch (rec.mode) {
        case SweepMode::t_lz: return rec.t_lz;
        case SweepMode::p_mis_at_fixed_T: return rec.p_mis;
        case SweepMode::approx_ratio_at_fixed_T: return rec.approx_ratio;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Aggregate per-cell medians over the accepted instances; skipped
// instances (cap or fit rejection) are counted, not silently dropped.
inline std::vector<SweepCellSummary> summarize_sweep(const std::vector<SweepRecord>& records) {
    std::vector<SweepCellSummary> cells;
    auto find_cell = [&](const SweepRecord& r) -> SweepCellSummary& {
        for (auto& c : cells)
            if (c.n == r.n && c.rho == r.rho && c.mode == r.mode) return c;
        cells.push_back({r.n, r.rho, r.mode, 0, 0, 0.0});
        return cells.back();
    };
    std::vector<std::vector<double>> values;
    for (const auto& r : records) {
        SweepCellSummary& c = find_cell(r);
        std::size_t idx = static_cast<std::size_t>(&c - cells.data());
        if (values.size() < cells.size()) values.resize(cells.size());
        ++c.n_instances;
        if (r.accepted)
            values[idx].push_back(sweep_record_value(r));
        else
            ++c.n_skipped;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].median = median_of(values[i]);
    return cells;
}

}  // namespace rydmis
