#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rydmis {

using Objective = std::function<double(const std::vector<double>&)>;

enum class OptAlgorithm { nelder_mead, quasi_newton_fd };
enum class FdMode { forward, central };

struct OptimizerConfig {
    double step_tol = 1e-6;       // delta
    double objective_tol = 1e-6;  // epsilon
    std::size_t max_evals = 100000;
    OptAlgorithm algorithm = OptAlgorithm::quasi_newton_fd;
    FdMode fd_mode = FdMode::forward;
    double fd_increment = 0.0;  // 0: use step_tol as the increment
};

enum class OptStatus { converged_step, converged_objective, converged_both, max_evals, line_search_failed };

inline const char* to_string(OptStatus s) {
    switch (s) {
        case OptStatus::converged_step: return "converged_step";
        case OptStatus::converged_objective: return "converged_objective";
        case OptStatus::converged_both: return "converged_both";
        case OptStatus::max_evals: return "max_evals";
        case OptStatus::line_search_failed: return "line_search_failed";
    }
    return "?";
}

struct OptResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t evals = 0;
    OptStatus status = OptStatus::max_evals;
};

// Nelder-Mead simplex with the canonical coefficients (reflection 1,
// expansion 2, contraction 0.5, shrink 0.5). Initial simplex: x0 plus a
// displacement of 0.05 along each coordinate. Terminates when the simplex
// diameter is <= step_tol AND the objective spread is <= objective_tol
// (both, as for a derivative-free method), or at max_evals. Returns the
// best point seen across all evaluations.
inline OptResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                             const OptimizerConfig& cfg = {}) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty parameter vector");

    OptResult best;
    best.f = std::numeric_limits<double>::infinity();
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        double v = f(x);
        ++evals;
        if (v < best.f) {
            best.f = v;
            best.x = x;
        }
        return v;
    };

    std::vector<std::vector<double>> xs(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) xs[i + 1][i] += 0.05;
    std::vector<double> fs(n + 1);
    for (std::size_t i = 0; i <= n && evals < cfg.max_evals; ++i) fs[i] = eval(xs[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (evals < cfg.max_evals) {
        sort_simplex();
        const std::size_t ib = order[0], iw = order[n], is2 = order[n - 1];

        double diam = 0.0, spread = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            spread = std::max(spread, std::fabs(fs[i] - fs[ib]));
            for (std::size_t k = 0; k < n; ++k)
                diam = std::max(diam, std::fabs(xs[i][k] - xs[ib][k]));
        }
        if (diam <= cfg.step_tol && spread <= cfg.objective_tol) {
            best.status = OptStatus::converged_both;
            best.evals = evals;
            return best;
        }

        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != iw) s += xs[i][k];
            centroid[k] = s / static_cast<double>(n);
        }
        for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + (centroid[k] - xs[iw][k]);
        const double fr = eval(xr);

        if (fr < fs[ib]) {
            for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + 2.0 * (xr[k] - centroid[k]);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[iw] = xe;
                fs[iw] = fe;
            } else {
                xs[iw] = xr;
                fs[iw] = fr;
            }
        } else if (fr < fs[is2]) {
            xs[iw] = xr;
            fs[iw] = fr;
        } else if (fr < fs[iw]) {
            for (std::size_t k = 0; k < n; ++k) xc[k] = centroid[k] + 0.5 * (xr[k] - centroid[k]);
            const double fc = eval(xc);
            if (fc <= fr) {
                xs[iw] = xc;
                fs[iw] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == ib) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        xs[i][k] = xs[ib][k] + 0.5 * (xs[i][k] - xs[ib][k]);
                    fs[i] = eval(xs[i]);
                    if (evals >= cfg.max_evals) break;
                }
            }
        } else {
            for (std::size_t k = 0; k < n; ++k) xc[k] = centroid[k] - 0.5 * (centroid[k] - xs[iw][k]);
            const double fc = eval(xc);
            if (fc < fs[iw]) {
                xs[iw] = xc;
                fs[iw] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == ib) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        xs[i][k] = xs[ib][k] + 0.5 * (xs[i][k] - xs[ib][k]);
                    fs[i] = eval(xs[i]);
                    if (evals >= cfg.max_evals) break;
                }
            }
        }
    }
    best.status = OptStatus::max_evals;
    best.evals = evals;
    return best;
}

namespace detail {

inline std::vector<double> fd_gradient(const Objective& f, const std::vector<double>& x,
                                       double fx, double inc, FdMode mode, std::size_t& evals,
                                       std::size_t max_evals) {
    const std::size_t n = x.size();
    std::vector<double> g(n, 0.0);
    std::vector<double> xp = x;
    for (std::size_t i = 0; i < n && evals < max_evals; ++i) {
        if (mode == FdMode::forward) {
            xp[i] = x[i] + inc;
            const double fp = f(xp);
            ++evals;
            g[i] = (fp - fx) / inc;
        } else {
            xp[i] = x[i] + inc;
            const double fp = f(xp);
            xp[i] = x[i] - inc;
            const double fm = f(xp);
            evals += 2;
            g[i] = (fp - fm) / (2.0 * inc);
        }
        xp[i] = x[i];
    }
    return g;
}

}  // namespace detail

// BFGS quasi-Newton with finite-difference gradients (increment
// fd_increment, defaulting to step_tol) and a backtracking Armijo line
// search. Terminates when the accepted step is <= step_tol, OR the
// objective change is <= objective_tol, OR max_evals is exhausted.
inline OptResult quasi_newton_fd(const Objective& f, const std::vector<double>& x0,
                                 const OptimizerConfig& cfg = {}) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("quasi_newton_fd: empty parameter vector");
    const double inc = (cfg.fd_increment > 0.0) ? cfg.fd_increment : cfg.step_tol;

    OptResult best;
    best.f = std::numeric_limits<double>::infinity();
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        double v = f(x);
        ++evals;
        if (v < best.f) {
            best.f = v;
            best.x = x;
        }
        return v;
    };

    std::vector<double> x = x0;
    double fx = eval(x);
    // inverse Hessian approximation, row-major, starts as identity
    std::vector<double> hinv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) hinv[i * n + i] = 1.0;

    std::vector<double> g = detail::fd_gradient(f, x, fx, inc, cfg.fd_mode, evals, cfg.max_evals);
    std::vector<double> d(n), xn(n), gn(n), s(n), y(n), hy(n);

    while (evals < cfg.max_evals) {
        double dg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v += hinv[i * n + k] * g[k];
            d[i] = -v;
        }
        for (std::size_t i = 0; i < n; ++i) dg += d[i] * g[i];
        if (!(dg < 0.0)) {
            // curvature lost its positive definiteness: restart from steepest descent
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) hinv[i * n + k] = 0.0;
                hinv[i * n + i] = 1.0;
                d[i] = -g[i];
            }
            dg = 0.0;
            for (std::size_t i = 0; i < n; ++i) dg += d[i] * g[i];
            if (!(dg < 0.0)) {
                best.status = OptStatus::converged_step;  // zero gradient
                best.evals = evals;
                return best;
            }
        }

        constexpr double kArmijo = 1e-4;
        double step = 1.0;
        double fn = 0.0;
        bool accepted = false;
        while (evals < cfg.max_evals) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = x[i] + step * d[i];
            fn = eval(xn);
            if (fn <= fx + kArmijo * step * dg) {
                accepted = true;
                break;
            }
            step *= 0.5;
            if (step < 1e-14) break;
        }
        if (!accepted) {
            best.status = (evals >= cfg.max_evals) ? OptStatus::max_evals
                                                   : OptStatus::line_search_failed;
            best.evals = evals;
            return best;
        }

        double step_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - x[i];
            step_norm += s[i] * s[i];
        }
        step_norm = std::sqrt(step_norm);
        const double df = std::fabs(fn - fx);

        gn = detail::fd_gradient(f, xn, fn, inc, cfg.fd_mode, evals, cfg.max_evals);
        double ys = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = gn[i] - g[i];
            ys += y[i] * s[i];
        }
        if (ys > 1e-12) {
            // Hinv <- (I - r s y^T) Hinv (I - r y s^T) + r s s^T, r = 1/ys
            const double r = 1.0 / ys;
            for (std::size_t i = 0; i < n; ++i) {
                double v = 0.0;
                for (std::size_t k = 0; k < n; ++k) v += hinv[i * n + k] * y[k];
                hy[i] = v;
            }
            double yhy = 0.0;
            for (std::size_t i = 0; i < n; ++i) yhy += y[i] * hy[i];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    hinv[i * n + k] += -r * (s[i] * hy[k] + hy[i] * s[k]) +
                                       r * (1.0 + r * yhy) * s[i] * s[k];
        }

        x = xn;
        fx = fn;
        g = gn;
        if (step_norm <= cfg.step_tol) {
            best.status = OptStatus::converged_step;
            best.evals = evals;
            return best;
        }
        if (df <= cfg.objective_tol) {
            best.status = OptStatus::converged_objective;
            best.evals = evals;
            return best;
        }
    }
    best.status = OptStatus::max_evals;
    best.evals = evals;
    return best;
}

inline OptResult optimize(const Objective& f, const std::vector<double>& x0,
                          const OptimizerConfig& cfg) {
    return cfg.algorithm == OptAlgorithm::nelder_mead ? nelder_mead(f, x0, cfg)
                                                      : quasi_newton_fd(f, x0, cfg);
}

}  // namespace rydmis
