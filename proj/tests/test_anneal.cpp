#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rydmis/anneal.hpp"
#include "rydmis/rng.hpp"

using namespace rydmis;

namespace {
UDGraph path3() { return udgraph_from_edges(3, {{0, 1}, {1, 2}}); }
}  // namespace

TEST_CASE("QAA on a single vertex is adiabatic at T = 100") {
    ISBasis b = build_is_basis(udgraph_from_edges(1, {}));
    ProjectedHamiltonian h = build_projected_hamiltonian(b);
    AnnealResult r = run_qaa(b, h, 1.0, 6.0, 100.0);
    CHECK(r.p_mis >= 0.99);
    CHECK(r.approx_ratio == doctest::Approx(r.p_mis).epsilon(1e-9));  // |MIS| = 1
}

TEST_CASE("QAA at vanishing T does not move the state") {
    ISBasis b = build_is_basis(path3());
    ProjectedHamiltonian h = build_projected_hamiltonian(b);
    AnnealResult r = run_qaa(b, h, 1.0, 6.0, 1e-6);
    CHECK(std::norm(r.final_state.amp[0]) > 1.0 - 1e-9);
    CHECK(r.p_mis < 1e-9);
    CHECK(r.approx_ratio < 1e-9);
}

TEST_CASE("QAA on the path graph concentrates on {0,2}") {
    ISBasis b = build_is_basis(path3());
    ProjectedHamiltonian h = build_projected_hamiltonian(b);
    AnnealResult r = run_qaa(b, h, 1.0, 6.0, 200.0);
    CHECK(r.p_mis >= 0.99);
    CHECK(std::norm(r.final_state.amp[4]) >= 0.99);
}

TEST_CASE("probabilities are exhaustive and the ratio dominates p_mis") {
    Rng rng(555);
    for (int it = 0; it < 4; ++it) {
        UDGraph g = generate_random_udgraph(10, 3.0, rng.next_u64());
        ISBasis b = build_is_basis(g);
        ProjectedHamiltonian h = build_projected_hamiltonian(b);
        AnnealResult r = run_qaa(b, h, 1.0, 6.0, 5.0 + 10.0 * rng.next_double());
        double total = 0;
        for (const auto& a : r.final_state.amp) total += std::norm(a);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.approx_ratio >= r.p_mis - 1e-9);
        CHECK(r.approx_ratio <= 1.0 + 1e-9);
        CHECK(r.p_mis >= 0.0);
    }
}

TEST_CASE("Landau-Zener fit recovers its own model exactly") {
    auto p_of = [](double T) { return 1.0 - std::exp(0.2 - T / 7.0); };
    LZFitResult r = extract_t_lz(p_of);
    CHECK(r.outcome == LZOutcome::accepted);
    CHECK(r.t_star == doctest::Approx(20.0));  // 5 -> 10 -> 20 crosses 0.9
    CHECK(r.t_lz == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(r.a == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Landau-Zener protocol control-flow outcomes") {
    LZConfig cfg;
    cfg.t_max = 100.0;
    LZFitResult stuck = extract_t_lz([](double) { return 0.5; }, cfg);
    CHECK(stuck.outcome == LZOutcome::t_max_exceeded);
    CHECK_FALSE(stuck.accepted);

    LZFitResult flat = extract_t_lz([](double) { return 1.0; });
    CHECK(flat.outcome == LZOutcome::degenerate);
    CHECK_FALSE(flat.accepted);

    // a noisy, non-exponential curve is rejected by the R^2 filter
    std::array<std::pair<double, double>, 4> bad{{{10, 0.91}, {15, 0.99}, {20, 0.92}, {25, 0.995}}};
    LZFitResult rej = fit_landau_zener(bad);
    CHECK(rej.outcome == LZOutcome::rejected_r2);
}

TEST_CASE("single-vertex timescale agrees with the dense-oracle protocol") {
    // The single vertex is already deep in the adiabatic regime at T* = 5
    // (P > 0.97), so the residual 1 - P is dominated by Landau-Zener
    // oscillations and the exponential fit lands below the R^2 filter.
    // The derived content is that the extraction protocol reproduces the
    // dense two-level oracle point for point.
    ISBasis b = build_is_basis(udgraph_from_edges(1, {}));
    ProjectedHamiltonian h = build_projected_hamiltonian(b);
    LZFitResult lib = extract_t_lz(b, h, 1.0, 6.0);
    CHECK(lib.t_lz > 0.0);
    CHECK(lib.t_lz < 10.0);  // order 1/Omega0

    // same protocol, fit points computed by the RK4 dense oracle
    auto p_oracle = [&](double T) {
        Schedule s{1.0, 6.0, T};
        auto dense = [&](double t) {
            DriveValues f = schedule_eval(s, t);
            return oracles::dense_hamiltonian(b, f.omega, f.delta);
        };
        Eigen::VectorXcd v(2);
        v << Complex(1, 0), Complex(0, 0);
        Eigen::VectorXcd out =
            oracles::rk4_propagate(dense, v, T, std::max(2000, static_cast<int>(T * 2000)));
        return std::norm(out(1));
    };
    LZFitResult ref = extract_t_lz(p_oracle);
    CHECK(lib.outcome == ref.outcome);
    CHECK(lib.t_star == doctest::Approx(ref.t_star));
    for (int k = 0; k < 4; ++k)
        CHECK(lib.fit_points[k].second ==
              doctest::Approx(ref.fit_points[k].second).epsilon(1e-6));
    CHECK(lib.t_lz == doctest::Approx(ref.t_lz).epsilon(1e-3));
    CHECK(lib.a == doctest::Approx(ref.a).epsilon(1e-2));

    // adiabaticity grows along the fit points
    CHECK(lib.fit_points[0].second <= lib.fit_points[3].second + 1e-2);
}

TEST_CASE("clamping flags near-unity fit points") {
    std::array<std::pair<double, double>, 4> pts{
        {{10, 0.95}, {15, 0.99}, {20, 1.0}, {25, 0.9999}}};
    LZFitResult r = fit_landau_zener(pts);
    CHECK(r.clamped);
}

TEST_CASE("hardness sweep: empty grid, consistency, determinism") {
    SweepConfig cfg;
    std::vector<SweepRecord> recs;

    // empty rho list: no records
    CHECK(summarize_sweep(recs).empty());

    // single-vertex cell reproduces extract_t_lz
    SweepRecord rec = sweep_instance(1, 1.0, 42, SweepMode::t_lz, cfg);
    ISBasis b = build_is_basis(udgraph_from_edges(1, {}));
    ProjectedHamiltonian h = build_projected_hamiltonian(b);
    LZFitResult lz = extract_t_lz(b, h, cfg.omega0, cfg.delta0, cfg.prop, cfg.lz);
    CHECK(rec.accepted == lz.accepted);
    CHECK(rec.t_lz == doctest::Approx(lz.t_lz).epsilon(1e-12));
    CHECK(rec.dim_is == 2);
    CHECK(rec.mis_size == 1);

    // identical (seed, config) gives identical records
    SweepRecord again = sweep_instance(1, 1.0, 42, SweepMode::t_lz, cfg);
    CHECK(rec.t_lz == again.t_lz);
    CHECK(rec.a == again.a);
    CHECK(rec.r_squared == again.r_squared);

    // p_mis mode fills the fixed-T fields
    SweepRecord pm = sweep_instance(8, 2.0, 7, SweepMode::p_mis_at_fixed_T, cfg);
    CHECK(pm.accepted);
    CHECK(pm.t_or_tstar == doctest::Approx(cfg.fixed_T));
    CHECK(pm.p_mis >= 0.0);
    CHECK(pm.p_mis <= 1.0);

    // cap skips are counted
    SweepConfig tiny = cfg;
    tiny.dim_cap = 4;
    SweepRecord sk = sweep_instance(12, 1.0, 3, SweepMode::t_lz, tiny);
    CHECK_FALSE(sk.accepted);
    CHECK(sk.skip_reason == "dim_cap");
    auto cells = summarize_sweep({rec, again, sk});
    REQUIRE(cells.size() == 2);
    CHECK(cells[1].n_skipped == 1);
    CHECK(std::isnan(cells[1].median));
}

TEST_CASE("median helper") {
    CHECK(median_of({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
    CHECK(median_of({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
    CHECK(std::isnan(median_of({})));
}
