#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydmis/anneal.hpp"
#include "rydmis/csvio.hpp"
#include "rydmis/errors.hpp"
#include "rydmis/evolve.hpp"
#include "rydmis/exactmis.hpp"
#include "rydmis/graph_io.hpp"
#include "rydmis/measure.hpp"
#include "rydmis/parallel.hpp"
#include "rydmis/qaoa.hpp"
#include "rydmis/rng.hpp"
#include "rydmis/subspace.hpp"
#include "rydmis/udgraph.hpp"

namespace rydmis::cli {

// Exit codes: 0 ok, 2 invalid input, 3 resource cap exceeded, 4 internal failure.
enum ExitCode : int { exit_ok = 0, exit_invalid = 2, exit_cap = 3, exit_internal = 4 };

struct RunConfig {
    std::string command;

    // graph source: either a file or (n, rho, seed)
    std::string graph_file;
    int n = 0;
    double rho = 0.0;
    std::uint64_t seed = 0;

    // drive parameters; delta0 defaults to 6 * omega0 when not given
    double omega0 = 1.0;
    double delta0 = std::numeric_limits<double>::quiet_NaN();
    double total_time = 10.0;

    // propagator
    double max_step = 0.01;
    double step_tol = 1e-8;

    // Landau-Zener protocol
    double t_min = 5.0;
    double t_max = 16384.0;

    // optimizer tolerances (noiseless defaults; the noisy loop has its own)
    double eps = 1e-6;
    double delta = 1e-6;
    double eps_m = 0.05;
    int p_max = 10;
    int p = 3;

    // resource caps
    std::size_t dim_cap = (1ull << 22);
    std::size_t budget = 10000;
    double time_limit_s = 3600.0;

    // sweep grid
    std::vector<int> n_list;
    std::vector<double> rho_list;
    int seeds_per_cell = 30;
    std::string mode = "t_lz";
    double fixed_T = 10.0;

    // noisy experiments
    int streams = 1;
    std::string seed_mode = "heuristic";
    std::size_t repeats = 1000;

    // common
    std::string out = "out.csv";
    std::uint64_t master_seed = 1;
    unsigned workers = 0;  // 0: use RYDMIS_WORKERS or 1
    bool emit_plot_script = false;

    double resolved_delta0() const { return std::isnan(delta0) ? 6.0 * omega0 : delta0; }

    unsigned resolved_workers() const {
        if (workers > 0) return workers;
        if (const char* env = std::getenv("RYDMIS_WORKERS")) {
            int w = std::atoi(env);
            if (w > 0) return static_cast<unsigned>(w);
        }
        return 1;
    }

    PropagatorConfig prop_config() const { return PropagatorConfig{step_tol, max_step, 64}; }

    SweepMode sweep_mode() const {
        if (mode == "t_lz") return SweepMode::t_lz;
        if (mode == "p_mis_at_fixed_T") return SweepMode::p_mis_at_fixed_T;
        if (mode == "approx_ratio_at_fixed_T") return SweepMode::approx_ratio_at_fixed_T;
        throw std::invalid_argument("unknown sweep mode: " + mode);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        if (!graph_file.empty()) j["graph"] = graph_file;
        j["n"] = n;
        j["rho"] = rho;
        j["seed"] = seed;
        j["omega0"] = omega0;
        j["delta0"] = resolved_delta0();
        j["T"] = total_time;
        j["max_step"] = max_step;
        j["step_tol"] = step_tol;
        j["t_min"] = t_min;
        j["t_max"] = t_max;
        j["eps"] = eps;
        j["delta"] = delta;
        j["eps_m"] = eps_m;
        j["p_max"] = p_max;
        j["p"] = p;
        j["dim_cap"] = dim_cap;
        j["budget"] = budget;
        j["time_limit_s"] = time_limit_s;
        j["n_list"] = n_list;
        j["rho_list"] = rho_list;
        j["seeds_per_cell"] = seeds_per_cell;
        j["mode"] = mode;
        j["fixed_T"] = fixed_T;
        j["streams"] = streams;
        j["seed_mode"] = seed_mode;
        j["repeats"] = repeats;
        j["out"] = out;
        j["master_seed"] = master_seed;
        j["workers"] = resolved_workers();
        return j;
    }
};

namespace detail_cli {

inline std::string bool_cell(bool b) { return b ? "true" : "false"; }

inline std::string mask_hex(VertexSet s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(s));
    return buf;
}

inline UDGraph acquire_graph(const RunConfig& cfg) {
    if (!cfg.graph_file.empty()) return load_udgraph(cfg.graph_file);
    if (cfg.n <= 0) throw std::invalid_argument("graph spec required: --graph or --n/--rho/--seed");
    return generate_random_udgraph(cfg.n, cfg.rho, cfg.seed);
}

inline void emit_plot_script(const std::string& csv_path) {
    std::ofstream f(csv_path + ".plot.py", std::ios::binary);
    f << "#!/usr/bin/env python3\n"
         "# Self-contained quick-look plot for a rydmis CSV file.\n"
         "import csv, sys\n"
         "import matplotlib\n"
         "matplotlib.use('Agg')\n"
         "import matplotlib.pyplot as plt\n\n"
         "path = sys.argv[1] if len(sys.argv) > 1 else '"
      << csv_path
      << "'\n"
         "with open(path) as fh:\n"
         "    rows = [r for r in csv.reader(l for l in fh if not l.startswith('#'))]\n"
         "header, data = rows[0], rows[1:]\n"
         "num = {}\n"
         "for j, name in enumerate(header):\n"
         "    try:\n"
         "        num[name] = [float(r[j]) for r in data]\n"
         "    except ValueError:\n"
         "        pass\n"
         "keys = [k for k in num if k not in ('n', 'seed', 'm')]\n"
         "x = num.get('m') or num.get('T') or list(range(len(data)))\n"
         "for k in keys:\n"
         "    plt.plot(x, num[k], label=k, marker='.', ls='')\n"
         "plt.legend(fontsize=6)\n"
         "plt.savefig(path + '.png', dpi=150)\n"
         "print('wrote', path + '.png')\n";
}

inline std::string graph_cell_rho(const UDGraph& g) {
    return g.seed ? csv_double(g.rho) : "";
}

inline std::string graph_cell_seed(const UDGraph& g) {
    return g.seed ? std::to_string(*g.seed) : "";
}

inline int cmd_gen(const RunConfig& cfg) {
    if (cfg.n <= 0) throw std::invalid_argument("gen: --n must be >= 1");
    UDGraph g = generate_random_udgraph(cfg.n, cfg.rho, cfg.seed);
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + cfg.out);
    f << udgraph_to_json(g, cfg.to_json().dump());
    return exit_ok;
}

inline int cmd_solve(const RunConfig& cfg) {
    UDGraph g = detail_cli::acquire_graph(cfg);
    MISResult r = branch_and_bound_mis(g, std::chrono::duration<double>(cfg.time_limit_s));
    CsvWriter w(cfg.out,
                {"n", "rho", "seed", "mis_size", "nodes_explored", "wall_time_s", "optimal"},
                cfg.to_json().dump());
    w.row({std::to_string(g.n), graph_cell_rho(g), graph_cell_seed(g), std::to_string(r.size),
           std::to_string(r.nodes_explored), csv_double(r.wall_time_s), bool_cell(r.optimal)});
    return exit_ok;
}

inline int cmd_anneal(const RunConfig& cfg) {
    UDGraph g = acquire_graph(cfg);
    ISBasis basis = build_is_basis(g, cfg.dim_cap);
    ProjectedHamiltonian h = build_projected_hamiltonian(basis);
    const auto t0 = std::chrono::steady_clock::now();
    AnnealResult r =
        run_qaa(basis, h, cfg.omega0, cfg.resolved_delta0(), cfg.total_time, cfg.prop_config());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CsvWriter w(cfg.out,
                {"n", "rho", "seed", "dim_is", "mis_size", "T", "p_mis", "approx_ratio",
                 "wall_time_s"},
                cfg.to_json().dump());
    w.row({std::to_string(g.n), graph_cell_rho(g), graph_cell_seed(g),
           std::to_string(basis.dim()), std::to_string(basis.mis_size()),
           csv_double(r.total_time), csv_double(r.p_mis), csv_double(r.approx_ratio),
           csv_double(wall)});
    return exit_ok;
}

inline int cmd_lz(const RunConfig& cfg) {
    UDGraph g = acquire_graph(cfg);
    ISBasis basis = build_is_basis(g, cfg.dim_cap);
    ProjectedHamiltonian h = build_projected_hamiltonian(basis);
    const auto t0 = std::chrono::steady_clock::now();
    LZConfig lzc;
    lzc.t_min = cfg.t_min;
    lzc.t_max = cfg.t_max;
    LZFitResult r =
        extract_t_lz(basis, h, cfg.omega0, cfg.resolved_delta0(), cfg.prop_config(), lzc);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream pts;
    for (int k = 0; k < 4; ++k) {
        if (k) pts << ';';
        pts << csv_double(r.fit_points[k].first) << ':' << csv_double(r.fit_points[k].second);
    }
    CsvWriter w(cfg.out,
                {"n", "rho", "seed", "dim_is", "mis_size", "t_star", "t_lz", "a", "r_squared",
                 "accepted", "outcome", "fit_points", "wall_time_s"},
                cfg.to_json().dump());
    w.row({std::to_string(g.n), graph_cell_rho(g), graph_cell_seed(g),
           std::to_string(basis.dim()), std::to_string(basis.mis_size()), csv_double(r.t_star),
           csv_double(r.t_lz), csv_double(r.a), csv_double(r.r_squared), bool_cell(r.accepted),
           to_string(r.outcome), pts.str(), csv_double(wall)});
    return exit_ok;
}

inline int cmd_sweep(const RunConfig& cfg) {
    SweepConfig sc;
    sc.omega0 = cfg.omega0;
    sc.delta0 = cfg.resolved_delta0();
    sc.fixed_T = cfg.fixed_T;
    sc.master_seed = cfg.master_seed;
    sc.dim_cap = cfg.dim_cap;
    sc.prop = cfg.prop_config();
    sc.lz.t_min = cfg.t_min;
    sc.lz.t_max = cfg.t_max;
    const SweepMode mode = cfg.sweep_mode();
    if (cfg.seeds_per_cell < 0) throw std::invalid_argument("sweep: seeds_per_cell must be >= 0");

    struct Task {
        int n;
        double rho;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::size_t gi = 0;
    for (int n : cfg.n_list)
        for (double rho : cfg.rho_list)
            for (int k = 0; k < cfg.seeds_per_cell; ++k)
                tasks.push_back({n, rho, derive_seed(cfg.master_seed, gi++)});

    std::vector<SweepRecord> records(tasks.size());
    run_parallel(tasks.size(), cfg.resolved_workers(), [&](std::size_t i) {
        records[i] = sweep_instance(tasks[i].n, tasks[i].rho, tasks[i].seed, mode, sc);
    });
    std::sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.rho != b.rho) return a.rho < b.rho;
        return a.seed < b.seed;
    });

    CsvWriter w(cfg.out,
                {"n", "rho", "seed", "dim_is", "mis_size", "mode", "T_or_tstar", "p_mis",
                 "approx_ratio", "t_lz", "a", "r_squared", "accepted", "wall_time_s"},
                cfg.to_json().dump());
    for (const auto& r : records)
        w.row({std::to_string(r.n), csv_double(r.rho), std::to_string(r.seed),
               std::to_string(r.dim_is), std::to_string(r.mis_size), to_string(r.mode),
               csv_double(r.t_or_tstar), csv_double(r.p_mis), csv_double(r.approx_ratio),
               csv_double(r.t_lz), csv_double(r.a), csv_double(r.r_squared),
               bool_cell(r.accepted), csv_double(r.wall_time_s)});
    w.close();

    CsvWriter cells(cfg.out + ".cells.csv",
                    {"n", "rho", "mode", "n_instances", "n_skipped", "median"},
                    cfg.to_json().dump());
    for (const auto& c : summarize_sweep(records))
        cells.row({std::to_string(c.n), csv_double(c.rho), to_string(c.mode),
                   std::to_string(c.n_instances), std::to_string(c.n_skipped),
                   csv_double(c.median)});
    return exit_ok;
}

inline int cmd_qaoa(const RunConfig& cfg) {
    UDGraph g = acquire_graph(cfg);
    ISBasis basis = build_is_basis(g, cfg.dim_cap);
    ProjectedHamiltonian h = build_projected_hamiltonian(basis);
    QaoaEvolver evolver(basis, h);
    OptimizerConfig ocfg;
    ocfg.step_tol = cfg.delta;
    ocfg.objective_tol = cfg.eps;
    ocfg.algorithm = OptAlgorithm::quasi_newton_fd;
    ocfg.fd_mode = FdMode::central;
    ocfg.fd_increment = 1e-7;
    auto trace = heuristic_schedule_optimize(evolver, cfg.p_max, ocfg);
    CsvWriter w(cfg.out, {"p", "seed_source", "f_p", "p_mis", "evals", "wall_time_s", "params"},
                cfg.to_json().dump());
    for (const auto& lev : trace) {
        std::ostringstream ps;
        const auto packed = pack_params(lev.params);
        for (std::size_t i = 0; i < packed.size(); ++i) {
            if (i) ps << ';';
            ps << csv_double(packed[i]);
        }
        w.row({std::to_string(lev.params.p), "heuristic", csv_double(lev.f_p),
               csv_double(lev.p_mis), std::to_string(lev.evals), csv_double(lev.wall_time_s),
               ps.str()});
    }
    return exit_ok;
}

inline void write_history_rows(CsvWriter& w, const ExperimentHistory& hist, int experiment_id) {
    int best = 0;
    for (const auto& e : hist.entries) {
        best = std::max(best, e.rec.is_size);
        w.row({std::to_string(e.rec.sequence_index), mask_hex(e.rec.outcome),
               std::to_string(e.rec.is_size), std::to_string(best), to_string(e.phase),
               std::to_string(e.level_p), std::to_string(experiment_id)});
    }
}

inline const std::vector<std::string>& history_columns() {
    static const std::vector<std::string> cols = {
        "m", "outcome_bitmask_hex", "is_size", "best_so_far", "phase_tag", "level_p",
        "experiment_id"};
    return cols;
}

inline int cmd_qaoa_noisy(const RunConfig& cfg) {
    UDGraph g = acquire_graph(cfg);
    ISBasis basis = build_is_basis(g, cfg.dim_cap);
    ProjectedHamiltonian h = build_projected_hamiltonian(basis);
    QaoaEvolver evolver(basis, h);
    NoisyQaoaConfig nc;
    nc.p = cfg.p;
    nc.eps = cfg.eps;
    nc.delta = cfg.delta;
    nc.eps_m = cfg.eps_m;
    nc.measurement_budget = cfg.budget;
    if (cfg.seed_mode == "heuristic")
        nc.seed_mode = QaoaSeedMode::heuristic;
    else if (cfg.seed_mode == "random")
        nc.seed_mode = QaoaSeedMode::random;
    else
        throw std::invalid_argument("qaoa-noisy: seed_mode must be heuristic or random");

    std::vector<ExperimentHistory> hists(static_cast<std::size_t>(cfg.streams));
    run_parallel(hists.size(), cfg.resolved_workers(), [&](std::size_t i) {
        Rng rng(derive_seed(cfg.master_seed, i));
        hists[i] = run_noisy_qaoa_experiment(evolver, nc, rng);
    });
    CsvWriter w(cfg.out, history_columns(), cfg.to_json().dump());
    for (std::size_t i = 0; i < hists.size(); ++i)
        write_history_rows(w, hists[i], static_cast<int>(i));
    return exit_ok;
}

inline int cmd_qaa_noisy(const RunConfig& cfg) {
    UDGraph g = acquire_graph(cfg);
    ISBasis basis = build_is_basis(g, cfg.dim_cap);
    ProjectedHamiltonian h = build_projected_hamiltonian(basis);
    std::vector<ExperimentHistory> hists(static_cast<std::size_t>(cfg.streams));
    run_parallel(hists.size(), cfg.resolved_workers(), [&](std::size_t i) {
        Rng rng(derive_seed(cfg.master_seed, i));
        hists[i] = run_noisy_qaa_experiment(basis, h, cfg.omega0, cfg.resolved_delta0(),
                                            cfg.total_time, cfg.repeats, rng, cfg.prop_config());
    });
    CsvWriter w(cfg.out, history_columns(), cfg.to_json().dump());
    for (std::size_t i = 0; i < hists.size(); ++i)
        write_history_rows(w, hists[i], static_cast<int>(i));
    return exit_ok;
}

}  // namespace detail_cli

// Builds the CLI11 application over a RunConfig. Each subcommand gets the
// shared options; defaults follow the standard parameter choices
// (delta0 = 6 omega0, noiseless tolerances 1e-6, noisy 0.2 / eps_m 0.05,
// LZ doubling from T_min = 5).
class App {
public:
    explicit App(RunConfig& cfg) : cfg_(cfg), app_("MIS quantum-optimization simulator", "rydmis") {
        app_.require_subcommand(1);
        app_.option_defaults()->take_last();

        auto add_common = [&](CLI::App* sub) {
            sub->add_option("--out", cfg_.out, "output file path");
            sub->add_option("--master-seed", cfg_.master_seed, "master seed for derived streams");
            sub->add_option("--workers", cfg_.workers,
                            "worker threads (default: RYDMIS_WORKERS or 1)");
            sub->add_flag("--emit-plot-script", cfg_.emit_plot_script,
                          "write a standalone plotting script next to the CSV");
            sub->add_option("--config", config_path_, "JSON config file (flags override it)");
        };
        auto add_graph = [&](CLI::App* sub) {
            sub->add_option("--graph", cfg_.graph_file, "graph JSON file");
            sub->add_option("--n", cfg_.n, "vertex count");
            sub->add_option("--rho", cfg_.rho, "vertex density");
            sub->add_option("--seed", cfg_.seed, "graph seed");
        };
        auto add_drive = [&](CLI::App* sub) {
            sub->add_option("--omega0", cfg_.omega0, "drive amplitude (energy unit)")
                ->check(CLI::PositiveNumber);
            sub->add_option("--delta0", cfg_.delta0, "detuning amplitude (default 6*omega0)");
            sub->add_option("--max-step", cfg_.max_step, "propagator step bound")
                ->check(CLI::PositiveNumber);
            sub->add_option("--step-tol", cfg_.step_tol, "propagator local tolerance")
                ->check(CLI::PositiveNumber);
            sub->add_option("--dim-cap", cfg_.dim_cap, "independent-set basis dimension cap");
        };

        CLI::App* gen = app_.add_subcommand("gen", "generate a random unit-disk graph file");
        add_graph(gen);
        add_common(gen);

        CLI::App* solve = app_.add_subcommand("solve", "exact MIS via branch and bound");
        add_graph(solve);
        add_common(solve);
        solve->add_option("--time-limit", cfg_.time_limit_s, "solver time limit in seconds")
            ->check(CLI::PositiveNumber);

        CLI::App* anneal = app_.add_subcommand("anneal", "one annealing sweep");
        add_graph(anneal);
        add_drive(anneal);
        add_common(anneal);
        anneal->add_option("--T", cfg_.total_time, "sweep duration")->check(CLI::PositiveNumber);

        CLI::App* lz = app_.add_subcommand("lz", "extract the adiabatic timescale");
        add_graph(lz);
        add_drive(lz);
        add_common(lz);
        lz->add_option("--t-min", cfg_.t_min, "doubling start")->check(CLI::PositiveNumber);
        lz->add_option("--t-max", cfg_.t_max, "doubling cap")->check(CLI::PositiveNumber);

        CLI::App* sweep = app_.add_subcommand("sweep", "hardness sweep over (n, rho) cells");
        add_drive(sweep);
        add_common(sweep);
        sweep->add_option("--n-list", cfg_.n_list, "vertex counts")->delimiter(',');
        sweep->add_option("--rho-list", cfg_.rho_list, "densities")->delimiter(',');
        sweep->add_option("--seeds-per-cell", cfg_.seeds_per_cell, "instances per cell");
        sweep->add_option("--mode", cfg_.mode,
                          "t_lz | p_mis_at_fixed_T | approx_ratio_at_fixed_T");
        sweep->add_option("--fixed-T", cfg_.fixed_T, "sweep time for the fixed-T modes")
            ->check(CLI::PositiveNumber);
        sweep->add_option("--t-min", cfg_.t_min, "doubling start")->check(CLI::PositiveNumber);
        sweep->add_option("--t-max", cfg_.t_max, "doubling cap")->check(CLI::PositiveNumber);

        CLI::App* qaoa = app_.add_subcommand("qaoa", "heuristic interpolation ladder (exact objective)");
        add_graph(qaoa);
        add_common(qaoa);
        qaoa->add_option("--p-max", cfg_.p_max, "final level")->check(CLI::Range(3, 1000));
        qaoa->add_option("--eps", cfg_.eps, "objective tolerance")->check(CLI::PositiveNumber);
        qaoa->add_option("--delta", cfg_.delta, "step tolerance")->check(CLI::PositiveNumber);
        qaoa->add_option("--dim-cap", cfg_.dim_cap, "basis dimension cap");

        CLI::App* qn = app_.add_subcommand("qaoa-noisy",
                                           "closed-loop QAOA with measurement projection noise");
        add_graph(qn);
        add_common(qn);
        qn->add_option("--p", cfg_.p, "QAOA level")->check(CLI::Range(1, 1000));
        qn->add_option("--eps", cfg_.eps, "objective tolerance")->check(CLI::PositiveNumber);
        qn->add_option("--delta", cfg_.delta, "step tolerance")->check(CLI::PositiveNumber);
        qn->add_option("--eps-m", cfg_.eps_m, "measurement precision")->check(CLI::PositiveNumber);
        qn->add_option("--budget", cfg_.budget, "total measurement budget");
        qn->add_option("--streams", cfg_.streams, "independent experiments")
            ->check(CLI::PositiveNumber);
        qn->add_option("--seed-mode", cfg_.seed_mode, "heuristic | random");
        qn->add_option("--dim-cap", cfg_.dim_cap, "basis dimension cap");
        noisy_defaults_ = qn;

        CLI::App* qan = app_.add_subcommand("qaa-noisy", "annealing followed by repeated sampling");
        add_graph(qan);
        add_drive(qan);
        add_common(qan);
        qan->add_option("--T", cfg_.total_time, "sweep duration")->check(CLI::PositiveNumber);
        qan->add_option("--repeats", cfg_.repeats, "measurements per stream");
        qan->add_option("--streams", cfg_.streams, "independent experiments")
            ->check(CLI::PositiveNumber);
    }

    // Parse with config-file support: values from --config fill options the
    // command line left unset; unknown config keys are rejected.
    int parse(std::vector<std::string> args) {
        // CLI11 wants reversed argument order for the vector overload
        std::vector<std::string> forward = args;
        try {
            std::reverse(args.begin(), args.end());
            app_.parse(args);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {  // --help
                std::cout << app_.help();
                return exit_ok;
            }
            std::cerr << "error: " << e.what() << "\n";
            return exit_invalid;
        }
        CLI::App* sub = app_.get_subcommands().front();
        cfg_.command = sub->get_name();
        if (!config_path_.empty()) {
            if (int rc = apply_config(sub)) return rc;
        }
        if (cfg_.command == "qaoa-noisy") {
            // noisy-loop defaults: eps = delta = 0.2, eps_m = 0.05
            if (sub->count("--eps") == 0 && !config_has("eps")) cfg_.eps = 0.2;
            if (sub->count("--delta") == 0 && !config_has("delta")) cfg_.delta = 0.2;
        }
        return -1;  // parsed, not yet dispatched
    }

    RunConfig& config() { return cfg_; }

private:
    bool config_has(const std::string& key) const {
        return config_json_.is_object() && config_json_.contains(key);
    }

    int apply_config(CLI::App* sub) {
        std::ifstream f(config_path_);
        if (!f) {
            std::cerr << "error: cannot read config file " << config_path_ << "\n";
            return exit_invalid;
        }
        try {
            config_json_ = nlohmann::json::parse(f);
        } catch (const std::exception& e) {
            std::cerr << "error: config file: " << e.what() << "\n";
            return exit_invalid;
        }
        if (!config_json_.is_object()) {
            std::cerr << "error: config file must hold a JSON object\n";
            return exit_invalid;
        }
        for (const auto& [key, value] : config_json_.items()) {
            CLI::Option* opt = sub->get_option_no_throw("--" + key);
            if (!opt) {
                std::cerr << "error: config key not recognized by subcommand '"
                          << sub->get_name() << "': " << key << "\n";
                return exit_invalid;
            }
            if (opt->count() > 0) continue;  // command line wins
            std::string text;
            if (value.is_string())
                text = value.get<std::string>();
            else if (value.is_array()) {
                std::ostringstream os;
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) os << ',';
                    os << value[i].dump();
                }
                text = os.str();
            } else
                text = value.dump();
            try {
                opt->add_result(text);
                opt->run_callback();
            } catch (const CLI::Error& e) {
                std::cerr << "error: config key '" << key << "': " << e.what() << "\n";
                return exit_invalid;
            }
        }
        return 0;
    }

    RunConfig& cfg_;
    CLI::App app_;
    CLI::App* noisy_defaults_ = nullptr;
    std::string config_path_;
    nlohmann::json config_json_;
};

inline int dispatch(const RunConfig& cfg) {
    using namespace detail_cli;
    try {
        int rc = exit_internal;
        if (cfg.command == "gen")
            rc = cmd_gen(cfg);
        else if (cfg.command == "solve")
            rc = cmd_solve(cfg);
        else if (cfg.command == "anneal")
            rc = cmd_anneal(cfg);
        else if (cfg.command == "lz")
            rc = cmd_lz(cfg);
        else if (cfg.command == "sweep")
            rc = cmd_sweep(cfg);
        else if (cfg.command == "qaoa")
            rc = cmd_qaoa(cfg);
        else if (cfg.command == "qaoa-noisy")
            rc = cmd_qaoa_noisy(cfg);
        else if (cfg.command == "qaa-noisy")
            rc = cmd_qaa_noisy(cfg);
        else
            throw std::invalid_argument("unknown command: " + cfg.command);
        if (rc == exit_ok && cfg.emit_plot_script && cfg.command != "gen")
            emit_plot_script(cfg.out);
        return rc;
    } catch (const CapExceededError& e) {
        std::cerr << "error (resource cap): " << e.what() << "\n";
        return exit_cap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (invalid input): " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error (internal): " << e.what() << "\n";
        return exit_internal;
    }
}

inline int run_cli(std::vector<std::string> args) {
    RunConfig cfg;
    App app(cfg);
    int rc = app.parse(std::move(args));
    if (rc >= 0) return rc;
    return dispatch(cfg);
}

inline int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(std::move(args));
}

}  // namespace rydmis::cli
