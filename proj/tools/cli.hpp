#pragma once

// Subcommands:
//   cluster     series CSV -> partition JSON (+ chi CSV, threshold scan CSV)
//   seco        series CSV + partition JSON -> SECO value on stdout
//   simulate    experiment model -> series CSV + ground-truth sidecar JSON
//   experiment  simulation study -> results CSV
//
// Exit status: 0 success, 2 bad flags or input, 3 runtime failure.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aiblock/aiblock.hpp"

namespace aiblock::cli {

namespace detail {

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline std::string sidecar_path(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return csv_path.substr(0, dot) + ".json";
    return csv_path + ".json";
}

inline std::vector<std::string> synthetic_names(Index d) {
    std::vector<std::string> names;
    for (Index j = 0; j < d; ++j) names.push_back("v" + std::to_string(j));
    return names;
}

struct ClusterArgs {
    std::string input;
    Index block_size = 0;
    std::optional<double> tau;
    bool auto_tau = false;
    std::optional<double> grid_lo, grid_hi;
    std::optional<Index> grid_n;
    double abs_tol = 0.0;
    bool clip_chi = false;
    std::string out_partition, out_chi, out_scan;
    std::size_t threads = 1;
};

inline int run_cluster(const ClusterArgs& args, std::ostream& out) {
    const SeriesMatrix series = io::read_series_csv(args.input);
    const PseudoObs pobs = pseudo_obs(block_maxima(series, args.block_size));
    const ChiMatrix chi = chi_matrix(pobs, args.threads);
    const Index d = series.dimension();
    const Index k = pobs.blocks();

    Partition partition = Partition::whole(d);
    std::optional<ThresholdScan> scan;
    if (args.auto_tau) {
        std::vector<double> grid;
        if (args.grid_lo || args.grid_hi || args.grid_n) {
            const double tau0 = d >= 2 ? tau_theory(args.block_size, d, k) : 1.0;
            grid = linear_grid(args.grid_lo.value_or(0.1 * tau0), args.grid_hi.value_or(2.5 * tau0),
                               args.grid_n.value_or(41));
        } else {
            grid = d >= 2 ? default_grid(args.block_size, d, k) : std::vector<double>{0.0};
        }
        scan = select_threshold(pobs, chi, std::move(grid), args.abs_tol, args.threads);
        partition = scan->selected_partition();
    } else {
        const double tau = args.tau ? *args.tau : (d >= 2 ? tau_theory(args.block_size, d, k) : 0.0);
        partition = eco_cluster(chi, tau);
    }

    const std::string json = io::partition_to_json(partition, series.names()).dump() + "\n";
    if (args.out_partition.empty())
        out << json;
    else
        write_file(args.out_partition, [&](std::ostream& f) { f << json; });
    if (!args.out_chi.empty())
        write_file(args.out_chi, [&](std::ostream& f) { io::write_chi_csv(f, chi, series.names(), args.clip_chi); });
    if (!args.out_scan.empty()) {
        if (!scan) throw InputError("--out-scan requires --auto-tau");
        write_file(args.out_scan, [&](std::ostream& f) { io::write_scan_csv(f, *scan); });
    }
    return 0;
}

struct SecoArgs {
    std::string input, partition;
    Index block_size = 0;
};

inline int run_seco(const SecoArgs& args, std::ostream& out) {
    const SeriesMatrix series = io::read_series_csv(args.input);
    std::ifstream in(args.partition);
    if (!in) throw InputError("cannot open '" + args.partition + "'");
    const Partition partition = io::partition_from_json(nlohmann::json::parse(in), series.names());
    const PseudoObs pobs = pseudo_obs(block_maxima(series, args.block_size));
    out << io::format_double(seco(pobs, partition)) << '\n';
    return 0;
}

struct SimulateArgs {
    std::string experiment = "E1";
    Index d = 8, n = 1000;
    double p = 1.0, beta = 10.0 / 7.0;
    std::uint64_t seed = 0;
    std::string margins = "uniform";
    std::string out, truth;
};

inline int run_simulate(const SimulateArgs& args) {
    const Experiment experiment = parse_experiment(args.experiment);
    if (args.margins != "uniform" && args.margins != "frechet")
        throw InputError("--margins must be uniform or frechet");
    Rng rng(args.seed);
    auto built = build_experiment_model(experiment, args.d, args.beta, rng);
    RepetitionConfig cfg{.p = args.p,
                         .n = args.n,
                         .model = built.model,
                         .margins = args.margins == "frechet" ? Margins::frechet : Margins::uniform};
    const SeriesMatrix series = repetition_process(cfg, rng);

    nlohmann::json sidecar = io::partition_to_json(built.truth, series.names());
    sidecar["experiment"] = args.experiment;
    sidecar["d"] = args.d;
    sidecar["n"] = args.n;
    sidecar["p"] = args.p;
    sidecar["beta"] = args.beta;
    sidecar["theta"] = built.model.theta;
    sidecar["beta0"] = built.model.beta0;
    sidecar["group_betas"] = built.model.group_betas;
    sidecar["group_sizes"] = built.model.group_sizes;
    sidecar["margins"] = args.margins;
    sidecar["seed"] = args.seed;

    write_file(args.out, [&](std::ostream& f) { io::write_series_csv(f, series); });
    const std::string truth = args.truth.empty() ? sidecar_path(args.out) : args.truth;
    write_file(truth, [&](std::ostream& f) { f << sidecar.dump(2) << '\n'; });
    return 0;
}

struct ExperimentArgs {
    std::string experiment = "E1", framework = "F1";
    Index d = 8, reps = 50, n = 10000, m = 20, k = 500, restarts = 10;
    double p = 1.0, beta = 10.0 / 7.0;
    std::uint64_t seed = 0;
    std::vector<Index> m_grid, k_grid;
    std::vector<double> tau_grid;
    bool no_baselines = false, timing = false;
    std::size_t threads = 1;
    std::string out;
};

inline int run_experiment_cmd(const ExperimentArgs& args, std::ostream& out) {
    ExperimentConfig cfg;
    cfg.experiment = parse_experiment(args.experiment);
    cfg.framework = parse_framework(args.framework);
    cfg.d = args.d;
    cfg.p = args.p;
    cfg.beta = args.beta;
    cfg.reps = args.reps;
    cfg.master_seed = args.seed;
    cfg.n = args.n;
    cfg.m = args.m;
    cfg.k = args.k;
    cfg.m_grid = args.m_grid;
    cfg.k_grid = args.k_grid;
    cfg.tau_grid = args.tau_grid;
    if (cfg.m_grid.empty())
        for (Index mm = 3; mm <= 30; mm += 3) cfg.m_grid.push_back(mm);
    if (cfg.k_grid.empty())
        for (Index kk = 50; kk <= 500; kk += 50) cfg.k_grid.push_back(kk);
    cfg.baselines = !args.no_baselines;
    cfg.skm_restarts = args.restarts;
    cfg.threads = args.threads;
    const auto rows = run_experiment(cfg);
    if (args.out.empty())
        io::write_results_csv(out, rows, args.timing);
    else
        write_file(args.out, [&](std::ostream& f) { io::write_results_csv(f, rows, args.timing); });
    return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Clustering of variables by asymptotically independent block maxima"};
    app.name("aiblock");
    app.require_subcommand(1);
    std::function<int()> action;

    detail::ClusterArgs cl;
    auto* cluster = app.add_subcommand("cluster", "Cluster the columns of a series CSV");
    cluster->add_option("input", cl.input, "Series CSV (header row of names)")->required();
    cluster->add_option("--block-size,-m", cl.block_size, "Block length m")->required()->check(CLI::PositiveNumber);
    auto* tau_opt = cluster->add_option("--tau", cl.tau, "Fixed threshold")->check(CLI::NonNegativeNumber);
    auto* auto_opt = cluster->add_flag("--auto-tau", cl.auto_tau, "Select the threshold by minimal SECO");
    tau_opt->excludes(auto_opt);
    cluster->add_option("--grid-lo", cl.grid_lo, "Lowest grid threshold")->needs(auto_opt);
    cluster->add_option("--grid-hi", cl.grid_hi, "Highest grid threshold")->needs(auto_opt);
    cluster->add_option("--grid-n", cl.grid_n, "Number of grid points")->needs(auto_opt)->check(CLI::PositiveNumber);
    cluster->add_option("--abs-tol", cl.abs_tol, "SECO tolerance for the largest-minimizer rule")->needs(auto_opt);
    cluster->add_flag("--clip-chi", cl.clip_chi, "Clamp exported chi values to [0, 1]");
    cluster->add_option("--out-partition", cl.out_partition, "Partition JSON (default stdout)");
    cluster->add_option("--out-chi", cl.out_chi, "Chi matrix CSV");
    cluster->add_option("--out-scan", cl.out_scan, "Threshold scan CSV (with --auto-tau)");
    cluster->add_option("--threads", cl.threads, "Worker threads")->check(CLI::PositiveNumber);
    cluster->callback([&] { action = [&] { return detail::run_cluster(cl, out); }; });

    detail::SecoArgs sc;
    auto* seco_cmd = app.add_subcommand("seco", "SECO of a given partition");
    seco_cmd->add_option("input", sc.input, "Series CSV")->required();
    seco_cmd->add_option("--block-size,-m", sc.block_size, "Block length m")->required()->check(CLI::PositiveNumber);
    seco_cmd->add_option("--partition", sc.partition, "Partition JSON")->required();
    std::size_t seco_threads = 1;
    seco_cmd->add_option("--threads", seco_threads, "Accepted for symmetry; evaluation is sequential");
    seco_cmd->callback([&] { action = [&] { return detail::run_seco(sc, out); }; });

    detail::SimulateArgs sim;
    std::size_t sim_threads = 1;
    auto* simulate = app.add_subcommand("simulate", "Simulate a repetition-process series");
    simulate->add_option("--experiment", sim.experiment, "E1, E2 or E3")->required();
    simulate->add_option("--d", sim.d, "Dimension")->required();
    simulate->add_option("--n", sim.n, "Series length")->check(CLI::PositiveNumber);
    simulate->add_option("--p", sim.p, "Innovation probability in (0, 1]");
    simulate->add_option("--beta", sim.beta, "Within-block logistic shape (>= 1)");
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--margins", sim.margins, "uniform or frechet");
    simulate->add_option("--out", sim.out, "Series CSV path")->required();
    simulate->add_option("--truth", sim.truth, "Sidecar JSON path (default: CSV path with .json)");
    simulate->add_option("--threads", sim_threads, "Accepted for symmetry; sampling is sequential");
    simulate->callback([&] { action = [&] { return detail::run_simulate(sim); }; });

    detail::ExperimentArgs ex;
    auto* experiment = app.add_subcommand("experiment", "Run a simulation study");
    experiment->add_option("--experiment", ex.experiment, "E1, E2 or E3")->required();
    experiment->add_option("--framework", ex.framework, "F1, F2 or F3")->required();
    experiment->add_option("--d", ex.d, "Dimension");
    experiment->add_option("--p", ex.p, "Innovation probability in (0, 1]");
    experiment->add_option("--beta", ex.beta, "Within-block logistic shape (>= 1)");
    experiment->add_option("--reps", ex.reps, "Replications per grid point");
    experiment->add_option("--seed", ex.seed, "Master seed");
    experiment->add_option("--n", ex.n, "Series length (F1)");
    experiment->add_option("--m", ex.m, "Block length (F2, F3)");
    experiment->add_option("--k", ex.k, "Number of blocks (F3)");
    experiment->add_option("--m-grid", ex.m_grid, "Block lengths (F1)")->delimiter(',');
    experiment->add_option("--k-grid", ex.k_grid, "Block counts (F2)")->delimiter(',');
    experiment->add_option("--tau-grid", ex.tau_grid, "Thresholds (F3)")->delimiter(',');
    experiment->add_flag("--no-baselines", ex.no_baselines, "Skip HC and SKM");
    experiment->add_option("--restarts", ex.restarts, "Spherical k-means restarts");
    experiment->add_flag("--timing", ex.timing, "Append a wall-clock seconds column");
    experiment->add_option("--threads", ex.threads, "Worker threads")->check(CLI::PositiveNumber);
    experiment->add_option("--out", ex.out, "Results CSV (default stdout)");
    experiment->callback([&] { action = [&] { return detail::run_experiment_cmd(ex, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "aiblock: " << e.what() << '\n';
        return 2;
    }

    try {
        return action();
    } catch (const InputError& e) {
        err << "aiblock: " << e.what() << '\n';
        return 2;
    } catch (const DegenerateMadogram& e) {
        err << "aiblock: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "aiblock: invalid JSON: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "aiblock: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace aiblock::cli
