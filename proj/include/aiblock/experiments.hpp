#pragma once

// Desk-scale reproduction of the simulation study: repeated draws from the
// random-repetition process, block maxima, clustering, and exact-recovery
// aggregation over a parameter grid.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aiblock/competitors.hpp"
#include "aiblock/core.hpp"
#include "aiblock/eco.hpp"
#include "aiblock/estimators.hpp"
#include "aiblock/maxima.hpp"
#include "aiblock/parallel.hpp"
#include "aiblock/random.hpp"
#include "aiblock/simulate.hpp"

namespace aiblock {

/// F1: block length varies at fixed n. F2: number of blocks varies at fixed m.
/// F3: threshold varies at fixed m and k.
enum class Framework { F1, F2, F3 };

inline std::string to_string(Framework f) {
    switch (f) {
        case Framework::F1: return "F1";
        case Framework::F2: return "F2";
        case Framework::F3: return "F3";
    }
    return "?";
}

inline Framework parse_framework(const std::string& s) {
    if (s == "F1") return Framework::F1;
    if (s == "F2") return Framework::F2;
    if (s == "F3") return Framework::F3;
    throw InputError("unknown framework '" + s + "' (expected F1, F2 or F3)");
}

enum class Algorithm { ECO, HC, SKM };

inline std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::ECO: return "ECO";
        case Algorithm::HC: return "HC";
        case Algorithm::SKM: return "SKM";
    }
    return "?";
}

struct ExperimentConfig {
    Experiment experiment = Experiment::E1;
    Framework framework = Framework::F1;
    Index d = 8;
    double p = 1.0;
    double beta = 10.0 / 7.0;
    Index reps = 50;
    std::uint64_t master_seed = 0;

    Index n = 10000;                  // F1
    std::vector<Index> m_grid;        // F1
    Index m = 20;                     // F2, F3
    std::vector<Index> k_grid;        // F2
    Index k = 500;                    // F3
    std::vector<double> tau_grid;     // F3; empty means default_grid(m, d, k)

    bool baselines = true;            // HC and SKM, F1 and F2 only
    Index skm_restarts = 10;
    std::size_t threads = 1;

    void validate() const {
        if (reps < 1) throw InputError("reps must be >= 1");
        if (!(p > 0.0 && p <= 1.0)) throw InputError("p must lie in (0, 1]");
        if (!(beta >= 1.0)) throw InputError("beta must be >= 1");
        if (d < 2) throw InputError("d must be >= 2");
        switch (framework) {
            case Framework::F1:
                if (m_grid.empty()) throw EmptyGrid("F1 needs a block-length grid");
                for (Index mm : m_grid)
                    if (mm < 1 || n / mm < 1) throw InputError("F1 block lengths must lie in 1..n");
                break;
            case Framework::F2:
                if (k_grid.empty()) throw EmptyGrid("F2 needs a block-count grid");
                if (m < 1) throw InputError("m must be >= 1");
                for (Index kk : k_grid)
                    if (kk < 1) throw InputError("F2 block counts must be >= 1");
                break;
            case Framework::F3:
                if (m < 1 || k < 1) throw InputError("F3 needs m >= 1 and k >= 1");
                if (!tau_grid.empty()) detail::validate_grid(tau_grid);
                break;
        }
    }
};

struct ResultRow {
    Experiment experiment;
    Framework framework;
    double grid_value;   // m (F1), k (F2) or tau (F3)
    Algorithm algorithm;
    double recovery_rate;
    std::optional<double> mean_seco;  // F3 only
    double seconds;
};

inline double exact_recovery_rate(const std::vector<Partition>& estimates, const Partition& truth) {
    if (estimates.empty()) return 0.0;
    Index hits = 0;
    for (const auto& e : estimates)
        if (partitions_equal(e, truth)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(estimates.size());
}

/// One simulated dataset reduced to pseudo-observations of its block maxima.
struct Replication {
    PseudoObs pobs;
    Partition truth;
};

/// Draws the model (E2/E3 sizes are random) and a repetition-process series of
/// length n from `seed`, then takes block maxima of length m.
inline Replication simulate_replication(Experiment experiment, Index d, double beta, double p,
                                        Index n, Index m, std::uint64_t seed) {
    Rng rng(seed);
    auto built = build_experiment_model(experiment, d, beta, rng);
    RepetitionConfig cfg{.p = p, .n = n, .model = built.model, .margins = Margins::uniform};
    const SeriesMatrix series = repetition_process(cfg, rng);
    return {pseudo_obs(block_maxima(series, m)), std::move(built.truth)};
}

inline std::vector<double> f3_grid(const ExperimentConfig& cfg) {
    return cfg.tau_grid.empty() ? default_grid(cfg.m, cfg.d, cfg.k) : cfg.tau_grid;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct RepOutcome {
    bool hit[3] = {false, false, false};
    double seconds[3] = {0.0, 0.0, 0.0};
};

inline std::vector<ResultRow> run_block_frameworks(const ExperimentConfig& cfg) {
    const bool f1 = cfg.framework == Framework::F1;
    const Index points = f1 ? cfg.m_grid.size() : cfg.k_grid.size();
    std::vector<ResultRow> rows;
    for (Index gi = 0; gi < points; ++gi) {
        const Index m = f1 ? cfg.m_grid[gi] : cfg.m;
        const Index n = f1 ? cfg.n : cfg.k_grid[gi] * cfg.m;
        const double grid_value = static_cast<double>(f1 ? m : cfg.k_grid[gi]);
        std::vector<RepOutcome> outcomes(cfg.reps);
        parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
            const auto seed = derive_seed(cfg.master_seed, {gi, rep});
            const Replication r = simulate_replication(cfg.experiment, cfg.d, cfg.beta, cfg.p, n, m, seed);
            const Index k = r.pobs.blocks();
            RepOutcome& out = outcomes[rep];

            auto start = Clock::now();
            const Partition eco = eco_cluster(chi_matrix(r.pobs), tau_theory(m, cfg.d, k));
            out.seconds[0] = seconds_since(start);
            out.hit[0] = partitions_equal(eco, r.truth);
            if (!cfg.baselines) return;

            const Index g = r.truth.size();
            start = Clock::now();
            out.hit[1] = partitions_equal(hc_cluster(madogram_dissimilarity(r.pobs), g), r.truth);
            out.seconds[1] = seconds_since(start);

            Rng skm_rng(derive_seed(seed, {0x736b6dULL}));
            start = Clock::now();
            out.hit[2] = partitions_equal(skmeans_cluster(r.pobs, g, cfg.skm_restarts, skm_rng), r.truth);
            out.seconds[2] = seconds_since(start);
        });
        const int algorithms = cfg.baselines ? 3 : 1;
        for (int a = 0; a < algorithms; ++a) {
            Index hits = 0;
            double secs = 0.0;
            for (const auto& o : outcomes) {
                hits += o.hit[a] ? 1 : 0;
                secs += o.seconds[a];
            }
            rows.push_back({cfg.experiment, cfg.framework, grid_value, static_cast<Algorithm>(a),
                            static_cast<double>(hits) / static_cast<double>(cfg.reps), std::nullopt,
                            secs});
        }
    }
    return rows;
}

// Each replication is simulated once and scanned over the whole tau grid.
inline std::vector<ResultRow> run_threshold_framework(const ExperimentConfig& cfg) {
    const std::vector<double> grid = f3_grid(cfg);
    const Index count = grid.size();
    std::vector<std::vector<char>> hit(cfg.reps, std::vector<char>(count, 0));
    std::vector<std::vector<double>> secos(cfg.reps, std::vector<double>(count, 0.0));
    std::vector<double> seconds(cfg.reps, 0.0);
    parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
        const auto seed = derive_seed(cfg.master_seed, {0, rep});
        const Replication r =
            simulate_replication(cfg.experiment, cfg.d, cfg.beta, cfg.p, cfg.k * cfg.m, cfg.m, seed);
        const auto start = Clock::now();
        const ThresholdScan scan = select_threshold(r.pobs, grid);
        seconds[rep] = seconds_since(start);
        for (Index t = 0; t < count; ++t) {
            hit[rep][t] = partitions_equal(scan.partitions[t], r.truth) ? 1 : 0;
            secos[rep][t] = scan.secos[t];
        }
    });
    double total_seconds = 0.0;
    for (double s : seconds) total_seconds += s;
    std::vector<ResultRow> rows;
    for (Index t = 0; t < count; ++t) {
        Index hits = 0;
        double seco_sum = 0.0;
        for (Index rep = 0; rep < cfg.reps; ++rep) {
            hits += static_cast<Index>(hit[rep][t]);
            seco_sum += secos[rep][t];
        }
        rows.push_back({cfg.experiment, cfg.framework, grid[t], Algorithm::ECO,
                        static_cast<double>(hits) / static_cast<double>(cfg.reps),
                        seco_sum / static_cast<double>(cfg.reps),
                        total_seconds / static_cast<double>(count)});
    }
    return rows;
}

}  // namespace detail

/// Rows are ordered by grid point, then algorithm (ECO, HC, SKM). Every
/// replication draws from its own stream derived from (master_seed, grid
/// index, replication index), so rows apart from `seconds` do not depend on
/// the thread count.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.framework == Framework::F3) return detail::run_threshold_framework(cfg);
    return detail::run_block_frameworks(cfg);
}

}  // namespace aiblock
