#pragma once

// Greedy extremal-correlation clustering and SECO-driven threshold choice.

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>
#include <vector>

#include "aiblock/core.hpp"
#include "aiblock/estimators.hpp"
#include "aiblock/parallel.hpp"

namespace aiblock {

struct EcoConfig {
    double tau = 0.0;

    explicit EcoConfig(double threshold) : tau(threshold) {
        if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidParam("tau must be finite and >= 0");
    }
};

/// Repeatedly seeds on the most correlated remaining pair (a, b) and extracts
/// every remaining s with min(chi(a,s), chi(b,s)) >= tau. A seed with
/// chi(a,b) <= tau yields the singleton {a}, and b stays in play. Ties in the
/// seed search go to the lexicographically smallest pair. O(d^3).
inline Partition eco_cluster(const ChiMatrix& chi, const EcoConfig& config) {
    const double tau = config.tau;
    const Index d = chi.dimension();
    IndexSet remaining(d);
    std::iota(remaining.begin(), remaining.end(), Index{0});
    std::vector<IndexSet> clusters;

    while (!remaining.empty()) {
        if (remaining.size() == 1) {
            clusters.push_back(remaining);
            break;
        }
        Index a = remaining[0], b = remaining[1];
        double best = chi(a, b);
        for (Index x = 0; x < remaining.size(); ++x)
            for (Index y = x + 1; y < remaining.size(); ++y) {
                const double v = chi(remaining[x], remaining[y]);
                if (v > best) {
                    best = v;
                    a = remaining[x];
                    b = remaining[y];
                }
            }

        IndexSet cluster;
        if (best <= tau) {
            cluster.push_back(a);
        } else {
            for (Index s : remaining)
                if (std::min(chi(a, s), chi(b, s)) >= tau) cluster.push_back(s);
        }
        IndexSet rest;
        rest.reserve(remaining.size() - cluster.size());
        std::set_difference(remaining.begin(), remaining.end(), cluster.begin(), cluster.end(),
                            std::back_inserter(rest));
        remaining = std::move(rest);
        clusters.push_back(std::move(cluster));
    }
    return canonicalize(std::move(clusters), d);
}

inline Partition eco_cluster(const ChiMatrix& chi, double tau) {
    return eco_cluster(chi, EcoConfig(tau));
}

/// SECO evaluated along a threshold grid; `selected` is the largest grid value
/// whose SECO is within `abs_tol` of the minimum.
struct ThresholdScan {
    std::vector<double> grid;
    std::vector<double> secos;
    std::vector<Partition> partitions;
    Index selected_index = 0;

    double selected() const { return grid.at(selected_index); }
    const Partition& selected_partition() const { return partitions.at(selected_index); }
};

namespace detail {

inline void validate_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw EmptyGrid("threshold grid is empty");
    for (Index i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || !std::isfinite(grid[i]))
            throw InvalidParam("threshold grid values must be finite and >= 0");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw InvalidParam("threshold grid must be strictly ascending");
    }
}

}  // namespace detail

inline Index largest_minimizer(const std::vector<double>& values, double abs_tol = 0.0) {
    if (values.empty()) throw EmptyGrid("no values to minimize");
    const double lowest = *std::min_element(values.begin(), values.end());
    Index pick = 0;
    for (Index i = 0; i < values.size(); ++i)
        if (values[i] <= lowest + abs_tol) pick = i;
    return pick;
}

inline ThresholdScan select_threshold(const PseudoObs& pobs, const ChiMatrix& chi,
                                      std::vector<double> grid, double abs_tol = 0.0,
                                      std::size_t threads = 1) {
    detail::validate_grid(grid);
    if (chi.dimension() != pobs.dimension())
        throw DimensionMismatch("chi matrix does not match pseudo-observations");
    const Index count = grid.size();
    std::vector<double> secos(count);
    std::vector<Partition> partitions(count, Partition::whole(pobs.dimension()));
    parallel_for(count, threads, [&](std::size_t i) {
        partitions[i] = eco_cluster(chi, grid[i]);
        secos[i] = seco(pobs, partitions[i]);
    });
    const Index pick = largest_minimizer(secos, abs_tol);
    return {std::move(grid), std::move(secos), std::move(partitions), pick};
}

inline ThresholdScan select_threshold(const PseudoObs& pobs, std::vector<double> grid,
                                      double abs_tol = 0.0, std::size_t threads = 1) {
    detail::validate_grid(grid);
    return select_threshold(pobs, chi_matrix(pobs, threads), std::move(grid), abs_tol, threads);
}

/// `count` equally spaced values from lo to hi inclusive.
inline std::vector<double> linear_grid(double lo, double hi, Index count) {
    if (count < 1) throw EmptyGrid("grid size must be positive");
    if (!(lo >= 0.0) || !(hi >= lo)) throw InvalidParam("grid needs 0 <= lo <= hi");
    std::vector<double> grid;
    grid.reserve(count);
    if (count == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (Index i = 0; i < count; ++i)
        grid.push_back(i + 1 == count ? hi : lo + step * static_cast<double>(i));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

/// 41 points spanning [0.1, 2.5] times tau_theory(m, d, k).
inline std::vector<double> default_grid(Index m, Index d, Index k) {
    const double tau0 = tau_theory(m, d, k);
    return linear_grid(0.1 * tau0, 2.5 * tau0, 41);
}

}  // namespace aiblock
