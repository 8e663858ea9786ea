#pragma once

// Rank-based estimators of extremal dependence computed from pseudo-observations
// of block maxima: the subset madogram, the plug-in extremal coefficient, the
// pairwise extremal-correlation matrix, and the SECO / MECO summaries.

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "aiblock/core.hpp"
#include "aiblock/parallel.hpp"

namespace aiblock {

/// Madogram of a variable subset. For valid pseudo-observations,
/// 0 <= value <= (k-1)/(2k).
struct SubsetMadogram {
    double value = 0.0;
    IndexSet subset;
    Index blocks = 0;
};

/// Plug-in extremal coefficient, in [1, 2k-1] on finite samples.
struct ThetaEstimate {
    double value = 1.0;
    IndexSet subset;
};

/// nu = (1/k) sum_i [ max_{j in S} U(i,j) - mean_{j in S} U(i,j) ]
inline SubsetMadogram madogram(const PseudoObs& pobs, const IndexSet& subset) {
    if (subset.empty()) throw EmptySubset("madogram subset is empty");
    const Index d = pobs.dimension();
    for (Index j : subset)
        if (j >= d) throw IndexOutOfRange("subset index " + std::to_string(j) + " out of range");

    const Matrix& u = pobs.values();
    const Index k = pobs.blocks();
    const double inv_size = 1.0 / static_cast<double>(subset.size());
    double total = 0.0;
    for (Index i = 0; i < k; ++i) {
        double row_max = -std::numeric_limits<double>::infinity();
        double row_sum = 0.0;
        for (Index j : subset) {
            const double v = u(i, j);
            row_max = std::max(row_max, v);
            row_sum += v;
        }
        total += row_max - row_sum * inv_size;
    }
    return {total / static_cast<double>(k), subset, k};
}

/// theta = (1/2 + nu) / (1/2 - nu)
inline ThetaEstimate theta(const SubsetMadogram& nu) {
    if (!(nu.value < 0.5))
        throw DegenerateMadogram("madogram " + std::to_string(nu.value) +
                                 " >= 1/2; pseudo-observations are corrupted");
    return {(0.5 + nu.value) / (0.5 - nu.value), nu.subset};
}

inline double extremal_coefficient(const PseudoObs& pobs, const IndexSet& subset) {
    return theta(madogram(pobs, subset)).value;
}

/// chi(a,b) = 2 - theta({a,b}); unit diagonal. Values below 0 are kept.
inline ChiMatrix chi_matrix(const PseudoObs& pobs, std::size_t threads = 1) {
    const Index d = pobs.dimension();
    Matrix chi = Matrix::Identity(d, d);
    parallel_for(d, threads, [&](std::size_t a) {
        for (Index b = a + 1; b < d; ++b) {
            const double value = 2.0 - extremal_coefficient(pobs, {a, b});
            chi(a, b) = value;
            chi(b, a) = value;
        }
    });
    return ChiMatrix(std::move(chi), pobs.blocks());
}

/// Sum of group-wise extremal coefficients minus the global one. Exactly zero
/// for the one-group partition.
inline double seco(const PseudoObs& pobs, const Partition& partition) {
    const Index d = pobs.dimension();
    if (partition.dimension() != d)
        throw DimensionMismatch("partition over " + std::to_string(partition.dimension()) +
                                " variables, data has " + std::to_string(d));
    if (partition.size() == 1) return 0.0;
    double sum = 0.0;
    for (const auto& g : partition.groups()) sum += extremal_coefficient(pobs, g);
    IndexSet all(d);
    std::iota(all.begin(), all.end(), Index{0});
    return sum - extremal_coefficient(pobs, all);
}

/// Minimal within-cluster extremal correlation. +infinity when no cluster
/// has two members.
inline double meco(const ChiMatrix& chi, const Partition& partition) {
    if (chi.dimension() != partition.dimension())
        throw DimensionMismatch("chi matrix and partition dimensions differ");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : partition.groups())
        for (Index x = 0; x < g.size(); ++x)
            for (Index y = x + 1; y < g.size(); ++y) best = std::min(best, chi(g[x], g[y]));
    return best;
}

/// Fixed clustering threshold 2 (1/m + sqrt(ln d / k)). The 1/m term stands in
/// for the sub-asymptotic bias d_m, which is O(1/m) for serially independent
/// outer-power Clayton data; sqrt(ln d / k) is the estimation error order.
/// The separation, mixing-rate and bias constants of the consistency bound are
/// not computable and have no runtime representation.
inline double tau_theory(Index m, Index d, Index k) {
    if (m < 1 || k < 1) throw InvalidParam("tau_theory needs m >= 1 and k >= 1");
    if (d < 2) throw InvalidParam("tau_theory needs d >= 2");
    return 2.0 * (1.0 / static_cast<double>(m) +
                  std::sqrt(std::log(static_cast<double>(d)) / static_cast<double>(k)));
}

}  // namespace aiblock
