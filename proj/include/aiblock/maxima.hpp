#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "aiblock/core.hpp"

namespace aiblock {

/// Component-wise maxima over k = floor(n/m) disjoint consecutive blocks of
/// length m. The trailing n - k*m rows are discarded.
inline MaximaMatrix block_maxima(const SeriesMatrix& series, Index m) {
    const Index n = series.length();
    const Index d = series.dimension();
    if (m < 1) throw InputError("block length must be positive");
    if (m > n)
        throw BlockTooLarge("block length " + std::to_string(m) + " exceeds series length " +
                            std::to_string(n));
    const Index k = n / m;
    const Matrix& x = series.values();
    Matrix out(k, d);
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < k; ++i)
            out(i, j) = x.col(j).segment(i * m, m).maxCoeff();
    return MaximaMatrix(std::move(out), m, n);
}

/// Empirical CDF of each column evaluated at its own entries:
/// U(i,j) = #{r : M(r,j) <= M(i,j)} / k. Ties take the largest rank.
inline PseudoObs pseudo_obs(const MaximaMatrix& maxima) {
    const Index k = maxima.blocks();
    const Index d = maxima.dimension();
    const Matrix& x = maxima.values();
    Matrix out(k, d);
    std::vector<Index> order(k);
    for (Index j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Index a, Index b) { return x(a, j) < x(b, j); });
        Index start = 0;
        while (start < k) {
            Index stop = start + 1;
            while (stop < k && x(order[stop], j) == x(order[start], j)) ++stop;
            const double u = static_cast<double>(stop) / static_cast<double>(k);
            for (Index r = start; r < stop; ++r) out(order[r], j) = u;
            start = stop;
        }
    }
    return PseudoObs(std::move(out));
}

}  // namespace aiblock
