#pragma once

// Baselines that need the number of clusters as an oracle input: average-linkage
// hierarchical clustering on the pairwise madogram, and spherical k-means on
// the per-variable pseudo-observation vectors.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "aiblock/core.hpp"
#include "aiblock/random.hpp"

namespace aiblock {

/// D(a,b) = (1/(2k)) sum_i |U(i,a) - U(i,b)|, zero diagonal.
inline Matrix madogram_dissimilarity(const PseudoObs& pobs) {
    const Index d = pobs.dimension();
    const Index k = pobs.blocks();
    const Matrix& u = pobs.values();
    Matrix out = Matrix::Zero(d, d);
    for (Index a = 0; a < d; ++a)
        for (Index b = a + 1; b < d; ++b) {
            const double v = (u.col(a) - u.col(b)).cwiseAbs().sum() / (2.0 * static_cast<double>(k));
            out(a, b) = v;
            out(b, a) = v;
        }
    return out;
}

/// Agglomerative average-linkage clustering stopped at exactly g clusters.
/// Equal merge costs go to the pair of clusters whose (smallest member,
/// smallest member) is lexicographically smallest.
inline Partition hc_cluster(const Matrix& dissim, Index g) {
    const Index d = static_cast<Index>(dissim.rows());
    if (dissim.cols() != dissim.rows()) throw DimensionMismatch("dissimilarity must be square");
    if (g < 1 || g > d) throw InvalidG("g must lie in 1..d, got " + std::to_string(g));

    // Clusters stay sorted by smallest member since merges keep the lower slot.
    std::vector<IndexSet> clusters;
    for (Index j = 0; j < d; ++j) clusters.push_back({j});
    Matrix link = dissim;  // linkage between current clusters, by slot

    while (clusters.size() > g) {
        Index best_x = 0, best_y = 1;
        double best = std::numeric_limits<double>::infinity();
        for (Index x = 0; x < clusters.size(); ++x)
            for (Index y = x + 1; y < clusters.size(); ++y)
                if (link(x, y) < best) {
                    best = link(x, y);
                    best_x = x;
                    best_y = y;
                }
        const double nx = static_cast<double>(clusters[best_x].size());
        const double ny = static_cast<double>(clusters[best_y].size());
        for (Index z = 0; z < clusters.size(); ++z) {
            if (z == best_x || z == best_y) continue;
            const double merged = (nx * link(best_x, z) + ny * link(best_y, z)) / (nx + ny);
            link(best_x, z) = merged;
            link(z, best_x) = merged;
        }
        clusters[best_x].insert(clusters[best_x].end(), clusters[best_y].begin(), clusters[best_y].end());
        std::sort(clusters[best_x].begin(), clusters[best_x].end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_y));

        // Drop row and column best_y from the linkage matrix.
        const Index size = static_cast<Index>(link.rows());
        Matrix next(size - 1, size - 1);
        for (Index r = 0, rr = 0; r < size; ++r) {
            if (r == best_y) continue;
            for (Index c = 0, cc = 0; c < size; ++c) {
                if (c == best_y) continue;
                next(rr, cc++) = link(r, c);
            }
            ++rr;
        }
        link = std::move(next);
    }
    return canonicalize(std::move(clusters), d);
}

namespace detail {

struct SphericalFit {
    std::vector<Index> labels;
    double objective = -std::numeric_limits<double>::infinity();
};

// One Lloyd run on unit vectors (columns of `points`) seeded by greedy
// farthest-point selection from `first`.
inline SphericalFit spherical_kmeans_run(const Matrix& points, Index g, Index first) {
    const Index d = static_cast<Index>(points.cols());
    Matrix centers(points.rows(), g);
    centers.col(0) = points.col(first);
    for (Index c = 1; c < g; ++c) {
        Index far = 0;
        double lowest = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < d; ++j) {
            const double nearest = (centers.leftCols(c).transpose() * points.col(j)).maxCoeff();
            if (nearest < lowest) {
                lowest = nearest;
                far = j;
            }
        }
        centers.col(c) = points.col(far);
    }

    SphericalFit fit;
    fit.labels.assign(d, Index(-1));
    for (int iter = 0; iter < 200; ++iter) {
        const Matrix sim = centers.transpose() * points;  // g x d
        std::vector<Index> labels(d);
        std::vector<double> score(d);
        for (Index j = 0; j < d; ++j) {
            Eigen::Index best;
            score[j] = sim.col(j).maxCoeff(&best);
            labels[j] = static_cast<Index>(best);
        }
        // Refill empty clusters with the worst-fitting point of a cluster that
        // can spare one.
        std::vector<Index> counts(g, 0);
        for (Index l : labels) ++counts[l];
        for (Index c = 0; c < g; ++c) {
            if (counts[c] > 0) continue;
            Index worst = d;
            for (Index j = 0; j < d; ++j)
                if (counts[labels[j]] > 1 && (worst == d || score[j] < score[worst])) worst = j;
            --counts[labels[worst]];
            labels[worst] = c;
            score[worst] = sim(c, worst);
            ++counts[c];
        }
        double objective = 0.0;
        for (Index j = 0; j < d; ++j) objective += sim(labels[j], j);
        const bool stable = labels == fit.labels;
        fit.labels = std::move(labels);
        fit.objective = objective;
        if (stable) break;

        centers.setZero();
        for (Index j = 0; j < d; ++j) centers.col(fit.labels[j]) += points.col(j);
        for (Index c = 0; c < g; ++c) centers.col(c).normalize();
    }
    return fit;
}

}  // namespace detail

/// Spherical k-means over variables: each variable is its k-vector of
/// pseudo-observations scaled to unit length. The best of `restarts` runs (by
/// total cosine similarity to the assigned centroid) is returned; each run
/// draws its first centroid at random and picks the rest farthest-first.
inline Partition skmeans_cluster(const PseudoObs& pobs, Index g, Index restarts, Rng& rng) {
    const Index d = pobs.dimension();
    if (g < 1 || g > d) throw InvalidG("g must lie in 1..d, got " + std::to_string(g));
    if (restarts < 1) throw InvalidParam("restarts must be positive");
    Matrix points = pobs.values();
    for (Index j = 0; j < d; ++j) points.col(j).normalize();

    const std::uint64_t stream = rng();
    detail::SphericalFit best;
    for (Index r = 0; r < restarts; ++r) {
        Rng restart_rng(derive_seed(stream, {r}));
        const Index first = static_cast<Index>(restart_rng() % d);
        auto fit = detail::spherical_kmeans_run(points, g, first);
        if (fit.objective > best.objective) best = std::move(fit);
    }
    return Partition::from_labels(best.labels);
}

}  // namespace aiblock
