#pragma once

// Domain types shared by every stage of the pipeline, plus partition algebra.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aiblock/errors.hpp"

namespace aiblock {

using Index = std::size_t;
using IndexSet = std::vector<Index>;
using Matrix = Eigen::MatrixXd;

namespace detail {

inline bool all_finite(const Matrix& m) { return m.array().isFinite().all(); }

inline std::vector<std::string> default_names(Index d) {
    std::vector<std::string> names;
    names.reserve(d);
    for (Index j = 0; j < d; ++j) names.push_back("v" + std::to_string(j));
    return names;
}

}  // namespace detail

/// Raw observations of a d-variate stationary process: rows are time steps,
/// columns are variables.
class SeriesMatrix {
public:
    explicit SeriesMatrix(Matrix values, std::vector<std::string> names = {})
        : values_(std::move(values)), names_(std::move(names)) {
        if (values_.rows() < 1 || values_.cols() < 1)
            throw InputError("series must have at least one row and one column");
        if (!detail::all_finite(values_))
            throw InputError("series contains non-finite entries");
        if (names_.empty()) names_ = detail::default_names(dimension());
        if (names_.size() != dimension())
            throw DimensionMismatch("series has " + std::to_string(dimension()) +
                                    " columns but " + std::to_string(names_.size()) + " names");
        std::set<std::string> unique(names_.begin(), names_.end());
        if (unique.size() != names_.size()) throw InputError("variable names must be unique");
    }

    const Matrix& values() const noexcept { return values_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    Index length() const noexcept { return static_cast<Index>(values_.rows()); }
    Index dimension() const noexcept { return static_cast<Index>(values_.cols()); }

private:
    Matrix values_;
    std::vector<std::string> names_;
};

/// Component-wise maxima over k = floor(n/m) consecutive disjoint blocks.
class MaximaMatrix {
public:
    MaximaMatrix(Matrix values, Index block_length, Index source_length)
        : values_(std::move(values)), block_length_(block_length), source_length_(source_length) {
        if (block_length_ < 1) throw InputError("block length must be positive");
        if (source_length_ / block_length_ < 1 ||
            static_cast<Index>(values_.rows()) != source_length_ / block_length_)
            throw DimensionMismatch("maxima row count must equal floor(n/m) >= 1");
        if (values_.cols() < 1) throw InputError("maxima must have at least one column");
        if (!detail::all_finite(values_)) throw InputError("maxima contain non-finite entries");
    }

    const Matrix& values() const noexcept { return values_; }
    Index blocks() const noexcept { return static_cast<Index>(values_.rows()); }
    Index dimension() const noexcept { return static_cast<Index>(values_.cols()); }
    Index block_length() const noexcept { return block_length_; }
    Index source_length() const noexcept { return source_length_; }

private:
    Matrix values_;
    Index block_length_;
    Index source_length_;
};

/// Column-wise scaled ranks in (0, 1].
class PseudoObs {
public:
    explicit PseudoObs(Matrix values) : values_(std::move(values)) {
        if (values_.rows() < 1 || values_.cols() < 1)
            throw InputError("pseudo-observations must be non-empty");
        if (!(values_.array() > 0.0).all() || !(values_.array() <= 1.0).all())
            throw InputError("pseudo-observations must lie in (0, 1]");
    }

    const Matrix& values() const noexcept { return values_; }
    Index blocks() const noexcept { return static_cast<Index>(values_.rows()); }
    Index dimension() const noexcept { return static_cast<Index>(values_.cols()); }

private:
    Matrix values_;
};

/// Symmetric matrix of estimated extremal correlations with unit diagonal.
/// `blocks` is the number of block maxima behind the estimate; 0 means the
/// matrix was supplied directly and the finite-sample bound is not checked.
class ChiMatrix {
public:
    explicit ChiMatrix(Matrix values, Index blocks = 0) : values_(std::move(values)), blocks_(blocks) {
        if (values_.rows() != values_.cols() || values_.rows() < 1)
            throw DimensionMismatch("chi matrix must be square and non-empty");
        if (!detail::all_finite(values_)) throw InputError("chi matrix contains non-finite entries");
        const Index d = dimension();
        const double lower = blocks_ > 0 ? 3.0 - 2.0 * static_cast<double>(blocks_)
                                         : -std::numeric_limits<double>::infinity();
        for (Index a = 0; a < d; ++a) {
            if (values_(a, a) != 1.0) throw InputError("chi matrix diagonal must be exactly 1");
            for (Index b = a + 1; b < d; ++b) {
                if (values_(a, b) != values_(b, a)) throw InputError("chi matrix must be symmetric");
                const double v = values_(a, b);
                if (v > 1.0 + 1e-12 || v < lower - 1e-9)
                    throw InputError("chi entry outside [3-2k, 1]");
            }
        }
    }

    double operator()(Index a, Index b) const { return values_(a, b); }
    const Matrix& values() const noexcept { return values_; }
    Index dimension() const noexcept { return static_cast<Index>(values_.rows()); }
    Index blocks() const noexcept { return blocks_; }

private:
    Matrix values_;
    Index blocks_;
};

/// Disjoint nonempty groups covering {0, ..., d-1}, always held in canonical
/// form: members ascending, groups ordered by their smallest member.
class Partition {
public:
    const std::vector<IndexSet>& groups() const noexcept { return groups_; }
    Index dimension() const noexcept { return dimension_; }
    Index size() const noexcept { return groups_.size(); }
    const IndexSet& operator[](Index g) const { return groups_[g]; }

    /// Group label of every variable, labels following canonical group order.
    std::vector<Index> labels() const {
        std::vector<Index> out(dimension_);
        for (Index g = 0; g < groups_.size(); ++g)
            for (Index j : groups_[g]) out[j] = g;
        return out;
    }

    friend bool operator==(const Partition&, const Partition&) = default;

    static Partition singletons(Index d);
    static Partition whole(Index d);
    static Partition from_labels(const std::vector<Index>& labels);
    static Partition from_sizes(const std::vector<Index>& sizes);

private:
    friend Partition canonicalize(std::vector<IndexSet> groups, Index d);
    Partition(std::vector<IndexSet> groups, Index d) : groups_(std::move(groups)), dimension_(d) {}

    std::vector<IndexSet> groups_;
    Index dimension_ = 0;
};

inline Partition canonicalize(std::vector<IndexSet> groups, Index d) {
    std::vector<char> seen(d, 0);
    for (auto& g : groups) {
        if (g.empty()) throw EmptyGroupError("partition contains an empty group");
        for (Index j : g) {
            if (j >= d)
                throw IndexOutOfRange("index " + std::to_string(j) + " outside 0.." +
                                      std::to_string(d == 0 ? 0 : d - 1));
            if (seen[j]) throw OverlapError("index " + std::to_string(j) + " appears twice");
            seen[j] = 1;
        }
        std::sort(g.begin(), g.end());
    }
    for (Index j = 0; j < d; ++j)
        if (!seen[j]) throw CoverageError("index " + std::to_string(j) + " is not covered");
    std::sort(groups.begin(), groups.end(),
              [](const IndexSet& a, const IndexSet& b) { return a.front() < b.front(); });
    return Partition(std::move(groups), d);
}

inline Partition Partition::singletons(Index d) {
    std::vector<IndexSet> groups;
    for (Index j = 0; j < d; ++j) groups.push_back({j});
    return canonicalize(std::move(groups), d);
}

inline Partition Partition::whole(Index d) {
    IndexSet all(d);
    std::iota(all.begin(), all.end(), Index{0});
    return canonicalize({std::move(all)}, d);
}

inline Partition Partition::from_labels(const std::vector<Index>& labels) {
    std::vector<IndexSet> groups;
    std::vector<Index> slot;
    for (Index j = 0; j < labels.size(); ++j) {
        if (labels[j] >= slot.size()) slot.resize(labels[j] + 1, Index(-1));
        if (slot[labels[j]] == Index(-1)) {
            slot[labels[j]] = groups.size();
            groups.emplace_back();
        }
        groups[slot[labels[j]]].push_back(j);
    }
    return canonicalize(std::move(groups), labels.size());
}

/// Contiguous groups of the given sizes: {0..s0-1}, {s0..s0+s1-1}, ...
inline Partition Partition::from_sizes(const std::vector<Index>& sizes) {
    std::vector<IndexSet> groups;
    Index next = 0;
    for (Index s : sizes) {
        IndexSet g(s);
        std::iota(g.begin(), g.end(), next);
        next += s;
        groups.push_back(std::move(g));
    }
    return canonicalize(std::move(groups), next);
}

inline bool partitions_equal(const Partition& a, const Partition& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch("partitions over different d");
    return a == b;
}

/// True iff every group of `fine` lies inside a single group of `coarse`.
inline bool is_subpartition(const Partition& fine, const Partition& coarse) {
    if (fine.dimension() != coarse.dimension())
        throw DimensionMismatch("partitions over different d");
    const auto label = coarse.labels();
    for (const auto& g : fine.groups())
        for (Index j : g)
            if (label[j] != label[g.front()]) return false;
    return true;
}

}  // namespace aiblock
