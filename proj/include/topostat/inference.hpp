#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "topostat/rng.hpp"

namespace topostat {

/// Two-group labeling of n items with values in {1, 2}; both groups need at
/// least two members.
struct GroupLabels {
    std::vector<int> labels;

    explicit GroupLabels(std::vector<int> values);

    int size() const { return static_cast<int>(labels.size()); }
    int n1() const;
    int n2() const;
};

struct GroupDistances {
    double within = 0.0;   ///< sum of pairwise distances inside the groups
    double between = 0.0;  ///< sum of pairwise distances across the groups
};

/// Block sums of a symmetric zero-diagonal loss matrix under a labeling.
/// within + between equals the sum over all unordered pairs, so the total
/// is invariant under relabeling.
GroupDistances group_distances(const Eigen::MatrixXd& loss, const GroupLabels& labels);

/// Ratio statistic: between-group over within-group distance. Throws a
/// degenerate-input error when the within-group distance is zero.
double ratio_statistic(const Eigen::MatrixXd& loss, const GroupLabels& labels);

/// Null distribution and right-tail p-value of the ratio statistic.
struct RatioResult {
    double observed = 0.0;
    double p_value = 1.0;
    std::vector<double> null_samples;
    std::int64_t n_perms = 0;       ///< valid null samples recorded
    std::int64_t n_degenerate = 0;  ///< samples skipped for zero within-distance
};

/// Permutation test: draws uniform relabelings preserving the group sizes
/// and recomputes the ratio by block summation for each. The p-value is the
/// add-one-smoothed right-tail proportion (r+1)/(m+1).
RatioResult permutation_test(const Eigen::MatrixXd& loss, const GroupLabels& labels,
                             std::int64_t n_perms, std::uint64_t seed);

/// Incremental permutation state: each transposition swaps one member of
/// each group and adjusts the block sums by the 2(n-2) affected entries,
/// O(n) per step. A full relabeling with exact recomputation can be
/// interjected to reset accumulated floating error.
class TranspositionChain {
public:
    TranspositionChain(const Eigen::MatrixXd& loss, const GroupLabels& labels, std::uint64_t seed);

    /// Swaps a uniformly chosen member of each group.
    void transpose_step();
    /// Swaps the members at the given positions of the two group lists.
    void transpose(std::size_t pick1, std::size_t pick2);
    void full_permutation();
    /// Recomputes the block sums from scratch for the current labels.
    void resync();

    double within() const { return within_; }
    double between() const { return between_; }
    const std::vector<int>& labels() const { return labels_; }

private:
    const Eigen::MatrixXd* loss_;
    std::vector<int> labels_;
    std::vector<int> group1_, group2_;  // member indices
    double within_ = 0.0, between_ = 0.0;
    Rng rng_;
};

/// Transposition test: runs a chain of n_steps single-pair swaps, recording
/// the ratio at every step, with a full uniform relabeling every
/// full_perm_interval steps. Same p-value convention as permutation_test.
RatioResult transposition_test(const Eigen::MatrixXd& loss, const GroupLabels& labels,
                               std::int64_t n_steps, std::int64_t full_perm_interval,
                               std::uint64_t seed);

}  // namespace topostat
