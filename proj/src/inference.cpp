#include "topostat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "topostat/errors.hpp"

namespace topostat {

namespace {

void validate_loss(const Eigen::MatrixXd& loss, int n_labels) {
    if (loss.rows() != loss.cols()) throw InvalidInput("loss matrix must be square");
    if (loss.rows() != n_labels) throw InvalidInput("loss matrix size does not match label count");
    if (!loss.allFinite()) throw InvalidInput("loss matrix must be finite");
    for (int i = 0; i < loss.rows(); ++i) {
        if (loss(i, i) != 0.0) throw InvalidInput("loss matrix diagonal must be zero");
        for (int j = i + 1; j < loss.cols(); ++j)
            if (loss(i, j) != loss(j, i)) throw InvalidInput("loss matrix must be symmetric");
    }
}

GroupDistances block_sums(const Eigen::MatrixXd& loss, const std::vector<int>& labels) {
    GroupDistances sums;
    const int n = static_cast<int>(labels.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            (labels[i] == labels[j] ? sums.within : sums.between) += loss(i, j);
    return sums;
}

double guarded_ratio(const GroupDistances& sums) {
    return sums.within == 0.0 ? std::numeric_limits<double>::infinity()
                              : sums.between / sums.within;
}

// Uniform relabeling preserving group sizes.
std::vector<int> random_labels(int n, int n1, Rng& rng) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // Partial Fisher-Yates: the first n1 entries form group 1.
    for (int i = 0; i < n1; ++i) {
        const auto j = static_cast<int>(rng.uniform_int(i, n - 1));
        std::swap(idx[i], idx[j]);
    }
    std::vector<int> labels(n, 2);
    for (int i = 0; i < n1; ++i) labels[idx[i]] = 1;
    return labels;
}

double tail_p_value(double observed, const std::vector<double>& null_samples) {
    std::int64_t at_least = 0;
    for (double v : null_samples)
        if (v >= observed) ++at_least;
    return static_cast<double>(at_least + 1) / static_cast<double>(null_samples.size() + 1);
}

}  // namespace

GroupLabels::GroupLabels(std::vector<int> values) : labels(std::move(values)) {
    int count1 = 0, count2 = 0;
    for (int v : labels) {
        if (v == 1)
            ++count1;
        else if (v == 2)
            ++count2;
        else
            throw InvalidInput("group labels must be 1 or 2");
    }
    if (count1 < 2 || count2 < 2) throw InvalidInput("both groups need at least two members");
}

int GroupLabels::n1() const {
    return static_cast<int>(std::count(labels.begin(), labels.end(), 1));
}

int GroupLabels::n2() const {
    return static_cast<int>(std::count(labels.begin(), labels.end(), 2));
}

GroupDistances group_distances(const Eigen::MatrixXd& loss, const GroupLabels& labels) {
    validate_loss(loss, labels.size());
    return block_sums(loss, labels.labels);
}

double ratio_statistic(const Eigen::MatrixXd& loss, const GroupLabels& labels) {
    const GroupDistances sums = group_distances(loss, labels);
    if (sums.within == 0.0)
        throw DegenerateInput("within-group distance is zero; the ratio statistic is undefined");
    return sums.between / sums.within;
}

RatioResult permutation_test(const Eigen::MatrixXd& loss, const GroupLabels& labels,
                             std::int64_t n_perms, std::uint64_t seed) {
    if (n_perms < 1) throw InvalidParameter("permutation count must be at least 1");
    validate_loss(loss, labels.size());

    RatioResult result;
    result.observed = guarded_ratio(block_sums(loss, labels.labels));

    Rng rng(seed);
    const int n = labels.size();
    const int n1 = labels.n1();
    result.null_samples.reserve(static_cast<std::size_t>(n_perms));
    for (std::int64_t s = 0; s < n_perms; ++s) {
        const GroupDistances sums = block_sums(loss, random_labels(n, n1, rng));
        if (sums.within == 0.0) {
            ++result.n_degenerate;
            continue;
        }
        result.null_samples.push_back(sums.between / sums.within);
    }
    result.n_perms = static_cast<std::int64_t>(result.null_samples.size());
    result.p_value = tail_p_value(result.observed, result.null_samples);
    return result;
}

TranspositionChain::TranspositionChain(const Eigen::MatrixXd& loss, const GroupLabels& labels,
                                       std::uint64_t seed)
    : loss_(&loss), labels_(labels.labels), rng_(seed) {
    validate_loss(loss, labels.size());
    for (int i = 0; i < labels.size(); ++i)
        (labels_[i] == 1 ? group1_ : group2_).push_back(i);
    resync();
}

void TranspositionChain::resync() {
    const GroupDistances sums = block_sums(*loss_, labels_);
    within_ = sums.within;
    between_ = sums.between;
}

void TranspositionChain::transpose_step() {
    const auto pick1 = static_cast<std::size_t>(
        rng_.uniform_int(0, static_cast<std::int64_t>(group1_.size()) - 1));
    const auto pick2 = static_cast<std::size_t>(
        rng_.uniform_int(0, static_cast<std::int64_t>(group2_.size()) - 1));
    transpose(pick1, pick2);
}

void TranspositionChain::transpose(std::size_t pick1, std::size_t pick2) {
    const int k = group1_[pick1];
    const int l = group2_[pick2];

    // Swapping k and l moves pairs (k,m) with m in group 2 and (l,m) with m
    // in group 1 into the within blocks, and their mirror pairs out; (k,l)
    // itself stays a between pair.
    double delta = 0.0;
    for (int m : group2_)
        if (m != l) delta += (*loss_)(k, m) - (*loss_)(l, m);
    for (int m : group1_)
        if (m != k) delta += (*loss_)(l, m) - (*loss_)(k, m);
    within_ += delta;
    between_ -= delta;

    group1_[pick1] = l;
    group2_[pick2] = k;
    labels_[k] = 2;
    labels_[l] = 1;
}

void TranspositionChain::full_permutation() {
    const int n = static_cast<int>(labels_.size());
    const int n1 = static_cast<int>(group1_.size());
    labels_ = random_labels(n, n1, rng_);
    group1_.clear();
    group2_.clear();
    for (int i = 0; i < n; ++i) (labels_[i] == 1 ? group1_ : group2_).push_back(i);
    resync();
}

RatioResult transposition_test(const Eigen::MatrixXd& loss, const GroupLabels& labels,
                               std::int64_t n_steps, std::int64_t full_perm_interval,
                               std::uint64_t seed) {
    if (n_steps < 1) throw InvalidParameter("transposition count must be at least 1");
    if (full_perm_interval < 1) throw InvalidParameter("full permutation interval must be >= 1");

    RatioResult result;
    result.observed = guarded_ratio(group_distances(loss, labels));

    TranspositionChain chain(loss, labels, seed);
    result.null_samples.reserve(static_cast<std::size_t>(n_steps));
    for (std::int64_t step = 1; step <= n_steps; ++step) {
        if (step % full_perm_interval == 0)
            chain.full_permutation();
        else
            chain.transpose_step();
        if (chain.within() == 0.0) {
            ++result.n_degenerate;
            continue;
        }
        result.null_samples.push_back(chain.between() / chain.within());
    }
    result.n_perms = static_cast<std::int64_t>(result.null_samples.size());
    result.p_value = tail_p_value(result.observed, result.null_samples);
    return result;
}

}  // namespace topostat
