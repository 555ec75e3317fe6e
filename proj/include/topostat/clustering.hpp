#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "topostat/graphfilt.hpp"

namespace topostat {

/// Topological descriptor of one graph: its sorted 0D birth values and 1D
/// death values from the birth-death decomposition.
struct DiagramPair {
    std::vector<double> births;
    std::vector<double> deaths;
};

DiagramPair graph_descriptor(const WeightedGraph& graph);

/// Coordinate-wise mean of the members' sorted birth vectors and sorted
/// death vectors: the exact 2-Wasserstein barycenter for equal-cardinality
/// one-dimensional diagrams.
DiagramPair cluster_mean(const std::vector<DiagramPair>& members);

/// Squared combined topological distance D0^2 + D1^2 between descriptors;
/// the k-means energy below is the sum of these over cluster members, which
/// the coordinate-wise mean minimizes exactly.
double descriptor_distance_sq(const DiagramPair& a, const DiagramPair& b);

struct ClusterState {
    std::vector<int> assignment;     ///< cluster ids 1..k
    std::vector<DiagramPair> means;  ///< one mean descriptor per cluster
    double objective = 0.0;          ///< within-cluster energy of the assignment
    int iterations = 0;
    /// Energy after every reassignment and every mean update, in order.
    std::vector<double> objective_trace;
    /// Per-iteration flag: 1 if the empty-cluster repair rule fired. Repair
    /// moves a point into an empty cluster and may bump the energy; descent
    /// is guaranteed for every step where the flag is 0.
    std::vector<char> repair_flags;
    /// Final energy of each random restart, for mean/sd reporting across
    /// seeds. The returned state is the restart with the smallest energy.
    std::vector<double> seed_objectives;
};

/// Wasserstein k-means on descriptors: alternates the exact barycenter
/// update with nearest-mean reassignment until the means stop changing or
/// max_iter is hit; the energy is nonincreasing at every step. Repeats for
/// n_seeds random initial assignments and returns the best state. Empty
/// clusters are repaired with a random member of the largest cluster.
ClusterState ws_kmeans_descriptors(const std::vector<DiagramPair>& descriptors, int k, int n_seeds,
                                   int max_iter, std::uint64_t seed);

/// Convenience wrapper: decomposes the graphs, then clusters.
ClusterState ws_kmeans(const std::vector<WeightedGraph>& graphs, int k, int n_seeds, int max_iter,
                       std::uint64_t seed);

struct ConfusionMatrix {
    Eigen::MatrixXi counts;  ///< counts(i, j) = items with true label i+1, predicted j+1
};

struct AccuracyResult {
    double accuracy = 0.0;
    ConfusionMatrix confusion;
};

/// Clustering accuracy: the best diagonal sum of the confusion matrix over
/// all permutations of predicted labels, solved as a linear sum assignment,
/// divided by n. Labels take values in 1..k.
AccuracyResult cluster_accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                int k);

/// Canonical circle patterns for the simulation study. Both families have
/// four groups of unit circles sampled at uniform world-frame angles:
///  - DifferentTopology: group g consists of g circles with centers spaced
///    3 apart, so the groups have 1..4 independent cycles.
///  - EquivalentTopology: a two-circle motif (centers (+-1.5, 0)) rotated
///    about the origin by (g-1) * 84 degrees. The rotation step is a
///    multiple of the angular node spacing, so the noiseless edge-weight
///    multiset is identical across groups.
/// Gaussian coordinate noise N(0, sd^2) is added and the weighted graph is
/// the pairwise Euclidean distance matrix.
enum class PatternFamily { EquivalentTopology, DifferentTopology };

std::vector<WeightedGraph> simulate_circles(PatternFamily family, int group, int n_nodes,
                                            double noise_sd, int n_graphs, std::uint64_t seed);

/// Baseline: standard k-means (k-means++ init, Lloyd iterations) on the
/// vectorized upper-triangular weights. Returns labels 1..k.
std::vector<int> baseline_kmeans(const std::vector<WeightedGraph>& graphs, int k,
                                 std::uint64_t seed, int max_iter = 100);

/// Baseline: average-linkage agglomerative clustering on pairwise L2
/// distances between weight matrices, cut at k clusters. Returns labels 1..k.
std::vector<int> baseline_hierarchical(const std::vector<WeightedGraph>& graphs, int k);

}  // namespace topostat
