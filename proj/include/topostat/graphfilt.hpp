#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace topostat {

/// Weighted graph on p nodes: symmetric p x p weight matrix with zero
/// diagonal. A zero off-diagonal entry means the edge is absent; present
/// edges carry positive weights.
struct WeightedGraph {
    Eigen::MatrixXd w;

    explicit WeightedGraph(Eigen::MatrixXd weights);

    int node_count() const { return static_cast<int>(w.rows()); }
    /// Positive upper-triangular weights (the edge weight multiset).
    std::vector<double> edge_weights() const;
};

/// Filtration direction. Above keeps edges with w > eps (connectivity
/// convention); Below keeps edges with w <= eps (distance convention).
enum class ThresholdDirection { Above, Below };

/// Binary adjacency of the thresholded graph.
Eigen::MatrixXi threshold_graph(const WeightedGraph& graph, double eps,
                                ThresholdDirection direction = ThresholdDirection::Above);

/// beta0 and beta1 of the thresholded graph at each filtration value.
/// beta0 is counted by union-find; beta1 follows from the Euler relation
/// beta0 - beta1 = p - q on graphs.
struct BettiCurve {
    std::vector<double> thresholds;
    std::vector<int> beta0;
    std::vector<int> beta1;
};

BettiCurve betti_curve(const WeightedGraph& graph, const std::vector<double>& thresholds,
                       ThresholdDirection direction = ThresholdDirection::Above);

/// Partition of the edge-weight set of a connected graph with distinct
/// positive weights: births are the maximum-spanning-tree weights (the 0D
/// persistence values), deaths are the remaining weights (the 1D
/// persistence values). Both sorted ascending.
struct BirthDeathSets {
    std::vector<double> births;
    std::vector<double> deaths;
    std::vector<std::pair<int, int>> mst_edges;
};

BirthDeathSets birth_death_decompose(const WeightedGraph& graph);

/// Exact 0th Betti curve coordinates of a tree filtration with sorted
/// positive weights w_(1) < ... < w_(p-1):
/// (0,1), (w_(1),2), ..., (w_(p-1),p), terminated by (+inf, p).
std::vector<std::pair<double, int>> tree_betti_coordinates(const std::vector<double>& tree_weights,
                                                           int node_count);

}  // namespace topostat
