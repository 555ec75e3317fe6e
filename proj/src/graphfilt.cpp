#include "topostat/graphfilt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topostat/errors.hpp"
#include "topostat/union_find.hpp"

namespace topostat {

WeightedGraph::WeightedGraph(Eigen::MatrixXd weights) : w(std::move(weights)) {
    if (w.rows() != w.cols() || w.rows() < 1) throw InvalidInput("weight matrix must be square");
    if (!w.allFinite()) throw InvalidInput("weight matrix must be finite");
    for (int i = 0; i < w.rows(); ++i) {
        if (w(i, i) != 0.0) throw InvalidInput("weight matrix diagonal must be zero");
        for (int j = i + 1; j < w.cols(); ++j)
            if (w(i, j) != w(j, i)) throw InvalidInput("weight matrix must be symmetric");
    }
}

std::vector<double> WeightedGraph::edge_weights() const {
    std::vector<double> weights;
    for (int i = 0; i < w.rows(); ++i)
        for (int j = i + 1; j < w.cols(); ++j)
            if (w(i, j) > 0.0) weights.push_back(w(i, j));
    return weights;
}

namespace {

bool edge_present(double weight, double eps, ThresholdDirection direction) {
    if (weight <= 0.0) return false;  // absent edge
    return direction == ThresholdDirection::Above ? weight > eps : weight <= eps;
}

}  // namespace

Eigen::MatrixXi threshold_graph(const WeightedGraph& graph, double eps,
                                ThresholdDirection direction) {
    if (!std::isfinite(eps)) throw InvalidParameter("threshold must be finite");
    const int p = graph.node_count();
    Eigen::MatrixXi adjacency = Eigen::MatrixXi::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (edge_present(graph.w(i, j), eps, direction)) {
                adjacency(i, j) = 1;
                adjacency(j, i) = 1;
            }
    return adjacency;
}

BettiCurve betti_curve(const WeightedGraph& graph, const std::vector<double>& thresholds,
                       ThresholdDirection direction) {
    for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
        if (thresholds[i] > thresholds[i + 1])
            throw InvalidParameter("thresholds must be ascending");

    const int p = graph.node_count();
    BettiCurve curve;
    curve.thresholds = thresholds;
    for (double eps : thresholds) {
        UnionFind components(p);
        int edges = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                if (edge_present(graph.w(i, j), eps, direction)) {
                    ++edges;
                    components.unite(i, j);
                }
        const int beta0 = components.count();
        curve.beta0.push_back(beta0);
        curve.beta1.push_back(beta0 - p + edges);
    }
    return curve;
}

BirthDeathSets birth_death_decompose(const WeightedGraph& graph) {
    const int p = graph.node_count();

    struct Edge {
        double weight;
        int i, j;
    };
    std::vector<Edge> edges;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (graph.w(i, j) > 0.0) edges.push_back({graph.w(i, j), i, j});

    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.weight > b.weight; });
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i].weight == edges[i + 1].weight)
            throw DegenerateInput(
                "duplicate edge weights; add a small jitter to break ties before decomposing");

    // Kruskal on descending weights builds the maximum spanning tree; every
    // rejected edge closes a loop and lands in the death set.
    BirthDeathSets sets;
    UnionFind forest(p);
    for (const Edge& e : edges) {
        if (forest.unite(e.i, e.j)) {
            sets.births.push_back(e.weight);
            sets.mst_edges.emplace_back(e.i, e.j);
        } else {
            sets.deaths.push_back(e.weight);
        }
    }
    if (static_cast<int>(sets.births.size()) != p - 1)
        throw InvalidInput("graph is not connected; the birth set is defined for connected graphs");

    std::sort(sets.births.begin(), sets.births.end());
    std::sort(sets.deaths.begin(), sets.deaths.end());
    return sets;
}

std::vector<std::pair<double, int>> tree_betti_coordinates(const std::vector<double>& tree_weights,
                                                           int node_count) {
    if (static_cast<int>(tree_weights.size()) != node_count - 1)
        throw InvalidInput("a tree on p nodes has exactly p-1 weights");
    std::vector<double> sorted = tree_weights;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] <= 0.0) throw InvalidInput("tree weights must be positive");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw DegenerateInput("duplicate tree weights; jitter the input to break ties");
    }

    std::vector<std::pair<double, int>> coords;
    coords.emplace_back(0.0, 1);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        coords.emplace_back(sorted[i], static_cast<int>(i) + 2);
    coords.emplace_back(std::numeric_limits<double>::infinity(), node_count);
    return coords;
}

}  // namespace topostat
