#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "topostat/graphfilt.hpp"

namespace topostat {

/// General planar persistence diagram: (birth, death) points. Coordinates
/// must be finite; substitute the death sentinel for essential classes
/// before building one.
struct Diagram {
    std::vector<std::pair<double, double>> points;

    explicit Diagram(std::vector<std::pair<double, double>> pts);
};

/// One-dimensional diagram of a graph filtration: sorted birth values (0D)
/// or sorted death values (1D).
struct GraphDiagram {
    std::vector<double> values;

    explicit GraphDiagram(std::vector<double> vals);
};

/// Embeds a one-dimensional diagram in the plane at a fixed second
/// coordinate (the death sentinel for 0D diagrams).
Diagram embed_graph_diagram(const GraphDiagram& diagram, double sentinel);

/// r-Wasserstein distance between equal-size one-dimensional diagrams,
/// realized exactly by matching order statistics: sorts both lists and
/// returns (sum_i |a_(i) - b_(i)|^r)^(1/r). O(q log q).
double wasserstein_graph(const GraphDiagram& a, const GraphDiagram& b, double r = 2.0);

/// r-Wasserstein distance between equal-cardinality planar diagrams: the
/// exact optimum over bijections, solved by the Hungarian algorithm on the
/// cost matrix ||x - psi(x)||^r. O(q^3); kept as the general route and as
/// an oracle for the sorted closed form.
double wasserstein_assignment(const Diagram& a, const Diagram& b, double r = 2.0);

/// Pairwise topological distances over a graph collection: each graph is
/// decomposed once, then D0/D1 hold the r = 2 distances between the 0D and
/// 1D diagrams and D01 = D0 + D1 entrywise.
struct LossMatrix {
    Eigen::MatrixXd d0;
    Eigen::MatrixXd d1;
    Eigen::MatrixXd d01;
};

LossMatrix pairwise_loss(const std::vector<WeightedGraph>& graphs, double r = 2.0, int jobs = 1);

}  // namespace topostat
