#include "topostat/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "topostat/errors.hpp"
#include "topostat/hungarian.hpp"

namespace topostat {

Diagram::Diagram(std::vector<std::pair<double, double>> pts) : points(std::move(pts)) {
    for (const auto& [birth, death] : points)
        if (!std::isfinite(birth) || !std::isfinite(death))
            throw InvalidInput("diagram coordinates must be finite; substitute sentinels first");
}

GraphDiagram::GraphDiagram(std::vector<double> vals) : values(std::move(vals)) {
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidInput("graph diagram values must be finite");
    std::sort(values.begin(), values.end());
}

Diagram embed_graph_diagram(const GraphDiagram& diagram, double sentinel) {
    std::vector<std::pair<double, double>> points;
    points.reserve(diagram.values.size());
    for (double v : diagram.values) points.emplace_back(v, sentinel);
    return Diagram(std::move(points));
}

double wasserstein_graph(const GraphDiagram& a, const GraphDiagram& b, double r) {
    if (a.values.size() != b.values.size())
        throw IncompatibleInput("graph diagrams have different cardinality");
    if (!(r >= 1.0)) throw InvalidParameter("Wasserstein order r must be >= 1");

    std::vector<double> lhs = a.values;
    std::vector<double> rhs = b.values;
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());

    double total = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        total += std::pow(std::abs(lhs[i] - rhs[i]), r);
    return std::pow(total, 1.0 / r);
}

double wasserstein_assignment(const Diagram& a, const Diagram& b, double r) {
    if (a.points.size() != b.points.size())
        throw IncompatibleInput("diagrams have different cardinality");
    if (!(r >= 1.0)) throw InvalidParameter("Wasserstein order r must be >= 1");
    const int q = static_cast<int>(a.points.size());
    if (q == 0) return 0.0;

    Eigen::MatrixXd cost(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const double dx = a.points[i].first - b.points[j].first;
            const double dy = a.points[i].second - b.points[j].second;
            cost(i, j) = std::pow(std::sqrt(dx * dx + dy * dy), r);
        }
    return std::pow(solve_assignment_min(cost).cost, 1.0 / r);
}

LossMatrix pairwise_loss(const std::vector<WeightedGraph>& graphs, double r, int jobs) {
    const int n = static_cast<int>(graphs.size());
    if (n == 0) throw InvalidInput("pairwise loss needs at least one graph");
    const int p = graphs[0].node_count();
    for (const WeightedGraph& g : graphs)
        if (g.node_count() != p)
            throw IncompatibleInput("graphs in a collection must share the node count");

    // Decompose each graph once; distances then touch only the sorted sets.
    std::vector<BirthDeathSets> decomposed;
    decomposed.reserve(n);
    for (const WeightedGraph& g : graphs) decomposed.push_back(birth_death_decompose(g));

    LossMatrix loss;
    loss.d0 = Eigen::MatrixXd::Zero(n, n);
    loss.d1 = Eigen::MatrixXd::Zero(n, n);
    loss.d01 = Eigen::MatrixXd::Zero(n, n);

    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const auto [i, j] = cells[c];
            const double d0 =
                wasserstein_graph(GraphDiagram(decomposed[i].births),
                                  GraphDiagram(decomposed[j].births), r);
            const double d1 =
                wasserstein_graph(GraphDiagram(decomposed[i].deaths),
                                  GraphDiagram(decomposed[j].deaths), r);
            loss.d0(i, j) = loss.d0(j, i) = d0;
            loss.d1(i, j) = loss.d1(j, i) = d1;
            loss.d01(i, j) = loss.d01(j, i) = d0 + d1;
        }
    };

    const int workers = std::max(1, jobs);
    if (workers == 1 || cells.size() < 2) {
        fill(0, cells.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (cells.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < cells.size(); begin += chunk)
            pool.emplace_back(fill, begin, std::min(begin + chunk, cells.size()));
        for (std::thread& t : pool) t.join();
    }
    return loss;
}

}  // namespace topostat
