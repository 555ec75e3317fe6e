#include "topostat/complex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topostat/errors.hpp"
#include "topostat/exact_rank.hpp"

namespace topostat {

PointCloud::PointCloud(Eigen::MatrixXd coords) : points(std::move(coords)) {
    if (points.rows() < 1 || points.cols() < 1)
        throw InvalidInput("point cloud must have at least one point and one coordinate");
    if (!points.allFinite()) throw InvalidInput("point coordinates must be finite");
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd distances) : w(std::move(distances)) {
    if (w.rows() != w.cols() || w.rows() < 1) throw InvalidInput("distance matrix must be square");
    if (!w.allFinite()) throw InvalidInput("distance matrix must be finite");
    for (int i = 0; i < w.rows(); ++i) {
        if (w(i, i) != 0.0) throw InvalidInput("distance matrix diagonal must be zero");
        for (int j = i + 1; j < w.cols(); ++j) {
            if (w(i, j) != w(j, i)) throw InvalidInput("distance matrix must be symmetric");
            if (w(i, j) < 0.0) throw InvalidInput("distances must be nonnegative");
        }
    }
}

DistanceMatrix DistanceMatrix::from_points(const PointCloud& cloud) {
    const int p = static_cast<int>(cloud.points.rows());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const double d = (cloud.points.row(i) - cloud.points.row(j)).norm();
            w(i, j) = d;
            w(j, i) = d;
        }
    return DistanceMatrix(std::move(w));
}

int SimplicialComplex::node_count() const {
    return skeleton.empty() ? 0 : static_cast<int>(skeleton[0].size());
}

std::size_t SimplicialComplex::simplex_count() const {
    std::size_t total = 0;
    for (const auto& level : skeleton) total += level.size();
    return total;
}

SimplicialComplex SimplicialComplex::from_simplices(int nodes,
                                                    std::vector<std::vector<Simplex>> higher) {
    if (nodes < 1) throw InvalidInput("complex needs at least one node");
    SimplicialComplex complex;
    complex.skeleton.emplace_back();
    for (int v = 0; v < nodes; ++v) complex.skeleton[0].push_back({v});

    for (std::size_t level = 0; level < higher.size(); ++level) {
        const int verts = static_cast<int>(level) + 2;
        for (const Simplex& s : higher[level]) {
            if (static_cast<int>(s.size()) != verts)
                throw InvalidInput("simplex of dimension " + std::to_string(level + 1) +
                                   " must have " + std::to_string(verts) + " vertices");
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] < 0 || s[i] >= nodes) throw InvalidInput("simplex vertex out of range");
                if (i > 0 && s[i] <= s[i - 1])
                    throw InvalidInput("simplex vertices must be strictly increasing");
            }
        }
        std::sort(higher[level].begin(), higher[level].end());
        higher[level].erase(std::unique(higher[level].begin(), higher[level].end()),
                            higher[level].end());
        complex.skeleton.push_back(std::move(higher[level]));
    }
    return complex;
}

SimplicialComplex rips_complex(const DistanceMatrix& input, int max_dim, double radius,
                               std::size_t cap) {
    if (max_dim < 0) throw InvalidParameter("rips max_dim must be nonnegative");
    if (!(radius >= 0.0)) throw InvalidParameter("rips radius must be nonnegative");
    const int p = input.size();

    SimplicialComplex complex;
    complex.skeleton.assign(max_dim + 1, {});
    for (int v = 0; v < p; ++v) complex.skeleton[0].push_back({v});

    // Neighbor lists restricted to higher indices keep clique expansion in
    // canonical (lexicographic) order with no duplicate work.
    std::vector<std::vector<int>> above(p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (input.w(i, j) <= radius) above[i].push_back(j);

    std::size_t total = static_cast<std::size_t>(p);
    for (int dim = 1; dim <= max_dim; ++dim) {
        const auto& lower = complex.skeleton[dim - 1];
        auto& current = complex.skeleton[dim];
        for (const Simplex& base : lower) {
            // Candidate extensions: higher-indexed vertices adjacent to every
            // member of the base simplex.
            for (int v : above[base.back()]) {
                bool adjacent_to_all = true;
                for (std::size_t i = 0; i + 1 < base.size() && adjacent_to_all; ++i)
                    adjacent_to_all = input.w(base[i], v) <= radius;
                if (!adjacent_to_all) continue;
                Simplex extended = base;
                extended.push_back(v);
                current.push_back(std::move(extended));
                if (++total > cap)
                    throw ResourceLimit("simplex count cap (" + std::to_string(cap) +
                                        ") exceeded; raise the cap or lower the radius");
            }
        }
    }
    return complex;
}

SimplicialComplex rips_complex(const PointCloud& input, int max_dim, double radius,
                               std::size_t cap) {
    return rips_complex(DistanceMatrix::from_points(input), max_dim, radius, cap);
}

std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& complex) {
    std::vector<BoundaryMatrix> result;
    for (int dim = 1; dim <= complex.max_dim(); ++dim) {
        const auto& faces = complex.skeleton[dim - 1];
        const auto& simplices = complex.skeleton[dim];
        BoundaryMatrix boundary;
        boundary.dim = dim;
        boundary.entries = Eigen::MatrixXi::Zero(static_cast<int>(faces.size()),
                                                 static_cast<int>(simplices.size()));
        Simplex face(dim);
        for (std::size_t col = 0; col < simplices.size(); ++col) {
            const Simplex& simplex = simplices[col];
            for (int omit = 0; omit <= dim; ++omit) {
                for (int i = 0, j = 0; i <= dim; ++i)
                    if (i != omit) face[j++] = simplex[i];
                const auto it = std::lower_bound(faces.begin(), faces.end(), face);
                if (it == faces.end() || *it != face)
                    throw InvalidInput("complex is not closed: missing face of a simplex");
                const int row = static_cast<int>(it - faces.begin());
                boundary.entries(row, static_cast<int>(col)) = (omit % 2 == 0) ? 1 : -1;
            }
        }
        result.push_back(std::move(boundary));
    }
    return result;
}

namespace {

void check_chain_shapes(const std::vector<BoundaryMatrix>& boundaries, int node_count) {
    long expected_rows = node_count;
    for (const BoundaryMatrix& b : boundaries) {
        if (b.entries.rows() != expected_rows)
            throw InvalidInput("boundary matrix dimension mismatch between consecutive maps");
        expected_rows = b.entries.cols();
    }
}

}  // namespace

BettiVector betti_from_boundaries(const std::vector<BoundaryMatrix>& boundaries, int node_count) {
    if (node_count < 1) throw InvalidInput("complex needs at least one node");
    check_chain_shapes(boundaries, node_count);

    const int top = static_cast<int>(boundaries.size());
    std::vector<int> rank(top + 2, 0);  // rank[k] = rank(d_k); d_0 and d_{top+1} are zero maps
    for (int k = 1; k <= top; ++k) rank[k] = exact_rank(boundaries[k - 1].entries);

    BettiVector result;
    for (int k = 0; k <= top; ++k) {
        const int n_k = (k == 0) ? node_count : static_cast<int>(boundaries[k - 1].entries.cols());
        const int nullity = n_k - rank[k];
        result.betti.push_back(nullity - rank[k + 1]);
    }
    return result;
}

std::vector<Eigen::MatrixXi> hodge_laplacians(const std::vector<BoundaryMatrix>& boundaries) {
    if (boundaries.empty()) return {};
    check_chain_shapes(boundaries, static_cast<int>(boundaries[0].entries.rows()));

    const int top = static_cast<int>(boundaries.size());
    std::vector<Eigen::MatrixXi> laplacians;
    for (int k = 0; k <= top; ++k) {
        const int n_k =
            (k == 0) ? static_cast<int>(boundaries[0].entries.rows())
                     : static_cast<int>(boundaries[k - 1].entries.cols());
        Eigen::MatrixXi lap = Eigen::MatrixXi::Zero(n_k, n_k);
        if (k < top) {
            const auto& up = boundaries[k].entries;
            lap += up * up.transpose();
        }
        if (k > 0) {
            const auto& down = boundaries[k - 1].entries;
            lap += down.transpose() * down;
        }
        laplacians.push_back(std::move(lap));
    }
    return laplacians;
}

BettiVector betti_from_hodge(const std::vector<Eigen::MatrixXi>& laplacians) {
    BettiVector result;
    for (const Eigen::MatrixXi& lap : laplacians) {
        if (lap.rows() != lap.cols()) throw InvalidInput("Hodge Laplacian must be square");
        if (lap.rows() > 0 && (lap - Eigen::MatrixXi(lap.transpose())).cwiseAbs().maxCoeff() != 0)
            throw InvalidInput("Hodge Laplacian must be symmetric");
        result.betti.push_back(static_cast<int>(lap.rows()) - exact_rank(lap));
    }
    return result;
}

}  // namespace topostat
