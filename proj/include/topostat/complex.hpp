#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace topostat {

/// p x d array of point coordinates.
struct PointCloud {
    Eigen::MatrixXd points;

    explicit PointCloud(Eigen::MatrixXd coords);
};

/// Symmetric nonnegative p x p distance matrix with zero diagonal.
struct DistanceMatrix {
    Eigen::MatrixXd w;

    explicit DistanceMatrix(Eigen::MatrixXd distances);
    static DistanceMatrix from_points(const PointCloud& cloud);

    int size() const { return static_cast<int>(w.rows()); }
};

/// A simplex as strictly increasing vertex indices.
using Simplex = std::vector<int>;

/// Per-dimension simplex lists: skeleton[k] holds the k-simplices, each a
/// (k+1)-tuple of strictly increasing vertex indices, rows sorted
/// lexicographically and unique.
struct SimplicialComplex {
    std::vector<std::vector<Simplex>> skeleton;

    int node_count() const;
    int max_dim() const { return static_cast<int>(skeleton.size()) - 1; }
    std::size_t simplex_count() const;

    /// Builds a complex on `nodes` vertices from explicit simplex lists of
    /// dimension 1 and above. Rows are canonicalized (sorted, deduplicated);
    /// vertex tuples must be strictly increasing and within range.
    static SimplicialComplex from_simplices(int nodes, std::vector<std::vector<Simplex>> higher);
};

inline constexpr std::size_t kDefaultSimplexCap = 10'000'000;

/// Rips complex up to dimension max_dim at scale radius: an edge joins two
/// vertices at distance <= radius, and higher simplices are cliques, built
/// by extending each (j-1)-simplex with higher-indexed vertices adjacent to
/// all of its members. Refuses to materialize more than `cap` simplices.
SimplicialComplex rips_complex(const DistanceMatrix& input, int max_dim, double radius,
                               std::size_t cap = kDefaultSimplexCap);
SimplicialComplex rips_complex(const PointCloud& input, int max_dim, double radius,
                               std::size_t cap = kDefaultSimplexCap);

/// Signed boundary matrix of dimension k: rows are (k-1)-simplices, columns
/// are k-simplices, and the face omitting vertex i of a column's simplex
/// receives coefficient (-1)^i.
struct BoundaryMatrix {
    int dim = 0;
    Eigen::MatrixXi entries;
};

/// Boundary matrices for dimensions 1..max_dim of the complex. Dimensions
/// with no simplices yield matrices with zero columns. Throws if a face of
/// any simplex is missing from the skeleton below it.
std::vector<BoundaryMatrix> boundary_matrices(const SimplicialComplex& complex);

struct BettiVector {
    std::vector<int> betti;  ///< beta_0 .. beta_maxdim
};

/// Betti numbers from the rank-nullity route:
/// beta_k = nullity(d_k) - rank(d_{k+1}), with nullity(d_0) = node count and
/// the boundary map above the top dimension treated as zero. Ranks are exact
/// (fraction-free elimination over the integers).
BettiVector betti_from_boundaries(const std::vector<BoundaryMatrix>& boundaries, int node_count);

/// Hodge Laplacians L_k = d_{k+1} d_{k+1}^T + d_k^T d_k for k = 0..max_dim,
/// with missing boundary maps treated as zero.
std::vector<Eigen::MatrixXi> hodge_laplacians(const std::vector<BoundaryMatrix>& boundaries);

/// Betti numbers from Laplacian kernels: beta_k = n_k - rank(L_k), exact.
BettiVector betti_from_hodge(const std::vector<Eigen::MatrixXi>& laplacians);

}  // namespace topostat
