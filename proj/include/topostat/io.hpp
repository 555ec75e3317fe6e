#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "topostat/complex.hpp"
#include "topostat/graphfilt.hpp"
#include "topostat/morse1d.hpp"
#include "topostat/wasserstein.hpp"

// Readers and writers for the on-disk formats. All numeric CSV output uses
// enough digits for a lossless double round trip; lines starting with '#'
// are comments and are skipped on read.
namespace topostat::io {

Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& comments = {});

/// Two-column (t, y) signal; a non-numeric first row is treated as a header.
Signal1D read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const Signal1D& signal);

/// Persistence pairs with header "birth,death"; the essential class is
/// written as "<birth>,inf".
void write_pairs_csv(const std::string& path, const PersistencePairs1D& pairs,
                     const std::vector<std::string>& comments = {});
PersistencePairs1D read_pairs_csv(const std::string& path);

/// One integer label per line.
std::vector<int> read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

void write_betti_curve_csv(const std::string& path, const BettiCurve& curve,
                           const std::vector<std::string>& comments = {});
BettiCurve read_betti_curve_csv(const std::string& path);

/// Complex as {"dim0": [[v], ...], "dim1": [[v, u], ...], ...}.
nlohmann::json complex_to_json(const SimplicialComplex& complex);
SimplicialComplex complex_from_json(const nlohmann::json& j);

/// Coordinate-list CSV (row, col, sign) of a boundary matrix.
void write_boundary_coo_csv(const std::string& path, const BoundaryMatrix& boundary);

nlohmann::json birth_death_to_json(const BirthDeathSets& sets);
BirthDeathSets birth_death_from_json(const nlohmann::json& j);

nlohmann::json loss_to_json(const LossMatrix& loss);
LossMatrix loss_from_json(const nlohmann::json& j);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

/// Expands the "start:step:stop" grid notation, endpoints included within
/// half a step. "max" as the stop token resolves to max_value.
std::vector<double> parse_threshold_spec(const std::string& spec, double max_value);

/// Shortest lossless decimal form of a double.
std::string format_double(double value);

}  // namespace topostat::io
