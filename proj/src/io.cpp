#include "topostat/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "topostat/errors.hpp"

namespace topostat::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    if (t == "inf" || t == "+inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (t == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    char* end = nullptr;
    out = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size();
}

// Numeric rows of a CSV file, with '#' comment lines skipped and a
// non-numeric first row accepted as a header.
std::vector<std::vector<double>> read_numeric_rows(const std::string& path, int* line_of_error) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_number = 0;
    bool first_content_row = true;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::vector<double> row;
        bool ok = true;
        for (const std::string& field : split(stripped, ',')) {
            double value;
            if (!parse_double(field, value)) {
                ok = false;
                break;
            }
            row.push_back(value);
        }
        if (!ok) {
            if (first_content_row) {  // header row
                first_content_row = false;
                continue;
            }
            if (line_of_error) *line_of_error = line_number;
            throw InvalidInput(path + ": non-numeric value at line " +
                               std::to_string(line_number));
        }
        first_content_row = false;
        rows.push_back(std::move(row));
    }
    return rows;
}

void require_open(std::ofstream& out, const std::string& path) {
    if (!out) throw InvalidInput("cannot write file: " + path);
}

}  // namespace

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::ostringstream out;
    out.precision(std::numeric_limits<double>::max_digits10);
    out << value;
    return out.str();
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto rows = read_numeric_rows(path, nullptr);
    if (rows.empty()) throw InvalidInput(path + ": empty matrix file");
    const std::size_t cols = rows[0].size();
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != cols)
            throw InvalidInput(path + ": ragged row at data row " + std::to_string(i + 1));
    Eigen::MatrixXd m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                      const std::vector<std::string>& comments) {
    std::ofstream out(path);
    require_open(out, path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    for (int i = 0; i < matrix.rows(); ++i) {
        for (int j = 0; j < matrix.cols(); ++j) {
            if (j) out << ",";
            out << format_double(matrix(i, j));
        }
        out << "\n";
    }
}

Signal1D read_signal_csv(const std::string& path) {
    const auto rows = read_numeric_rows(path, nullptr);
    std::vector<double> t, y;
    for (const auto& row : rows) {
        if (row.size() != 2) throw InvalidInput(path + ": signal rows must be t,y");
        t.push_back(row[0]);
        y.push_back(row[1]);
    }
    return Signal1D(std::move(t), std::move(y));
}

void write_signal_csv(const std::string& path, const Signal1D& signal) {
    std::ofstream out(path);
    require_open(out, path);
    out << "t,y\n";
    for (std::size_t i = 0; i < signal.t.size(); ++i)
        out << format_double(signal.t[i]) << "," << format_double(signal.y[i]) << "\n";
}

void write_pairs_csv(const std::string& path, const PersistencePairs1D& pairs,
                     const std::vector<std::string>& comments) {
    std::ofstream out(path);
    require_open(out, path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "birth,death\n";
    for (const auto& [birth, death] : pairs.pairs)
        out << format_double(birth) << "," << format_double(death) << "\n";
    out << format_double(pairs.essential.first) << ",inf\n";
}

PersistencePairs1D read_pairs_csv(const std::string& path) {
    const auto rows = read_numeric_rows(path, nullptr);
    PersistencePairs1D result;
    result.essential = {std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::infinity()};
    for (const auto& row : rows) {
        if (row.size() != 2) throw InvalidInput(path + ": pair rows must be birth,death");
        if (std::isinf(row[1]))
            result.essential = {row[0], std::numeric_limits<double>::infinity()};
        else
            result.pairs.emplace_back(row[0], row[1]);
    }
    return result;
}

std::vector<int> read_labels_csv(const std::string& path) {
    const auto rows = read_numeric_rows(path, nullptr);
    std::vector<int> labels;
    for (const auto& row : rows)
        for (double v : row) {
            if (v != std::floor(v)) throw InvalidInput(path + ": labels must be integers");
            labels.push_back(static_cast<int>(v));
        }
    return labels;
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    require_open(out, path);
    for (int v : labels) out << v << "\n";
}

void write_betti_curve_csv(const std::string& path, const BettiCurve& curve,
                           const std::vector<std::string>& comments) {
    std::ofstream out(path);
    require_open(out, path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << "threshold,beta0,beta1\n";
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i)
        out << format_double(curve.thresholds[i]) << "," << curve.beta0[i] << ","
            << curve.beta1[i] << "\n";
}

BettiCurve read_betti_curve_csv(const std::string& path) {
    const auto rows = read_numeric_rows(path, nullptr);
    BettiCurve curve;
    for (const auto& row : rows) {
        if (row.size() != 3)
            throw InvalidInput(path + ": curve rows must be threshold,beta0,beta1");
        curve.thresholds.push_back(row[0]);
        curve.beta0.push_back(static_cast<int>(row[1]));
        curve.beta1.push_back(static_cast<int>(row[2]));
    }
    return curve;
}

nlohmann::json complex_to_json(const SimplicialComplex& complex) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t dim = 0; dim < complex.skeleton.size(); ++dim)
        j["dim" + std::to_string(dim)] = complex.skeleton[dim];
    return j;
}

SimplicialComplex complex_from_json(const nlohmann::json& j) {
    std::vector<std::vector<Simplex>> levels;
    for (std::size_t dim = 0;; ++dim) {
        const std::string key = "dim" + std::to_string(dim);
        if (!j.contains(key)) break;
        levels.push_back(j.at(key).get<std::vector<Simplex>>());
    }
    if (levels.empty()) throw InvalidInput("complex JSON has no dim0 entry");
    const int nodes = static_cast<int>(levels[0].size());
    levels.erase(levels.begin());
    return SimplicialComplex::from_simplices(nodes, std::move(levels));
}

void write_boundary_coo_csv(const std::string& path, const BoundaryMatrix& boundary) {
    std::ofstream out(path);
    require_open(out, path);
    out << "row,col,sign\n";
    for (int i = 0; i < boundary.entries.rows(); ++i)
        for (int j = 0; j < boundary.entries.cols(); ++j)
            if (boundary.entries(i, j) != 0)
                out << i << "," << j << "," << boundary.entries(i, j) << "\n";
}

nlohmann::json birth_death_to_json(const BirthDeathSets& sets) {
    nlohmann::json j;
    j["births"] = sets.births;
    j["deaths"] = sets.deaths;
    nlohmann::json mst = nlohmann::json::array();
    for (const auto& [a, b] : sets.mst_edges) mst.push_back({a, b});
    j["mst"] = mst;
    return j;
}

BirthDeathSets birth_death_from_json(const nlohmann::json& j) {
    BirthDeathSets sets;
    sets.births = j.at("births").get<std::vector<double>>();
    sets.deaths = j.at("deaths").get<std::vector<double>>();
    for (const auto& pair : j.at("mst"))
        sets.mst_edges.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    return sets;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw InvalidInput("empty matrix in JSON");
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw InvalidInput("ragged matrix in JSON");
        for (std::size_t col = 0; col < rows[i].size(); ++col)
            m(static_cast<int>(i), static_cast<int>(col)) = rows[i][col];
    }
    return m;
}

}  // namespace

nlohmann::json loss_to_json(const LossMatrix& loss) {
    nlohmann::json j;
    j["D0"] = matrix_to_json(loss.d0);
    j["D1"] = matrix_to_json(loss.d1);
    j["D01"] = matrix_to_json(loss.d01);
    return j;
}

LossMatrix loss_from_json(const nlohmann::json& j) {
    LossMatrix loss;
    loss.d0 = matrix_from_json(j.at("D0"));
    loss.d1 = matrix_from_json(j.at("D1"));
    loss.d01 = matrix_from_json(j.at("D01"));
    return loss;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    require_open(out, path);
    out << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

std::vector<double> parse_threshold_spec(const std::string& spec, double max_value) {
    const std::vector<std::string> parts = split(spec, ':');
    auto value_of = [&](const std::string& token) {
        if (trim(token) == "max") return max_value;
        double v;
        if (!parse_double(token, v))
            throw InvalidParameter("bad threshold token '" + token + "' in '" + spec + "'");
        return v;
    };
    if (parts.size() == 1) return {value_of(parts[0])};
    if (parts.size() != 3)
        throw InvalidParameter("threshold spec must be a value or start:step:stop");
    const double start = value_of(parts[0]);
    const double step = value_of(parts[1]);
    const double stop = value_of(parts[2]);
    if (step <= 0.0) throw InvalidParameter("threshold step must be positive");
    if (stop < start) throw InvalidParameter("threshold stop must be >= start");

    std::vector<double> grid;
    for (double v = start; v <= stop + step / 2.0; v += step) grid.push_back(v);
    return grid;
}

}  // namespace topostat::io
