#pragma once

#include <Eigen/Dense>
#include <vector>

namespace topostat {

struct Assignment {
    std::vector<int> row_to_col;  ///< row_to_col[i] = column assigned to row i
    double cost = 0.0;            ///< total cost of the assignment
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian
/// algorithm, potential form, O(n^3)). Costs must be finite.
Assignment solve_assignment_min(const Eigen::MatrixXd& cost);

/// Maximum-sum variant, used for confusion-matrix alignment.
Assignment solve_assignment_max(const Eigen::MatrixXd& reward);

}  // namespace topostat
