#include "topostat/hungarian.hpp"

#include <cmath>
#include <limits>

#include "topostat/errors.hpp"

namespace topostat {

Assignment solve_assignment_min(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw InvalidInput("assignment cost matrix must be square");
    if (!cost.allFinite()) throw InvalidInput("assignment cost matrix must be finite");
    if (n == 0) return {};

    const double inf = std::numeric_limits<double>::infinity();
    // 1-based arrays; p[j] = row matched to column j (0 = free).
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        // Augment along the alternating path.
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment result;
    result.row_to_col.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) result.row_to_col[p[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) result.cost += cost(i, result.row_to_col[i]);
    return result;
}

Assignment solve_assignment_max(const Eigen::MatrixXd& reward) {
    Assignment result = solve_assignment_min(-reward);
    result.cost = 0.0;
    for (int i = 0; i < static_cast<int>(result.row_to_col.size()); ++i)
        result.cost += reward(i, result.row_to_col[i]);
    return result;
}

}  // namespace topostat
