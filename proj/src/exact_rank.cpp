#include "topostat/exact_rank.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace topostat {

namespace {

struct Int64Overflow {};

// Checked 64-bit integer so the fast path can bail out to cpp_int.
struct CheckedInt64 {
    std::int64_t v = 0;
    CheckedInt64() = default;
    CheckedInt64(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

    friend CheckedInt64 operator*(CheckedInt64 a, CheckedInt64 b) {
        std::int64_t out;
        if (__builtin_mul_overflow(a.v, b.v, &out)) throw Int64Overflow{};
        return {out};
    }
    friend CheckedInt64 operator-(CheckedInt64 a, CheckedInt64 b) {
        std::int64_t out;
        if (__builtin_sub_overflow(a.v, b.v, &out)) throw Int64Overflow{};
        return {out};
    }
    friend CheckedInt64 operator/(CheckedInt64 a, CheckedInt64 b) { return {a.v / b.v}; }
    friend bool operator==(CheckedInt64 a, std::int64_t b) { return a.v == b; }
};

template <typename Int>
int bareiss_rank(const Eigen::MatrixXi& m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = Int(m(i, j));

    int rank = 0;
    Int prev = Int(1);
    const int steps = std::min(rows, cols);
    for (int step = 0; step < steps; ++step) {
        // Full pivot search over the remaining submatrix.
        int pi = -1, pj = -1;
        for (int i = rank; i < rows && pi < 0; ++i)
            for (int j = rank; j < cols; ++j)
                if (!(a[i][j] == 0)) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != rank) std::swap(a[pi], a[rank]);
        if (pj != rank)
            for (int i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][rank]);

        const Int pivot = a[rank][rank];
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = rank + 1; j < cols; ++j)
                // Exact division: the quotient is itself a minor of m.
                a[i][j] = (pivot * a[i][j] - a[i][rank] * a[rank][j]) / prev;
            a[i][rank] = Int(0);
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

}  // namespace

int exact_rank(const Eigen::MatrixXi& m) {
    try {
        return bareiss_rank<CheckedInt64>(m);
    } catch (const Int64Overflow&) {
        return bareiss_rank<boost::multiprecision::cpp_int>(m);
    }
}

}  // namespace topostat
