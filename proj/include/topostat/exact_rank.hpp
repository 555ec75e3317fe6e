#pragma once

#include <Eigen/Dense>

namespace topostat {

/// Rank of an integer matrix over the rationals.
///
/// Fraction-free (Bareiss) Gaussian elimination with full pivoting: every
/// intermediate value is an exact integer minor, so there is no tolerance
/// to choose. A 64-bit fast path covers almost all inputs; on overflow the
/// elimination is redone with arbitrary-precision integers.
int exact_rank(const Eigen::MatrixXi& m);

}  // namespace topostat
