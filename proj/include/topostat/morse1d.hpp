#pragma once

#include <utility>
#include <vector>

namespace topostat {

/// Noisy 1D samples on [0, 1]: strictly increasing positions t and values y.
struct Signal1D {
    std::vector<double> t;
    std::vector<double> y;

    Signal1D(std::vector<double> positions, std::vector<double> values);
};

/// Cosine-series smoothing parameters: series truncation degree and heat
/// kernel bandwidth.
struct SmoothingParams {
    int degree = 0;
    double bandwidth = 0.0;
};

enum class CriticalKind { Minimum, Maximum };

struct CriticalPoint {
    double position = 0.0;
    double value = 0.0;
    CriticalKind kind = CriticalKind::Minimum;
};

/// Local minima and maxima of a sampled function, boundary values included.
/// All critical values must be pairwise distinct (Morse condition).
struct CriticalSequence {
    std::vector<CriticalPoint> minima;  ///< ascending position
    std::vector<CriticalPoint> maxima;  ///< ascending position
    std::vector<CriticalPoint> merged;  ///< union, ascending value

    /// Validates distinctness and builds the value-sorted merged list.
    static CriticalSequence from_points(std::vector<CriticalPoint> points);
};

/// Elder-rule pairing of a critical sequence. Every pair satisfies
/// birth < death; the global minimum never dies and is reported separately.
struct PersistencePairs1D {
    std::vector<std::pair<double, double>> pairs;
    std::pair<double, double> essential;  ///< (global minimum, +inf)
};

/// Fits y with the cosine basis psi_0 = 1, psi_l(t) = sqrt(2) cos(l pi t)
/// and returns the heat-kernel-attenuated reconstruction
/// sum_l exp(-l^2 pi^2 sigma) c_l psi_l(t_i) at the sample positions.
Signal1D smooth_cosine(const Signal1D& signal, const SmoothingParams& params);

/// Interior critical points by 3-point stencil; boundary values appended as
/// critical (left boundary is a minimum iff y0 < y1, symmetrically on the
/// right). Plateaus and tied critical values are rejected as degenerate.
CriticalSequence critical_points(const Signal1D& signal);

/// Sweeps the merged critical values in ascending order: minima give birth
/// to sublevel-set components, each interior maximum merges its two
/// neighboring components and pairs with the higher of their representative
/// minima. End-of-domain maxima close no loop and pair with nothing.
PersistencePairs1D morse_pairs(const CriticalSequence& critical);

}  // namespace topostat
