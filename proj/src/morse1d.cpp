#include "topostat/morse1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "topostat/errors.hpp"

namespace topostat {

Signal1D::Signal1D(std::vector<double> positions, std::vector<double> values)
    : t(std::move(positions)), y(std::move(values)) {
    if (t.size() != y.size()) throw InvalidInput("signal positions and values differ in length");
    if (t.size() < 2) throw InvalidInput("signal needs at least 2 samples");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1])) throw InvalidInput("signal positions must be strictly increasing");
    for (double v : t)
        if (!std::isfinite(v)) throw InvalidInput("signal positions must be finite");
    for (double v : y)
        if (!std::isfinite(v)) throw InvalidInput("signal values must be finite");
}

Signal1D smooth_cosine(const Signal1D& signal, const SmoothingParams& params) {
    if (params.degree < 0) throw InvalidParameter("smoothing degree must be nonnegative");
    if (!(params.bandwidth >= 0.0)) throw InvalidParameter("smoothing bandwidth must be nonnegative");
    const int n = static_cast<int>(signal.t.size());
    if (n < 2) throw InvalidInput("smoothing needs at least 2 samples");
    for (double v : signal.t)
        if (v < 0.0 || v > 1.0) throw InvalidInput("sample positions must lie in [0, 1]");
    const int k = params.degree;
    if (k + 1 > n) throw InvalidInput("smoothing degree exceeds sample count");

    Eigen::MatrixXd design(n, k + 1);
    for (int i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        for (int l = 1; l <= k; ++l) design(i, l) = std::sqrt(2.0) * std::cos(l * M_PI * signal.t[i]);
    }
    Eigen::VectorXd values = Eigen::Map<const Eigen::VectorXd>(signal.y.data(), n);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < k + 1) throw InvalidInput("degenerate smoothing design matrix");
    Eigen::VectorXd coeffs = qr.solve(values);

    for (int l = 0; l <= k; ++l)
        coeffs(l) *= std::exp(-static_cast<double>(l) * l * M_PI * M_PI * params.bandwidth);

    Eigen::VectorXd fitted = design * coeffs;
    return Signal1D(signal.t, std::vector<double>(fitted.data(), fitted.data() + n));
}

CriticalSequence CriticalSequence::from_points(std::vector<CriticalPoint> points) {
    CriticalSequence seq;
    std::sort(points.begin(), points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.position < b.position; });
    for (const CriticalPoint& p : points)
        (p.kind == CriticalKind::Minimum ? seq.minima : seq.maxima).push_back(p);

    seq.merged = points;
    std::sort(seq.merged.begin(), seq.merged.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.value < b.value; });
    for (std::size_t i = 0; i + 1 < seq.merged.size(); ++i)
        if (seq.merged[i].value == seq.merged[i + 1].value)
            throw DegenerateInput("tied critical values violate the Morse condition");
    return seq;
}

CriticalSequence critical_points(const Signal1D& signal) {
    const auto& y = signal.y;
    const auto& t = signal.t;
    const int n = static_cast<int>(y.size());

    for (int i = 0; i + 1 < n; ++i)
        if (y[i] == y[i + 1])
            throw DegenerateInput("plateau in signal values; jitter the input to break ties");

    std::vector<CriticalPoint> points;
    points.push_back({t[0], y[0], y[0] < y[1] ? CriticalKind::Minimum : CriticalKind::Maximum});
    for (int i = 1; i + 1 < n; ++i) {
        if (y[i - 1] > y[i] && y[i] < y[i + 1])
            points.push_back({t[i], y[i], CriticalKind::Minimum});
        else if (y[i - 1] < y[i] && y[i] > y[i + 1])
            points.push_back({t[i], y[i], CriticalKind::Maximum});
    }
    points.push_back(
        {t[n - 1], y[n - 1], y[n - 1] < y[n - 2] ? CriticalKind::Minimum : CriticalKind::Maximum});

    return CriticalSequence::from_points(std::move(points));
}

PersistencePairs1D morse_pairs(const CriticalSequence& critical) {
    // Reconstruct the positional order; components of a 1D sublevel set are
    // intervals, so a maximum always merges the components owned by its
    // positional neighbors.
    std::vector<CriticalPoint> by_position;
    by_position.insert(by_position.end(), critical.minima.begin(), critical.minima.end());
    by_position.insert(by_position.end(), critical.maxima.begin(), critical.maxima.end());
    std::sort(by_position.begin(), by_position.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.position < b.position; });
    const int m = static_cast<int>(by_position.size());
    if (critical.minima.empty()) throw InternalError("critical sequence has no minimum");
    for (int i = 0; i + 1 < m; ++i)
        if (by_position[i].kind == by_position[i + 1].kind)
            throw InternalError("critical sequence does not alternate between minima and maxima");

    // Sweep ascending by value. component[i] = index of the positional slot
    // whose minimum currently represents the interval containing slot i;
    // -1 while not yet born.
    std::vector<int> parent(m);
    std::vector<char> alive(m, 0);
    for (int i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return by_position[a].value < by_position[b].value; });

    PersistencePairs1D result;
    for (int slot : order) {
        const CriticalPoint& point = by_position[slot];
        if (point.kind == CriticalKind::Minimum) {
            alive[slot] = 1;
            continue;
        }
        if (slot == 0 || slot == m - 1) continue;  // boundary maximum: nothing to merge
        const int left = find(slot - 1);
        const int right = find(slot + 1);
        if (!alive[left] || !alive[right] || left == right)
            throw InternalError("maximum merges nonexistent components");
        // Elder rule: the younger (higher) minimum dies at this maximum.
        const int dying = by_position[left].value > by_position[right].value ? left : right;
        const int surviving = dying == left ? right : left;
        result.pairs.emplace_back(by_position[dying].value, point.value);
        parent[dying] = surviving;
        parent[slot] = surviving;
    }

    // The single surviving component is represented by the global minimum.
    double global_min = std::numeric_limits<double>::infinity();
    for (const CriticalPoint& p : critical.minima) global_min = std::min(global_min, p.value);
    result.essential = {global_min, std::numeric_limits<double>::infinity()};

    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

}  // namespace topostat
