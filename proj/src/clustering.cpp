#include "topostat/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "topostat/errors.hpp"
#include "topostat/hungarian.hpp"
#include "topostat/rng.hpp"

namespace topostat {

DiagramPair graph_descriptor(const WeightedGraph& graph) {
    BirthDeathSets sets = birth_death_decompose(graph);
    return {std::move(sets.births), std::move(sets.deaths)};
}

DiagramPair cluster_mean(const std::vector<DiagramPair>& members) {
    if (members.empty()) throw InvalidInput("cluster mean of an empty member list");
    const std::size_t nb = members[0].births.size();
    const std::size_t nd = members[0].deaths.size();
    for (const DiagramPair& m : members)
        if (m.births.size() != nb || m.deaths.size() != nd)
            throw IncompatibleInput("cluster members must have equal diagram sizes");

    DiagramPair mean;
    mean.births.assign(nb, 0.0);
    mean.deaths.assign(nd, 0.0);
    for (const DiagramPair& m : members) {
        for (std::size_t i = 0; i < nb; ++i) mean.births[i] += m.births[i];
        for (std::size_t i = 0; i < nd; ++i) mean.deaths[i] += m.deaths[i];
    }
    const double inv = 1.0 / static_cast<double>(members.size());
    for (double& v : mean.births) v *= inv;
    for (double& v : mean.deaths) v *= inv;
    return mean;
}

double descriptor_distance_sq(const DiagramPair& a, const DiagramPair& b) {
    if (a.births.size() != b.births.size() || a.deaths.size() != b.deaths.size())
        throw IncompatibleInput("descriptors have different diagram sizes");
    double total = 0.0;
    for (std::size_t i = 0; i < a.births.size(); ++i) {
        const double d = a.births[i] - b.births[i];
        total += d * d;
    }
    for (std::size_t i = 0; i < a.deaths.size(); ++i) {
        const double d = a.deaths[i] - b.deaths[i];
        total += d * d;
    }
    return total;
}

namespace {

std::vector<DiagramPair> means_of(const std::vector<DiagramPair>& descriptors,
                                  const std::vector<int>& assignment, int k) {
    std::vector<std::vector<DiagramPair>> clusters(k);
    for (std::size_t i = 0; i < descriptors.size(); ++i)
        clusters[assignment[i] - 1].push_back(descriptors[i]);
    std::vector<DiagramPair> means;
    means.reserve(k);
    for (int j = 0; j < k; ++j) means.push_back(cluster_mean(clusters[j]));
    return means;
}

double energy_of(const std::vector<DiagramPair>& descriptors, const std::vector<int>& assignment,
                 const std::vector<DiagramPair>& means) {
    double total = 0.0;
    for (std::size_t i = 0; i < descriptors.size(); ++i)
        total += descriptor_distance_sq(descriptors[i], means[assignment[i] - 1]);
    return total;
}

// Give every empty cluster a uniformly chosen member of the largest
// cluster. The random draw matters: a deterministic donor choice funnels
// every restart into the same split and defeats the purpose of multiple
// seeds when the initial means collapse.
bool repair_empty_clusters(const std::vector<DiagramPair>& descriptors,
                           std::vector<int>& assignment, int k, Rng& rng) {
    const int n = static_cast<int>(descriptors.size());
    std::vector<int> sizes(k, 0);
    for (int a : assignment) ++sizes[a - 1];
    bool repaired = false;
    for (int j = 0; j < k; ++j) {
        if (sizes[j] > 0) continue;
        const int donor =
            static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
        if (sizes[donor] < 2) throw InternalError("cannot repair empty cluster");
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (assignment[i] == donor + 1) members.push_back(i);
        const int moved =
            members[rng.uniform_int(0, static_cast<std::int64_t>(members.size()) - 1)];
        --sizes[donor];
        assignment[moved] = j + 1;
        ++sizes[j];
        repaired = true;
    }
    return repaired;
}

ClusterState lloyd_run(const std::vector<DiagramPair>& descriptors, int k, int max_iter, Rng& rng) {
    const int n = static_cast<int>(descriptors.size());
    ClusterState state;
    state.assignment.resize(n);
    for (int i = 0; i < n; ++i)
        state.assignment[i] = static_cast<int>(rng.uniform_int(1, k));
    repair_empty_clusters(descriptors, state.assignment, k, rng);
    state.means = means_of(descriptors, state.assignment, k);

    for (state.iterations = 1; state.iterations <= max_iter; ++state.iterations) {
        // Reassign to the nearest mean; ties go to the lowest cluster index.
        std::vector<int> next(n);
        for (int i = 0; i < n; ++i) {
            int best = 1;
            double best_distance = descriptor_distance_sq(descriptors[i], state.means[0]);
            for (int j = 1; j < k; ++j) {
                const double d = descriptor_distance_sq(descriptors[i], state.means[j]);
                if (d < best_distance) {
                    best_distance = d;
                    best = j + 1;
                }
            }
            next[i] = best;
        }
        const bool repaired = repair_empty_clusters(descriptors, next, k, rng);
        state.assignment = std::move(next);
        state.repair_flags.push_back(repaired ? 1 : 0);
        state.objective_trace.push_back(energy_of(descriptors, state.assignment, state.means));

        const std::vector<DiagramPair> updated = means_of(descriptors, state.assignment, k);
        bool changed = false;
        for (int j = 0; j < k && !changed; ++j)
            changed = updated[j].births != state.means[j].births ||
                      updated[j].deaths != state.means[j].deaths;
        state.means = updated;
        state.objective_trace.push_back(energy_of(descriptors, state.assignment, state.means));
        if (!changed) break;
    }
    state.objective = energy_of(descriptors, state.assignment, state.means);
    return state;
}

}  // namespace

ClusterState ws_kmeans_descriptors(const std::vector<DiagramPair>& descriptors, int k, int n_seeds,
                                   int max_iter, std::uint64_t seed) {
    const int n = static_cast<int>(descriptors.size());
    if (k < 2) throw InvalidParameter("cluster count must be at least 2");
    if (n < k) throw InvalidParameter("need at least as many items as clusters");
    if (n_seeds < 1) throw InvalidParameter("seed count must be at least 1");
    for (const DiagramPair& d : descriptors)
        if (d.births.size() != descriptors[0].births.size() ||
            d.deaths.size() != descriptors[0].deaths.size())
            throw IncompatibleInput("descriptors have different diagram sizes");

    Rng master(seed);
    ClusterState best;
    best.objective = std::numeric_limits<double>::infinity();
    std::vector<double> seed_objectives;
    seed_objectives.reserve(n_seeds);
    for (int s = 0; s < n_seeds; ++s) {
        Rng restart(master.fork_seed());
        ClusterState state = lloyd_run(descriptors, k, max_iter, restart);
        seed_objectives.push_back(state.objective);
        if (state.objective < best.objective) best = std::move(state);
    }
    best.seed_objectives = std::move(seed_objectives);
    return best;
}

ClusterState ws_kmeans(const std::vector<WeightedGraph>& graphs, int k, int n_seeds, int max_iter,
                       std::uint64_t seed) {
    const int p = graphs.empty() ? 0 : graphs[0].node_count();
    for (const WeightedGraph& g : graphs)
        if (g.node_count() != p)
            throw IncompatibleInput("graphs in a collection must share the node count");
    std::vector<DiagramPair> descriptors;
    descriptors.reserve(graphs.size());
    for (const WeightedGraph& g : graphs) descriptors.push_back(graph_descriptor(g));
    return ws_kmeans_descriptors(descriptors, k, n_seeds, max_iter, seed);
}

AccuracyResult cluster_accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                                int k) {
    if (y_true.size() != y_pred.size()) throw InvalidInput("label lists differ in length");
    if (y_true.empty()) throw InvalidInput("label lists are empty");
    if (k < 1) throw InvalidParameter("cluster count must be positive");

    AccuracyResult result;
    result.confusion.counts = Eigen::MatrixXi::Zero(k, k);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i], p = y_pred[i];
        if (t < 1 || t > k || p < 1 || p > k) throw InvalidInput("label out of range 1..k");
        result.confusion.counts(t - 1, p - 1) += 1;
    }

    const Assignment aligned = solve_assignment_max(result.confusion.counts.cast<double>());
    result.accuracy = aligned.cost / static_cast<double>(y_true.size());
    return result;
}

namespace {

// Circle layouts. Nodes are placed at uniform world-frame angles circle by
// circle, so the node indexing is deterministic.
std::vector<std::pair<double, double>> pattern_nodes(PatternFamily family, int group,
                                                     int n_nodes) {
    std::vector<std::pair<double, double>> nodes;
    nodes.reserve(n_nodes);
    if (family == PatternFamily::DifferentTopology) {
        const int circles = group;
        const int base = n_nodes / circles;
        const int rem = n_nodes % circles;
        for (int c = 0; c < circles; ++c) {
            const double cx = (c - (circles - 1) / 2.0) * 3.0;
            const int m = base + (c < rem ? 1 : 0);
            for (int j = 0; j < m; ++j) {
                const double th = 2.0 * M_PI * j / m;
                nodes.emplace_back(cx + std::cos(th), std::sin(th));
            }
        }
    } else {
        const double phi = (group - 1) * (84.0 * M_PI / 180.0);
        const double c = std::cos(phi), s = std::sin(phi);
        for (double center_x : {-1.5, 1.5}) {
            const double cx = c * center_x;
            const double cy = s * center_x;
            const int count = n_nodes / 2 + (center_x > 0 ? n_nodes % 2 : 0);
            for (int j = 0; j < count; ++j) {
                const double th = 2.0 * M_PI * j / count;
                nodes.emplace_back(cx + std::cos(th), cy + std::sin(th));
            }
        }
    }
    return nodes;
}

}  // namespace

std::vector<WeightedGraph> simulate_circles(PatternFamily family, int group, int n_nodes,
                                            double noise_sd, int n_graphs, std::uint64_t seed) {
    if (group < 1 || group > 4) throw InvalidParameter("pattern group must be in 1..4");
    if (n_nodes < 3) throw InvalidParameter("need at least 3 nodes");
    if (noise_sd < 0.0) throw InvalidParameter("noise sd must be nonnegative");
    if (n_graphs < 1) throw InvalidParameter("need at least one graph");

    const std::vector<std::pair<double, double>> layout = pattern_nodes(family, group, n_nodes);
    Rng rng(seed);
    std::vector<WeightedGraph> graphs;
    graphs.reserve(n_graphs);
    for (int g = 0; g < n_graphs; ++g) {
        std::vector<std::pair<double, double>> pts = layout;
        for (auto& [x, y] : pts) {
            x += rng.normal(0.0, noise_sd);
            y += rng.normal(0.0, noise_sd);
        }
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
        for (int i = 0; i < n_nodes; ++i)
            for (int j = i + 1; j < n_nodes; ++j) {
                const double dx = pts[i].first - pts[j].first;
                const double dy = pts[i].second - pts[j].second;
                w(i, j) = w(j, i) = std::sqrt(dx * dx + dy * dy);
            }
        graphs.emplace_back(std::move(w));
    }
    return graphs;
}

namespace {

std::vector<Eigen::VectorXd> vectorize(const std::vector<WeightedGraph>& graphs) {
    const int p = graphs[0].node_count();
    const int dims = p * (p - 1) / 2;
    std::vector<Eigen::VectorXd> vecs;
    vecs.reserve(graphs.size());
    for (const WeightedGraph& g : graphs) {
        if (g.node_count() != p)
            throw IncompatibleInput("graphs in a collection must share the node count");
        Eigen::VectorXd v(dims);
        int at = 0;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) v(at++) = g.w(i, j);
        vecs.push_back(std::move(v));
    }
    return vecs;
}

}  // namespace

std::vector<int> baseline_kmeans(const std::vector<WeightedGraph>& graphs, int k,
                                 std::uint64_t seed, int max_iter) {
    const int n = static_cast<int>(graphs.size());
    if (k < 1 || n < k) throw InvalidParameter("need at least as many items as clusters");
    const std::vector<Eigen::VectorXd> x = vectorize(graphs);

    Rng rng(seed);
    // k-means++ seeding.
    std::vector<Eigen::VectorXd> centers;
    centers.push_back(x[rng.uniform_int(0, n - 1)]);
    std::vector<double> dist_sq(n);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, (x[i] - c).squaredNorm());
            dist_sq[i] = best;
            total += best;
        }
        int chosen = n - 1;
        if (total > 0.0) {
            double draw = rng.uniform() * total;
            for (int i = 0; i < n; ++i) {
                draw -= dist_sq[i];
                if (draw <= 0.0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = static_cast<int>(rng.uniform_int(0, n - 1));
        }
        centers.push_back(x[chosen]);
    }

    std::vector<int> assignment(n, 1);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_distance = (x[i] - centers[0]).squaredNorm();
            for (int j = 1; j < k; ++j) {
                const double d = (x[i] - centers[j]).squaredNorm();
                if (d < best_distance) {
                    best_distance = d;
                    best = j;
                }
            }
            if (assignment[i] != best + 1) {
                assignment[i] = best + 1;
                moved = true;
            }
        }
        for (int j = 0; j < k; ++j) {
            Eigen::VectorXd sum = Eigen::VectorXd::Zero(x[0].size());
            int count = 0;
            for (int i = 0; i < n; ++i)
                if (assignment[i] == j + 1) {
                    sum += x[i];
                    ++count;
                }
            if (count > 0) centers[j] = sum / count;
        }
        if (!moved) break;
    }
    return assignment;
}

std::vector<int> baseline_hierarchical(const std::vector<WeightedGraph>& graphs, int k) {
    const int n = static_cast<int>(graphs.size());
    if (k < 1 || n < k) throw InvalidParameter("need at least as many items as clusters");
    const std::vector<Eigen::VectorXd> x = vectorize(graphs);

    // Average linkage, naive O(n^3): fine at collection scale.
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = (x[i] - x[j]).norm();

    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < n; ++i) clusters.push_back({i});
    while (static_cast<int>(clusters.size()) > k) {
        int best_a = 0, best_b = 1;
        double best_link = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < clusters.size(); ++a)
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                double link = 0.0;
                for (int i : clusters[a])
                    for (int j : clusters[b]) link += d(i, j);
                link /= static_cast<double>(clusters[a].size() * clusters[b].size());
                if (link < best_link) {
                    best_link = link;
                    best_a = static_cast<int>(a);
                    best_b = static_cast<int>(b);
                }
            }
        clusters[best_a].insert(clusters[best_a].end(), clusters[best_b].begin(),
                                clusters[best_b].end());
        clusters.erase(clusters.begin() + best_b);
    }

    std::vector<int> labels(n, 0);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int i : clusters[c]) labels[i] = static_cast<int>(c) + 1;
    return labels;
}

}  // namespace topostat
