#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "topostat/clustering.hpp"
#include "topostat/errors.hpp"
#include "topostat/rng.hpp"

using namespace topostat;

namespace {

DiagramPair jittered(const DiagramPair& base, double amount, Rng& rng) {
    DiagramPair out = base;
    for (double& v : out.births) v += amount * rng.normal();
    for (double& v : out.deaths) v += amount * rng.normal();
    std::sort(out.births.begin(), out.births.end());
    std::sort(out.deaths.begin(), out.deaths.end());
    return out;
}

double partition_energy(const std::vector<DiagramPair>& descriptors,
                        const std::vector<int>& assignment, int k) {
    double total = 0.0;
    for (int j = 1; j <= k; ++j) {
        std::vector<DiagramPair> members;
        for (std::size_t i = 0; i < descriptors.size(); ++i)
            if (assignment[i] == j) members.push_back(descriptors[i]);
        if (members.empty()) return std::numeric_limits<double>::infinity();
        const DiagramPair mean = cluster_mean(members);
        for (const DiagramPair& m : members) total += descriptor_distance_sq(m, mean);
    }
    return total;
}

}  // namespace

TEST_SUITE("clustering") {
    TEST_CASE("mean of one member is that member") {
        const DiagramPair d{{1.0, 2.0}, {3.0}};
        const DiagramPair mean = cluster_mean({d});
        CHECK(mean.births == d.births);
        CHECK(mean.deaths == d.deaths);
        CHECK_THROWS_AS(cluster_mean({}), InvalidInput);
    }

    TEST_CASE("coordinate-wise mean against a dense grid search") {
        const DiagramPair a{{1.0, 3.0}, {}};
        const DiagramPair b{{3.0, 5.0}, {}};
        const DiagramPair mean = cluster_mean({a, b});
        CHECK(mean.births == std::vector<double>{2.0, 4.0});

        // Grid search over candidate two-point diagrams.
        double best_energy = 1e18;
        std::pair<double, double> best{0, 0};
        for (double u = 0.0; u <= 6.0; u += 0.05)
            for (double v = u; v <= 6.0; v += 0.05) {
                const DiagramPair cand{{u, v}, {}};
                const double energy =
                    descriptor_distance_sq(a, cand) + descriptor_distance_sq(b, cand);
                if (energy < best_energy) {
                    best_energy = energy;
                    best = {u, v};
                }
            }
        CHECK(best.first == doctest::Approx(2.0).epsilon(0.05));
        CHECK(best.second == doctest::Approx(4.0).epsilon(0.05));
    }

    TEST_CASE("the mean is a local minimizer of the squared energy") {
        Rng rng(5);
        std::vector<DiagramPair> members;
        for (int i = 0; i < 6; ++i) {
            DiagramPair d{{0, 0, 0}, {0, 0}};
            for (double& v : d.births) v = rng.uniform() * 4;
            for (double& v : d.deaths) v = rng.uniform() * 4;
            std::sort(d.births.begin(), d.births.end());
            std::sort(d.deaths.begin(), d.deaths.end());
            members.push_back(std::move(d));
        }
        const DiagramPair mean = cluster_mean(members);
        auto energy_at = [&](const DiagramPair& nu) {
            double total = 0.0;
            for (const DiagramPair& m : members) total += descriptor_distance_sq(m, nu);
            return total;
        };
        const double at_mean = energy_at(mean);
        for (int probe = 0; probe < 100; ++probe) {
            const DiagramPair moved = jittered(mean, 0.05, rng);
            CHECK(energy_at(moved) >= at_mean - 1e-12);
        }
    }

    TEST_CASE("n equals k puts every graph in its own cluster") {
        Rng rng(7);
        std::vector<WeightedGraph> graphs;
        for (int i = 0; i < 4; ++i) graphs.push_back(oracles::random_complete_graph(6, rng));
        const ClusterState state = ws_kmeans(graphs, 4, 20, 50, 99);
        CHECK(state.objective == doctest::Approx(0.0).epsilon(1e-12));
        const std::set<int> distinct(state.assignment.begin(), state.assignment.end());
        CHECK(distinct.size() == 4);
    }

    TEST_CASE("two separated bundles are recovered and match the exhaustive optimum") {
        Rng rng(11);
        const DiagramPair center_a{{1, 2, 3, 4, 5}, {10, 11, 12}};
        const DiagramPair center_b{{21, 22, 23, 24, 25}, {40, 41, 42}};
        std::vector<DiagramPair> descriptors;
        std::vector<int> truth;
        for (int i = 0; i < 4; ++i) {
            descriptors.push_back(jittered(center_a, 0.1, rng));
            truth.push_back(1);
            descriptors.push_back(jittered(center_b, 0.1, rng));
            truth.push_back(2);
        }
        const ClusterState state = ws_kmeans_descriptors(descriptors, 2, 10, 50, 3);
        CHECK(cluster_accuracy(truth, state.assignment, 2).accuracy == doctest::Approx(1.0));

        // Exhaustive best 2-partition over all assignments.
        const int n = static_cast<int>(descriptors.size());
        double best = 1e18;
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> assignment(n);
            for (int i = 0; i < n; ++i) assignment[i] = (mask >> i) & 1 ? 1 : 2;
            best = std::min(best, partition_energy(descriptors, assignment, 2));
        }
        CHECK(state.objective == doctest::Approx(best).epsilon(1e-9));
    }

    TEST_CASE("the energy never increases outside repair steps") {
        Rng rng(13);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<DiagramPair> descriptors;
            const int n = 8 + static_cast<int>(rng.uniform_int(0, 6));
            for (int i = 0; i < n; ++i) {
                DiagramPair d{{0, 0, 0, 0}, {0, 0}};
                for (double& v : d.births) v = 5 * rng.uniform();
                for (double& v : d.deaths) v = 5 * rng.uniform();
                std::sort(d.births.begin(), d.births.end());
                std::sort(d.deaths.begin(), d.deaths.end());
                descriptors.push_back(std::move(d));
            }
            const ClusterState state =
                ws_kmeans_descriptors(descriptors, 3, 1, 60, 1000 + trial);
            REQUIRE(state.objective_trace.size() == 2 * state.repair_flags.size());
            double previous = std::numeric_limits<double>::infinity();
            for (std::size_t it = 0; it < state.repair_flags.size(); ++it) {
                const double after_assign = state.objective_trace[2 * it];
                const double after_means = state.objective_trace[2 * it + 1];
                if (!state.repair_flags[it]) CHECK(after_assign <= previous + 1e-9);
                CHECK(after_means <= after_assign + 1e-9);
                previous = after_means;
            }
        }
    }

    TEST_CASE("every run halts") {
        Rng rng(17);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<DiagramPair> descriptors;
            const int n = 6 + static_cast<int>(rng.uniform_int(0, 4));
            for (int i = 0; i < n; ++i) {
                DiagramPair d{{0, 0}, {0}};
                d.births = {rng.uniform(), 1 + rng.uniform()};
                d.deaths = {2 + rng.uniform()};
                std::sort(d.births.begin(), d.births.end());
                descriptors.push_back(std::move(d));
            }
            const int max_iter = 50;
            const ClusterState state = ws_kmeans_descriptors(descriptors, 2, 1, max_iter, trial);
            CHECK(state.iterations <= max_iter);
        }
    }

    TEST_CASE("accuracy examples and permutation invariance") {
        CHECK(cluster_accuracy({1, 2, 1, 2}, {1, 2, 1, 2}, 2).accuracy == doctest::Approx(1.0));
        CHECK(cluster_accuracy({1, 1, 2, 2, 3, 3}, {2, 2, 3, 3, 1, 1}, 3).accuracy ==
              doctest::Approx(1.0));
        // Best of the 6 relabelings of (1,2,3,1,2,3) against (1,1,2,2,3,3)
        // scores 3 hits; the exhaustive loop below confirms it.
        CHECK(cluster_accuracy({1, 1, 2, 2, 3, 3}, {1, 2, 3, 1, 2, 3}, 3).accuracy ==
              doctest::Approx(0.5));

        // Exhaustive check of the assignment solution for k = 3.
        const std::vector<int> truth{1, 1, 2, 2, 3, 3};
        const std::vector<int> predicted{1, 2, 3, 1, 2, 3};
        const AccuracyResult base = cluster_accuracy(truth, predicted, 3);
        std::vector<int> relabel{1, 2, 3};
        double best = 0.0;
        do {
            int hits = 0;
            for (std::size_t i = 0; i < truth.size(); ++i)
                if (relabel[predicted[i] - 1] == truth[i]) ++hits;
            best = std::max(best, hits / 6.0);
        } while (std::next_permutation(relabel.begin(), relabel.end()));
        CHECK(base.accuracy == doctest::Approx(best));

        // Relabeling the prediction never changes the score (k = 4).
        Rng rng(23);
        std::vector<int> y(12), yhat(12);
        for (int i = 0; i < 12; ++i) {
            y[i] = 1 + static_cast<int>(rng.uniform_int(0, 3));
            yhat[i] = 1 + static_cast<int>(rng.uniform_int(0, 3));
        }
        const double reference = cluster_accuracy(y, yhat, 4).accuracy;
        std::vector<int> pi{1, 2, 3, 4};
        do {
            std::vector<int> relabeled(12);
            for (int i = 0; i < 12; ++i) relabeled[i] = pi[yhat[i] - 1];
            CHECK(cluster_accuracy(y, relabeled, 4).accuracy == doctest::Approx(reference));
        } while (std::next_permutation(pi.begin(), pi.end()));
        CHECK(reference >= 0.25);
        CHECK(reference <= 1.0);

        CHECK_THROWS_AS(cluster_accuracy({1, 2, 5}, {1, 2, 1}, 2), InvalidInput);
        CHECK_THROWS_AS(cluster_accuracy({1, 2}, {1}, 2), InvalidInput);
    }

    TEST_CASE("confusion matrix counts true-by-predicted") {
        const AccuracyResult result = cluster_accuracy({1, 1, 2, 2}, {1, 2, 2, 2}, 2);
        Eigen::MatrixXi expected(2, 2);
        expected << 1, 1, 0, 2;
        CHECK(result.confusion.counts == expected);
        CHECK(result.confusion.counts.sum() == 4);
        CHECK(result.accuracy == doctest::Approx(0.75));
    }

    TEST_CASE("noiseless single circle has unit chord distances") {
        const auto graphs =
            simulate_circles(PatternFamily::DifferentTopology, 1, 12, 0.0, 1, 5);
        REQUIRE(graphs.size() == 1);
        const Eigen::MatrixXd& w = graphs[0].w;
        for (int i = 0; i < 12; ++i)
            for (int j = i + 1; j < 12; ++j) {
                const double angle = 2.0 * M_PI * (j - i) / 12.0;
                const double chord = 2.0 * std::abs(std::sin(angle / 2.0));
                CHECK(w(i, j) == doctest::Approx(chord).epsilon(1e-12));
            }
    }

    TEST_CASE("simulation seeds are reproducible and patterns validated") {
        const auto a = simulate_circles(PatternFamily::EquivalentTopology, 2, 20, 0.3, 2, 77);
        const auto b = simulate_circles(PatternFamily::EquivalentTopology, 2, 20, 0.3, 2, 77);
        CHECK(a[0].w == b[0].w);
        CHECK(a[1].w == b[1].w);
        const auto c = simulate_circles(PatternFamily::EquivalentTopology, 2, 20, 0.3, 2, 78);
        CHECK(a[0].w != c[0].w);

        CHECK_THROWS_AS(simulate_circles(PatternFamily::DifferentTopology, 5, 20, 0.3, 1, 1),
                        InvalidParameter);
        CHECK_THROWS_AS(simulate_circles(PatternFamily::DifferentTopology, 1, 2, 0.3, 1, 1),
                        InvalidParameter);
        CHECK_THROWS_AS(simulate_circles(PatternFamily::DifferentTopology, 1, 20, -0.3, 1, 1),
                        InvalidParameter);
    }

    TEST_CASE("rotated copies share the noiseless weight multiset") {
        std::vector<std::vector<double>> multisets;
        for (int group = 1; group <= 4; ++group) {
            const auto graphs =
                simulate_circles(PatternFamily::EquivalentTopology, group, 60, 0.0, 1, 1);
            std::vector<double> weights = graphs[0].edge_weights();
            std::sort(weights.begin(), weights.end());
            multisets.push_back(std::move(weights));
        }
        for (int group = 1; group < 4; ++group) {
            REQUIRE(multisets[group].size() == multisets[0].size());
            for (std::size_t i = 0; i < multisets[0].size(); ++i)
                CHECK(multisets[group][i] == doctest::Approx(multisets[0][i]).epsilon(1e-9));
        }
    }

    TEST_CASE("well-separated families cluster perfectly with the topological method") {
        Rng master(31);
        std::vector<WeightedGraph> graphs;
        std::vector<int> truth;
        for (int group : {1, 4}) {
            const auto batch = simulate_circles(PatternFamily::DifferentTopology, group, 30, 0.2,
                                                3, master.fork_seed());
            for (const auto& g : batch) {
                graphs.push_back(g);
                truth.push_back(group == 1 ? 1 : 2);
            }
        }
        const ClusterState state = ws_kmeans(graphs, 2, 10, 50, 17);
        CHECK(cluster_accuracy(truth, state.assignment, 2).accuracy == doctest::Approx(1.0));
    }

    TEST_CASE("baselines behave on degenerate and separated inputs") {
        Rng rng(37);
        const WeightedGraph g = oracles::random_complete_graph(6, rng);
        const std::vector<WeightedGraph> copies(5, g);
        const std::vector<int> km = baseline_kmeans(copies, 2, 3);
        const std::set<int> used(km.begin(), km.end());
        CHECK(used.size() == 1);  // identical graphs collapse to one cluster

        std::vector<WeightedGraph> separated;
        std::vector<int> truth;
        for (int i = 0; i < 4; ++i) {
            Eigen::MatrixXd w = g.w;
            separated.emplace_back(w);
            truth.push_back(1);
            Eigen::MatrixXd w2 = g.w.array() + 10.0;
            w2.diagonal().setZero();
            separated.emplace_back(std::move(w2));
            truth.push_back(2);
        }
        CHECK(cluster_accuracy(truth, baseline_kmeans(separated, 2, 5), 2).accuracy ==
              doctest::Approx(1.0));
        CHECK(cluster_accuracy(truth, baseline_hierarchical(separated, 2), 2).accuracy ==
              doctest::Approx(1.0));
    }
}
