#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "topostat/errors.hpp"
#include "topostat/inference.hpp"
#include "topostat/rng.hpp"

using namespace topostat;

namespace {

Eigen::MatrixXd constant_off_diagonal(int n, double value) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, value);
    m.diagonal().setZero();
    return m;
}

Eigen::MatrixXd random_loss(int n, Rng& rng, bool integer_valued = false) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = integer_valued ? static_cast<double>(rng.uniform_int(1, 100))
                                            : rng.uniform() + 0.01;
            m(i, j) = m(j, i) = v;
        }
    return m;
}

std::vector<int> half_labels(int n) {
    std::vector<int> labels(n, 2);
    for (int i = 0; i < n / 2; ++i) labels[i] = 1;
    return labels;
}

// All C(n, n1) labelings via mask permutations.
std::vector<std::vector<int>> all_labelings(int n, int n1) {
    std::vector<int> mask(n, 2);
    for (int i = 0; i < n1; ++i) mask[i] = 1;
    std::sort(mask.begin(), mask.end(), std::greater<int>());
    std::vector<std::vector<int>> out;
    do {
        out.push_back(mask);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

}  // namespace

TEST_SUITE("inference") {
    TEST_CASE("label validation") {
        CHECK_THROWS_AS(GroupLabels({1, 1, 2}), InvalidInput);   // group 2 too small
        CHECK_THROWS_AS(GroupLabels({1, 1, 2, 3}), InvalidInput);
        CHECK_NOTHROW(GroupLabels({1, 2, 1, 2}));
        CHECK(GroupLabels({1, 2, 1, 2, 2}).n1() == 2);
        CHECK(GroupLabels({1, 2, 1, 2, 2}).n2() == 3);
    }

    TEST_CASE("block sums on the all-equal matrix") {
        const int m = 3;
        const double c = 0.5;
        const GroupDistances sums =
            group_distances(constant_off_diagonal(2 * m, c), GroupLabels(half_labels(2 * m)));
        CHECK(sums.within == doctest::Approx(c * m * (m - 1)).epsilon(1e-12));
        CHECK(sums.between == doctest::Approx(c * m * m).epsilon(1e-12));
    }

    TEST_CASE("block-diagonal loss has zero within-distance") {
        Eigen::MatrixXd loss = Eigen::MatrixXd::Zero(4, 4);
        loss(0, 2) = loss(2, 0) = 1.0;
        loss(0, 3) = loss(3, 0) = 1.0;
        loss(1, 2) = loss(2, 1) = 1.0;
        loss(1, 3) = loss(3, 1) = 1.0;
        const GroupDistances sums = group_distances(loss, GroupLabels({1, 1, 2, 2}));
        CHECK(sums.within == 0.0);
        CHECK(sums.between == 4.0);
        CHECK_THROWS_AS(ratio_statistic(loss, GroupLabels({1, 1, 2, 2})), DegenerateInput);
    }

    TEST_CASE("hand-enumerated four-item case") {
        const Eigen::MatrixXd loss = constant_off_diagonal(4, 1.0);
        const GroupLabels labels({1, 1, 2, 2});
        const GroupDistances sums = group_distances(loss, labels);
        CHECK(sums.within == 2.0);
        CHECK(sums.between == 4.0);
        CHECK(2 * sums.within + 2 * sums.between == doctest::Approx(loss.sum()));
        CHECK(ratio_statistic(loss, labels) == doctest::Approx(2.0));
    }

    TEST_CASE("the ratio is invariant under swapping the group names") {
        Rng rng(3);
        const Eigen::MatrixXd loss = random_loss(9, rng);
        const std::vector<int> labels = {1, 2, 1, 1, 2, 2, 1, 2, 2};
        std::vector<int> swapped = labels;
        for (int& v : swapped) v = 3 - v;
        CHECK(ratio_statistic(loss, GroupLabels(labels)) ==
              doctest::Approx(ratio_statistic(loss, GroupLabels(swapped))).epsilon(1e-15));
    }

    TEST_CASE("point-mass null gives p-value one") {
        const Eigen::MatrixXd loss = constant_off_diagonal(6, 2.0);
        const RatioResult result = permutation_test(loss, GroupLabels(half_labels(6)), 500, 7);
        CHECK(result.p_value == doctest::Approx(1.0));
        CHECK(result.n_perms == 500);
        CHECK(result.n_degenerate == 0);
    }

    TEST_CASE("perfectly separated groups reach the smallest smoothed p-value") {
        Eigen::MatrixXd loss = Eigen::MatrixXd::Zero(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                if ((i < 4) != (j < 4)) loss(i, j) = loss(j, i) = 1.0;
        const RatioResult result = permutation_test(loss, GroupLabels(half_labels(8)), 999, 11);
        CHECK(std::isinf(result.observed));
        CHECK(result.p_value ==
              doctest::Approx(1.0 / static_cast<double>(result.n_perms + 1)).epsilon(1e-12));
    }

    TEST_CASE("fixed seeds reproduce results exactly") {
        Rng rng(5);
        const Eigen::MatrixXd loss = random_loss(10, rng);
        const GroupLabels labels(half_labels(10));
        const RatioResult a = permutation_test(loss, labels, 300, 42);
        const RatioResult b = permutation_test(loss, labels, 300, 42);
        CHECK(a.observed == b.observed);
        CHECK(a.p_value == b.p_value);
        CHECK(a.null_samples == b.null_samples);
        const RatioResult c = transposition_test(loss, labels, 300, 50, 42);
        const RatioResult d = transposition_test(loss, labels, 300, 50, 42);
        CHECK(c.null_samples == d.null_samples);
    }

    TEST_CASE("total distance is conserved exactly across relabelings") {
        Rng rng(7);
        // Integer-valued entries make every block sum exact.
        const Eigen::MatrixXd loss = random_loss(12, rng, true);
        const double total = group_distances(loss, GroupLabels(half_labels(12))).within +
                             group_distances(loss, GroupLabels(half_labels(12))).between;
        Rng shuffler(8);
        std::vector<int> labels = half_labels(12);
        for (int trial = 0; trial < 1000; ++trial) {
            shuffler.shuffle(labels);
            const GroupDistances sums = group_distances(loss, GroupLabels(labels));
            CHECK(sums.within + sums.between == total);
        }
    }

    TEST_CASE("incremental updates match batch recomputation") {
        Rng rng(9);
        const Eigen::MatrixXd loss = random_loss(12, rng);
        const GroupLabels labels(half_labels(12));
        TranspositionChain chain(loss, labels, 1234);
        for (int step = 1; step <= 2000; ++step) {
            if (step % 250 == 0)
                chain.full_permutation();
            else
                chain.transpose_step();
            const GroupDistances batch = group_distances(loss, GroupLabels(chain.labels()));
            CHECK(chain.within() == doctest::Approx(batch.within).epsilon(1e-9));
            CHECK(chain.between() == doctest::Approx(batch.between).epsilon(1e-9));
        }
    }

    TEST_CASE("a transposition followed by its inverse restores the sums exactly") {
        Rng rng(13);
        // Integer-valued entries keep the incremental sums exact.
        const Eigen::MatrixXd loss = random_loss(10, rng, true);
        TranspositionChain chain(loss, GroupLabels(half_labels(10)), 99);
        const double lw = chain.within();
        const double lb = chain.between();
        chain.transpose(2, 3);
        chain.transpose(2, 3);
        CHECK(chain.within() == lw);
        CHECK(chain.between() == lb);
    }

    TEST_CASE("Monte Carlo p-values track the exhaustive null") {
        Rng rng(17);
        for (int trial = 0; trial < 3; ++trial) {
            const Eigen::MatrixXd loss = random_loss(10, rng);
            const GroupLabels labels(half_labels(10));
            const double observed = ratio_statistic(loss, labels);

            const auto labelings = all_labelings(10, 5);
            REQUIRE(labelings.size() == 252);
            int at_least = 0;
            for (const auto& lab : labelings)
                if (ratio_statistic(loss, GroupLabels(lab)) >= observed) ++at_least;
            const double exact = static_cast<double>(at_least) / 252.0;

            const std::int64_t m = 20000;
            const RatioResult mc = permutation_test(loss, labels, m, 4242 + trial);
            const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(m));
            CHECK(std::abs(mc.p_value - exact) <= 3.0 * se + 2.0 / static_cast<double>(m));
        }
    }

    TEST_CASE("transposition and permutation nulls agree in distribution") {
        Rng rng(19);
        const Eigen::MatrixXd loss = random_loss(10, rng);
        const GroupLabels labels(half_labels(10));
        const RatioResult perm = permutation_test(loss, labels, 20000, 7);
        const RatioResult trans = transposition_test(loss, labels, 20000, 100, 8);
        // Compare the null medians and p-values loosely.
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        CHECK(median(perm.null_samples) ==
              doctest::Approx(median(trans.null_samples)).epsilon(0.05));
        CHECK(std::abs(perm.p_value - trans.p_value) < 0.05);
    }

    TEST_CASE("size mismatches are rejected") {
        const Eigen::MatrixXd loss = constant_off_diagonal(5, 1.0);
        CHECK_THROWS_AS(group_distances(loss, GroupLabels({1, 1, 2, 2})), InvalidInput);
        Eigen::MatrixXd asym = loss;
        asym(0, 1) += 0.5;
        CHECK_THROWS_AS(group_distances(asym, GroupLabels({1, 1, 2, 2, 2})), InvalidInput);
    }
}
