#include <cmath>
#include <vector>

#include "doctest.h"
#include "lampmet/dataset.hpp"
#include "lampmet/errors.hpp"
#include "lampmet/metrics.hpp"
#include "lampmet/random.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace lampmet;

namespace {

DistanceMatrix line_distances(const std::vector<double>& coords) {
    Matrix m(coords.size(), 1);
    for (std::size_t i = 0; i < coords.size(); ++i) m(i, 0) = coords[i];
    return pairwise_distances(m);
}

// Two classes of two points each: `within` inside a class, `cross` between
// classes, for every pair.
DistanceMatrix paired_distances(double within, double cross) {
    DistanceMatrix dist(4);
    dist(0, 1) = dist(1, 0) = within;
    dist(2, 3) = dist(3, 2) = within;
    for (std::size_t i : {0u, 1u})
        for (std::size_t j : {2u, 3u}) dist(i, j) = dist(j, i) = cross;
    return dist;
}

const std::vector<std::string> kPairLabels = {"a", "a", "b", "b"};

}  // namespace

TEST_CASE("silhouette of two tight far-apart pairs on a line") {
    auto dist = line_distances({0.0, 1.0, 10.0, 11.0});
    CHECK(silhouette(dist, kPairLabels) ==
          doctest::Approx(0.8944444444444444).epsilon(1e-12));
}

TEST_CASE("silhouette is 1 for coincident classes far apart") {
    auto dist = paired_distances(0.0, 10.0);
    CHECK(silhouette(dist, kPairLabels) == 1.0);
}

TEST_CASE("silhouette matches the brute-force reference on random data") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto data = testutil::random_dataset(rng, 24, 3, 3);
        auto dist = pairwise_distances(data.features);
        CHECK(silhouette(dist, data.labels) ==
              doctest::Approx(oracles::brute_silhouette(dist, data.labels)).epsilon(1e-12));
    }
}

TEST_CASE("silhouette treats singleton classes as zero terms") {
    auto dist = line_distances({0.0, 1.0, 10.0});
    std::vector<std::string> labels = {"a", "a", "b"};
    // Singleton b contributes 0; a-points: (10-1)/10 and (9-1)/9.
    double expected = (9.0 / 10.0 + 8.0 / 9.0) / 3.0;
    CHECK(silhouette(dist, labels) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("silhouette input validation") {
    auto dist = line_distances({0.0, 1.0, 2.0});
    CHECK_THROWS_AS(silhouette(dist, {"a", "a", "a"}), SingleClass);
    CHECK_THROWS_AS(silhouette(dist, {"a", "b"}), ShapeMismatch);
}

TEST_CASE("silhouette only depends on distances and label partition") {
    Rng rng(22);
    auto data = testutil::random_dataset(rng, 18, 4, 3);
    auto dist = pairwise_distances(data.features);
    double base = silhouette(dist, data.labels);

    std::vector<std::string> renamed;
    for (const auto& label : data.labels) renamed.push_back("class_" + label);
    CHECK(silhouette(dist, renamed) == base);

    // A rigid motion of the features leaves all distances intact.
    Matrix moved(18, 4);
    const double c = std::cos(0.7), s = std::sin(0.7);
    for (std::size_t i = 0; i < 18; ++i) {
        moved(i, 0) = c * data.features(i, 0) - s * data.features(i, 1) + 3.0;
        moved(i, 1) = s * data.features(i, 0) + c * data.features(i, 1) - 1.0;
        moved(i, 2) = data.features(i, 2) + 5.0;
        moved(i, 3) = data.features(i, 3);
    }
    CHECK(silhouette(pairwise_distances(moved), data.labels) ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("neighborhood preservation of an identical layout is 1") {
    Rng rng(23);
    auto data = testutil::random_dataset(rng, 15, 3, 2);
    auto dist = pairwise_distances(data.features);
    for (int k : {1, 3, 7, 14}) CHECK(neighborhood_preservation(dist, dist, k) == 1.0);
}

TEST_CASE("neighborhood preservation counts surviving neighbours") {
    auto high = line_distances({0.0, 1.0, 2.0, 3.0});
    auto low = line_distances({0.0, 1.0, 3.1, 3.0});
    CHECK(neighborhood_preservation(high, low, 1) == 0.75);
}

TEST_CASE("neighborhood preservation matches the brute-force reference") {
    Rng rng(24);
    for (int trial = 0; trial < 15; ++trial) {
        Matrix a = testutil::random_matrix(rng, 20, 4);
        Matrix b = testutil::random_matrix(rng, 20, 2);
        auto high = pairwise_distances(a);
        auto low = pairwise_distances(b);
        CHECK(neighborhood_preservation(high, low, 3) ==
              doctest::Approx(oracles::brute_neighborhood_preservation(high, low, 3))
                  .epsilon(1e-12));
    }
}

TEST_CASE("neighborhood preservation at k = n-1 is 1 for any layouts") {
    Rng rng(25);
    Matrix a = testutil::random_matrix(rng, 10, 5);
    Matrix b = testutil::random_matrix(rng, 10, 2);
    CHECK(neighborhood_preservation(pairwise_distances(a), pairwise_distances(b), 9) == 1.0);
}

TEST_CASE("neighborhood preservation validates shapes and k") {
    auto d4 = line_distances({0.0, 1.0, 2.0, 3.0});
    auto d3 = line_distances({0.0, 1.0, 2.0});
    CHECK_THROWS_AS(neighborhood_preservation(d4, d3, 1), ShapeMismatch);
    CHECK_THROWS_AS(neighborhood_preservation(d4, d4, 0), InvalidK);
    CHECK_THROWS_AS(neighborhood_preservation(d4, d4, 4), InvalidK);
}

TEST_CASE("neighborhood preservation ignores a global distance rescale") {
    Rng rng(26);
    Matrix a = testutil::random_matrix(rng, 16, 4);
    Matrix b = testutil::random_matrix(rng, 16, 2);
    auto high = pairwise_distances(a);
    auto low = pairwise_distances(b);
    auto low3 = low;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) low3(i, j) = 3.0 * low(i, j);
    CHECK(neighborhood_preservation(high, low3, 5) ==
          neighborhood_preservation(high, low, 5));
}

TEST_CASE("silhouette ratio of a layout against itself is 1") {
    Rng rng(27);
    auto data = testutil::random_dataset(rng, 12, 3, 2);
    auto dist = pairwise_distances(data.features);
    CHECK(silhouette_ratio(dist, dist, data.labels) == 1.0);
}

TEST_CASE("silhouette ratio of a layout exactly half as crisp") {
    auto high = paired_distances(1.0, 10.0);   // per-point (10-1)/10
    auto low = paired_distances(55.0, 100.0);  // per-point (100-55)/100
    CHECK(silhouette_ratio(high, low, kPairLabels) == 0.5);
}

TEST_CASE("silhouette ratio refuses a vanishing source silhouette") {
    // Every pairwise distance equal: cohesion == separation everywhere.
    auto high = paired_distances(5.0, 5.0);
    auto low = paired_distances(1.0, 10.0);
    CHECK_THROWS_AS(silhouette_ratio(high, low, kPairLabels), DegenerateDenominator);
}

TEST_CASE("combined metric with the shipped weights") {
    auto w = default_weights();
    CHECK(combined_metric({1.0, 1.0, 0.0, 0}, w) == doctest::Approx(9.48386).epsilon(1e-6));
    CHECK(combined_metric({0.0, 0.0, 0.0, 0}, w) == 0.0);
    CHECK(combined_metric({0.5, 0.8, 2.0, 0}, w) == doctest::Approx(5.852978).epsilon(1e-6));

    // w1, w2 reward their metrics; w3 slightly penalizes.
    CHECK(combined_metric({0.6, 0.8, 2.0, 0}, w) > combined_metric({0.5, 0.8, 2.0, 0}, w));
    CHECK(combined_metric({0.5, 0.9, 2.0, 0}, w) > combined_metric({0.5, 0.8, 2.0, 0}, w));
    CHECK(combined_metric({0.5, 0.8, 3.0, 0}, w) < combined_metric({0.5, 0.8, 2.0, 0}, w));
}

TEST_CASE("score_projection of a 2D dataset onto itself") {
    Rng rng(28);
    auto data = testutil::random_dataset(rng, 14, 2, 2);
    Projection2D proj;
    proj.coords = data.features;
    proj.dataset_name = data.name;

    auto w = default_weights();
    auto [m, score] = score_projection(data, proj, 4, w);
    CHECK(m.k_used == 4);
    CHECK(m.m2 == 1.0);
    CHECK(m.m3 == 1.0);
    CHECK(m.m1 == silhouette(pairwise_distances(data.features), data.labels));
    CHECK(score == combined_metric(m, w));
    CHECK(m.m1 >= -1.0);
    CHECK(m.m1 <= 1.0);
}

TEST_CASE("score_projection bounds and shape validation") {
    Rng rng(29);
    auto data = testutil::random_dataset(rng, 20, 5, 3);
    Projection2D proj;
    proj.coords = testutil::random_matrix(rng, 20, 2);

    auto [m, score] = score_projection(data, proj, 6, default_weights());
    CHECK(m.m1 >= -1.0);
    CHECK(m.m1 <= 1.0);
    CHECK(m.m2 >= 0.0);
    CHECK(m.m2 <= 1.0);
    CHECK(score == combined_metric(m, default_weights()));

    Projection2D bad;
    bad.coords = testutil::random_matrix(rng, 7, 2);
    CHECK_THROWS_AS(score_projection(data, bad, 3, default_weights()), ShapeMismatch);
}
