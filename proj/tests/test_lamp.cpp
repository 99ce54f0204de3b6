#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "lampmet/dataset.hpp"
#include "lampmet/errors.hpp"
#include "lampmet/lamp.hpp"
#include "lampmet/random.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace lampmet;

namespace {

std::map<std::string, int> per_class_counts(const LabeledDataset& data,
                                            const std::vector<int>& indices) {
    std::map<std::string, int> counts;
    for (int idx : indices) ++counts[data.labels[static_cast<std::size_t>(idx)]];
    return counts;
}

LabeledDataset dataset_with_labels(lampmet::Rng& rng, const std::vector<int>& class_sizes,
                                   std::size_t d) {
    LabeledDataset data;
    data.name = "mixture";
    std::size_t n = 0;
    for (int s : class_sizes) n += static_cast<std::size_t>(s);
    data.features = testutil::random_matrix(rng, n, d);
    char name = 'a';
    for (int s : class_sizes) {
        for (int i = 0; i < s; ++i) data.labels.push_back(std::string(1, name));
        ++name;
    }
    for (std::size_t j = 0; j < d; ++j) data.feature_names.push_back("f" + std::to_string(j));
    return data;
}

}  // namespace

TEST_CASE("select_control_points with a full budget returns every row") {
    Rng rng(31);
    auto data = testutil::random_dataset(rng, 8, 3, 2);
    auto picked = select_control_points(data, 8, 5);
    std::vector<int> all(8);
    std::iota(all.begin(), all.end(), 0);
    CHECK(picked == all);
}

TEST_CASE("select_control_points splits a balanced dataset evenly") {
    auto iris = load_csv(testutil::data_dir() / "iris.csv", "class");
    auto picked = select_control_points(iris, 12, 7);
    CHECK(picked.size() == 12);
    auto counts = per_class_counts(iris, picked);
    CHECK(counts["setosa"] == 4);
    CHECK(counts["versicolor"] == 4);
    CHECK(counts["virginica"] == 4);

    CHECK(std::is_sorted(picked.begin(), picked.end()));
    CHECK(std::set<int>(picked.begin(), picked.end()).size() == 12);
}

TEST_CASE("select_control_points follows class proportions") {
    Rng rng(32);
    auto data = dataset_with_labels(rng, {60, 30, 10}, 3);
    auto picked = select_control_points(data, 10, 3);
    auto counts = per_class_counts(data, picked);
    CHECK(counts["a"] == 6);
    CHECK(counts["b"] == 3);
    CHECK(counts["c"] == 1);
}

TEST_CASE("select_control_points keeps rare classes represented") {
    Rng rng(33);
    auto data = dataset_with_labels(rng, {97, 1, 1, 1}, 2);
    auto picked = select_control_points(data, 4, 11);
    auto counts = per_class_counts(data, picked);
    CHECK(counts["a"] == 1);
    CHECK(counts["b"] == 1);
    CHECK(counts["c"] == 1);
    CHECK(counts["d"] == 1);
}

TEST_CASE("select_control_points is seed-deterministic") {
    auto iris = load_csv(testutil::data_dir() / "iris.csv", "class");
    auto a = select_control_points(iris, 13, 42);
    auto b = select_control_points(iris, 13, 42);
    auto c = select_control_points(iris, 13, 43);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("select_control_points validates the budget") {
    Rng rng(34);
    auto data = testutil::random_dataset(rng, 10, 2, 2);
    CHECK_THROWS_AS(select_control_points(data, 2, 0), TooFewPoints);
    CHECK_THROWS_AS(select_control_points(data, 11, 0), TooFewPoints);
}

TEST_CASE("default_control_count grows like the square root") {
    auto iris = load_csv(testutil::data_dir() / "iris.csv", "class");
    CHECK(default_control_count(iris) == 13);

    Rng rng(35);
    auto small = testutil::random_dataset(rng, 9, 2, 2);
    CHECK(default_control_count(small) == 3);

    // Never fewer controls than classes, never more than rows.
    auto many = testutil::random_dataset(rng, 10, 2, 6);
    CHECK(default_control_count(many) == 6);
    auto tiny = testutil::random_dataset(rng, 3, 2, 1);
    CHECK(default_control_count(tiny) == 3);
}

TEST_CASE("seed_control_projection anchors the controls with their own layout") {
    Rng rng(36);
    auto data = testutil::random_dataset(rng, 30, 5, 3);
    auto indices = select_control_points(data, 8, 1);
    auto control = seed_control_projection(data, indices);
    CHECK(control.indices == indices);
    CHECK(control.source_dim == 5);
    CHECK(control.anchors == pca_top2(control_features(data, indices)));
}

TEST_CASE("control_set_with_anchors validates and passes anchors through") {
    Rng rng(37);
    auto data = testutil::random_dataset(rng, 12, 3, 2);
    Matrix anchors = testutil::random_matrix(rng, 4, 2);
    auto control = control_set_with_anchors(data, {0, 3, 5, 9}, anchors);
    CHECK(control.anchors == anchors);
    CHECK(control.source_dim == 3);

    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 1}, testutil::random_matrix(rng, 2, 2)),
                    TooFewPoints);
    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 1, 12}, anchors), InputError);
    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 1, -1}, anchors), InputError);
    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 1, 1, 2}, anchors), InputError);
    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 1, 2, 3}, Matrix(3, 2)), ShapeMismatch);
    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 1, 2, 3}, Matrix(4, 3)), ShapeMismatch);

    Matrix bad = anchors;
    bad(1, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(control_set_with_anchors(data, {0, 3, 5, 9}, bad), InputError);
}

TEST_CASE("lamp_project reproduces every control anchor bit for bit") {
    Rng rng(38);
    auto data = testutil::random_dataset(rng, 25, 4, 3);
    auto control = seed_control_projection(data, select_control_points(data, 6, 2));
    auto proj = lamp_project(data, control);
    CHECK(proj.coords.rows() == 25);
    for (std::size_t i = 0; i < control.indices.size(); ++i) {
        auto row = static_cast<std::size_t>(control.indices[i]);
        CHECK(proj.coords(row, 0) == control.anchors(i, 0));
        CHECK(proj.coords(row, 1) == control.anchors(i, 1));
    }
}

TEST_CASE("duplicate control rows keep their own anchors") {
    Rng rng(39);
    auto data = testutil::random_dataset(rng, 10, 3, 2);
    for (std::size_t j = 0; j < 3; ++j) data.features(1, j) = data.features(0, j);

    Matrix anchors(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        anchors(i, 0) = static_cast<double>(i);
        anchors(i, 1) = -static_cast<double>(i);
    }
    auto proj = lamp_project(data, control_set_with_anchors(data, {0, 1, 2, 3}, anchors));
    CHECK(proj.coords(0, 0) == 0.0);
    CHECK(proj.coords(0, 1) == 0.0);
    CHECK(proj.coords(1, 0) == 1.0);
    CHECK(proj.coords(1, 1) == -1.0);
}

TEST_CASE("a point coinciding with a control inherits its anchor") {
    Rng rng(40);
    auto data = testutil::random_dataset(rng, 12, 3, 2);
    for (std::size_t j = 0; j < 3; ++j) data.features(7, j) = data.features(2, j);

    auto control = seed_control_projection(data, {0, 1, 2, 3});
    auto proj = lamp_project(data, control);
    CHECK(proj.coords(7, 0) == control.anchors(2, 0));
    CHECK(proj.coords(7, 1) == control.anchors(2, 1));
}

TEST_CASE("the exact branch prefers the earliest coincident control") {
    Matrix controls(3, 2);
    controls(0, 0) = 1.0;
    controls(0, 1) = 1.0;
    controls(1, 0) = 1.0;
    controls(1, 1) = 1.0;
    controls(2, 0) = -2.0;
    controls(2, 1) = 0.5;
    Matrix anchors(3, 2);
    anchors(0, 0) = 5.0;
    anchors(1, 0) = 6.0;
    anchors(2, 1) = 7.0;

    std::vector<double> query = {1.0, 1.0};
    auto mapping = lamp_point_mapping(query, controls, anchors);
    CHECK(mapping.at_control);
    CHECK(mapping.control_pos == 0);
    auto out = apply_mapping(mapping, query, anchors);
    CHECK(out[0] == 5.0);
    CHECK(out[1] == 0.0);
}

TEST_CASE("anchors that are a rigid motion of 2D data reproduce that motion") {
    Rng rng(45);
    auto data = testutil::random_dataset(rng, 20, 2, 2);
    const double c = std::cos(0.6), s = std::sin(0.6);
    const double tx = 2.5, ty = -1.25;

    auto indices = select_control_points(data, 7, 4);
    Matrix anchors(7, 2);
    for (std::size_t i = 0; i < 7; ++i) {
        auto r = static_cast<std::size_t>(indices[i]);
        double x = data.features(r, 0), y = data.features(r, 1);
        anchors(i, 0) = c * x - s * y + tx;
        anchors(i, 1) = s * x + c * y + ty;
    }
    auto proj = lamp_project(data, control_set_with_anchors(data, indices, anchors));
    for (std::size_t i = 0; i < 20; ++i) {
        double x = data.features(i, 0), y = data.features(i, 1);
        CHECK(std::abs(proj.coords(i, 0) - (c * x - s * y + tx)) <= 1e-6);
        CHECK(std::abs(proj.coords(i, 1) - (s * x + c * y + ty)) <= 1e-6);
    }
}

TEST_CASE("point mappings agree with an exhaustive rotation search") {
    Rng rng(46);
    for (int trial = 0; trial < 3; ++trial) {
        Matrix controls = testutil::random_matrix(rng, 6, 4, -2, 2);
        Matrix anchors = testutil::random_matrix(rng, 6, 2, -3, 3);
        for (int q = 0; q < 3; ++q) {
            std::vector<double> point = {testutil::uniform(rng, -2, 2),
                                         testutil::uniform(rng, -2, 2),
                                         testutil::uniform(rng, -2, 2),
                                         testutil::uniform(rng, -2, 2)};
            auto mapping = lamp_point_mapping(point, controls, anchors);
            REQUIRE_FALSE(mapping.at_control);
            auto got = apply_mapping(mapping, point, anchors);
            auto want = oracles::lamp_grid_oracle(point, controls, anchors);
            CHECK(std::abs(got[0] - want[0]) <= 1e-3);
            CHECK(std::abs(got[1] - want[1]) <= 1e-3);
        }
    }
}

TEST_CASE("every point mapping has orthonormal columns") {
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 2 + static_cast<std::size_t>(rng.below(5));
        Matrix controls = testutil::random_matrix(rng, 8, d, -2, 2);
        Matrix anchors = testutil::random_matrix(rng, 8, 2, -3, 3);
        std::vector<double> point(d);
        for (auto& v : point) v = testutil::uniform(rng, -2, 2);
        auto mapping = lamp_point_mapping(point, controls, anchors);
        if (mapping.at_control) continue;
        CHECK(testutil::orthonormality_defect(mapping.map) <= 1e-8);
    }
}

TEST_CASE("rigidly moving the anchors rigidly moves the layout") {
    Rng rng(48);
    auto data = testutil::random_dataset(rng, 18, 4, 3);
    auto indices = select_control_points(data, 6, 9);
    auto control = seed_control_projection(data, indices);
    auto base = lamp_project(data, control);

    const double c = std::cos(1.1), s = std::sin(1.1);
    const double tx = -3.0, ty = 0.75;
    Matrix moved(6, 2);
    for (std::size_t i = 0; i < 6; ++i) {
        double x = control.anchors(i, 0), y = control.anchors(i, 1);
        moved(i, 0) = c * x - s * y + tx;
        moved(i, 1) = s * x + c * y + ty;
    }
    auto shifted = lamp_project(data, control_set_with_anchors(data, indices, moved));
    for (std::size_t i = 0; i < 18; ++i) {
        double x = base.coords(i, 0), y = base.coords(i, 1);
        CHECK(std::abs(shifted.coords(i, 0) - (c * x - s * y + tx)) <= 1e-9);
        CHECK(std::abs(shifted.coords(i, 1) - (s * x + c * y + ty)) <= 1e-9);
    }
}

TEST_CASE("translating the feature space does not change the layout") {
    Rng rng(49);
    auto data = testutil::random_dataset(rng, 16, 3, 2);
    auto indices = select_control_points(data, 5, 12);
    auto control = seed_control_projection(data, indices);
    auto base = lamp_project(data, control);

    auto shifted_data = data;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 3; ++j) shifted_data.features(i, j) += 10.0;
    auto moved = lamp_project(shifted_data, control_set_with_anchors(shifted_data, indices,
                                                                     control.anchors));
    CHECK(testutil::max_abs_diff(base.coords, moved.coords) <= 1e-9);
}

TEST_CASE("lamp_project is deterministic") {
    Rng rng(50);
    auto data = testutil::random_dataset(rng, 22, 4, 2);
    auto control = seed_control_projection(data, select_control_points(data, 6, 3));
    auto a = lamp_project(data, control);
    auto b = lamp_project(data, control);
    CHECK(a.coords == b.coords);
}

TEST_CASE("identical anchors collapse the fit") {
    Rng rng(51);
    auto data = testutil::random_dataset(rng, 10, 3, 2);
    Matrix anchors(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        anchors(i, 0) = 1.5;
        anchors(i, 1) = -0.5;
    }
    auto control = control_set_with_anchors(data, {0, 1, 2}, anchors);
    CHECK_THROWS_AS(lamp_project(data, control), RankCollapse);
}

TEST_CASE("lamp_project validates dimensions") {
    Rng rng(52);
    auto data = testutil::random_dataset(rng, 10, 3, 2);
    auto other = testutil::random_dataset(rng, 10, 5, 2);
    auto control = seed_control_projection(other, {0, 1, 2, 3});
    CHECK_THROWS_AS(lamp_project(data, control), ShapeMismatch);

    ControlPointSet mangled = seed_control_projection(data, {0, 1, 2, 3});
    mangled.anchors = Matrix(2, 2);
    CHECK_THROWS_AS(lamp_project(data, mangled), ShapeMismatch);

    auto thin = testutil::random_dataset(rng, 8, 1, 2);
    auto thin_control = control_set_with_anchors(thin, {0, 1, 2},
                                                 testutil::random_matrix(rng, 3, 2));
    CHECK_THROWS_AS(lamp_project(thin, thin_control), InputError);
}
