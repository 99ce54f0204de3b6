#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lampmet/dataset.hpp"
#include "lampmet/linalg.hpp"

namespace lampmet {

// Control points: dataset rows with assigned 2D anchor positions.
struct ControlPointSet {
    std::vector<int> indices;  // distinct rows into the source dataset
    Matrix anchors;            // c×2, row-aligned with indices
    std::size_t source_dim = 0;
};

struct Projection2D {
    Matrix coords;  // n×2, row-aligned with the source dataset
    std::string dataset_name;
    ScaleSpec scale_used = ScaleSpec::raw();
    ControlPointSet control;
    std::uint64_t seed = 0;
};

// Weights diverge at control points; ε_w keeps them finite and ε_c switches
// to the exact-anchor branch, reproducing the moving-least-squares limit.
constexpr double kWeightEpsilon = 1e-12;
constexpr double kControlEpsilon = 1e-9;
constexpr double kRankCollapseTol = 1e-14;

// Default control count: ⌈√n⌉ clamped to at least max(3, class count) and at
// most n.
int default_control_count(const LabeledDataset& data);

// Deterministic stratified draw: each class contributes proportionally to its
// size (largest remainder), with at least 1 point per class when count covers
// the classes. Returned indices are sorted ascending.
std::vector<int> select_control_points(const LabeledDataset& data, int count,
                                       std::uint64_t seed);

// Feature rows of the control subset, in index order.
Matrix control_features(const LabeledDataset& data, const std::vector<int>& indices);

// Anchors from pca_top2 of the control subset.
ControlPointSet seed_control_projection(const LabeledDataset& data,
                                        const std::vector<int>& indices);

// Explicit anchors (override path); validates shape and finiteness.
ControlPointSet control_set_with_anchors(const LabeledDataset& data,
                                         const std::vector<int>& indices,
                                         const Matrix& anchors);

// One instance's affine-orthogonal mapping.
struct PointMapping {
    bool at_control = false;            // exact-anchor branch taken
    int control_pos = -1;               // control row used when at_control
    Matrix map;                         // d×2 with orthonormal columns
    std::vector<double> x_centroid;     // weighted control centroid in data space
    std::array<double, 2> y_centroid{}; // weighted anchor centroid
};

// Solves the weighted orthogonal Procrustes fit over the control points for
// a single query point. Throws RankCollapse when both singular values of the
// weighted cross-covariance fall to kRankCollapseTol or below.
PointMapping lamp_point_mapping(std::span<const double> point, const Matrix& controls,
                                const Matrix& anchors);

// Applies a mapping: (p − x̃)·M + ỹ, or the anchor on the exact branch.
std::array<double, 2> apply_mapping(const PointMapping& mapping, std::span<const double> point,
                                    const Matrix& anchors);

// Projects every row through its own mapping. Control rows reproduce their
// anchors exactly.
Projection2D lamp_project(const LabeledDataset& data, const ControlPointSet& control);

}  // namespace lampmet
