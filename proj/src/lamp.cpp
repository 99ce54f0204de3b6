#include "lampmet/lamp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "lampmet/errors.hpp"
#include "lampmet/random.hpp"

namespace lampmet {

int default_control_count(const LabeledDataset& data) {
    const auto n = static_cast<double>(data.size());
    int count = static_cast<int>(std::ceil(std::sqrt(n)));
    int classes = static_cast<int>(class_order(data.labels).size());
    count = std::max(count, std::max(3, classes));
    return std::min(count, static_cast<int>(data.size()));
}

std::vector<int> select_control_points(const LabeledDataset& data, int count,
                                       std::uint64_t seed) {
    const int n = static_cast<int>(data.size());
    if (count < 3 || count > n)
        throw TooFewPoints("control count must satisfy 3 <= count <= n, got " +
                           std::to_string(count) + " with n=" + std::to_string(n));

    auto classes = class_order(data.labels);
    const std::size_t nclasses = classes.size();
    std::unordered_map<std::string, std::size_t> rank;
    for (std::size_t c = 0; c < nclasses; ++c) rank[classes[c]] = c;

    std::vector<std::vector<int>> members(nclasses);
    for (int i = 0; i < n; ++i) members[rank[data.labels[i]]].push_back(i);

    // Largest-remainder quotas.
    std::vector<int> quota(nclasses);
    std::vector<std::pair<double, std::size_t>> remainder(nclasses);
    int assigned = 0;
    for (std::size_t c = 0; c < nclasses; ++c) {
        double exact = static_cast<double>(count) * members[c].size() / n;
        quota[c] = static_cast<int>(std::floor(exact));
        remainder[c] = {exact - quota[c], c};
        assigned += quota[c];
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < count; ++r) {
        std::size_t c = remainder[r % nclasses].second;
        if (quota[c] < static_cast<int>(members[c].size())) {
            ++quota[c];
            ++assigned;
        }
    }

    // Every class gets a point when the budget covers the classes.
    if (count >= static_cast<int>(nclasses)) {
        for (std::size_t c = 0; c < nclasses; ++c) {
            if (quota[c] > 0) continue;
            for (std::size_t donor = 0; donor < nclasses; ++donor) {
                std::size_t worst = donor;
                for (std::size_t e = 0; e < nclasses; ++e)
                    if (quota[e] > quota[worst]) worst = e;
                if (quota[worst] >= 2) {
                    --quota[worst];
                    quota[c] = 1;
                    break;
                }
            }
        }
    }

    Rng rng(seed);
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(count));
    for (std::size_t c = 0; c < nclasses; ++c) {
        auto pool = members[c];
        rng.shuffle(pool);
        picked.insert(picked.end(), pool.begin(), pool.begin() + quota[c]);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

Matrix control_features(const LabeledDataset& data, const std::vector<int>& indices) {
    Matrix out(indices.size(), data.dim());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        int idx = indices[r];
        if (idx < 0 || static_cast<std::size_t>(idx) >= data.size())
            throw InputError("control index " + std::to_string(idx) + " out of range");
        for (std::size_t j = 0; j < data.dim(); ++j)
            out(r, j) = data.features(static_cast<std::size_t>(idx), j);
    }
    return out;
}

namespace {

void validate_control(const LabeledDataset& data, const std::vector<int>& indices) {
    if (indices.size() < 3) throw TooFewPoints("a control set needs at least 3 points");
    std::unordered_set<int> seen;
    for (int idx : indices) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= data.size())
            throw InputError("control index " + std::to_string(idx) + " out of range");
        if (!seen.insert(idx).second)
            throw InputError("duplicate control index " + std::to_string(idx));
    }
}

}  // namespace

ControlPointSet seed_control_projection(const LabeledDataset& data,
                                        const std::vector<int>& indices) {
    validate_control(data, indices);
    ControlPointSet control;
    control.indices = indices;
    control.anchors = pca_top2(control_features(data, indices));
    control.source_dim = data.dim();
    return control;
}

ControlPointSet control_set_with_anchors(const LabeledDataset& data,
                                         const std::vector<int>& indices,
                                         const Matrix& anchors) {
    validate_control(data, indices);
    if (anchors.rows() != indices.size() || anchors.cols() != 2)
        throw ShapeMismatch("anchors must be c×2 and row-aligned with the control indices");
    for (double v : anchors.data())
        if (!std::isfinite(v)) throw InputError("anchor coordinates must be finite");
    ControlPointSet control;
    control.indices = indices;
    control.anchors = anchors;
    control.source_dim = data.dim();
    return control;
}

PointMapping lamp_point_mapping(std::span<const double> point, const Matrix& controls,
                                const Matrix& anchors) {
    const std::size_t c = controls.rows();
    const std::size_t d = controls.cols();
    PointMapping mapping;

    // Exact-anchor branch: nearest control within ε_c, lowest position on ties.
    std::vector<double> sq(c);
    double best_sq = -1.0;
    int best_pos = -1;
    for (std::size_t i = 0; i < c; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double delta = controls(i, j) - point[j];
            sum += delta * delta;
        }
        sq[i] = sum;
        if (best_pos < 0 || sum < best_sq) {
            best_sq = sum;
            best_pos = static_cast<int>(i);
        }
    }
    if (best_sq <= kControlEpsilon * kControlEpsilon) {
        mapping.at_control = true;
        mapping.control_pos = best_pos;
        return mapping;
    }

    std::vector<double> alpha(c);
    double alpha_sum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        alpha[i] = 1.0 / (sq[i] + kWeightEpsilon);
        alpha_sum += alpha[i];
    }

    mapping.x_centroid.assign(d, 0.0);
    mapping.y_centroid = {0.0, 0.0};
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < d; ++j) mapping.x_centroid[j] += alpha[i] * controls(i, j);
        mapping.y_centroid[0] += alpha[i] * anchors(i, 0);
        mapping.y_centroid[1] += alpha[i] * anchors(i, 1);
    }
    for (std::size_t j = 0; j < d; ++j) mapping.x_centroid[j] /= alpha_sum;
    mapping.y_centroid[0] /= alpha_sum;
    mapping.y_centroid[1] /= alpha_sum;

    // Cross-covariance AᵀB = Σ αᵢ x̂ᵢ ŷᵢᵀ, d×2.
    Matrix cross(d, 2);
    for (std::size_t i = 0; i < c; ++i) {
        double yhat0 = anchors(i, 0) - mapping.y_centroid[0];
        double yhat1 = anchors(i, 1) - mapping.y_centroid[1];
        for (std::size_t j = 0; j < d; ++j) {
            double xhat = controls(i, j) - mapping.x_centroid[j];
            cross(j, 0) += alpha[i] * xhat * yhat0;
            cross(j, 1) += alpha[i] * xhat * yhat1;
        }
    }

    ThinSvd2 svd = thin_svd_tall(cross);
    if (svd.s[0] <= kRankCollapseTol && svd.s[1] <= kRankCollapseTol)
        throw RankCollapse("weighted controls collapse: both singular values at or below 1e-14");

    // M = U·Vᵀ, the orthogonal Procrustes minimizer.
    mapping.map = Matrix(d, 2);
    for (std::size_t j = 0; j < d; ++j) {
        mapping.map(j, 0) = svd.u(j, 0) * svd.v(0, 0) + svd.u(j, 1) * svd.v(0, 1);
        mapping.map(j, 1) = svd.u(j, 0) * svd.v(1, 0) + svd.u(j, 1) * svd.v(1, 1);
    }
    return mapping;
}

std::array<double, 2> apply_mapping(const PointMapping& mapping, std::span<const double> point,
                                    const Matrix& anchors) {
    if (mapping.at_control) {
        return {anchors(static_cast<std::size_t>(mapping.control_pos), 0),
                anchors(static_cast<std::size_t>(mapping.control_pos), 1)};
    }
    const std::size_t d = point.size();
    std::array<double, 2> out = {mapping.y_centroid[0], mapping.y_centroid[1]};
    for (std::size_t j = 0; j < d; ++j) {
        double centered = point[j] - mapping.x_centroid[j];
        out[0] += centered * mapping.map(j, 0);
        out[1] += centered * mapping.map(j, 1);
    }
    return out;
}

Projection2D lamp_project(const LabeledDataset& data, const ControlPointSet& control) {
    validate_control(data, control.indices);
    if (control.source_dim != data.dim())
        throw ShapeMismatch("control set built for dimension " +
                            std::to_string(control.source_dim) + ", dataset has " +
                            std::to_string(data.dim()));
    if (data.dim() < 2)
        throw InputError("lamp_project needs at least 2 feature dimensions");
    if (control.anchors.rows() != control.indices.size() || control.anchors.cols() != 2)
        throw ShapeMismatch("anchors must be row-aligned c×2");

    const std::size_t n = data.size();
    Matrix controls = control_features(data, control.indices);

    std::unordered_map<int, std::size_t> control_pos;
    for (std::size_t i = 0; i < control.indices.size(); ++i)
        control_pos[control.indices[i]] = i;

    Projection2D proj;
    proj.coords = Matrix(n, 2);
    proj.dataset_name = data.name;
    proj.control = control;

    for (std::size_t r = 0; r < n; ++r) {
        auto it = control_pos.find(static_cast<int>(r));
        if (it != control_pos.end()) {
            // Control rows reproduce their own anchors, bit for bit.
            proj.coords(r, 0) = control.anchors(it->second, 0);
            proj.coords(r, 1) = control.anchors(it->second, 1);
            continue;
        }
        auto point = data.features.row(r);
        PointMapping mapping = lamp_point_mapping(point, controls, control.anchors);
        auto out = apply_mapping(mapping, point, control.anchors);
        proj.coords(r, 0) = out[0];
        proj.coords(r, 1) = out[1];
    }
    return proj;
}

}  // namespace lampmet
