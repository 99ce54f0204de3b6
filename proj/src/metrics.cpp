#include "lampmet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lampmet/errors.hpp"

namespace lampmet {

MetricWeights default_weights() { return {5.7097, 3.77416, -0.0106}; }

double silhouette(const DistanceMatrix& distances, const std::vector<std::string>& labels) {
    const std::size_t n = distances.size();
    if (labels.size() != n)
        throw ShapeMismatch("silhouette: " + std::to_string(n) + " rows but " +
                            std::to_string(labels.size()) + " labels");

    auto classes = class_order(labels);
    if (classes.size() < 2) throw SingleClass("silhouette needs at least two classes");
    std::unordered_map<std::string, int> rank;
    for (std::size_t c = 0; c < classes.size(); ++c) rank[classes[c]] = static_cast<int>(c);
    std::vector<int> cls(n);
    std::vector<std::size_t> cls_count(classes.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        cls[i] = rank[labels[i]];
        ++cls_count[static_cast<std::size_t>(cls[i])];
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t own = cls_count[static_cast<std::size_t>(cls[i])];
        if (own <= 1) continue;  // singleton contributes 0

        double cohesion_sum = 0.0;
        double separation = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double d = distances(i, j);
            if (cls[j] == cls[i]) {
                cohesion_sum += d;
            } else if (separation < 0.0 || d < separation) {
                separation = d;
            }
        }
        double a = cohesion_sum / static_cast<double>(own - 1);
        double b = separation;
        double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

double neighborhood_preservation(const DistanceMatrix& high, const DistanceMatrix& low, int k) {
    const std::size_t n = high.size();
    if (low.size() != n)
        throw ShapeMismatch("neighborhood_preservation: " + std::to_string(n) +
                            " source rows but " + std::to_string(low.size()) + " layout rows");

    auto high_nn = knn_indices(high, k);
    auto low_nn = knn_indices(low, k);

    double total = 0.0;
    std::vector<char> in_high(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int idx : high_nn[i]) in_high[static_cast<std::size_t>(idx)] = 1;
        int kept = 0;
        for (int idx : low_nn[i])
            if (in_high[static_cast<std::size_t>(idx)]) ++kept;
        for (int idx : high_nn[i]) in_high[static_cast<std::size_t>(idx)] = 0;
        total += static_cast<double>(kept) / static_cast<double>(k);
    }
    return total / static_cast<double>(n);
}

double silhouette_ratio(const DistanceMatrix& high, const DistanceMatrix& low,
                        const std::vector<std::string>& labels) {
    double source = silhouette(high, labels);
    if (std::abs(source) <= kDenominatorEpsilon)
        throw DegenerateDenominator("source silhouette is too close to zero to divide by");
    return silhouette(low, labels) / source;
}

double combined_metric(const MetricVector& m, const MetricWeights& w) {
    return w.w1 * m.m1 + w.w2 * m.m2 + w.w3 * m.m3;
}

std::pair<MetricVector, double> score_projection(const LabeledDataset& data,
                                                 const Projection2D& proj, int k,
                                                 const MetricWeights& w) {
    if (proj.coords.rows() != data.size())
        throw ShapeMismatch("layout has " + std::to_string(proj.coords.rows()) +
                            " rows, dataset has " + std::to_string(data.size()));

    DistanceMatrix high = pairwise_distances(data.features);
    DistanceMatrix low = pairwise_distances(proj.coords);

    MetricVector m;
    m.k_used = k;
    m.m1 = silhouette(low, data.labels);
    m.m2 = neighborhood_preservation(high, low, k);
    m.m3 = silhouette_ratio(high, low, data.labels);
    return {m, combined_metric(m, w)};
}

}  // namespace lampmet
