#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lampmet/dataset.hpp"
#include "lampmet/lamp.hpp"

namespace lampmet {

// A source-space silhouette below this magnitude cannot serve as a ratio denominator.
inline constexpr double kDenominatorEpsilon = 1e-9;

struct MetricVector {
    double m1 = 0.0;  // silhouette of the 2D layout
    double m2 = 0.0;  // neighborhood preservation at k
    double m3 = 0.0;  // silhouette ratio, layout over source
    int k_used = 0;

    bool operator==(const MetricVector&) const = default;
};

struct MetricWeights {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;

    bool operator==(const MetricWeights&) const = default;
};

// Weights fitted on the graded-layout training pool; the shipped default.
MetricWeights default_weights();

// Mean silhouette coefficient over all points. Cohesion a is the mean distance
// to same-class points (0 for a singleton class); separation b is the distance
// to the closest point of any other class; the per-point term is (b−a)/max(a,b),
// or 0 when max(a,b) = 0 or the class is a singleton. Throws SingleClass when
// only one class is present, ShapeMismatch when labels and rows disagree.
double silhouette(const DistanceMatrix& distances, const std::vector<std::string>& labels);

// Fraction of each point's k nearest source-space neighbors that survive in the
// layout, averaged over all points. Neighbor ties break toward the lower index.
double neighborhood_preservation(const DistanceMatrix& high, const DistanceMatrix& low, int k);

// silhouette(low) / silhouette(high). Throws DegenerateDenominator when the
// source-space silhouette is within kDenominatorEpsilon of zero.
double silhouette_ratio(const DistanceMatrix& high, const DistanceMatrix& low,
                        const std::vector<std::string>& labels);

double combined_metric(const MetricVector& m, const MetricWeights& w);

// Full evaluation of a layout against its source dataset.
std::pair<MetricVector, double> score_projection(const LabeledDataset& data,
                                                 const Projection2D& proj, int k,
                                                 const MetricWeights& w);

}  // namespace lampmet
