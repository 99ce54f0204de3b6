#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lampmet/dataset.hpp"
#include "lampmet/linalg.hpp"
#include "lampmet/metrics.hpp"

namespace lampmet {

inline constexpr int kHistogramBins = 16;
inline constexpr double kHistogramBinWidth = 0.25;

struct Provenance {
    std::string dataset;
    ScaleSpec scale = ScaleSpec::raw();
    std::uint64_t seed = 0;

    bool operator==(const Provenance&) const = default;
};

// One human-graded layout: its metric vector and a grade from 1 (worst) to 5 (best).
struct GradedProjection {
    MetricVector metrics;
    int grade = 0;
    Provenance provenance;

    bool operator==(const GradedProjection&) const = default;
};

struct TrainTestSplit {
    std::vector<GradedProjection> train;
    std::vector<GradedProjection> test;
    std::uint64_t seed = 0;
    double ratio = 0.0;
};

// Per-dataset sample counts for a split, sorted by dataset name.
struct SplitCount {
    std::string dataset;
    int train = 0;
    int test = 0;
    int total = 0;
};

// Absolute-error statistics. The histogram covers [0, 4] in 0.25-wide bins;
// errors above 4 land in the last bin (the headline numbers are never clipped).
struct ErrorStats {
    double mae = 0.0;
    double median = 0.0;
    double std = 0.0;
    std::array<int, kHistogramBins> histogram = {};
};

// Normal equations for the no-intercept least-squares fit of grade on metrics:
// a[j][l] = Σᵢ m_j m_l, b[j] = Σᵢ grade·m_j. Throws TooFewSamples below 3.
LinearSystem3 build_normal_system(const std::vector<GradedProjection>& samples);

// Least-squares weights via the normal equations. Throws SingularSystem when
// the metric columns are collinear.
MetricWeights fit_weights(const std::vector<GradedProjection>& samples);

// Deterministic shuffle by seed; the first ⌊ratio·N⌋ samples train.
TrainTestSplit split_train_test(const std::vector<GradedProjection>& samples, double ratio,
                                std::uint64_t seed);

std::vector<SplitCount> split_counts(const TrainTestSplit& split);

// Absolute-error statistics of w's predictions against the grades. Median uses
// the midpoint convention; std is the population form.
ErrorStats evaluate_weights(const std::vector<GradedProjection>& samples,
                            const MetricWeights& w);

}  // namespace lampmet
