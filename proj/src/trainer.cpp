#include "lampmet/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lampmet/errors.hpp"
#include "lampmet/random.hpp"

namespace lampmet {

LinearSystem3 build_normal_system(const std::vector<GradedProjection>& samples) {
    if (samples.size() < 3)
        throw TooFewSamples("fitting three weights needs at least 3 graded samples, got " +
                            std::to_string(samples.size()));

    LinearSystem3 sys{};
    for (const auto& sample : samples) {
        const std::array<double, 3> m = {sample.metrics.m1, sample.metrics.m2,
                                         sample.metrics.m3};
        const double y = static_cast<double>(sample.grade);
        for (int j = 0; j < 3; ++j) {
            for (int l = 0; l < 3; ++l) sys.a[j][l] += m[j] * m[l];
            sys.b[j] += y * m[j];
        }
    }
    return sys;
}

MetricWeights fit_weights(const std::vector<GradedProjection>& samples) {
    auto w = lu_solve(build_normal_system(samples));
    return {w[0], w[1], w[2]};
}

TrainTestSplit split_train_test(const std::vector<GradedProjection>& samples, double ratio,
                                std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw InputError("train ratio must lie strictly between 0 and 1");
    if (samples.size() < 2)
        throw TooFewSamples("splitting needs at least 2 samples, got " +
                            std::to_string(samples.size()));

    std::vector<GradedProjection> shuffled = samples;
    Rng rng(seed);
    rng.shuffle(shuffled);

    const auto n_train = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(samples.size())));

    TrainTestSplit split;
    split.seed = seed;
    split.ratio = ratio;
    split.train.assign(shuffled.begin(), shuffled.begin() + n_train);
    split.test.assign(shuffled.begin() + n_train, shuffled.end());
    return split;
}

std::vector<SplitCount> split_counts(const TrainTestSplit& split) {
    std::map<std::string, SplitCount> by_dataset;
    for (const auto& sample : split.train) {
        auto& row = by_dataset[sample.provenance.dataset];
        row.dataset = sample.provenance.dataset;
        ++row.train;
        ++row.total;
    }
    for (const auto& sample : split.test) {
        auto& row = by_dataset[sample.provenance.dataset];
        row.dataset = sample.provenance.dataset;
        ++row.test;
        ++row.total;
    }
    std::vector<SplitCount> rows;
    rows.reserve(by_dataset.size());
    for (auto& [name, row] : by_dataset) rows.push_back(row);
    return rows;
}

ErrorStats evaluate_weights(const std::vector<GradedProjection>& samples,
                            const MetricWeights& w) {
    if (samples.empty()) throw TooFewSamples("evaluation needs at least 1 sample");

    std::vector<double> errors;
    errors.reserve(samples.size());
    for (const auto& sample : samples) {
        double predicted = combined_metric(sample.metrics, w);
        errors.push_back(std::abs(static_cast<double>(sample.grade) - predicted));
    }

    const auto n = static_cast<double>(errors.size());
    ErrorStats stats;
    for (double e : errors) stats.mae += e;
    stats.mae /= n;

    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t half = sorted.size() / 2;
    stats.median = (sorted.size() % 2 == 1) ? sorted[half]
                                            : 0.5 * (sorted[half - 1] + sorted[half]);

    double var = 0.0;
    for (double e : errors) var += (e - stats.mae) * (e - stats.mae);
    stats.std = std::sqrt(var / n);

    for (double e : errors) {
        auto bin = static_cast<int>(std::floor(e / kHistogramBinWidth));
        bin = std::min(bin, kHistogramBins - 1);
        ++stats.histogram[static_cast<std::size_t>(bin)];
    }
    return stats;
}

}  // namespace lampmet
