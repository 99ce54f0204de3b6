#pragma once

#include <cstdint>
#include <vector>

#include "lampmet/dataset.hpp"
#include "lampmet/metrics.hpp"

namespace lampmet {

struct SweepConfig {
    double min_scale = 0.1;
    double max_scale = 1.0;
    int steps = 10;
    int k = 7;
    MetricWeights weights = default_weights();
    std::uint64_t seed = 0;
    bool include_raw = false;
    int control_count = 0;  // 0 means ceil(sqrt(n)) at sweep time
};

struct SweepEntry {
    ScaleSpec scale;
    MetricVector metrics;
    double score = 0.0;

    bool operator==(const SweepEntry&) const = default;
};

struct SweepTable {
    std::vector<SweepEntry> entries;
    std::size_t best_index = 0;
    std::vector<int> control_indices;  // shared by every entry
};

// Arithmetic grid a, a+h, …, b with h = (b−a)/(steps−1); endpoints included.
// Throws InvalidInterval unless 0 < a < b and steps ≥ 2.
std::vector<ScaleSpec> uniform_scales(double a, double b, int steps);

// Index of the highest score, earliest entry on ties.
std::size_t argmax_entry(const std::vector<SweepEntry>& entries);

// Scores the pipeline (scale, select anchors, project, evaluate) at each listed
// scale. Control indices are chosen once on the unscaled data and reused at every
// scale; anchors are re-seeded per scale from the scaled control subset.
SweepTable sweep_scales(const LabeledDataset& data, const std::vector<ScaleSpec>& scales,
                        const SweepConfig& config);

// Sweeps the uniform grid of config, preceded by a RAW entry when include_raw.
SweepTable sweep(const LabeledDataset& data, const SweepConfig& config);

ScaleSpec best_scale(const SweepTable& table);

}  // namespace lampmet
