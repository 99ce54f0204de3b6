#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lampmet/lamp.hpp"
#include "lampmet/trainer.hpp"
#include "lampmet/tuner.hpp"

namespace lampmet {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// One line of a metric report: `dataset,scale,seed,k,m1,m2,m3,score`.
struct MetricRow {
    std::string dataset;
    ScaleSpec scale = ScaleSpec::raw();
    std::uint64_t seed = 0;
    MetricVector metrics;
    double score = 0.0;
};

// Layout files: `row,x,y,label`, one line per point in row order.
void write_projection_csv(const std::filesystem::path& path, const Projection2D& proj,
                          const std::vector<std::string>& labels);

struct LoadedProjection {
    Matrix coords;
    std::vector<std::string> labels;
};
LoadedProjection load_projection_csv(const std::filesystem::path& path);

// Control-point override files: `index,x,y`, dataset row index plus its anchor.
struct AnchorsOverride {
    std::vector<int> indices;
    Matrix anchors;
};
AnchorsOverride load_anchors_csv(const std::filesystem::path& path);

std::string metric_rows_csv(const std::vector<MetricRow>& rows);
void write_metric_rows_csv(const std::filesystem::path& path,
                           const std::vector<MetricRow>& rows);
std::vector<MetricRow> load_metric_rows_csv(const std::filesystem::path& path);

// Per-dataset roll-up of metric rows: `dataset,runs,best_scale,best_score,mean_score`.
std::string summarize_metric_rows(const std::vector<MetricRow>& rows);

// Graded layouts: `m1,m2,m3,grade,dataset,scale,seed` with grades in 1..5.
std::vector<GradedProjection> load_grades_csv(const std::filesystem::path& path);

void write_weights_json(const std::filesystem::path& path, const MetricWeights& w);
MetricWeights load_weights_json(const std::filesystem::path& path);

// `split,mae,median,std` with one row per split.
std::string stats_csv(const ErrorStats& train, const ErrorStats& test);

// `split,bin_lo,bin_hi,count`, 16 quarter-wide bins per split.
std::string histogram_csv(const ErrorStats& train, const ErrorStats& test);

// One sweep pass; a plain run has a single phase, a refined run has two.
struct SweepPhase {
    std::string name;
    SweepTable table;
};

// Full tuner report: configuration echo, per-phase entries, the overall best
// scale, and whether it falls inside [band_min, band_max].
std::string sweep_report_json(const std::string& dataset, const SweepConfig& config,
                              const std::vector<SweepPhase>& phases, double band_min,
                              double band_max);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lampmet
