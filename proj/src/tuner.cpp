#include "lampmet/tuner.hpp"

#include <cmath>

#include "lampmet/errors.hpp"
#include "lampmet/lamp.hpp"

namespace lampmet {

std::vector<ScaleSpec> uniform_scales(double a, double b, int steps) {
    if (!(std::isfinite(a) && std::isfinite(b) && a > 0.0 && a < b))
        throw InvalidInterval("scale interval needs 0 < min < max");
    if (steps < 2) throw InvalidInterval("a scale grid needs at least 2 steps");

    std::vector<ScaleSpec> scales;
    scales.reserve(static_cast<std::size_t>(steps));
    const double h = (b - a) / static_cast<double>(steps - 1);
    for (int j = 0; j < steps - 1; ++j) scales.push_back(ScaleSpec::upper(a + j * h));
    scales.push_back(ScaleSpec::upper(b));
    return scales;
}

std::size_t argmax_entry(const std::vector<SweepEntry>& entries) {
    if (entries.empty()) throw InputError("cannot take the argmax of an empty sweep");
    std::size_t best = 0;
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].score > entries[best].score) best = i;
    return best;
}

SweepTable sweep_scales(const LabeledDataset& data, const std::vector<ScaleSpec>& scales,
                        const SweepConfig& config) {
    if (scales.empty()) throw InputError("a sweep needs at least one scale");

    const int count =
        config.control_count > 0 ? config.control_count : default_control_count(data);

    SweepTable table;
    table.control_indices = select_control_points(data, count, config.seed);

    for (const auto& scale : scales) {
        LabeledDataset scaled = minmax_scale(data, scale);
        ControlPointSet control = seed_control_projection(scaled, table.control_indices);
        Projection2D proj = lamp_project(scaled, control);
        proj.scale_used = scale;
        proj.seed = config.seed;
        auto [metrics, score] = score_projection(scaled, proj, config.k, config.weights);
        table.entries.push_back({scale, metrics, score});
    }
    table.best_index = argmax_entry(table.entries);
    return table;
}

SweepTable sweep(const LabeledDataset& data, const SweepConfig& config) {
    std::vector<ScaleSpec> scales;
    if (config.include_raw) scales.push_back(ScaleSpec::raw());
    auto grid = uniform_scales(config.min_scale, config.max_scale, config.steps);
    scales.insert(scales.end(), grid.begin(), grid.end());
    return sweep_scales(data, scales, config);
}

ScaleSpec best_scale(const SweepTable& table) {
    if (table.entries.empty()) throw InputError("cannot pick a scale from an empty sweep");
    return table.entries[table.best_index].scale;
}

}  // namespace lampmet
