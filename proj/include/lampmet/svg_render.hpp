#pragma once

#include <string>
#include <vector>

#include "lampmet/lamp.hpp"

namespace lampmet {

struct RenderSpec {
    int width = 640;
    int height = 480;
    double point_radius = 3.0;
    // Fill colors keyed by class rank (labels sorted lexicographically); cycles
    // when there are more classes than colors.
    std::vector<std::string> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                        "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                        "#bcbd22", "#17becf"};
    std::string annotation;
};

// Deterministic SVG scatter of a 2D layout: one circle per row, fill keyed by
// class, coordinates fit affinely to the viewport with the aspect ratio
// preserved. Throws InputError on an empty layout or a viewport under 64px.
std::string render_scatter(const Projection2D& proj, const std::vector<std::string>& labels,
                           const RenderSpec& spec);

}  // namespace lampmet
