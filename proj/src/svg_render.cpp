#include "lampmet/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "lampmet/errors.hpp"

namespace lampmet {

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string render_scatter(const Projection2D& proj, const std::vector<std::string>& labels,
                           const RenderSpec& spec) {
    const std::size_t n = proj.coords.rows();
    if (n == 0) throw InputError("cannot render an empty layout");
    if (labels.size() != n)
        throw ShapeMismatch("render_scatter: " + std::to_string(n) + " rows but " +
                            std::to_string(labels.size()) + " labels");
    if (spec.width < 64 || spec.height < 64)
        throw InputError("viewport must be at least 64x64 pixels");
    if (!(spec.point_radius > 0.0) || !std::isfinite(spec.point_radius))
        throw InputError("point radius must be positive");
    if (spec.palette.empty()) throw InputError("palette must not be empty");

    std::map<std::string, std::size_t> class_rank;
    for (const auto& label : labels) class_rank.emplace(label, 0);
    std::size_t next_rank = 0;
    for (auto& [label, rank] : class_rank) rank = next_rank++;

    double xmin = proj.coords(0, 0), xmax = xmin;
    double ymin = proj.coords(0, 1), ymax = ymin;
    for (std::size_t i = 1; i < n; ++i) {
        xmin = std::min(xmin, proj.coords(i, 0));
        xmax = std::max(xmax, proj.coords(i, 0));
        ymin = std::min(ymin, proj.coords(i, 1));
        ymax = std::max(ymax, proj.coords(i, 1));
    }

    const double margin = spec.point_radius + 8.0;
    const double usable_w = spec.width - 2.0 * margin;
    const double usable_h = spec.height - 2.0 * margin;
    const double dx = xmax - xmin;
    const double dy = ymax - ymin;

    // One scale factor for both axes keeps the layout's aspect ratio; a
    // zero-extent axis is centered.
    double s = 0.0;
    if (dx > 0.0 && dy > 0.0) s = std::min(usable_w / dx, usable_h / dy);
    else if (dx > 0.0) s = usable_w / dx;
    else if (dy > 0.0) s = usable_h / dy;

    const double x_off = margin + (usable_w - s * dx) / 2.0;
    const double y_off = margin + (usable_h - s * dy) / 2.0;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
           "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
           std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
    svg += "<rect width=\"" + std::to_string(spec.width) + "\" height=\"" +
           std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";

    for (std::size_t i = 0; i < n; ++i) {
        const double px = x_off + s * (proj.coords(i, 0) - xmin);
        const double py = spec.height - (y_off + s * (proj.coords(i, 1) - ymin));
        const std::size_t rank = class_rank[labels[i]];
        const std::string& fill = spec.palette[rank % spec.palette.size()];
        svg += "<circle cx=\"" + fixed2(px) + "\" cy=\"" + fixed2(py) + "\" r=\"" +
               fixed2(spec.point_radius) + "\" fill=\"" + xml_escape(fill) + "\"/>\n";
    }

    if (!spec.annotation.empty()) {
        svg += "<text x=\"8\" y=\"" + std::to_string(spec.height - 8) +
               "\" font-family=\"monospace\" font-size=\"12\" fill=\"#000000\">" +
               xml_escape(spec.annotation) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace lampmet
