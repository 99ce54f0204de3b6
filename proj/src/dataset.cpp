#include "lampmet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <system_error>
#include <unordered_set>

#include "csv_util.hpp"
#include "lampmet/errors.hpp"

namespace lampmet {

namespace csvutil {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

}  // namespace csvutil

ScaleSpec ScaleSpec::upper(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw InputError("scale upper bound must be a positive finite real");
    ScaleSpec spec;
    spec.raw_ = false;
    spec.s_ = s;
    return spec;
}

ScaleSpec ScaleSpec::parse(const std::string& text) {
    if (text == "raw") return raw();
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw InputError("scale must be 'raw' or a positive real, got '" + text + "'");
    return upper(value);
}

std::string ScaleSpec::str() const {
    if (raw_) return "raw";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), s_);
    return std::string(buf, ptr);
}

std::vector<std::string> class_order(const std::vector<std::string>& labels) {
    std::vector<std::string> order;
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
        if (seen.insert(label).second) order.push_back(label);
    }
    return order;
}

LabeledDataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
    auto lines = csvutil::read_lines(path);
    if (lines.size() < 2) throw InputError("file needs a header row and data rows");

    auto header = csvutil::split_line(lines[0]);
    const std::size_t ncols = header.size();

    // Header name wins; a nonnegative integer is a 0-based column index.
    std::size_t label_idx = ncols;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (header[j] == label_column) {
            label_idx = j;
            break;
        }
    }
    if (label_idx == ncols) {
        std::size_t parsed = 0;
        const char* first = label_column.data();
        const char* last = first + label_column.size();
        auto [ptr, ec] = std::from_chars(first, last, parsed);
        if (ec == std::errc() && ptr == last && parsed < ncols) {
            label_idx = parsed;
        } else {
            throw MissingLabelColumn("no column named '" + label_column + "' in " +
                                     path.string());
        }
    }
    if (ncols < 2) throw InputError("file needs at least one feature column besides the label");

    const std::size_t n = lines.size() - 1;
    const std::size_t d = ncols - 1;
    if (n < 2) throw InputError("dataset needs at least 2 rows");

    LabeledDataset data;
    data.name = path.stem().string();
    data.features = Matrix(n, d);
    data.labels.reserve(n);
    for (std::size_t j = 0; j < ncols; ++j) {
        if (j != label_idx) data.feature_names.push_back(header[j]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto fields = csvutil::split_line(lines[i + 1]);
        if (fields.size() != ncols) throw RaggedRow(i + 2, ncols, fields.size());
        std::size_t col = 0;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (j == label_idx) {
                if (fields[j].empty()) throw ParseError(i + 2, j + 1, "empty label");
                data.labels.push_back(fields[j]);
            } else {
                double v = csvutil::parse_number(fields[j], i + 2, j + 1);
                if (!std::isfinite(v)) throw ParseError(i + 2, j + 1, "non-finite value");
                data.features(i, col++) = v;
            }
        }
    }
    return data;
}

LabeledDataset minmax_scale(const LabeledDataset& data, const ScaleSpec& spec) {
    if (spec.is_raw()) return data;
    const double s = spec.upper_bound();
    const std::size_t n = data.size();
    const std::size_t d = data.dim();

    LabeledDataset out = data;
    for (std::size_t j = 0; j < d; ++j) {
        double lo = data.features(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, data.features(i, j));
            hi = std::max(hi, data.features(i, j));
        }
        if (hi == lo) {
            for (std::size_t i = 0; i < n; ++i) out.features(i, j) = 0.0;
        } else {
            double scale = s / (hi - lo);
            for (std::size_t i = 0; i < n; ++i)
                out.features(i, j) = (data.features(i, j) - lo) * scale;
        }
    }
    return out;
}

DistanceMatrix pairwise_distances(const Matrix& features) {
    const std::size_t n = features.rows();
    const std::size_t d = features.cols();
    DistanceMatrix dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                double delta = features(i, c) - features(j, c);
                sum += delta * delta;
            }
            double dij = std::sqrt(sum);
            dist(i, j) = dij;
            dist(j, i) = dij;
        }
    }
    return dist;
}

std::vector<std::vector<int>> knn_indices(const DistanceMatrix& distances, int k) {
    const std::size_t n = distances.size();
    if (k < 1 || static_cast<std::size_t>(k) > n - 1)
        throw InvalidK("k must satisfy 1 <= k <= n-1, got k=" + std::to_string(k) +
                       " with n=" + std::to_string(n));

    std::vector<std::vector<int>> table(n);
    std::vector<int> candidates(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) candidates[pos++] = static_cast<int>(j);
        }
        auto closer = [&](int a, int b) {
            double da = distances(i, static_cast<std::size_t>(a));
            double db = distances(i, static_cast<std::size_t>(b));
            if (da != db) return da < db;
            return a < b;
        };
        std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end(), closer);
        table[i].assign(candidates.begin(), candidates.begin() + k);
    }
    return table;
}

}  // namespace lampmet
