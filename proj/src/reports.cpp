#include "lampmet/reports.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "json.hpp"

#include "csv_util.hpp"
#include "lampmet/errors.hpp"

namespace lampmet {

namespace {

using ordered_json = nlohmann::ordered_json;

// 1-based file rows for error messages; the header is row 1.
std::size_t file_row(std::size_t data_index) { return data_index + 2; }

void expect_header(const std::vector<std::string>& fields, const std::vector<std::string>& names,
                   const std::filesystem::path& path) {
    if (fields != names) {
        std::string expected;
        for (const auto& name : names) {
            if (!expected.empty()) expected += ',';
            expected += name;
        }
        throw InputError(path.string() + ": expected header '" + expected + "'");
    }
}

long long parse_integer(const std::string& field, std::size_t row, std::size_t column) {
    if (field.empty()) throw ParseError(row, column, "missing value");
    long long value = 0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(row, column, "'" + field + "' is not an integer");
    return value;
}

double parse_finite(const std::string& field, std::size_t row, std::size_t column) {
    double value = csvutil::parse_number(field, row, column);
    if (!std::isfinite(value)) throw ParseError(row, column, "'" + field + "' is not finite");
    return value;
}

ScaleSpec parse_scale_field(const std::string& field, std::size_t row, std::size_t column) {
    try {
        return ScaleSpec::parse(field);
    } catch (const InputError& err) {
        throw ParseError(row, column, err.what());
    }
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path,
                                                const std::vector<std::string>& header) {
    auto lines = csvutil::read_lines(path);
    if (lines.empty()) throw InputError(path.string() + ": file is empty");
    expect_header(csvutil::split_line(lines[0]), header, path);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = csvutil::split_line(lines[i]);
        if (fields.size() != header.size())
            throw RaggedRow(i + 1, header.size(), fields.size());
        rows.push_back(std::move(fields));
    }
    return rows;
}

ordered_json weights_json(const MetricWeights& w) {
    ordered_json j;
    j["w1"] = w.w1;
    j["w2"] = w.w2;
    j["w3"] = w.w3;
    return j;
}

ordered_json entry_json(const SweepEntry& entry) {
    ordered_json j;
    j["scale"] = entry.scale.str();
    j["m1"] = entry.metrics.m1;
    j["m2"] = entry.metrics.m2;
    j["m3"] = entry.metrics.m3;
    j["score"] = entry.score;
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out.flush()) throw InputError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

void write_projection_csv(const std::filesystem::path& path, const Projection2D& proj,
                          const std::vector<std::string>& labels) {
    if (labels.size() != proj.coords.rows())
        throw ShapeMismatch("projection has " + std::to_string(proj.coords.rows()) +
                            " rows but " + std::to_string(labels.size()) + " labels");
    std::string text = "row,x,y,label\n";
    for (std::size_t i = 0; i < proj.coords.rows(); ++i) {
        text += std::to_string(i) + ',' + format_double(proj.coords(i, 0)) + ',' +
                format_double(proj.coords(i, 1)) + ',' + labels[i] + '\n';
    }
    write_text_file(path, text);
}

LoadedProjection load_projection_csv(const std::filesystem::path& path) {
    auto rows = read_rows(path, {"row", "x", "y", "label"});
    if (rows.empty()) throw InputError(path.string() + ": no layout rows");

    LoadedProjection loaded;
    loaded.coords = Matrix(rows.size(), 2);
    loaded.labels.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        parse_integer(rows[i][0], file_row(i), 1);
        loaded.coords(i, 0) = parse_finite(rows[i][1], file_row(i), 2);
        loaded.coords(i, 1) = parse_finite(rows[i][2], file_row(i), 3);
        loaded.labels.push_back(rows[i][3]);
    }
    return loaded;
}

AnchorsOverride load_anchors_csv(const std::filesystem::path& path) {
    auto rows = read_rows(path, {"index", "x", "y"});
    if (rows.empty()) throw InputError(path.string() + ": no anchor rows");

    AnchorsOverride over;
    over.anchors = Matrix(rows.size(), 2);
    over.indices.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        long long idx = parse_integer(rows[i][0], file_row(i), 1);
        if (idx < 0) throw ParseError(file_row(i), 1, "row index must be nonnegative");
        over.indices.push_back(static_cast<int>(idx));
        over.anchors(i, 0) = parse_finite(rows[i][1], file_row(i), 2);
        over.anchors(i, 1) = parse_finite(rows[i][2], file_row(i), 3);
    }
    return over;
}

std::string metric_rows_csv(const std::vector<MetricRow>& rows) {
    std::string text = "dataset,scale,seed,k,m1,m2,m3,score\n";
    for (const auto& row : rows) {
        text += row.dataset + ',' + row.scale.str() + ',' + std::to_string(row.seed) + ',' +
                std::to_string(row.metrics.k_used) + ',' + format_double(row.metrics.m1) +
                ',' + format_double(row.metrics.m2) + ',' + format_double(row.metrics.m3) +
                ',' + format_double(row.score) + '\n';
    }
    return text;
}

void write_metric_rows_csv(const std::filesystem::path& path,
                           const std::vector<MetricRow>& rows) {
    write_text_file(path, metric_rows_csv(rows));
}

std::vector<MetricRow> load_metric_rows_csv(const std::filesystem::path& path) {
    auto rows = read_rows(path, {"dataset", "scale", "seed", "k", "m1", "m2", "m3", "score"});

    std::vector<MetricRow> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        MetricRow row;
        row.dataset = rows[i][0];
        row.scale = parse_scale_field(rows[i][1], file_row(i), 2);
        long long seed = parse_integer(rows[i][2], file_row(i), 3);
        if (seed < 0) throw ParseError(file_row(i), 3, "seed must be nonnegative");
        row.seed = static_cast<std::uint64_t>(seed);
        row.metrics.k_used = static_cast<int>(parse_integer(rows[i][3], file_row(i), 4));
        row.metrics.m1 = parse_finite(rows[i][4], file_row(i), 5);
        row.metrics.m2 = parse_finite(rows[i][5], file_row(i), 6);
        row.metrics.m3 = parse_finite(rows[i][6], file_row(i), 7);
        row.score = parse_finite(rows[i][7], file_row(i), 8);
        out.push_back(std::move(row));
    }
    return out;
}

std::string summarize_metric_rows(const std::vector<MetricRow>& rows) {
    std::map<std::string, std::vector<const MetricRow*>> by_dataset;
    for (const auto& row : rows) by_dataset[row.dataset].push_back(&row);

    std::string text = "dataset,runs,best_scale,best_score,mean_score\n";
    for (const auto& [dataset, group] : by_dataset) {
        const MetricRow* best = group.front();
        double sum = 0.0;
        for (const MetricRow* row : group) {
            if (row->score > best->score) best = row;
            sum += row->score;
        }
        text += dataset + ',' + std::to_string(group.size()) + ',' + best->scale.str() + ',' +
                format_double(best->score) + ',' +
                format_double(sum / static_cast<double>(group.size())) + '\n';
    }
    return text;
}

std::vector<GradedProjection> load_grades_csv(const std::filesystem::path& path) {
    auto rows = read_rows(path, {"m1", "m2", "m3", "grade", "dataset", "scale", "seed"});
    if (rows.empty()) throw TooFewSamples(path.string() + ": no graded samples");

    std::vector<GradedProjection> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        GradedProjection sample;
        sample.metrics.m1 = parse_finite(rows[i][0], file_row(i), 1);
        sample.metrics.m2 = parse_finite(rows[i][1], file_row(i), 2);
        sample.metrics.m3 = parse_finite(rows[i][2], file_row(i), 3);
        long long grade = parse_integer(rows[i][3], file_row(i), 4);
        if (grade < 1 || grade > 5)
            throw ParseError(file_row(i), 4, "grade must be an integer in 1..5");
        sample.grade = static_cast<int>(grade);
        sample.provenance.dataset = rows[i][4];
        sample.provenance.scale = parse_scale_field(rows[i][5], file_row(i), 6);
        long long seed = parse_integer(rows[i][6], file_row(i), 7);
        if (seed < 0) throw ParseError(file_row(i), 7, "seed must be nonnegative");
        sample.provenance.seed = static_cast<std::uint64_t>(seed);
        out.push_back(std::move(sample));
    }
    return out;
}

void write_weights_json(const std::filesystem::path& path, const MetricWeights& w) {
    write_text_file(path, weights_json(w).dump(2) + "\n");
}

MetricWeights load_weights_json(const std::filesystem::path& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& err) {
        throw InputError(path.string() + ": " + err.what());
    }
    if (!j.is_object() || !j.contains("w1") || !j.contains("w2") || !j.contains("w3"))
        throw InputError(path.string() + ": expected an object with keys w1, w2, w3");

    MetricWeights w;
    try {
        w.w1 = j.at("w1").get<double>();
        w.w2 = j.at("w2").get<double>();
        w.w3 = j.at("w3").get<double>();
    } catch (const nlohmann::json::exception& err) {
        throw InputError(path.string() + ": " + err.what());
    }
    if (!std::isfinite(w.w1) || !std::isfinite(w.w2) || !std::isfinite(w.w3))
        throw InputError(path.string() + ": weights must be finite");
    return w;
}

std::string stats_csv(const ErrorStats& train, const ErrorStats& test) {
    std::string text = "split,mae,median,std\n";
    auto line = [&](const char* split, const ErrorStats& stats) {
        text += std::string(split) + ',' + format_double(stats.mae) + ',' +
                format_double(stats.median) + ',' + format_double(stats.std) + '\n';
    };
    line("train", train);
    line("test", test);
    return text;
}

std::string histogram_csv(const ErrorStats& train, const ErrorStats& test) {
    std::string text = "split,bin_lo,bin_hi,count\n";
    auto block = [&](const char* split, const ErrorStats& stats) {
        for (int bin = 0; bin < kHistogramBins; ++bin) {
            text += std::string(split) + ',' + format_double(bin * kHistogramBinWidth) + ',' +
                    format_double((bin + 1) * kHistogramBinWidth) + ',' +
                    std::to_string(stats.histogram[static_cast<std::size_t>(bin)]) + '\n';
        }
    };
    block("train", train);
    block("test", test);
    return text;
}

std::string sweep_report_json(const std::string& dataset, const SweepConfig& config,
                              const std::vector<SweepPhase>& phases, double band_min,
                              double band_max) {
    if (phases.empty()) throw InputError("a sweep report needs at least one phase");

    ordered_json j;
    j["dataset"] = dataset;
    j["k"] = config.k;
    j["controls"] = phases.front().table.control_indices.size();
    j["seed"] = config.seed;
    j["weights"] = weights_json(config.weights);

    const SweepEntry* best = nullptr;
    j["phases"] = ordered_json::array();
    for (const auto& phase : phases) {
        ordered_json pj;
        pj["name"] = phase.name;
        pj["entries"] = ordered_json::array();
        for (const auto& entry : phase.table.entries) pj["entries"].push_back(entry_json(entry));
        pj["best_index"] = phase.table.best_index;
        pj["best_scale"] = best_scale(phase.table).str();
        j["phases"].push_back(std::move(pj));

        const SweepEntry& phase_best = phase.table.entries[phase.table.best_index];
        if (best == nullptr || phase_best.score > best->score) best = &phase_best;
    }

    j["best_scale"] = best->scale.str();
    j["best_score"] = best->score;

    ordered_json band;
    band["min"] = band_min;
    band["max"] = band_max;
    band["best_in_band"] = !best->scale.is_raw() && best->scale.upper_bound() >= band_min &&
                           best->scale.upper_bound() <= band_max;
    j["band"] = std::move(band);

    return j.dump(2) + "\n";
}

}  // namespace lampmet
