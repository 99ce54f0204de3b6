#include "lampmet/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csv_util.hpp"
#include "lampmet/dataset.hpp"
#include "lampmet/errors.hpp"
#include "lampmet/lamp.hpp"
#include "lampmet/metrics.hpp"
#include "lampmet/reports.hpp"
#include "lampmet/svg_render.hpp"
#include "lampmet/trainer.hpp"
#include "lampmet/tuner.hpp"

namespace lampmet {

namespace {

struct ProjectArgs {
    std::string data;
    std::string label;
    std::string scale = "raw";
    std::string anchors;
    int controls = 0;
    std::uint64_t seed = 0;
    std::string out = "projection";
};

struct EvaluateArgs {
    std::string data;
    std::string label;
    std::string projection;
    std::string scale = "raw";
    std::string weights;
    int k = 7;
    std::uint64_t seed = 0;
    std::string out;
};

struct TrainArgs {
    std::string grades;
    double ratio = 0.7;
    std::uint64_t seed = 0;
    std::string out = "training";
};

struct TuneArgs {
    std::string data;
    std::string label;
    std::string scales;
    double min_scale = 0.1;
    double max_scale = 1.0;
    int steps = 10;
    bool include_raw = false;
    bool refine = false;
    int refine_steps = 10;
    double band_min = 0.1;
    double band_max = 1.0;
    int k = 7;
    int controls = 0;
    std::string weights;
    std::uint64_t seed = 0;
    std::string out;
    bool svg = false;
};

struct RenderArgs {
    std::string projection;
    int width = 640;
    int height = 480;
    double radius = 3.0;
    std::string annotation;
    std::string out;
};

struct ReportArgs {
    std::vector<std::string> rows;
    std::string out;
};

MetricWeights weights_or_default(const std::string& path) {
    return path.empty() ? default_weights() : load_weights_json(path);
}

ControlPointSet build_control(const LabeledDataset& scaled, const std::string& anchors_path,
                              int controls, std::uint64_t seed) {
    if (!anchors_path.empty()) {
        auto over = load_anchors_csv(anchors_path);
        return control_set_with_anchors(scaled, over.indices, over.anchors);
    }
    int count = controls > 0 ? controls : default_control_count(scaled);
    return seed_control_projection(scaled, select_control_points(scaled, count, seed));
}

Projection2D project_at(const LabeledDataset& data, const ScaleSpec& scale,
                        const std::vector<int>& indices, std::uint64_t seed) {
    LabeledDataset scaled = minmax_scale(data, scale);
    Projection2D proj = lamp_project(scaled, seed_control_projection(scaled, indices));
    proj.scale_used = scale;
    proj.seed = seed;
    return proj;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        write_text_file(out, text);
}

void run_project(const ProjectArgs& args) {
    LabeledDataset data = load_csv(args.data, args.label);
    ScaleSpec scale = ScaleSpec::parse(args.scale);
    LabeledDataset scaled = minmax_scale(data, scale);

    ControlPointSet control = build_control(scaled, args.anchors, args.controls, args.seed);
    Projection2D proj = lamp_project(scaled, control);
    proj.scale_used = scale;
    proj.seed = args.seed;

    write_projection_csv(args.out + ".csv", proj, scaled.labels);

    RenderSpec spec;
    spec.annotation =
        data.name + " scale=" + scale.str() + " seed=" + std::to_string(args.seed);
    write_text_file(args.out + ".svg", render_scatter(proj, scaled.labels, spec));
}

void run_evaluate(const EvaluateArgs& args) {
    LabeledDataset data = load_csv(args.data, args.label);
    ScaleSpec scale = ScaleSpec::parse(args.scale);
    LabeledDataset scaled = minmax_scale(data, scale);

    LoadedProjection loaded = load_projection_csv(args.projection);
    if (loaded.labels != data.labels)
        throw InputError("projection labels disagree with the dataset");

    Projection2D proj;
    proj.coords = loaded.coords;
    proj.dataset_name = data.name;
    proj.scale_used = scale;
    proj.seed = args.seed;

    auto [metrics, score] = score_projection(scaled, proj, args.k, weights_or_default(args.weights));

    MetricRow row;
    row.dataset = data.name;
    row.scale = scale;
    row.seed = args.seed;
    row.metrics = metrics;
    row.score = score;
    emit(args.out, metric_rows_csv({row}));
}

std::string counts_table(const TrainTestSplit& split) {
    auto counts = split_counts(split);
    std::size_t width = 7;  // "dataset"
    for (const auto& row : counts) width = std::max(width, row.dataset.size());

    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "dataset" << std::right
        << std::setw(7) << "train" << std::setw(6) << "test" << std::setw(7) << "total"
        << '\n';
    int train_total = 0, test_total = 0;
    for (const auto& row : counts) {
        out << std::left << std::setw(static_cast<int>(width)) << row.dataset << std::right
            << std::setw(7) << row.train << std::setw(6) << row.test << std::setw(7)
            << row.total << '\n';
        train_total += row.train;
        test_total += row.test;
    }
    out << std::left << std::setw(static_cast<int>(width)) << "total" << std::right
        << std::setw(7) << train_total << std::setw(6) << test_total << std::setw(7)
        << train_total + test_total << '\n';
    return out.str();
}

void run_train(const TrainArgs& args) {
    auto samples = load_grades_csv(args.grades);
    TrainTestSplit split = split_train_test(samples, args.ratio, args.seed);

    MetricWeights w = fit_weights(split.train);
    ErrorStats train_stats = evaluate_weights(split.train, w);
    ErrorStats test_stats = evaluate_weights(split.test, w);

    write_weights_json(args.out + "_weights.json", w);
    write_text_file(args.out + "_stats.csv", stats_csv(train_stats, test_stats));
    write_text_file(args.out + "_histogram.csv", histogram_csv(train_stats, test_stats));

    std::cout << counts_table(split);
}

std::vector<ScaleSpec> parse_scale_list(const std::string& text) {
    std::vector<ScaleSpec> scales;
    for (const auto& field : csvutil::split_line(text)) scales.push_back(ScaleSpec::parse(field));
    return scales;
}

// The two best-scoring distinct positive scales of a pass, as a refinement
// interval.
std::pair<double, double> refine_interval(const SweepTable& table) {
    const SweepEntry* first = nullptr;
    const SweepEntry* second = nullptr;
    for (const auto& entry : table.entries) {
        if (entry.scale.is_raw()) continue;
        if (first == nullptr || entry.score > first->score) {
            if (first != nullptr && entry.scale.upper_bound() != first->scale.upper_bound())
                second = first;
            first = &entry;
        } else if (entry.scale.upper_bound() != first->scale.upper_bound() &&
                   (second == nullptr || entry.score > second->score)) {
            second = &entry;
        }
    }
    if (first == nullptr || second == nullptr)
        throw InputError("refining needs at least two distinct positive scales in the first pass");
    double a = first->scale.upper_bound();
    double b = second->scale.upper_bound();
    return {std::min(a, b), std::max(a, b)};
}

void run_tune(const TuneArgs& args) {
    if (args.svg && args.out.empty()) throw InputError("--svg needs --out");

    LabeledDataset data = load_csv(args.data, args.label);

    SweepConfig config;
    config.min_scale = args.min_scale;
    config.max_scale = args.max_scale;
    config.steps = args.steps;
    config.k = args.k;
    config.weights = weights_or_default(args.weights);
    config.seed = args.seed;
    config.include_raw = args.include_raw;
    config.control_count = args.controls;

    std::vector<ScaleSpec> grid;
    if (!args.scales.empty()) {
        grid = parse_scale_list(args.scales);
    } else {
        grid = uniform_scales(args.min_scale, args.max_scale, args.steps);
    }
    if (args.include_raw) grid.insert(grid.begin(), ScaleSpec::raw());

    std::vector<SweepPhase> phases;
    phases.push_back({"grid", sweep_scales(data, grid, config)});

    if (args.refine) {
        auto [lo, hi] = refine_interval(phases.front().table);
        auto fine = uniform_scales(lo, hi, args.refine_steps);
        phases.push_back({"refine", sweep_scales(data, fine, config)});
    }

    std::string json =
        sweep_report_json(data.name, config, phases, args.band_min, args.band_max);
    if (args.out.empty()) {
        std::cout << json;
    } else {
        write_text_file(args.out + ".json", json);
    }

    if (args.svg) {
        for (const auto& phase : phases) {
            for (std::size_t i = 0; i < phase.table.entries.size(); ++i) {
                const auto& entry = phase.table.entries[i];
                Projection2D proj =
                    project_at(data, entry.scale, phase.table.control_indices, args.seed);
                LabeledDataset scaled = minmax_scale(data, entry.scale);
                RenderSpec spec;
                spec.annotation = data.name + " scale=" + entry.scale.str() +
                                  " score=" + format_double(entry.score);
                char suffix[32];
                std::snprintf(suffix, sizeof suffix, "_%s_%02zu.svg", phase.name.c_str(), i);
                write_text_file(args.out + suffix, render_scatter(proj, scaled.labels, spec));
            }
        }
    }
}

void run_render(const RenderArgs& args) {
    LoadedProjection loaded = load_projection_csv(args.projection);

    Projection2D proj;
    proj.coords = loaded.coords;

    RenderSpec spec;
    spec.width = args.width;
    spec.height = args.height;
    spec.point_radius = args.radius;
    spec.annotation = args.annotation;
    emit(args.out, render_scatter(proj, loaded.labels, spec));
}

void run_report(const ReportArgs& args) {
    std::vector<MetricRow> all;
    for (const auto& path : args.rows) {
        auto rows = load_metric_rows_csv(path);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    emit(args.out, summarize_metric_rows(all));
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"LAMP scatter projections with learned quality scoring and scale tuning"};
    app.require_subcommand(1);

    ProjectArgs project_args;
    auto* project = app.add_subcommand(
        "project", "Project a labeled dataset to 2D; writes <out>.csv and <out>.svg");
    project->add_option("--data", project_args.data, "input dataset CSV")->required();
    project->add_option("--label", project_args.label, "label column (name or 0-based index)")
        ->required();
    project->add_option("--scale", project_args.scale,
                        "min-max upper bound, or 'raw' for no scaling");
    project->add_option("--controls", project_args.controls,
                        "control point count (default: ceil(sqrt(n)))");
    project->add_option("--anchors", project_args.anchors,
                        "control override CSV (index,x,y); replaces seeded selection");
    project->add_option("--seed", project_args.seed, "random seed");
    project->add_option("--out", project_args.out, "output prefix")
        ->capture_default_str();

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand(
        "evaluate", "Score an existing 2D layout against its dataset; emits one metric row");
    evaluate->add_option("--data", evaluate_args.data, "input dataset CSV")->required();
    evaluate->add_option("--label", evaluate_args.label, "label column (name or 0-based index)")
        ->required();
    evaluate->add_option("--projection", evaluate_args.projection,
                         "layout CSV (row,x,y,label)")
        ->required();
    evaluate->add_option("--scale", evaluate_args.scale,
                         "scale the layout was produced at ('raw' or positive real)");
    evaluate->add_option("--k", evaluate_args.k, "neighborhood size")->capture_default_str();
    evaluate->add_option("--weights", evaluate_args.weights,
                         "weights JSON (default: built-in fitted weights)");
    evaluate->add_option("--seed", evaluate_args.seed, "seed recorded in the report row");
    evaluate->add_option("--out", evaluate_args.out, "output CSV (default: stdout)");

    TrainArgs train_args;
    auto* train = app.add_subcommand(
        "train", "Fit metric weights from graded layouts; writes <out>_weights.json, "
                 "<out>_stats.csv, <out>_histogram.csv and prints the split counts");
    train->add_option("--grades", train_args.grades,
                      "graded samples CSV (m1,m2,m3,grade,dataset,scale,seed)")
        ->required();
    train->add_option("--ratio", train_args.ratio, "train fraction")->capture_default_str();
    train->add_option("--seed", train_args.seed, "shuffle seed");
    train->add_option("--out", train_args.out, "output prefix")->capture_default_str();

    TuneArgs tune_args;
    auto* tune = app.add_subcommand(
        "tune", "Sweep min-max scales, score each, and report the best");
    tune->add_option("--data", tune_args.data, "input dataset CSV")->required();
    tune->add_option("--label", tune_args.label, "label column (name or 0-based index)")
        ->required();
    auto* tune_min =
        tune->add_option("--min", tune_args.min_scale, "grid start")->capture_default_str();
    auto* tune_max =
        tune->add_option("--max", tune_args.max_scale, "grid end")->capture_default_str();
    auto* tune_steps =
        tune->add_option("--steps", tune_args.steps, "grid size")->capture_default_str();
    tune->add_option("--scales", tune_args.scales,
                     "explicit comma-separated scale list (overrides the uniform grid)")
        ->excludes(tune_min)
        ->excludes(tune_max)
        ->excludes(tune_steps);
    tune->add_flag("--include-raw", tune_args.include_raw, "also score the unscaled data");
    tune->add_flag("--refine", tune_args.refine,
                   "second pass between the two best scales of the first");
    tune->add_option("--refine-steps", tune_args.refine_steps, "second-pass grid size")
        ->capture_default_str();
    tune->add_option("--band-min", tune_args.band_min, "reference band start")
        ->capture_default_str();
    tune->add_option("--band-max", tune_args.band_max, "reference band end")
        ->capture_default_str();
    tune->add_option("--k", tune_args.k, "neighborhood size")->capture_default_str();
    tune->add_option("--controls", tune_args.controls,
                     "control point count (default: ceil(sqrt(n)))");
    tune->add_option("--weights", tune_args.weights,
                     "weights JSON (default: built-in fitted weights)");
    tune->add_option("--seed", tune_args.seed, "random seed");
    tune->add_option("--out", tune_args.out,
                     "output prefix; writes <out>.json (default: stdout)");
    tune->add_flag("--svg", tune_args.svg, "also render every swept layout (needs --out)");

    RenderArgs render_args;
    auto* render = app.add_subcommand("render", "Render a layout CSV as an SVG scatter");
    render->add_option("--projection", render_args.projection, "layout CSV (row,x,y,label)")
        ->required();
    render->add_option("--width", render_args.width, "viewport width")->capture_default_str();
    render->add_option("--height", render_args.height, "viewport height")
        ->capture_default_str();
    render->add_option("--radius", render_args.radius, "point radius")->capture_default_str();
    render->add_option("--annotation", render_args.annotation, "caption text");
    render->add_option("--out", render_args.out, "output SVG (default: stdout)");

    ReportArgs report_args;
    auto* report = app.add_subcommand(
        "report", "Summarize metric report rows per dataset");
    report->add_option("--rows", report_args.rows, "metric row CSV (repeatable)")->required();
    report->add_option("--out", report_args.out, "output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (project->parsed()) run_project(project_args);
        if (evaluate->parsed()) run_evaluate(evaluate_args);
        if (train->parsed()) run_train(train_args);
        if (tune->parsed()) run_tune(tune_args);
        if (render->parsed()) run_render(render_args);
        if (report->parsed()) run_report(report_args);
        return 0;
    } catch (const InputError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const NumericError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return 2;
    }
}

}  // namespace lampmet
