#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "lampmet/linalg.hpp"

namespace lampmet {

// n×d feature matrix plus one class label per row.
struct LabeledDataset {
    std::string name;
    Matrix features;
    std::vector<std::string> labels;
    std::vector<std::string> feature_names;

    std::size_t size() const { return features.rows(); }
    std::size_t dim() const { return features.cols(); }
};

// Per-feature min-max target interval [0, s], or RAW for no scaling.
class ScaleSpec {
public:
    static ScaleSpec raw() { return ScaleSpec(); }
    static ScaleSpec upper(double s);

    // Parses "raw" or a positive real.
    static ScaleSpec parse(const std::string& text);

    bool is_raw() const { return raw_; }
    double upper_bound() const { return s_; }

    // "raw" or the shortest round-trip decimal form of s.
    std::string str() const;

    bool operator==(const ScaleSpec& other) const = default;

private:
    ScaleSpec() = default;
    bool raw_ = true;
    double s_ = 0.0;
};

// Symmetric nonnegative n×n matrix with a zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Loads a UTF-8, comma-separated file with a header row. The label column is
// chosen by header name first, then by 0-based index when `label_column` is a
// nonnegative integer that matches no header. Missing values are a hard error.
LabeledDataset load_csv(const std::filesystem::path& path, const std::string& label_column);

// RAW returns the input unchanged; otherwise maps each feature onto [0, s].
// Constant features map to 0.
LabeledDataset minmax_scale(const LabeledDataset& data, const ScaleSpec& spec);

DistanceMatrix pairwise_distances(const Matrix& features);

// Row i lists the k indices j ≠ i with smallest distance(i, j); ties break by
// ascending index. Throws InvalidK unless 1 ≤ k ≤ n − 1.
std::vector<std::vector<int>> knn_indices(const DistanceMatrix& distances, int k);

// Distinct labels in order of first appearance.
std::vector<std::string> class_order(const std::vector<std::string>& labels);

}  // namespace lampmet
