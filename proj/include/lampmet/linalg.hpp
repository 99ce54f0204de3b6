#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace lampmet {

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_.data() + i * cols_, cols_);
    }
    std::span<double> row(std::size_t i) {
        return std::span<double>(data_.data() + i * cols_, cols_);
    }

    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);

// 3x3 normal system a·w = b. `a` is symmetric (the Gram matrix of the metric
// features) but the solver does not rely on that.
struct LinearSystem3 {
    std::array<std::array<double, 3>, 3> a{};
    std::array<double, 3> b{};
};

// Solves the system by LU decomposition with partial pivoting.
// Throws SingularSystem when a pivot magnitude falls to 1e-12 or below.
std::array<double, 3> lu_solve(const LinearSystem3& system);

// Thin SVD of a d×2 matrix: m = u·diag(s)·vᵀ with u d×2 column-orthonormal,
// s descending and nonnegative, v 2×2 orthogonal.
struct ThinSvd2 {
    Matrix u;
    std::array<double, 2> s{};
    Matrix v;
};

// Closed form via the symmetric 2×2 eigenproblem of mᵀm. Rank-deficient input
// yields a zero singular value with the matching u column completed to an
// orthonormal pair; never throws on finite input with d ≥ 2.
ThinSvd2 thin_svd_tall(const Matrix& m);

// Mean-centered data projected onto the two leading principal directions.
// Sign convention: each direction's entry of largest magnitude is nonnegative.
// Throws TooFewPoints for n < 3 and DegenerateData when total variance is 0.
Matrix pca_top2(const Matrix& points);

}  // namespace lampmet
