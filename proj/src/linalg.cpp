#include "lampmet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "lampmet/errors.hpp"

namespace lampmet {

namespace {

constexpr double kPivotThreshold = 1e-12;
// Relative cutoff below which a second singular value is treated as zero and
// the matching u column is rebuilt by orthogonalization.
constexpr double kSingularRelTol = 1e-12;

void require_finite(const Matrix& m, const char* what) {
    for (double v : m.data()) {
        if (!std::isfinite(v)) throw InputError(std::string(what) + " has a non-finite entry");
    }
}

// Least-aligned standard basis vector, orthogonalized against u1.
void complete_column(const Matrix& u_first, std::size_t d, std::vector<double>& out) {
    std::size_t pick = 0;
    double best = std::abs(u_first(0, 0));
    for (std::size_t i = 1; i < d; ++i) {
        double a = std::abs(u_first(i, 0));
        if (a < best) {
            best = a;
            pick = i;
        }
    }
    out.assign(d, 0.0);
    out[pick] = 1.0;
}

}  // namespace

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matmul: inner dimensions disagree");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

std::array<double, 3> lu_solve(const LinearSystem3& system) {
    constexpr int n = 3;
    double a[n][n];
    double b[n];
    int perm[n] = {0, 1, 2};
    for (int i = 0; i < n; ++i) {
        b[i] = system.b[i];
        for (int j = 0; j < n; ++j) a[i][j] = system.a[i][j];
    }

    // Doolittle LU with partial pivoting, in place.
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[col][col]);
        for (int r = col + 1; r < n; ++r) {
            double cand = std::abs(a[r][col]);
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best <= kPivotThreshold)
            throw SingularSystem("pivot magnitude " + std::to_string(best) +
                                 " at column " + std::to_string(col) + " is below threshold");
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            std::swap(b[pivot], b[col]);
            std::swap(perm[pivot], perm[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            double factor = a[r][col] / a[col][col];
            a[r][col] = factor;
            for (int j = col + 1; j < n; ++j) a[r][j] -= factor * a[col][j];
            b[r] -= factor * b[col];
        }
    }

    std::array<double, 3> w{};
    for (int i = n - 1; i >= 0; --i) {
        double sum = b[i];
        for (int j = i + 1; j < n; ++j) sum -= a[i][j] * w[j];
        w[i] = sum / a[i][i];
    }
    return w;
}

ThinSvd2 thin_svd_tall(const Matrix& m) {
    if (m.cols() != 2) throw ShapeMismatch("thin_svd_tall expects exactly 2 columns");
    if (m.rows() < 2) throw ShapeMismatch("thin_svd_tall expects at least 2 rows");
    require_finite(m, "thin_svd_tall input");

    const std::size_t d = m.rows();

    // G = mᵀm, 2×2 symmetric PSD.
    double gxx = 0.0, gxy = 0.0, gyy = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        gxx += m(i, 0) * m(i, 0);
        gxy += m(i, 0) * m(i, 1);
        gyy += m(i, 1) * m(i, 1);
    }

    // Closed-form eigenpair of G: λ = mid ± disc.
    double mid = 0.5 * (gxx + gyy);
    double disc = std::hypot(0.5 * (gxx - gyy), gxy);
    double lam1 = mid + disc;
    double lam2 = std::max(mid - disc, 0.0);

    // Leading eigenvector; for an isotropic G any direction works.
    double v1x = 1.0, v1y = 0.0;
    if (disc > 0.0) {
        double ax = gxy, ay = lam1 - gxx;       // candidate from row 1
        double bx = lam1 - gyy, by = gxy;        // candidate from row 2
        double na = ax * ax + ay * ay;
        double nb = bx * bx + by * by;
        if (nb > na) {
            ax = bx;
            ay = by;
            na = nb;
        }
        if (na > 0.0) {
            double inv = 1.0 / std::sqrt(na);
            v1x = ax * inv;
            v1y = ay * inv;
        }
    }
    // Deterministic sign: larger-magnitude component nonnegative.
    double lead = std::abs(v1x) >= std::abs(v1y) ? v1x : v1y;
    if (lead < 0.0) {
        v1x = -v1x;
        v1y = -v1y;
    }
    // v2 spans the orthogonal complement, which is the second eigendirection.
    double v2x = -v1y, v2y = v1x;

    ThinSvd2 out;
    out.s = {std::sqrt(lam1), std::sqrt(lam2)};
    out.v = Matrix(2, 2);
    out.v(0, 0) = v1x;
    out.v(1, 0) = v1y;
    out.v(0, 1) = v2x;
    out.v(1, 1) = v2y;

    out.u = Matrix(d, 2);
    std::vector<double> col(d);

    // First column: m·v1 / s1, or a basis vector when m = 0.
    if (out.s[0] > 0.0) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            col[i] = m(i, 0) * v1x + m(i, 1) * v1y;
            norm2 += col[i] * col[i];
        }
        double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < d; ++i) out.u(i, 0) = col[i] * inv;
    } else {
        out.u(0, 0) = 1.0;
    }

    // Second column: m·v2 / s2 while s2 carries signal, else completed; either
    // way re-orthogonalized so uᵀu = I holds at machine precision.
    if (out.s[1] > out.s[0] * kSingularRelTol && out.s[1] > 0.0) {
        double inv_s = 1.0 / out.s[1];
        for (std::size_t i = 0; i < d; ++i) col[i] = (m(i, 0) * v2x + m(i, 1) * v2y) * inv_s;
    } else {
        out.s[1] = 0.0;
        complete_column(out.u, d, col);
    }
    double proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) proj += col[i] * out.u(i, 0);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        col[i] -= proj * out.u(i, 0);
        norm2 += col[i] * col[i];
    }
    if (norm2 <= 0.0) {
        // col collapsed onto u1 entirely; restart from a fresh basis vector.
        complete_column(out.u, d, col);
        proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += col[i] * out.u(i, 0);
        norm2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            col[i] -= proj * out.u(i, 0);
            norm2 += col[i] * col[i];
        }
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < d; ++i) out.u(i, 1) = col[i] * inv;

    return out;
}

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns eigenvalues
// in `values` and eigenvectors as columns of the returned matrix.
Matrix jacobi_eigh(Matrix a, std::vector<double>& values) {
    const std::size_t n = a.rows();
    Matrix vecs = Matrix::identity(n);
    if (n == 1) {
        values = {a(0, 0)};
        return vecs;
    }

    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    const double stop = 1e-30 * frob + 1e-300;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= stop) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = vecs(i, p), viq = vecs(i, q);
                    vecs(i, p) = c * vip - s * viq;
                    vecs(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    return vecs;
}

}  // namespace

Matrix pca_top2(const Matrix& points) {
    const std::size_t n = points.rows();
    const std::size_t d = points.cols();
    if (n < 3) throw TooFewPoints("pca_top2 needs at least 3 points");
    require_finite(points, "pca_top2 input");

    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) mean[j] += points(i, j);
    for (double& m : mean) m /= static_cast<double>(n);

    Matrix centered(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) centered(i, j) = points(i, j) - mean[j];

    // Scatter matrix; eigenvectors match the covariance's.
    Matrix scatter(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += centered(i, a) * centered(i, b);
            scatter(a, b) = s;
            scatter(b, a) = s;
        }
    }

    double total = 0.0;
    for (std::size_t j = 0; j < d; ++j) total += scatter(j, j);
    if (!(total > 0.0)) throw DegenerateData("pca_top2: total variance is zero");

    std::vector<double> values;
    Matrix vecs = jacobi_eigh(scatter, values);

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    Matrix coords(n, 2);
    for (std::size_t c = 0; c < 2 && c < d; ++c) {
        std::size_t col = order[c];
        // Sign convention: entry of largest magnitude nonnegative.
        std::size_t lead = 0;
        double best = std::abs(vecs(0, col));
        for (std::size_t i = 1; i < d; ++i) {
            double a = std::abs(vecs(i, col));
            if (a > best) {
                best = a;
                lead = i;
            }
        }
        double sign = vecs(lead, col) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += centered(i, j) * vecs(j, col);
            coords(i, c) = s * sign;
        }
    }
    return coords;
}

}  // namespace lampmet
