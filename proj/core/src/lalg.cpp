// SPDX-License-Identifier: Apache-2.0
#include "angproj/lalg.hpp"

#include "angproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace angproj::lalg {

namespace {

void require_nonempty(std::size_t rows, std::size_t cols)
{
    if (rows == 0 || cols == 0)
        throw DimensionMismatch("matrix dimensions must be at least 1x1");
}

double laplace(const DenseMatrix& a, std::size_t row, std::vector<std::size_t>& cols)
{
    const std::size_t m = cols.size();
    if (m == 1) return a(row, cols[0]);
    if (m == 2) return a(row, cols[0]) * a(row + 1, cols[1]) - a(row, cols[1]) * a(row + 1, cols[0]);

    double sum = 0.0;
    double sign = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
        const std::size_t col = cols[c];
        const double entry = a(row, col);
        if (entry != 0.0) {
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(c));
            sum += sign * entry * laplace(a, row + 1, cols);
            cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(c), col);
        }
        sign = -sign;
    }
    return sum;
}

} // namespace

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
    require_nonempty(rows, cols);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major))
{
    require_nonempty(rows, cols);
    if (data_.size() != rows * cols)
        throw DimensionMismatch("entry count " + std::to_string(data_.size()) + " != " +
                                std::to_string(rows) + "x" + std::to_string(cols));
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag)
{
    DenseMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows)
{
    std::vector<std::vector<double>> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty() || rows.front().empty())
        throw DimensionMismatch("matrix dimensions must be at least 1x1");
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionMismatch("ragged row in matrix literal");
        data.insert(data.end(), r.begin(), r.end());
    }
    return DenseMatrix(rows.size(), cols, std::move(data));
}

std::vector<double> DenseMatrix::column(std::size_t j) const
{
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values)
{
    if (values.size() != rows_) throw DimensionMismatch("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

double DenseMatrix::max_abs() const noexcept
{
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

DenseMatrix DenseMatrix::transpose() const
{
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

void DenseMatrix::check_finite() const
{
    for (double v : data_)
        if (!std::isfinite(v)) throw NonFiniteEntry("matrix contains a non-finite entry");
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
{
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x)
{
    if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: size mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto r = a.row(i);
        y[i] = std::inner_product(r.begin(), r.end(), x.begin(), 0.0);
    }
    return y;
}

DenseMatrix submatrix(const DenseMatrix& a, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols)
{
    DenseMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
    return s;
}

// ---------------------------------------------------------------------------
// LUDecomposition

LUDecomposition::LUDecomposition(DenseMatrix lu, std::vector<std::size_t> perm, int parity,
                                 double smallest, double scale, bool singular)
    : n_(lu.rows()),
      lu_(std::move(lu)),
      perm_(std::move(perm)),
      parity_(parity),
      smallest_pivot_(smallest),
      scale_(scale),
      singular_(singular)
{
}

DenseMatrix LUDecomposition::lower() const
{
    DenseMatrix l = DenseMatrix::identity(n_);
    for (std::size_t i = 1; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j) l(i, j) = lu_(i, j);
    return l;
}

DenseMatrix LUDecomposition::upper() const
{
    DenseMatrix u(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) u(i, j) = lu_(i, j);
    return u;
}

DenseMatrix LUDecomposition::permutation() const
{
    DenseMatrix p(n_, n_);
    for (std::size_t r = 0; r < n_; ++r) p(r, perm_[r]) = 1.0;
    return p;
}

double LUDecomposition::raw_determinant() const noexcept
{
    double d = parity_;
    for (std::size_t i = 0; i < n_; ++i) d *= lu_(i, i);
    return d;
}

std::vector<double> LUDecomposition::solve(std::span<const double> b) const
{
    if (singular_) throw SingularMatrix("cannot solve with a singular factorization");
    if (b.size() != n_)
        throw DimensionMismatch("right-hand side has length " + std::to_string(b.size()) +
                                ", expected " + std::to_string(n_));
    std::vector<double> x(n_);
    for (std::size_t r = 0; r < n_; ++r) x[r] = b[perm_[r]];
    for (std::size_t i = 1; i < n_; ++i) {
        double acc = x[i];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
        x[i] = acc;
    }
    for (std::size_t ii = n_; ii-- > 0;) {
        double acc = x[ii];
        for (std::size_t j = ii + 1; j < n_; ++j) acc -= lu_(ii, j) * x[j];
        x[ii] = acc / lu_(ii, ii);
    }
    return x;
}

LUDecomposition lu_factor(const DenseMatrix& a)
{
    if (!a.is_square())
        throw DimensionMismatch("lu_factor needs a square matrix, got " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()));
    a.check_finite();

    const std::size_t n = a.rows();
    DenseMatrix lu = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    int parity = 1;
    const double scale = a.max_abs();
    const double cutoff = kSingularPivotRelTol * scale;
    double smallest = std::numeric_limits<double>::infinity();
    bool singular = scale == 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(perm[k], perm[p]);
            parity = -parity;
        }
        smallest = std::min(smallest, best);
        if (best <= cutoff) singular = true;
        if (best == 0.0) continue;  // column already eliminated

        const double pivot = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / pivot;
            lu(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return LUDecomposition(std::move(lu), std::move(perm), parity, smallest, scale, singular);
}

double determinant(const LUDecomposition& lu)
{
    return lu.singular() ? 0.0 : lu.raw_determinant();
}

// ---------------------------------------------------------------------------
// Generalized Cramer

SolutionTable::SolutionTable(std::size_t rhs_count, std::size_t order)
    : s_(rhs_count), n_(order), values_(rhs_count * order, 0.0)
{
}

SolutionTable solve_columns(const LUDecomposition& lu, std::span<const std::vector<double>> rhs)
{
    SolutionTable table(rhs.size(), lu.order());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        const auto x = lu.solve(rhs[k]);
        std::copy(x.begin(), x.end(), table.row(k).begin());
    }
    return table;
}

double replaced_determinant(double det_a, const SolutionTable& x,
                            std::span<const std::size_t> rhs_rows,
                            std::span<const std::size_t> col_positions)
{
    const std::size_t s = rhs_rows.size();
    if (col_positions.size() != s)
        throw DimensionMismatch("rhs_rows and col_positions differ in length");
    if (s == 0) return det_a;
    for (std::size_t a = 0; a < s; ++a) {
        if (rhs_rows[a] >= x.rhs_count()) throw DimensionMismatch("rhs row out of range");
        if (col_positions[a] >= x.order()) throw DimensionMismatch("column position out of range");
        for (std::size_t b = 0; b < a; ++b)
            if (col_positions[a] == col_positions[b])
                throw DuplicateColumn("column " + std::to_string(col_positions[a]) +
                                      " replaced twice");
    }

    switch (s) {
    case 1:
        return det_a * x(rhs_rows[0], col_positions[0]);
    case 2:
        return det_a * (x(rhs_rows[0], col_positions[0]) * x(rhs_rows[1], col_positions[1]) -
                        x(rhs_rows[0], col_positions[1]) * x(rhs_rows[1], col_positions[0]));
    default: {
        DenseMatrix minor(s, s);
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b) minor(a, b) = x(rhs_rows[a], col_positions[b]);
        return det_a * small_determinant(minor);
    }
    }
}

double brute_force_determinant(const DenseMatrix& a)
{
    if (!a.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    if (a.rows() > kBruteForceMaxOrder)
        throw SizeLimitExceeded("brute-force determinant limited to n <= 10, got n = " +
                                std::to_string(a.rows()));
    std::vector<std::size_t> cols(a.cols());
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    return laplace(a, 0, cols);
}

double small_determinant(const DenseMatrix& a)
{
    if (a.rows() == 1) return a(0, 0);
    if (a.rows() == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return lu_factor(a).raw_determinant();
}

DenseMatrix adjugate(const DenseMatrix& a)
{
    if (!a.is_square()) throw DimensionMismatch("adjugate of a non-square matrix");
    const std::size_t n = a.rows();
    DenseMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1.0;
        return adj;
    }

    const auto lu = lu_factor(a);
    if (!lu.singular()) {
        const double det = lu.raw_determinant();
        std::vector<double> e(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = det;
            const auto col = lu.solve(e);
            adj.set_column(j, col);
            e[j] = 0.0;
        }
        return adj;
    }

    // adj_{ji} = (-1)^{i+j} det(A without row i, column j)
    std::vector<std::size_t> rows(n - 1), cols(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0, t = 0; r < n; ++r)
            if (r != i) rows[t++] = r;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t c = 0, t = 0; c < n; ++c)
                if (c != j) cols[t++] = c;
            const double minor = small_determinant(submatrix(a, rows, cols));
            adj(j, i) = ((i + j) % 2 == 0 ? 1.0 : -1.0) * minor;
        }
    }
    return adj;
}

} // namespace angproj::lalg
