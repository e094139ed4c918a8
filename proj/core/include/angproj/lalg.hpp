// SPDX-License-Identifier: Apache-2.0
#pragma once

/// \file lalg.hpp
/// Dense real linear algebra and the generalized Cramer rule.
///
/// A single pivoted factorization of A answers every query of the form
/// "determinant of A with columns i_1..i_s replaced by b_{k_1}..b_{k_s}":
///
///     det(A[i_b <- b_{k_b}]) = det(A) * det[ x(k_a, i_b) ]_{a,b}
///
/// where x(k, .) solves A x = b_k. Matrices are interpreted column-wise:
/// column j of A is the vector a_j.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace angproj::lalg {

/// Pivots smaller than this fraction of max|A_ij| mark the factorization singular.
inline constexpr double kSingularPivotRelTol = 1e-13;

/// Largest order accepted by brute_force_determinant.
inline constexpr std::size_t kBruteForceMaxOrder = 10;

/// Row-major dense real matrix with finite entries.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::vector<double> column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> values);

    std::span<const double> data() const noexcept { return data_; }

    /// max_ij |A_ij|
    double max_abs() const noexcept;

    DenseMatrix transpose() const;

    /// Throws NonFiniteEntry if any entry is NaN or Inf.
    void check_finite() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);

/// Square submatrix built from the given rows and columns (in the given order).
DenseMatrix submatrix(const DenseMatrix& a, std::span<const std::size_t> rows,
                      std::span<const std::size_t> cols);

/// Packed LU factors of P*A with partial (row) pivoting.
///
/// The factorization is always produced; `singular()` reports that some pivot
/// fell below kSingularPivotRelTol * max|A|. Callers decide how to react.
class LUDecomposition {
public:
    std::size_t order() const noexcept { return n_; }
    int parity() const noexcept { return parity_; }
    bool singular() const noexcept { return singular_; }
    double smallest_pivot() const noexcept { return smallest_pivot_; }
    double scale() const noexcept { return scale_; }

    /// perm()[r] is the row of A that ended up in row r of P*A.
    std::span<const std::size_t> perm() const noexcept { return perm_; }
    const DenseMatrix& packed() const noexcept { return lu_; }

    DenseMatrix lower() const;
    DenseMatrix upper() const;
    DenseMatrix permutation() const;

    /// parity * prod(U_ii), ignoring the singular flag.
    double raw_determinant() const noexcept;

    /// Solve A x = b by forward/back substitution. Throws SingularMatrix.
    std::vector<double> solve(std::span<const double> b) const;

private:
    friend LUDecomposition lu_factor(const DenseMatrix& a);
    LUDecomposition(DenseMatrix lu, std::vector<std::size_t> perm, int parity, double smallest,
                    double scale, bool singular);

    std::size_t n_;
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    int parity_;
    double smallest_pivot_;
    double scale_;
    bool singular_;
};

/// x(k, i): solution amplitudes of A x(k, .) = b_k, one row per right-hand side.
class SolutionTable {
public:
    SolutionTable(std::size_t rhs_count, std::size_t order);

    std::size_t rhs_count() const noexcept { return s_; }
    std::size_t order() const noexcept { return n_; }

    double operator()(std::size_t k, std::size_t i) const { return values_[k * n_ + i]; }
    double& operator()(std::size_t k, std::size_t i) { return values_[k * n_ + i]; }
    std::span<const double> row(std::size_t k) const { return {values_.data() + k * n_, n_}; }
    std::span<double> row(std::size_t k) { return {values_.data() + k * n_, n_}; }

private:
    std::size_t s_;
    std::size_t n_;
    std::vector<double> values_;
};

/// Partial-pivoting LU. Throws DimensionMismatch for non-square input and
/// NonFiniteEntry for NaN/Inf entries.
LUDecomposition lu_factor(const DenseMatrix& a);

/// det(A); exactly 0 when the factorization is flagged singular.
double determinant(const LUDecomposition& lu);

/// Solves A x(k, .) = b_k for every right-hand side. Throws SingularMatrix.
SolutionTable solve_columns(const LUDecomposition& lu, std::span<const std::vector<double>> rhs);

/// det(A) * det[x(rhs_rows[a], col_positions[b])]: the determinant of A with
/// column col_positions[b] replaced by b_{rhs_rows[b]}.
///
/// Column positions must be distinct (DuplicateColumn) and both lists equally
/// long (DimensionMismatch). They need not be sorted; the result follows the
/// sign of the explicit substitution.
double replaced_determinant(double det_a, const SolutionTable& x,
                            std::span<const std::size_t> rhs_rows,
                            std::span<const std::size_t> col_positions);

/// Laplace expansion along the first row. Test oracle; n <= 10.
double brute_force_determinant(const DenseMatrix& a);

/// det(A) * A^{-1}, finite also for singular A (falls back to cofactors).
DenseMatrix adjugate(const DenseMatrix& a);

/// Determinant of a small dense block by elimination, no singularity cutoff.
double small_determinant(const DenseMatrix& a);

} // namespace angproj::lalg
