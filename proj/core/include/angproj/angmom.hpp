// SPDX-License-Identifier: Apache-2.0
#pragma once

/// \file angmom.hpp
/// Angular-momentum special functions. All j and m values are carried as
/// doubled integers (two_j = 2j), so half-integers stay exact.
///
/// Rotation convention: d^j_{m'm}(beta) = <j m'| exp(-i beta J_y) |j m>, with
/// Condon-Shortley phases. Every d is real in this convention.

#include "angproj/errors.hpp"
#include "angproj/lalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace angproj::angmom {

/// |j m> with j = two_j/2, m = two_m/2.
struct AngMomLabel {
    int two_j = 0;
    int two_m = 0;

    bool valid() const noexcept;
    /// Throws InvalidLabel unless |m| <= j and two_j, two_m share parity.
    void validate() const;

    friend bool operator==(const AngMomLabel&, const AngMomLabel&) = default;
};

/// Single-particle state inside a j-shell; `shell` distinguishes shells that
/// share the same j.
struct ShellLabel {
    int shell = 0;
    int two_j = 0;
    int two_m = 0;

    AngMomLabel label() const noexcept { return {two_j, two_m}; }
    friend bool operator==(const ShellLabel&, const ShellLabel&) = default;
};

/// ln(n!) from a table built once on first use; n up to kLogFactorialTableSize-1.
inline constexpr int kLogFactorialTableSize = 1024;
double log_factorial(int n);

double wigner_small_d(int two_j, int two_mp, int two_m, double beta);

/// Full (2j+1)x(2j+1) d^j(beta); rows/columns ordered m = j, j-1, ..., -j.
lalg::DenseMatrix wigner_small_d_matrix(int two_j, double beta);

/// <o_i| exp(-i beta J_y) |o_j> for a list of single-particle states. Entries
/// between different shells (or different j) are exactly zero.
lalg::DenseMatrix rotation_matrix(std::span<const ShellLabel> orbitals, double beta);

enum class Ladder { raise, lower };

struct LadderResult {
    double coefficient = 0.0;
    std::optional<AngMomLabel> label;  ///< empty when the state is annihilated

    bool annihilated() const noexcept { return !label.has_value(); }
};

/// J_+|j m> = sqrt((j-m)(j+m+1)) |j m+1>,  J_-|j m> = sqrt((j+m)(j-m+1)) |j m-1>.
LadderResult ladder_apply(Ladder direction, AngMomLabel state);

/// <j1 m1 j2 m2 | J M> by the Racah sum. Zero outside the triangle or when
/// M != m1 + m2; InvalidLabel for malformed labels.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// P_n^{(alpha, beta)}(x) by the three-term recurrence.
double jacobi_polynomial(int n, double alpha, double beta, double x);

/// 2F1(a, b; c; z) for a non-positive integer `a` (finite series). The scalar
/// type may be double or an exact rational type. Throws PoleInC when (c)_k
/// vanishes before the series terminates.
template <class T>
T hypergeom_2f1_terminating(int a, const T& b, const T& c, const T& z)
{
    if (a > 0) throw InvalidLabel("terminating 2F1 needs a non-positive integer first parameter");
    T sum = T(1);
    T term = T(1);
    for (int k = 0; k < -a; ++k) {
        const T ck = c + T(k);
        if (ck == T(0)) throw PoleInC("(c)_k vanishes before the 2F1 series terminates");
        term = term * (T(a + k) * (b + T(k))) / (ck * T(k + 1)) * z;
        sum = sum + term;
    }
    return sum;
}

/// Nodes strictly increasing; weights exclude any measure factor.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre_standard(std::size_t npoints);

/// Gauss-Legendre mapped affinely to [lo, hi].
QuadratureRule gauss_legendre(std::size_t npoints, double lo, double hi);

/// Gauss-Legendre on [0, pi] for beta integrals. The sin(beta) factor is the
/// caller's responsibility.
QuadratureRule gauss_legendre(std::size_t npoints);

} // namespace angproj::angmom
