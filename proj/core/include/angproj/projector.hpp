// SPDX-License-Identifier: Apache-2.0
#pragma once

/// \file projector.hpp
/// Infinitesimal projection operators built from ladder-operator series.
///
/// Harmonic oscillator:
///     p_n = (1/n!) sum_i gamma_i (a^+)^{n+i} a^{n+i},   gamma_0 = 1
/// with gamma fixed by requiring p_n |n+j> = 0 for j >= 1.
///
/// Angular momentum (axial states of fixed m):
///     P_jm = (2j+1)(j+m)!/(j-m)! sum_r (-1)^r J_-^{j-m+r} J_+^{j-m+r} / (r! (2j+r+1)!)
///
/// and its disk-integral form
///     P_jm = (2j+1)/pi * Int_{|z|<1} P^{(0,2m)}_{j-m}(1-2|z|^2) (1-|z|^2)^{2m}
///                                     exp(-conj(z) J_-) exp(z J_+) dx dy.

#include "angproj/angmom.hpp"
#include "angproj/lalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace angproj::projector {

/// Oscillator state sum_n C_n |n>, n = 0..n_max.
struct FockVector {
    std::vector<double> coefficients;

    int n_max() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
};

/// Axial state sum_j C_j |j m> for fixed m; slot t holds 2j = |2m| + 2t.
class AxialStateVector {
public:
    AxialStateVector(int two_m, int two_j_max);
    AxialStateVector(int two_m, int two_j_max, std::vector<double> coefficients);

    int two_m() const noexcept { return two_m_; }
    int two_j_max() const noexcept { return two_j_max_; }
    std::size_t size() const noexcept { return coefficients_.size(); }

    int two_j_at(std::size_t slot) const noexcept;
    /// Throws LabelMismatch if two_j is not representable.
    std::size_t slot_of(int two_j) const;

    double& operator[](std::size_t slot) { return coefficients_[slot]; }
    double operator[](std::size_t slot) const { return coefficients_[slot]; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }

    /// Unit vector |j m>.
    static AxialStateVector basis(int two_m, int two_j_max, int two_j);

private:
    int two_m_;
    int two_j_max_;
    std::vector<double> coefficients_;
};

struct GammaSeries {
    int two_j = 0;   ///< oscillator: 2n; angular momentum: 2j
    int two_m = 0;   ///< zero for the oscillator
    std::vector<double> gamma;  ///< gamma[0] == 1
};

/// Forward substitution of sum_{i=0}^{j} gamma_i (n+j)!/(j-i)! = 0, j = 1..r_max,
/// with gamma_0 = 1. Row coefficients are built by running products, never as
/// bare factorials. Usable with an exact rational scalar.
template <class T>
std::vector<T> ho_gamma_solve(int n, int r_max)
{
    std::vector<T> gamma(static_cast<std::size_t>(r_max) + 1, T(0));
    gamma[0] = T(1);
    T diag = T(1);  // (n+j)!/0!
    for (int f = 2; f <= n; ++f) diag = diag * T(f);
    for (int j = 1; j <= r_max; ++j) {
        diag = diag * T(n + j);
        T coef = diag;  // (n+j)!/(j-i)! for i = j, j-1, ...
        T acc = T(0);
        for (int i = j - 1; i >= 0; --i) {
            coef = coef / T(j - i);
            acc = acc + gamma[static_cast<std::size_t>(i)] * coef;
        }
        gamma[static_cast<std::size_t>(j)] = -acc / diag;
    }
    return gamma;
}

GammaSeries ho_gamma_triangular_solve(int n, int r_max);

/// a|n> = sqrt(n)|n-1>, a^+|n> = sqrt(n+1)|n+1> (the top level is dropped).
FockVector apply_annihilation(const FockVector& phi);
FockVector apply_creation(const FockVector& phi);

/// p_n |phi> = C_n |n>, evaluated as an operator series. LevelOutOfRange when n > n_max.
FockVector ho_projector_apply(int n, const FockVector& phi);

/// (-1)^r (2j+1)! / (r! (2j+r+1)!)
double lowdin_gamma(int two_j, int r);

/// <l m| J_-^k J_+^k |l m> applied through ladder_apply; zero once J_+^k annihilates.
double ladder_diagonal(int two_l, int two_m, int k);

/// Scalar by which P_jm multiplies |l m>: 1 for l == j, 0 otherwise (up to roundoff).
double lowdin_series_diagonal(int two_j, int two_m, int two_l);

/// Same series with gamma_r replaced by gamma_r z^r.
double lowdin_series_polynomial(int two_j, int two_m, int two_l, double z);

/// P_jm |phi>. LabelMismatch when phi.two_m() != two_m or two_j is out of range.
AxialStateVector lowdin_apply(int two_j, int two_m, const AxialStateVector& phi);

/// Matrix of P_jm on the slots of an axial state vector (two_m fixed).
lalg::DenseMatrix lowdin_projector_matrix(int two_j, int two_m, int two_j_max);

/// All |l m'> with 2l = 2m (mod 2), l <= j_max, m' = l, l-1, ..., -l.
std::vector<angmom::AngMomLabel> truncated_space(int two_m, int two_j_max);

/// Series P_jm as a matrix on truncated_space(two_m, two_j_max).
lalg::DenseMatrix series_projector_full(int two_j, int two_m, int two_j_max);

struct IntegralProjector {
    std::vector<angmom::AngMomLabel> states;
    lalg::DenseMatrix matrix;   ///< real part of the disk integral
    double max_imag = 0.0;      ///< largest |imaginary part| after integration
};

/// Disk integral on truncated_space(two_m, two_j_max): Gauss-Legendre in
/// t = |z|^2 on [0, 1] and the trapezoid rule in the phase of z. Requires two_m >= 0.
/// TruncationTooSmall when two_j_max < two_j. No normalization constant applied.
/// The integrand is exp(s conj(z) J_-) exp(z J_+) with s = lowering_sign.
IntegralProjector integral_projector_matrix(int two_j, int two_m, int two_j_max,
                                            std::size_t radial_points, std::size_t angular_points,
                                            double lowering_sign = -1.0);

struct IntegralComparison {
    double normalization = 0.0;  ///< c with c * integral ~ series
    double max_deviation = 0.0;  ///< max |c * integral - series|
    double max_imag = 0.0;
};

IntegralComparison compare_integral_to_series(int two_j, int two_m, int two_j_max,
                                              std::size_t radial_points,
                                              std::size_t angular_points);

/// Int_0^1 t^i/(i!)^2 (1-t)^{2m} P^{(0,2m)}_{j-m}(1-2t) dt by Gauss-Legendre.
double radial_moment(int two_j, int two_m, int i, std::size_t points);

/// Closed form of radial_moment for i = j - m + r:
/// (-1)^{j-m} (j+m)! / ((j-m)! r! (2j+r+1)!).
double radial_moment_exact(int two_j, int two_m, int r);

} // namespace angproj::projector
