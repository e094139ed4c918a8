// SPDX-License-Identifier: Apache-2.0
#pragma once

/// \file manybody.hpp
/// Slater determinants in second quantization and their rotation kernels.
///
/// Conventions
///   |Phi> = a_1^+ a_2^+ ... a_n^+ |0>  (occupied orbitals in list order)
///   H = sum_pq T_pq c_p^+ c_q + 1/4 sum_pqrs <pq|V~|rs> c_p^+ c_q^+ c_s c_r
///   A_ij = <a_i|R|a_j> (occupied block of the one-body transformation R)
///
/// The generalized Cramer rule enters through the system sum_j a_j x(k,j) = b_k
/// where the vector a_j is row j of A and (b_k)_m = <b_k|R|a_m>; hence
///   x(k,i) = sum_j <b_k|R|a_j> (A^-1)_ji = <Phi|a_i^+ b_k R|Phi> / <Phi|R|Phi>.

#include "angproj/angmom.hpp"
#include "angproj/lalg.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace angproj::manybody {

using OrbitalId = std::size_t;

/// Sum over i<j, k<l of <ij|V~|kl> K_ij^kl carries prefactor 1 (1/4 for the
/// unrestricted sum over all i, j, k, l). Checked against the Fock-space oracle.
inline constexpr double kRestrictedPairSumPrefactor = 1.0;

struct Orbital {
    OrbitalId id = 0;  ///< dense, 0-based
    int shell = 0;
    int two_j = 0;
    int two_m = 0;
    bool occupied = false;

    angmom::ShellLabel shell_label() const noexcept { return {shell, two_j, two_m}; }
    friend bool operator==(const Orbital&, const Orbital&) = default;
};

/// A Slater determinant over an orthonormal single-particle basis.
class SlaterState {
public:
    /// Validates labels, dense ids and the occupied list (ModelInvalid). The
    /// `occupied` flags of `basis` are overwritten from `occupied`.
    SlaterState(std::vector<Orbital> basis, std::vector<OrbitalId> occupied);

    std::size_t n_basis() const noexcept { return basis_.size(); }
    std::size_t n_particles() const noexcept { return occupied_.size(); }

    const std::vector<Orbital>& basis() const noexcept { return basis_; }
    const std::vector<OrbitalId>& occupied() const noexcept { return occupied_; }
    const std::vector<OrbitalId>& unoccupied() const noexcept { return unoccupied_; }

    bool is_occupied(OrbitalId id) const;
    /// Position of `id` in the occupied list (BadIndex if unoccupied).
    std::size_t occupied_position(OrbitalId id) const;
    /// Position of `id` among the unoccupied orbitals (BadIndex if occupied).
    std::size_t unoccupied_position(OrbitalId id) const;

    std::vector<angmom::ShellLabel> shell_labels() const;
    /// Sum of occupied 2m.
    int total_two_m() const noexcept;

    friend bool operator==(const SlaterState&, const SlaterState&) = default;

private:
    std::vector<Orbital> basis_;
    std::vector<OrbitalId> occupied_;
    std::vector<OrbitalId> unoccupied_;
    std::vector<long> position_;  ///< occupied: position; unoccupied: -(position + 1)
};

/// Real symmetric one-body operator <c_p|T|c_q>.
class OneBodyOperator {
public:
    explicit OneBodyOperator(std::size_t n_basis);
    /// ModelInvalid when `matrix` is not symmetric to 1e-12 relative.
    explicit OneBodyOperator(lalg::DenseMatrix matrix);

    std::size_t n_basis() const noexcept { return matrix_.rows(); }
    double operator()(std::size_t p, std::size_t q) const { return matrix_(p, q); }
    /// Sets both (p,q) and (q,p).
    void set(std::size_t p, std::size_t q, double value);
    const lalg::DenseMatrix& matrix() const noexcept { return matrix_; }

    friend bool operator==(const OneBodyOperator&, const OneBodyOperator&) = default;

private:
    lalg::DenseMatrix matrix_;
};

/// Antisymmetrized two-body elements <ij|V~|kl>, stored once per canonical
/// key (i<j, k<l). Hermitian partners are stored explicitly.
class TwoBodyOperator {
public:
    struct Element {
        OrbitalId i, j, k, l;  ///< i < j, k < l
        double value;
    };

    explicit TwoBodyOperator(std::size_t n_basis);

    std::size_t n_basis() const noexcept { return n_basis_; }

    /// Adds the element together with its antisymmetry and hermiticity images.
    /// ModelInvalid on repeated indices with a nonzero value, or on a key that
    /// was already set to a different value.
    void set(OrbitalId i, OrbitalId j, OrbitalId k, OrbitalId l, double value);

    /// <ij|V~|kl> for arbitrary index order.
    double operator()(OrbitalId i, OrbitalId j, OrbitalId k, OrbitalId l) const;

    /// All stored elements in canonical key order (both Hermitian partners).
    std::vector<Element> elements() const;
    bool empty() const noexcept { return table_.empty(); }

    friend bool operator==(const TwoBodyOperator&, const TwoBodyOperator&) = default;

private:
    using Key = std::tuple<OrbitalId, OrbitalId, OrbitalId, OrbitalId>;
    void store(const Key& key, double value);

    std::size_t n_basis_;
    std::map<Key, double> table_;
};

/// Everything derived from one factorization of the occupied block at one beta.
struct RotationKernelSample {
    double beta = 0.0;
    double overlap = 0.0;                 ///< det A; exactly 0 when vanishing
    lalg::DenseMatrix transform;          ///< full <c_p|R|c_q>
    lalg::DenseMatrix occupied_block;     ///< A
    lalg::LUDecomposition lu;             ///< of A^T (columns are the vectors a_j)
    std::optional<lalg::SolutionTable> ph_table;  ///< x(k,i), rows follow unoccupied()
    std::vector<OrbitalId> occupied;
    std::vector<OrbitalId> unoccupied;
    bool vanishing = false;  ///< some pivot below kSingularPivotRelTol * max|transform|
    std::vector<long> position;  ///< by orbital id: occupied p, unoccupied -(p + 1)

    bool singular() const noexcept { return vanishing; }
};

/// Kernel sample for exp(-i beta J_y).
RotationKernelSample overlap_kernel(const SlaterState& phi, double beta);

/// Kernel sample for an arbitrary one-body transformation u (N_basis square).
RotationKernelSample transformation_kernel(const SlaterState& phi, const lalg::DenseMatrix& u,
                                           double beta_tag = 0.0);

/// <Phi| a_i^+ a_j^+ b_l b_k R |Phi>: A with rows i, j replaced by the rows of
/// b_k, b_l. Evaluated as overlap * 2x2 minor of x; by direct determinant when
/// the factorization is singular. BadIndex on occupancy violations.
double two_ph_kernel(const RotationKernelSample& sample, OrbitalId i, OrbitalId j, OrbitalId k,
                     OrbitalId l);

/// Same kernel from a fresh factorization of the replaced n x n matrix.
double two_ph_kernel_direct(const RotationKernelSample& sample, OrbitalId i, OrbitalId j,
                            OrbitalId k, OrbitalId l);

/// x(k,i) for any orbital k and occupied i.
double ph_amplitude(const RotationKernelSample& sample, OrbitalId k, OrbitalId i);

/// det(A) A^{-1} of the occupied block, finite at singular points.
lalg::DenseMatrix kernel_adjugate(const RotationKernelSample& sample);

/// <Phi|T R|Phi> = sum_ij <a_i|T R|a_j> adj(A)_ji
double lowdin_one_body(const RotationKernelSample& sample, const OneBodyOperator& t);

/// <Phi|V R|Phi> = 1/4 sum_ijkl <a_i a_j|V~ R|a_k a_l> det(A) det[A^-1_{ki} A^-1_{kj}; A^-1_{li} A^-1_{lj}]
double lowdin_two_body(const RotationKernelSample& sample, const TwoBodyOperator& v);

/// sum_{i<j occ, k<l unocc} <ij|V~|kl> <Phi|a_i^+ a_j^+ b_l b_k R|Phi>
double pair_excitation_energy_kernel(const RotationKernelSample& sample, const TwoBodyOperator& v);

struct ThoulessExpansion {
    double c0 = 0.0;                    ///< <Phi|U|Phi>
    lalg::SolutionTable x;              ///< rows: unoccupied, columns: occupied positions
    std::vector<OrbitalId> occupied;
    std::vector<OrbitalId> unoccupied;
};

/// U|Phi> = c0 exp(sum x(k,i) b_k^+ a_i)|Phi>. VanishingOverlap when the
/// occupied block of u is singular.
ThoulessExpansion thouless_expand(const SlaterState& phi, const lalg::DenseMatrix& u);

struct BrillouinResidual {
    OrbitalId hole;      ///< occupied i
    OrbitalId particle;  ///< unoccupied k
    double value;        ///< <Phi|H b_k^+ a_i|Phi>
};

struct BrillouinReport {
    std::vector<BrillouinResidual> residuals;
    double max_abs = 0.0;

    bool stable(double tol = 1e-10) const noexcept { return max_abs < tol; }
};

/// Fock-matrix elements T_ik + sum_j <ij|V~|kj> for every hole/particle pair.
BrillouinReport brillouin_check(const SlaterState& phi, const OneBodyOperator& t,
                                const TwoBodyOperator& v);

/// sum_occ T_ii + 1/2 sum_{i,j occ} <ij|V~|ij>
double hf_energy(const SlaterState& phi, const OneBodyOperator& t, const TwoBodyOperator& v);

/// Model bundle used by the spectrum driver and the CLI.
struct Model {
    std::string name;
    SlaterState state;
    OneBodyOperator one_body;
    TwoBodyOperator two_body;

    /// ModelInvalid when the operator dimensions differ from the basis.
    void validate() const;
    friend bool operator==(const Model&, const Model&) = default;
};

} // namespace angproj::manybody
