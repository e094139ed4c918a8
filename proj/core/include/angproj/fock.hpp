// SPDX-License-Identifier: Apache-2.0
#pragma once

/// \file fock.hpp
/// Brute-force Fock-space oracle: explicit state vectors over all 2^N
/// occupation patterns, for N up to kMaxFockOrbitals.

#include "angproj/manybody.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace angproj::manybody::fock {

inline constexpr std::size_t kMaxFockOrbitals = 12;

/// Amplitudes indexed by occupation bit pattern. The basis state of a pattern
/// is c_{p1}^+ c_{p2}^+ ... |0> with p1 < p2 < ...
class FockState {
public:
    /// Zero vector. SizeLimitExceeded above kMaxFockOrbitals.
    explicit FockState(std::size_t n_orbitals);
    static FockState vacuum(std::size_t n_orbitals);

    std::size_t n_orbitals() const noexcept { return n_; }
    std::span<const double> amplitudes() const noexcept { return amp_; }
    double& operator[](std::uint32_t pattern) { return amp_[pattern]; }
    double operator[](std::uint32_t pattern) const { return amp_[pattern]; }

    FockState create(OrbitalId p) const;
    FockState annihilate(OrbitalId p) const;

    FockState& operator+=(const FockState& other);
    FockState& operator*=(double s);
    double dot(const FockState& other) const;

private:
    std::size_t n_;
    std::vector<double> amp_;
};

/// prod_m (sum_p u_{p, o_m} c_p^+) |0>, factors in list order.
FockState rotated_slater(const lalg::DenseMatrix& u, std::span<const OrbitalId> occupied);
FockState slater(std::size_t n_orbitals, std::span<const OrbitalId> occupied);

FockState apply_one_body(const OneBodyOperator& t, const FockState& psi);
FockState apply_two_body(const TwoBodyOperator& v, const FockState& psi);

struct Identity {};

/// c_{c1}^+ c_{c2}^+ ... c_{a1} c_{a2} ... as written (rightmost acts first).
struct ExcitationString {
    std::vector<OrbitalId> creators;
    std::vector<OrbitalId> annihilators;
};

struct Hamiltonian {
    OneBodyOperator t;
    TwoBodyOperator v;
};

using OperatorDescription =
    std::variant<Identity, ExcitationString, OneBodyOperator, TwoBodyOperator, Hamiltonian>;

FockState apply(const OperatorDescription& x, const FockState& psi);

/// <Phi| X U |Phi> by explicit vectors.
double fock_oracle(const SlaterState& phi, const OperatorDescription& x, const lalg::DenseMatrix& u);

/// c0 exp(sum_ki x(k,i) b_k^+ a_i) |Phi> summed to all orders.
FockState thouless_reconstruct(const SlaterState& phi, const ThoulessExpansion& t);

} // namespace angproj::manybody::fock
