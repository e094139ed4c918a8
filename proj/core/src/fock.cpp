// SPDX-License-Identifier: Apache-2.0
#include "angproj/fock.hpp"

#include "angproj/errors.hpp"

#include <bit>
#include <string>

namespace angproj::manybody::fock {

namespace {

double sign_below(std::uint32_t pattern, OrbitalId p)
{
    const std::uint32_t below = pattern & ((std::uint32_t{1} << p) - 1u);
    return (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
}

} // namespace

FockState::FockState(std::size_t n_orbitals) : n_(n_orbitals)
{
    if (n_orbitals > kMaxFockOrbitals)
        throw SizeLimitExceeded("Fock oracle limited to " + std::to_string(kMaxFockOrbitals) +
                                " orbitals, got " + std::to_string(n_orbitals));
    amp_.assign(std::size_t{1} << n_orbitals, 0.0);
}

FockState FockState::vacuum(std::size_t n_orbitals)
{
    FockState s(n_orbitals);
    s.amp_[0] = 1.0;
    return s;
}

FockState FockState::create(OrbitalId p) const
{
    if (p >= n_) throw_bad_index("creation index out of range", static_cast<long>(p));
    FockState out(n_);
    const std::uint32_t bit = std::uint32_t{1} << p;
    for (std::uint32_t s = 0; s < amp_.size(); ++s)
        if (amp_[s] != 0.0 && !(s & bit)) out.amp_[s | bit] += sign_below(s, p) * amp_[s];
    return out;
}

FockState FockState::annihilate(OrbitalId p) const
{
    if (p >= n_) throw_bad_index("annihilation index out of range", static_cast<long>(p));
    FockState out(n_);
    const std::uint32_t bit = std::uint32_t{1} << p;
    for (std::uint32_t s = 0; s < amp_.size(); ++s)
        if (amp_[s] != 0.0 && (s & bit)) out.amp_[s & ~bit] += sign_below(s, p) * amp_[s];
    return out;
}

FockState& FockState::operator+=(const FockState& other)
{
    if (other.n_ != n_) throw DimensionMismatch("Fock states of different size");
    for (std::size_t s = 0; s < amp_.size(); ++s) amp_[s] += other.amp_[s];
    return *this;
}

FockState& FockState::operator*=(double f)
{
    for (double& a : amp_) a *= f;
    return *this;
}

double FockState::dot(const FockState& other) const
{
    if (other.n_ != n_) throw DimensionMismatch("Fock states of different size");
    double sum = 0.0;
    for (std::size_t s = 0; s < amp_.size(); ++s) sum += amp_[s] * other.amp_[s];
    return sum;
}

FockState rotated_slater(const lalg::DenseMatrix& u, std::span<const OrbitalId> occupied)
{
    const std::size_t n = u.rows();
    FockState psi = FockState::vacuum(n);
    for (auto it = occupied.rbegin(); it != occupied.rend(); ++it) {
        FockState next(n);
        for (std::size_t p = 0; p < n; ++p) {
            const double c = u(p, *it);
            if (c == 0.0) continue;
            FockState term = psi.create(p);
            term *= c;
            next += term;
        }
        psi = std::move(next);
    }
    return psi;
}

FockState slater(std::size_t n_orbitals, std::span<const OrbitalId> occupied)
{
    return rotated_slater(lalg::DenseMatrix::identity(n_orbitals), occupied);
}

FockState apply_one_body(const OneBodyOperator& t, const FockState& psi)
{
    const std::size_t n = psi.n_orbitals();
    FockState out(n);
    for (std::size_t q = 0; q < n; ++q) {
        const FockState aq = psi.annihilate(q);
        for (std::size_t p = 0; p < n; ++p) {
            if (t(p, q) == 0.0) continue;
            FockState term = aq.create(p);
            term *= t(p, q);
            out += term;
        }
    }
    return out;
}

FockState apply_two_body(const TwoBodyOperator& v, const FockState& psi)
{
    FockState out(psi.n_orbitals());
    for (const auto& e : v.elements()) {
        if (e.value == 0.0) continue;
        // c_i^+ c_j^+ c_l c_k
        FockState term = psi.annihilate(e.k).annihilate(e.l).create(e.j).create(e.i);
        term *= e.value;
        out += term;
    }
    return out;
}

FockState apply(const OperatorDescription& x, const FockState& psi)
{
    struct Visitor {
        const FockState& psi;
        FockState operator()(const Identity&) const { return psi; }
        FockState operator()(const ExcitationString& s) const
        {
            FockState r = psi;
            for (auto it = s.annihilators.rbegin(); it != s.annihilators.rend(); ++it)
                r = r.annihilate(*it);
            for (auto it = s.creators.rbegin(); it != s.creators.rend(); ++it) r = r.create(*it);
            return r;
        }
        FockState operator()(const OneBodyOperator& t) const { return apply_one_body(t, psi); }
        FockState operator()(const TwoBodyOperator& v) const { return apply_two_body(v, psi); }
        FockState operator()(const Hamiltonian& h) const
        {
            FockState r = apply_one_body(h.t, psi);
            r += apply_two_body(h.v, psi);
            return r;
        }
    };
    return std::visit(Visitor{psi}, x);
}

double fock_oracle(const SlaterState& phi, const OperatorDescription& x, const lalg::DenseMatrix& u)
{
    const FockState bra = slater(phi.n_basis(), phi.occupied());
    const FockState ket = rotated_slater(u, phi.occupied());
    return bra.dot(apply(x, ket));
}

FockState thouless_reconstruct(const SlaterState& phi, const ThoulessExpansion& t)
{
    const std::size_t n = phi.n_basis();
    FockState term = slater(n, phi.occupied());
    FockState sum = term;
    for (std::size_t order = 1; order <= t.occupied.size(); ++order) {
        FockState next(n);
        for (std::size_t k = 0; k < t.unoccupied.size(); ++k)
            for (std::size_t i = 0; i < t.occupied.size(); ++i) {
                const double x = t.x(k, i);
                if (x == 0.0) continue;
                FockState piece = term.annihilate(t.occupied[i]).create(t.unoccupied[k]);
                piece *= x;
                next += piece;
            }
        next *= 1.0 / static_cast<double>(order);
        term = std::move(next);
        sum += term;
    }
    sum *= t.c0;
    return sum;
}

} // namespace angproj::manybody::fock
