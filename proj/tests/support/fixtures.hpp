// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared models, random generators and oracles for the test binaries.

#include "angproj/angmom.hpp"
#include "angproj/fock.hpp"
#include "angproj/manybody.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace angproj;
using manybody::Orbital;
using manybody::OrbitalId;

inline std::uint64_t seed()
{
    if (const char* s = std::getenv("PROJECT_SEED")) return std::strtoull(s, nullptr, 10);
    return 20240917u;
}

class Rng {
public:
    explicit Rng(std::uint64_t salt = 0) : engine_(seed() ^ (salt * 0x9E3779B97F4A7C15ull)) {}

    double uniform(double lo = -1.0, double hi = 1.0)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

struct ShellSpec {
    int shell;
    int two_j;
};

inline std::vector<Orbital> shell_basis(const std::vector<ShellSpec>& shells)
{
    std::vector<Orbital> basis;
    for (const auto& s : shells)
        for (int two_m = s.two_j; two_m >= -s.two_j; two_m -= 2)
            basis.push_back({basis.size(), s.shell, s.two_j, two_m, false});
    return basis;
}

inline OrbitalId find_orbital(const std::vector<Orbital>& basis, int shell, int two_m)
{
    for (const auto& o : basis)
        if (o.shell == shell && o.two_m == two_m) return o.id;
    throw std::runtime_error("no such orbital");
}

inline lalg::DenseMatrix random_matrix(Rng& rng, std::size_t n)
{
    lalg::DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform();
    return m;
}

inline manybody::OneBodyOperator random_one_body(Rng& rng, std::size_t n)
{
    manybody::OneBodyOperator t(n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p; q < n; ++q) t.set(p, q, rng.uniform());
    return t;
}

inline manybody::TwoBodyOperator random_two_body(Rng& rng, std::size_t n)
{
    manybody::TwoBodyOperator v(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if (std::make_pair(i, j) <= std::make_pair(k, l)) v.set(i, j, k, l, rng.uniform());
    return v;
}

// Random shells (2j in {1, 3, 5}) filling at most n_max orbitals, then a random
// occupied list of the requested size (in random order).
inline manybody::Model random_model(Rng& rng, std::size_t n_max, std::size_t particles)
{
    std::vector<ShellSpec> shells;
    std::size_t total = 0;
    int shell = 0;
    while (true) {
        const int two_j = 2 * rng.integer(0, 2) + 1;
        if (total + static_cast<std::size_t>(two_j + 1) > n_max) break;
        shells.push_back({shell++, two_j});
        total += static_cast<std::size_t>(two_j + 1);
    }
    if (shells.empty()) shells.push_back({0, 1}), total = 2;
    auto basis = shell_basis(shells);
    std::vector<OrbitalId> ids(basis.size());
    for (std::size_t a = 0; a < ids.size(); ++a) ids[a] = a;
    std::shuffle(ids.begin(), ids.end(), rng.engine());
    ids.resize(std::min(particles, ids.size() - 1));
    manybody::SlaterState state(std::move(basis), ids);
    const std::size_t n = state.n_basis();
    return {"random", std::move(state), random_one_body(rng, n), random_two_body(rng, n)};
}

// V = sum_J g_J sum_M P^+_JM P_JM with P^+_JM = sum_ij <j_i m_i j_j m_j|J M> c_i^+ c_j^+.
// Rotationally invariant by construction.
inline manybody::TwoBodyOperator pair_interaction(const std::vector<Orbital>& basis,
                                                  const std::map<int, double>& g_by_two_J)
{
    const std::size_t n = basis.size();
    auto w = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        const auto &a = basis[i], &b = basis[j], &c = basis[k], &d = basis[l];
        const int two_M = a.two_m + b.two_m;
        if (c.two_m + d.two_m != two_M) return 0.0;
        double sum = 0.0;
        for (const auto& [two_J, g] : g_by_two_J) {
            if (std::abs(two_M) > two_J) continue;
            sum += g * angmom::clebsch_gordan(a.two_j, a.two_m, b.two_j, b.two_m, two_J, two_M) *
                   angmom::clebsch_gordan(c.two_j, c.two_m, d.two_j, d.two_m, two_J, two_M);
        }
        return sum;
    };
    manybody::TwoBodyOperator v(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
                    const double value = w(i, j, k, l) - w(j, i, k, l) - w(i, j, l, k) + w(j, i, l, k);
                    if (value != 0.0) v.set(i, j, k, l, value);
                }
    return v;
}

inline const std::map<int, double>& pair_strengths()
{
    static const std::map<int, double> g{{0, -1.0}, {2, -0.6}, {4, 0.35}, {6, 0.2}};
    return g;
}

// j=3/2 shell (ids 0..3, m = 3/2..-3/2) and j=1/2 shell (ids 4, 5); occupied
// (3/2, 1/2) and (1/2, 1/2), so M = 1.
inline manybody::Model two_shell_model()
{
    auto basis = shell_basis({{0, 3}, {1, 1}});
    const std::size_t n = basis.size();
    manybody::OneBodyOperator t(n);
    for (const auto& o : basis) t.set(o.id, o.id, o.shell == 0 ? 1.25 : -0.5);
    auto v = pair_interaction(basis, pair_strengths());
    manybody::SlaterState state(basis, {find_orbital(basis, 0, 1), find_orbital(basis, 1, 1)});
    return {"two_shell_M1", std::move(state), std::move(t), std::move(v)};
}

// Same shells with occupied (3/2, 3/2) and (1/2, 1/2): M = 2, only J = 2.
inline manybody::Model stretched_model()
{
    auto m = two_shell_model();
    auto basis = m.state.basis();
    manybody::SlaterState state(basis, {find_orbital(basis, 0, 3), find_orbital(basis, 1, 1)});
    return {"stretched_M2", std::move(state), m.one_body, m.two_body};
}

// |J M> built from one orbital of each of two distinct shells, in the Fock basis.
inline manybody::fock::FockState coupled_pair(const std::vector<Orbital>& basis, int shell_a, int shell_b,
                                              int two_J, int two_M)
{
    manybody::fock::FockState psi(basis.size());
    for (const auto& a : basis) {
        if (a.shell != shell_a) continue;
        for (const auto& b : basis) {
            if (b.shell != shell_b || a.two_m + b.two_m != two_M) continue;
            const double cg = angmom::clebsch_gordan(a.two_j, a.two_m, b.two_j, b.two_m, two_J, two_M);
            if (cg == 0.0) continue;
            auto term = manybody::fock::FockState::vacuum(basis.size()).create(b.id).create(a.id);
            term *= cg;
            psi += term;
        }
    }
    return psi;
}

// <J M|H|J M> with |J M> normalized.
inline double cg_oracle_energy(const manybody::Model& model, int shell_a, int shell_b, int two_J, int two_M)
{
    const auto psi = coupled_pair(model.state.basis(), shell_a, shell_b, two_J, two_M);
    const auto h = manybody::fock::apply(manybody::fock::Hamiltonian{model.one_body, model.two_body}, psi);
    return psi.dot(h) / psi.dot(psi);
}

// Squared amplitude of |J M> in |Phi>, with the pair in state order (a, b).
inline double cg_oracle_weight(int two_ja, int two_ma, int two_jb, int two_mb, int two_J)
{
    const double c = angmom::clebsch_gordan(two_ja, two_ma, two_jb, two_mb, two_J, two_ma + two_mb);
    return c * c;
}

} // namespace fixtures
