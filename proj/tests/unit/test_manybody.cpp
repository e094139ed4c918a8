// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "angproj/errors.hpp"
#include "angproj/fock.hpp"
#include "angproj/manybody.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace angproj;
using manybody::Orbital;
using manybody::OrbitalId;
namespace fock = manybody::fock;

namespace {

lalg::DenseMatrix near_identity(fixtures::Rng& rng, std::size_t n, double eps)
{
    auto u = lalg::DenseMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) u(i, j) += eps * rng.uniform();
    return u;
}

// Restriction of v to elements with both creators occupied and both annihilators unoccupied.
manybody::TwoBodyOperator pair_excitation_part(const manybody::SlaterState& phi,
                                               const manybody::TwoBodyOperator& v)
{
    manybody::TwoBodyOperator out(v.n_basis());
    for (const auto& e : v.elements())
        if (phi.is_occupied(e.i) && phi.is_occupied(e.j) && !phi.is_occupied(e.k) && !phi.is_occupied(e.l))
            out.set(e.i, e.j, e.k, e.l, e.value);
    return out;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

} // namespace

TEST_SUITE("manybody")
{
    TEST_CASE("Slater state validation")
    {
        auto basis = fixtures::shell_basis({{0, 1}, {1, 3}});
        CHECK_THROWS_AS(manybody::SlaterState({}, {}), ModelInvalid);
        CHECK_THROWS_AS(manybody::SlaterState(basis, {0, 0}), ModelInvalid);
        CHECK_THROWS_AS(manybody::SlaterState(basis, {6}), ModelInvalid);
        auto gap = basis;
        gap[2].id = 7;
        CHECK_THROWS_AS(manybody::SlaterState(gap, {0}), ModelInvalid);
        auto bad = basis;
        bad[3].two_m = 2;
        CHECK_THROWS_AS(manybody::SlaterState(bad, {0}), ModelInvalid);

        const manybody::SlaterState phi(basis, {3, 0});
        CHECK(phi.n_particles() == 2);
        CHECK(phi.occupied_position(3) == 0);
        CHECK(phi.occupied_position(0) == 1);
        CHECK(phi.unoccupied() == std::vector<OrbitalId>{1, 2, 4, 5});
        CHECK(phi.unoccupied_position(4) == 2);
        CHECK_THROWS_AS(phi.occupied_position(1), BadIndex);
        CHECK_THROWS_AS(phi.unoccupied_position(0), BadIndex);
        CHECK(phi.total_two_m() == 1 + 1);
        CHECK(phi.basis()[3].occupied);
    }

    TEST_CASE("operators keep their symmetries")
    {
        CHECK_THROWS_AS(manybody::OneBodyOperator(lalg::DenseMatrix::from_rows({{1, 2}, {3, 4}})), ModelInvalid);
        manybody::OneBodyOperator t(3);
        t.set(0, 2, 1.5);
        CHECK(t(2, 0) == 1.5);

        manybody::TwoBodyOperator v(4);
        v.set(0, 1, 2, 3, 0.7);
        CHECK(v(0, 1, 2, 3) == 0.7);
        CHECK(v(1, 0, 2, 3) == -0.7);
        CHECK(v(0, 1, 3, 2) == -0.7);
        CHECK(v(1, 0, 3, 2) == 0.7);
        CHECK(v(2, 3, 0, 1) == 0.7);
        CHECK(v(3, 2, 0, 1) == -0.7);
        CHECK(v(0, 2, 1, 3) == 0.0);
        CHECK(v.elements().size() == 2);
        v.set(3, 2, 1, 0, 0.7);
        CHECK_THROWS_AS(v.set(2, 3, 0, 1, 0.8), ModelInvalid);
        CHECK_THROWS_AS(v.set(1, 1, 2, 3, 0.1), ModelInvalid);
        CHECK_NOTHROW(v.set(1, 1, 2, 3, 0.0));

        auto model = fixtures::two_shell_model();
        CHECK_NOTHROW(model.validate());
        model.one_body = manybody::OneBodyOperator(3);
        CHECK_THROWS_AS(model.validate(), ModelInvalid);
    }

    TEST_CASE("overlap of the two-shell state is a product of d functions")
    {
        const auto model = fixtures::two_shell_model();
        for (double beta : {0.0, 0.5, 1.9, 3.0}) {
            const auto s = manybody::overlap_kernel(model.state, beta);
            const double want = angmom::wigner_small_d(3, 1, 1, beta) * angmom::wigner_small_d(1, 1, 1, beta);
            CHECK(s.overlap == doctest::Approx(want).epsilon(1e-13).scale(1.0));
        }
        const auto mirror = manybody::overlap_kernel(model.state, -1.2);
        CHECK(mirror.overlap == doctest::Approx(manybody::overlap_kernel(model.state, 1.2).overlap));
    }

    TEST_CASE("beta zero limits")
    {
        const auto model = fixtures::two_shell_model();
        const auto s = manybody::overlap_kernel(model.state, 0.0);
        CHECK(s.overlap == 1.0);
        for (OrbitalId k : model.state.unoccupied())
            for (OrbitalId i : model.state.occupied()) CHECK(manybody::ph_amplitude(s, k, i) == 0.0);
        CHECK(manybody::two_ph_kernel(s, 1, 4, 0, 2) == 0.0);
        CHECK(manybody::lowdin_one_body(s, model.one_body) == doctest::Approx(1.25 - 0.5));
        CHECK(manybody::lowdin_two_body(s, model.two_body) ==
              doctest::Approx(model.two_body(1, 4, 1, 4)));
    }

    TEST_CASE("kernels agree with the Fock-space oracle on random models")
    {
        fixtures::Rng rng(20);
        double worst = 0.0;
        for (int trial = 0; trial < 12; ++trial) {
            const auto model = fixtures::random_model(rng, 10, static_cast<std::size_t>(rng.integer(2, 4)));
            const auto& phi = model.state;
            const std::size_t nb = phi.n_basis();
            const auto u = trial % 2 == 0 ? fixtures::random_matrix(rng, nb)
                                          : angmom::rotation_matrix(phi.shell_labels(), rng.uniform(0.1, 3.0));
            const auto s = manybody::transformation_kernel(phi, u);
            if (s.singular()) continue;

            const double ov = fock::fock_oracle(phi, fock::Identity{}, u);
            worst = std::max(worst, rel(s.overlap, ov));
            worst = std::max(worst, rel(manybody::lowdin_one_body(s, model.one_body),
                                        fock::fock_oracle(phi, model.one_body, u)));
            worst = std::max(worst, rel(manybody::lowdin_two_body(s, model.two_body),
                                        fock::fock_oracle(phi, model.two_body, u)));
            worst = std::max(worst, rel(manybody::pair_excitation_energy_kernel(s, model.two_body),
                                        fock::fock_oracle(phi, pair_excitation_part(phi, model.two_body), u)));

            const auto& occ = phi.occupied();
            const auto& unocc = phi.unoccupied();
            for (OrbitalId i : occ)
                for (OrbitalId k : unocc) {
                    const double want = fock::fock_oracle(phi, fock::ExcitationString{{i}, {k}}, u) / ov;
                    worst = std::max(worst, rel(manybody::ph_amplitude(s, k, i), want));
                }
            for (std::size_t a = 0; a < occ.size(); ++a)
                for (std::size_t b = a + 1; b < occ.size(); ++b)
                    for (std::size_t c = 0; c < unocc.size(); ++c)
                        for (std::size_t d = c + 1; d < unocc.size(); ++d) {
                            const OrbitalId i = occ[a], j = occ[b], k = unocc[c], l = unocc[d];
                            const double want =
                                fock::fock_oracle(phi, fock::ExcitationString{{i, j}, {l, k}}, u);
                            worst = std::max(worst, rel(manybody::two_ph_kernel(s, i, j, k, l), want));
                            worst = std::max(worst, rel(manybody::two_ph_kernel_direct(s, i, j, k, l), want));
                        }
        }
        CHECK(worst < 1e-9);
    }

    TEST_CASE("two particle-hole kernel is exactly antisymmetric")
    {
        fixtures::Rng rng(21);
        const auto model = fixtures::random_model(rng, 10, 3);
        const auto& occ = model.state.occupied();
        const auto& unocc = model.state.unoccupied();
        const auto s = manybody::transformation_kernel(model.state,
                                                       fixtures::random_matrix(rng, model.state.n_basis()));
        const double base = manybody::two_ph_kernel(s, occ[0], occ[1], unocc[0], unocc[1]);
        CHECK(manybody::two_ph_kernel(s, occ[1], occ[0], unocc[0], unocc[1]) == -base);
        CHECK(manybody::two_ph_kernel(s, occ[0], occ[1], unocc[1], unocc[0]) == -base);
        CHECK(manybody::two_ph_kernel(s, occ[1], occ[0], unocc[1], unocc[0]) == base);
        CHECK(manybody::two_ph_kernel(s, occ[0], occ[0], unocc[0], unocc[1]) == 0.0);
        CHECK_THROWS_AS(manybody::two_ph_kernel(s, unocc[0], occ[1], unocc[1], unocc[2]), BadIndex);
        CHECK_THROWS_AS(manybody::two_ph_kernel(s, occ[0], occ[1], occ[2], unocc[1]), BadIndex);
    }

    TEST_CASE("identity one-body operator counts particles")
    {
        fixtures::Rng rng(22);
        const auto model = fixtures::random_model(rng, 10, 4);
        const auto n = model.state.n_basis();
        const auto s = manybody::transformation_kernel(model.state, fixtures::random_matrix(rng, n));
        const manybody::OneBodyOperator one(lalg::DenseMatrix::identity(n));
        CHECK(manybody::lowdin_one_body(s, one) ==
              doctest::Approx(static_cast<double>(model.state.n_particles()) * s.overlap).epsilon(1e-12));
    }

    TEST_CASE("singular overlap still gives finite kernels")
    {
        auto basis = fixtures::shell_basis({{0, 1}, {1, 1}});
        const manybody::SlaterState phi(basis, {0, 2});
        const double beta = std::numbers::pi;
        const auto s = manybody::overlap_kernel(phi, beta);
        CHECK(s.singular());
        CHECK(s.overlap == doctest::Approx(0.0).scale(1.0));
        const auto u = s.transform;

        manybody::OneBodyOperator t(4);
        t.set(0, 1, 0.3);
        t.set(2, 3, -0.7);
        t.set(1, 1, 2.0);
        manybody::TwoBodyOperator v(4);
        v.set(0, 2, 1, 3, 0.45);
        v.set(0, 2, 0, 2, -1.1);
        v.set(1, 3, 1, 3, 0.8);
        CHECK(manybody::lowdin_one_body(s, t) == doctest::Approx(fock::fock_oracle(phi, t, u)).scale(1.0));
        CHECK(manybody::lowdin_two_body(s, v) == doctest::Approx(fock::fock_oracle(phi, v, u)).scale(1.0));
        const double want = fock::fock_oracle(phi, fock::ExcitationString{{0, 2}, {3, 1}}, u);
        CHECK(want != doctest::Approx(0.0).scale(1.0));
        CHECK(manybody::two_ph_kernel(s, 0, 2, 1, 3) == doctest::Approx(want));
        CHECK_THROWS_AS(manybody::ph_amplitude(s, 1, 0), SingularMatrix);
        CHECK_THROWS_AS(manybody::thouless_expand(phi, u), VanishingOverlap);
    }

    TEST_CASE("Thouless expansion rebuilds the transformed determinant")
    {
        fixtures::Rng rng(23);
        for (int trial = 0; trial < 4; ++trial) {
            const auto model = fixtures::random_model(rng, 9, 3);
            const auto& phi = model.state;
            const auto u = near_identity(rng, phi.n_basis(), trial < 2 ? 1e-3 : 0.4);
            const auto t = manybody::thouless_expand(phi, u);
            const auto s = manybody::transformation_kernel(phi, u);
            CHECK(t.c0 == doctest::Approx(s.overlap).epsilon(1e-13));
            for (std::size_t r = 0; r < t.unoccupied.size(); ++r)
                for (std::size_t p = 0; p < t.occupied.size(); ++p)
                    CHECK(t.x(r, p) == doctest::Approx(manybody::ph_amplitude(s, t.unoccupied[r], t.occupied[p])));
            const auto rebuilt = fock::thouless_reconstruct(phi, t);
            const auto direct = fock::rotated_slater(u, phi.occupied());
            for (std::size_t a = 0; a < direct.amplitudes().size(); ++a)
                CHECK(rebuilt.amplitudes()[a] == doctest::Approx(direct.amplitudes()[a]).epsilon(1e-10).scale(1.0));
        }
        const auto model = fixtures::two_shell_model();
        const auto t = manybody::thouless_expand(model.state, lalg::DenseMatrix::identity(6));
        CHECK(t.c0 == 1.0);
        for (std::size_t r = 0; r < t.unoccupied.size(); ++r)
            for (std::size_t p = 0; p < t.occupied.size(); ++p) CHECK(t.x(r, p) == 0.0);
    }

    TEST_CASE("Brillouin residuals and HF energy against explicit vectors")
    {
        fixtures::Rng rng(24);
        for (int trial = 0; trial < 5; ++trial) {
            const auto model = fixtures::random_model(rng, 10, 3);
            const auto& phi = model.state;
            const fock::Hamiltonian h{model.one_body, model.two_body};
            const auto psi = fock::slater(phi.n_basis(), phi.occupied());
            const auto report = manybody::brillouin_check(phi, model.one_body, model.two_body);
            CHECK(report.residuals.size() == phi.n_particles() * (phi.n_basis() - phi.n_particles()));
            double max_abs = 0.0;
            for (const auto& r : report.residuals) {
                const auto excited = psi.annihilate(r.hole).create(r.particle);
                const double want = psi.dot(fock::apply(h, excited));
                CHECK(r.value == doctest::Approx(want).epsilon(1e-12).scale(1.0));
                max_abs = std::max(max_abs, std::abs(r.value));
            }
            CHECK(report.max_abs == max_abs);
            CHECK(manybody::hf_energy(phi, model.one_body, model.two_body) ==
                  doctest::Approx(psi.dot(fock::apply(h, psi)) / psi.dot(psi)).epsilon(1e-12));
        }
    }

    TEST_CASE("restricted pair sum carries unit prefactor")
    {
        CHECK(manybody::kRestrictedPairSumPrefactor == 1.0);
        auto basis = fixtures::shell_basis({{0, 3}});
        const manybody::SlaterState phi(basis, {0, 1});
        manybody::TwoBodyOperator v(4);
        v.set(0, 1, 2, 3, 1.0);
        const auto u = angmom::rotation_matrix(phi.shell_labels(), 0.8);
        const auto s = manybody::transformation_kernel(phi, u);
        CHECK(manybody::pair_excitation_energy_kernel(s, v) ==
              doctest::Approx(fock::fock_oracle(phi, fock::ExcitationString{{0, 1}, {3, 2}}, u)));
    }

    TEST_CASE("Fock operators anticommute")
    {
        fixtures::Rng rng(25);
        fock::FockState psi(5);
        for (std::uint32_t p = 0; p < 32; ++p) psi[p] = rng.uniform();
        for (OrbitalId p = 0; p < 5; ++p)
            for (OrbitalId q = 0; q < 5; ++q) {
                auto sum = psi.create(q).annihilate(p);
                sum += psi.annihilate(p).create(q);
                for (std::uint32_t b = 0; b < 32; ++b)
                    CHECK(sum[b] == doctest::Approx(p == q ? psi[b] : 0.0).scale(1.0));
                auto cc = psi.create(q).create(p);
                cc += psi.create(p).create(q);
                CHECK(cc.dot(cc) == doctest::Approx(0.0).scale(1.0));
            }
        CHECK_THROWS_AS(fock::FockState(13), SizeLimitExceeded);
        CHECK_NOTHROW(fock::FockState(12));
        CHECK_THROWS_AS(psi.create(5), BadIndex);
    }
}
