// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include "angproj/errors.hpp"
#include "angproj/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace angproj;

namespace {

const spectrum::Level& level_of(const spectrum::SpectrumResult& r, int two_J)
{
    for (const auto& l : r.levels)
        if (l.two_J == two_J) return l;
    throw std::runtime_error("missing level");
}

manybody::Model single_particle(int two_j, double eps)
{
    auto basis = fixtures::shell_basis({{0, two_j}});
    manybody::OneBodyOperator t(basis.size());
    for (const auto& o : basis) t.set(o.id, o.id, eps);
    manybody::SlaterState state(basis, {0});
    return {"single", std::move(state), std::move(t), manybody::TwoBodyOperator(basis.size())};
}

} // namespace

TEST_SUITE("spectrum")
{
    TEST_CASE("two-shell fixture")
    {
        const auto result = spectrum::compute_spectrum(spectrum::make_request(fixtures::two_shell_model()));
        REQUIRE(result.levels.size() == 2);
        CHECK(result.warnings.empty());
        CHECK(result.brillouin_residual_max < 1e-14);

        const auto& j1 = level_of(result, 2);
        const auto& j2 = level_of(result, 4);
        CHECK(j1.norm == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
        CHECK(j2.norm == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(j1.energy_brillouin.value() == doctest::Approx(-1.65).epsilon(1e-10));
        CHECK(j1.energy_lowdin.value() == doctest::Approx(-1.65).epsilon(1e-10));
        CHECK(j2.energy_brillouin.value() == doctest::Approx(0.75).epsilon(1e-10));
        CHECK(j2.energy_lowdin.value() == doctest::Approx(0.75).epsilon(1e-10));
    }

    TEST_CASE("fixture agrees with coupled-basis diagonalization")
    {
        const auto model = fixtures::two_shell_model();
        const auto result = spectrum::compute_spectrum(spectrum::make_request(model));
        for (int two_J : {2, 4}) {
            const auto& level = level_of(result, two_J);
            CHECK(level.energy_lowdin.value() ==
                  doctest::Approx(fixtures::cg_oracle_energy(model, 0, 1, two_J, 2)).epsilon(1e-10));
            const double weight = fixtures::cg_oracle_weight(3, 1, 1, 1, two_J);
            CHECK((two_J + 1) / 2.0 * level.norm == doctest::Approx(weight).epsilon(1e-12));
        }
    }

    TEST_CASE("single stretched particle")
    {
        for (int two_j : {1, 3, 5, 7}) {
            const auto result = spectrum::compute_spectrum(spectrum::make_request(single_particle(two_j, 0.4)));
            REQUIRE(result.levels.size() == 1);
            CHECK(result.levels[0].two_J == two_j);
            CHECK(result.levels[0].norm == doctest::Approx(2.0 / (two_j + 1)).epsilon(1e-12));
            CHECK(result.levels[0].energy_lowdin.value() == doctest::Approx(0.4));
        }
    }

    TEST_CASE("stretched two-particle state has a single J")
    {
        const auto request = spectrum::make_request(fixtures::stretched_model());
        CHECK(request.two_J == std::vector<int>{4});
        const auto result = spectrum::compute_spectrum(request);
        CHECK(result.levels[0].norm == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(result.levels[0].energy_lowdin.value() ==
              doctest::Approx(fixtures::cg_oracle_energy(fixtures::stretched_model(), 0, 1, 4, 4)).epsilon(1e-10));
    }

    TEST_CASE("norm kernel is complete")
    {
        fixtures::Rng rng(30);
        for (int trial = 0; trial < 4; ++trial) {
            const auto model = fixtures::random_model(rng, 12, 3);
            const auto request = spectrum::make_request(model, {}, 64, spectrum::Route::lowdin);
            const auto norms = spectrum::norm_kernel(request);
            double sum = 0.0;
            for (std::size_t a = 0; a < norms.size(); ++a) sum += (request.two_J[a] + 1) / 2.0 * norms[a];
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    TEST_CASE("simple Hamiltonians")
    {
        auto model = fixtures::two_shell_model();
        const double e_hf = manybody::hf_energy(model.state, model.one_body, model.two_body);
        CHECK(e_hf == doctest::Approx(0.15));

        auto free = model;
        free.two_body = manybody::TwoBodyOperator(6);
        for (const auto& l : spectrum::compute_spectrum(spectrum::make_request(free)).levels) {
            CHECK(l.energy_lowdin.value() == doctest::Approx(0.75));
            CHECK(l.energy_brillouin.value() == doctest::Approx(0.75));
        }

        auto flat = free;
        flat.one_body = manybody::OneBodyOperator(lalg::DenseMatrix::identity(6));
        for (const auto& l : spectrum::compute_spectrum(spectrum::make_request(flat)).levels)
            CHECK(l.energy_lowdin.value() == doctest::Approx(2.0));

        const auto base = spectrum::compute_spectrum(spectrum::make_request(model));
        auto shifted = model;
        for (std::size_t p = 0; p < 6; ++p) shifted.one_body.set(p, p, model.one_body(p, p) + 0.3);
        const auto moved = spectrum::compute_spectrum(spectrum::make_request(shifted));
        for (std::size_t a = 0; a < base.levels.size(); ++a) {
            CHECK(moved.levels[a].energy_lowdin.value() ==
                  doctest::Approx(base.levels[a].energy_lowdin.value() + 0.6).epsilon(1e-10));
            CHECK(moved.levels[a].energy_brillouin.value() ==
                  doctest::Approx(base.levels[a].energy_brillouin.value() + 0.6).epsilon(1e-10));
        }
    }

    TEST_CASE("quadrature convergence")
    {
        const auto model = fixtures::two_shell_model();
        const auto coarse = spectrum::compute_spectrum(spectrum::make_request(model, {}, 32));
        const auto fine = spectrum::compute_spectrum(spectrum::make_request(model, {}, 64));
        for (std::size_t a = 0; a < coarse.levels.size(); ++a) {
            CHECK(coarse.levels[a].norm == doctest::Approx(fine.levels[a].norm).epsilon(1e-12));
            CHECK(coarse.levels[a].energy_lowdin.value() ==
                  doctest::Approx(fine.levels[a].energy_lowdin.value()).epsilon(1e-10));
        }
    }

    TEST_CASE("routes share the norm kernel and flag unstable references")
    {
        fixtures::Rng rng(31);
        const auto model = fixtures::random_model(rng, 10, 3);
        const auto request = spectrum::make_request(model, {}, 48, spectrum::Route::both);
        const auto b = spectrum::energy_spectrum_brillouin(request);
        const auto l = spectrum::energy_spectrum_lowdin(request);
        const auto both = spectrum::compute_spectrum(request);
        REQUIRE(b.levels.size() == l.levels.size());
        for (std::size_t a = 0; a < b.levels.size(); ++a) {
            CHECK(b.levels[a].norm == l.levels[a].norm);
            CHECK(both.levels[a].norm == l.levels[a].norm);
            CHECK_FALSE(b.levels[a].energy_lowdin.has_value());
            CHECK_FALSE(l.levels[a].energy_brillouin.has_value());
        }
        CHECK(b.brillouin_residual_max > 1e-6);
        CHECK_FALSE(b.warnings.empty());
        CHECK(l.warnings.empty());
        const auto cmp = spectrum::compare_routes(both);
        CHECK_FALSE(cmp.stable);
    }

    TEST_CASE("request validation")
    {
        CHECK(spectrum::parse_route("lowdin") == spectrum::Route::lowdin);
        CHECK(spectrum::to_string(spectrum::Route::both) == "both");
        CHECK_THROWS_AS(spectrum::parse_route("exact"), InvalidLabel);
        const auto model = fixtures::two_shell_model();
        CHECK_THROWS_AS(spectrum::make_request(model, {3}), InvalidLabel);
        CHECK_THROWS_AS(spectrum::make_request(model, {0}), InvalidLabel);
        CHECK_THROWS_AS(spectrum::make_request(model, {}, 4), InvalidLabel);
        CHECK(spectrum::allowed_two_J(model.state) == std::vector<int>{2, 4});
    }

    TEST_CASE("absent components")
    {
        const auto model = fixtures::stretched_model();
        CHECK_THROWS_AS(spectrum::compute_spectrum(spectrum::make_request(model, {6})), NormTooSmall);
        const auto mixed = spectrum::compute_spectrum(spectrum::make_request(model, {4, 6}));
        CHECK(mixed.levels[0].energy_lowdin.has_value());
        CHECK_FALSE(mixed.levels[1].energy_lowdin.has_value());
        CHECK_FALSE(mixed.levels[1].energy_brillouin.has_value());
    }
}
