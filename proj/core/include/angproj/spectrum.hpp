// SPDX-License-Identifier: Apache-2.0
#pragma once

/// \file spectrum.hpp
/// Projected energy spectrum of an axially symmetric Slater determinant.
///
///   n_J = Int_0^pi d^J_MM(beta) <Phi|R(beta)|Phi> sin(beta) dbeta
///   E_J = Int d^J_MM <Phi|H R|Phi> sin(beta) dbeta / n_J
///
/// The Brillouin route replaces <Phi|H R|Phi> by
///   E_HF <Phi|R|Phi> + sum_{i<j occ, k<l unocc} <ij|V~|kl> <Phi|a_i^+ a_j^+ b_l b_k R|Phi>
/// which holds when the Fock matrix has no particle-hole block.

#include "angproj/manybody.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace angproj::spectrum {

enum class Route { brillouin, lowdin, both };

std::string to_string(Route route);
/// InvalidLabel for anything other than "brillouin", "lowdin", "both".
Route parse_route(const std::string& text);

/// Default numerical settings.
struct Settings {
    std::size_t points = 48;
    std::size_t min_points = 8;
    double norm_relative = 1e-8;     ///< E_J only when n_J > norm_relative * max n_J
    double norm_absolute = 1e-10;    ///< ... and n_J > norm_absolute
    double brillouin_tolerance = 1e-10;
    double route_tolerance = 1e-8;
};

inline constexpr Settings kDefaultSettings{};

struct SpectrumRequest {
    manybody::Model model;
    int two_m = 0;
    std::vector<int> two_J;
    std::size_t points = kDefaultSettings.points;
    Route route = Route::both;
    Settings settings = kDefaultSettings;
};

/// Every 2J from |2M| to the sum of occupied 2j.
std::vector<int> allowed_two_J(const manybody::SlaterState& phi);

/// Request with two_m from the occupied orbitals; empty `two_J` means all allowed.
/// InvalidLabel for a 2J below |2M| or of the wrong parity; InvalidLabel when
/// points < settings.min_points.
SpectrumRequest make_request(manybody::Model model, std::vector<int> two_J = {},
                             std::size_t points = kDefaultSettings.points,
                             Route route = Route::both, Settings settings = kDefaultSettings);

void validate(const SpectrumRequest& request);

struct Level {
    int two_J = 0;
    double norm = 0.0;
    std::optional<double> energy_brillouin;
    std::optional<double> energy_lowdin;
};

struct SpectrumResult {
    std::vector<Level> levels;
    double brillouin_residual_max = 0.0;
    Route route = Route::both;
    std::vector<std::string> warnings;
};

std::vector<double> norm_kernel(const SpectrumRequest& request);

/// One factorization per beta node, shared by every J and both routes.
/// NormTooSmall when no requested J has a norm above threshold.
SpectrumResult compute_spectrum(const SpectrumRequest& request);

SpectrumResult energy_spectrum_brillouin(SpectrumRequest request);
SpectrumResult energy_spectrum_lowdin(SpectrumRequest request);

struct RouteComparison {
    std::vector<int> two_J;
    std::vector<double> delta;  ///< |E_brillouin - E_lowdin|, J with both energies only
    double max_delta = 0.0;
    double brillouin_residual_max = 0.0;
    bool stable = true;
    bool within_tolerance = true;
};

RouteComparison compare_routes(const SpectrumResult& result, const Settings& settings = kDefaultSettings);

} // namespace angproj::spectrum
