// SPDX-License-Identifier: Apache-2.0
#include "angproj/spectrum.hpp"

#include "angproj/angmom.hpp"
#include "angproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace angproj::spectrum {

std::string to_string(Route route)
{
    switch (route) {
    case Route::brillouin: return "brillouin";
    case Route::lowdin: return "lowdin";
    case Route::both: return "both";
    }
    return "both";
}

Route parse_route(const std::string& text)
{
    if (text == "brillouin") return Route::brillouin;
    if (text == "lowdin") return Route::lowdin;
    if (text == "both") return Route::both;
    throw InvalidLabel("unknown route '" + text + "'");
}

std::vector<int> allowed_two_J(const manybody::SlaterState& phi)
{
    int top = 0;
    for (auto id : phi.occupied()) top += phi.basis()[id].two_j;
    std::vector<int> out;
    for (int two_J = std::abs(phi.total_two_m()); two_J <= top; two_J += 2) out.push_back(two_J);
    return out;
}

void validate(const SpectrumRequest& request)
{
    request.model.validate();
    if (request.points < request.settings.min_points)
        throw InvalidLabel("at least " + std::to_string(request.settings.min_points) +
                           " quadrature points required");
    if (request.two_J.empty()) throw InvalidLabel("no J values requested");
    for (int two_J : request.two_J)
        if (!angmom::AngMomLabel{two_J, request.two_m}.valid())
            throw InvalidLabel("2J=" + std::to_string(two_J) + " incompatible with 2M=" +
                               std::to_string(request.two_m));
}

SpectrumRequest make_request(manybody::Model model, std::vector<int> two_J, std::size_t points,
                             Route route, Settings settings)
{
    const int two_m = model.state.total_two_m();
    if (two_J.empty()) two_J = allowed_two_J(model.state);
    SpectrumRequest request{std::move(model), two_m, std::move(two_J), points, route, settings};
    validate(request);
    return request;
}

namespace {

struct Accumulator {
    std::vector<double> norm;
    std::vector<double> brillouin;
    std::vector<double> lowdin;
    double residual = 0.0;
};

Accumulator integrate(const SpectrumRequest& request, bool want_brillouin, bool want_lowdin)
{
    validate(request);
    const auto& model = request.model;
    const std::size_t nj = request.two_J.size();
    Accumulator acc{std::vector<double>(nj, 0.0), std::vector<double>(nj, 0.0),
                    std::vector<double>(nj, 0.0), 0.0};

    double e_hf = 0.0;
    if (want_brillouin) {
        e_hf = manybody::hf_energy(model.state, model.one_body, model.two_body);
        acc.residual = manybody::brillouin_check(model.state, model.one_body, model.two_body).max_abs;
    }

    const auto rule = angmom::gauss_legendre(request.points);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double beta = rule.nodes[q];
        const double w = rule.weights[q] * std::sin(beta);
        const auto sample = manybody::overlap_kernel(model.state, beta);

        double h_brillouin = 0.0;
        double h_lowdin = 0.0;
        if (want_brillouin)
            h_brillouin = e_hf * sample.overlap +
                          manybody::pair_excitation_energy_kernel(sample, model.two_body);
        if (want_lowdin)
            h_lowdin = manybody::lowdin_one_body(sample, model.one_body) +
                       manybody::lowdin_two_body(sample, model.two_body);

        for (std::size_t a = 0; a < nj; ++a) {
            const double d = angmom::wigner_small_d(request.two_J[a], request.two_m, request.two_m, beta);
            acc.norm[a] += w * d * sample.overlap;
            acc.brillouin[a] += w * d * h_brillouin;
            acc.lowdin[a] += w * d * h_lowdin;
        }
    }
    return acc;
}

std::string fmt_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace

std::vector<double> norm_kernel(const SpectrumRequest& request)
{
    return integrate(request, false, false).norm;
}

SpectrumResult compute_spectrum(const SpectrumRequest& request)
{
    const bool want_b = request.route != Route::lowdin;
    const bool want_l = request.route != Route::brillouin;
    const auto acc = integrate(request, want_b, want_l);

    SpectrumResult result;
    result.route = request.route;
    result.brillouin_residual_max = acc.residual;
    if (want_b && acc.residual > request.settings.brillouin_tolerance)
        result.warnings.push_back("Brillouin condition violated (max residual " +
                                  fmt_double(acc.residual) + "); Brillouin-route energies are not exact");

    double max_norm = 0.0;
    for (double n : acc.norm) max_norm = std::max(max_norm, n);
    const double threshold =
        std::max(request.settings.norm_relative * max_norm, request.settings.norm_absolute);

    bool any = false;
    for (std::size_t a = 0; a < request.two_J.size(); ++a) {
        Level level{request.two_J[a], acc.norm[a], std::nullopt, std::nullopt};
        if (acc.norm[a] > threshold) {
            any = true;
            if (want_b) level.energy_brillouin = acc.brillouin[a] / acc.norm[a];
            if (want_l) level.energy_lowdin = acc.lowdin[a] / acc.norm[a];
        }
        result.levels.push_back(level);
    }
    if (!any) throw NormTooSmall("every requested J component has a norm below threshold");
    return result;
}

SpectrumResult energy_spectrum_brillouin(SpectrumRequest request)
{
    request.route = Route::brillouin;
    return compute_spectrum(request);
}

SpectrumResult energy_spectrum_lowdin(SpectrumRequest request)
{
    request.route = Route::lowdin;
    return compute_spectrum(request);
}

RouteComparison compare_routes(const SpectrumResult& result, const Settings& settings)
{
    RouteComparison cmp;
    cmp.brillouin_residual_max = result.brillouin_residual_max;
    cmp.stable = result.brillouin_residual_max <= settings.brillouin_tolerance;
    for (const auto& level : result.levels) {
        if (!level.energy_brillouin || !level.energy_lowdin) continue;
        const double d = std::abs(*level.energy_brillouin - *level.energy_lowdin);
        cmp.two_J.push_back(level.two_J);
        cmp.delta.push_back(d);
        cmp.max_delta = std::max(cmp.max_delta, d);
    }
    cmp.within_tolerance = cmp.max_delta <= settings.route_tolerance;
    return cmp;
}

} // namespace angproj::spectrum
