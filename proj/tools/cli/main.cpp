// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"
#include "model_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

using namespace angproj;

int main(int argc, char** argv)
{
    CLI::App app{"Angular-momentum projection of Slater determinants"};
    app.require_subcommand(1);

    cli::SpectrumOptions spectrum_opts;
    std::string model_path;
    std::string route = "both";
    std::string j_list = "auto";
    std::string format = "table";
    std::string out_path;
    auto* sp = app.add_subcommand("spectrum", "Projected energy spectrum of a model file");
    sp->add_option("model", model_path, "Model JSON file")->required();
    sp->add_option("--points", spectrum_opts.points, "Gauss-Legendre nodes in beta")->capture_default_str();
    sp->add_option("--route", route, "brillouin, lowdin or both")->capture_default_str();
    sp->add_option("--J", j_list, "auto or comma-separated J values")->capture_default_str();
    sp->add_option("--format", format, "table or csv")->capture_default_str();
    sp->add_option("--out", out_path, "Write the report to this file");
    sp->add_option("--norm-rel", spectrum_opts.settings.norm_relative, "Relative norm threshold")->capture_default_str();
    sp->add_option("--norm-abs", spectrum_opts.settings.norm_absolute, "Absolute norm threshold")->capture_default_str();
    sp->add_option("--brillouin-tol", spectrum_opts.settings.brillouin_tolerance, "Stability tolerance")
        ->capture_default_str();
    sp->add_option("--route-tol", spectrum_opts.settings.route_tolerance, "Route agreement tolerance")
        ->capture_default_str();

    std::string matrix_path;
    std::string rhs_path;
    std::string columns;
    auto* cr = app.add_subcommand("cramer", "Replaced-column determinant by the generalized Cramer rule");
    cr->add_option("matrix", matrix_path, "Matrix JSON file")->required();
    cr->add_option("rhs", rhs_path, "Right-hand sides JSON file")->required();
    cr->add_option("--columns", columns, "1-based columns replaced by the right-hand sides")->required();

    cli::ProjectorCheckOptions proj;
    std::string jmax = "3";
    std::string mmax;
    auto* cp = app.add_subcommand("check-projectors", "Validate the projection-operator identities");
    cp->add_option("--jmax", jmax, "Largest j")->capture_default_str();
    cp->add_option("--mmax", mmax, "Largest m (default: jmax)");
    cp->add_option("--radial-points", proj.radial_points, "Disk nodes in |z|^2")->capture_default_str();
    cp->add_option("--angular-points", proj.angular_points, "Disk nodes in arg z")->capture_default_str();
    cp->add_option("--moment-points", proj.moment_points, "Nodes for the radial moments")->capture_default_str();
    cp->add_option("--integral-tol", proj.integral_tol, "Integral vs series tolerance")->capture_default_str();
    cp->add_option("--idempotence-tol", proj.idempotence_tol, "Idempotence tolerance")->capture_default_str();
    cp->add_option("--annihilation-tol", proj.annihilation_tol, "Annihilation tolerance")->capture_default_str();
    cp->add_option("--moment-tol", proj.moment_tol, "Radial moment tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitParse;
    }

    try {
        if (*sp) {
            spectrum_opts.route = spectrum::parse_route(route);
            spectrum_opts.two_J = cli::parse_j_list(j_list);
            if (format == "csv") spectrum_opts.format = cli::Format::csv;
            else if (format != "table") throw cli::ParseError("format must be table or csv");
            if (!out_path.empty()) spectrum_opts.out = out_path;
            return cli::cmd_spectrum(model_path, spectrum_opts, std::cout, std::cerr);
        }
        if (*cr) return cli::cmd_cramer(matrix_path, rhs_path, columns, std::cout, std::cerr);
        if (*cp) {
            proj.two_j_max = cli::parse_doubled(jmax);
            proj.two_m_max = mmax.empty() ? proj.two_j_max : cli::parse_doubled(mmax);
            return cli::cmd_check_projectors(proj, std::cout, std::cerr);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitParse;
    }
    return cli::kExitParse;
}
