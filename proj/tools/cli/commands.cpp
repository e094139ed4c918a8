// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include "model_io.hpp"

#include "angproj/projector.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace angproj::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string num(double x) { return fmt::format("{:.15g}", x); }

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::string j_label(int two_j)
{
    return two_j % 2 == 0 ? std::to_string(two_j / 2) : fmt::format("{}/2", two_j);
}

} // namespace

int parse_doubled(const std::string& raw)
{
    const std::string text = trim(raw);
    try {
        std::size_t used = 0;
        if (const auto slash = text.find('/'); slash != std::string::npos) {
            if (trim(text.substr(slash + 1)) != "2") throw ParseError("denominator must be 2");
            const int numer = std::stoi(text.substr(0, slash), &used);
            if (used != slash) throw ParseError("bad numerator");
            return numer;
        }
        const double value = std::stod(text, &used);
        if (used != text.size()) throw ParseError("trailing characters");
        const double twice = 2.0 * value;
        if (std::abs(twice - std::round(twice)) > 1e-12) throw ParseError("not a multiple of 1/2");
        return static_cast<int>(std::lround(twice));
    } catch (const ParseError&) {
        throw ParseError(fmt::format("'{}' is not an integer or half-integer", text));
    } catch (const std::exception&) {
        throw ParseError(fmt::format("'{}' is not an integer or half-integer", text));
    }
}

std::vector<int> parse_j_list(const std::string& text)
{
    if (trim(text) == "auto") return {};
    std::vector<int> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_doubled(part));
    if (out.empty()) throw ParseError("empty J list");
    return out;
}

std::vector<std::size_t> parse_columns(const std::string& text)
{
    std::vector<std::size_t> out;
    for (const auto& raw : split(text, ',')) {
        const std::string part = trim(raw);
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size() || value < 1)
            throw ParseError(fmt::format("column '{}' is not a positive integer", part));
        out.push_back(static_cast<std::size_t>(value - 1));
    }
    if (out.empty()) throw ParseError("no columns given");
    return out;
}

std::string format_csv(const spectrum::SpectrumResult& result)
{
    const bool has_b = result.route != spectrum::Route::lowdin;
    std::string s = "twoJ,normKernel,energyBrillouin,energyLowdin,brillouinResidual\n";
    for (const auto& level : result.levels)
        s += fmt::format("{},{},{},{},{}\n", level.two_J, num(level.norm), opt_num(level.energy_brillouin),
                         opt_num(level.energy_lowdin), has_b ? num(result.brillouin_residual_max) : "");
    return s;
}

std::string format_table(const spectrum::SpectrumResult& result)
{
    const bool has_b = result.route != spectrum::Route::lowdin;
    std::string s = fmt::format("{:>5}  {:>22}  {:>22}  {:>22}\n", "J", "n_J", "E_J (brillouin)", "E_J (lowdin)");
    for (const auto& level : result.levels) {
        auto cell = [](const std::optional<double>& x) { return x ? num(*x) : std::string("-"); };
        s += fmt::format("{:>5}  {:>22}  {:>22}  {:>22}\n", j_label(level.two_J), num(level.norm),
                         cell(level.energy_brillouin), cell(level.energy_lowdin));
    }
    if (has_b) s += fmt::format("max Brillouin residual: {}\n", num(result.brillouin_residual_max));
    if (result.route == spectrum::Route::both) {
        const auto cmp = spectrum::compare_routes(result);
        s += fmt::format("max route delta: {}\n", num(cmp.max_delta));
    }
    return s;
}

int cmd_spectrum(const std::filesystem::path& model_path, const SpectrumOptions& options,
                 std::ostream& out, std::ostream& err)
{
    std::optional<manybody::Model> model;
    try {
        model = load_model(model_path);
    } catch (const ParseError& e) {
        fmt::print(err, "parse error in {}: {}\n", model_path.string(), e.what());
        return kExitParse;
    } catch (const Error& e) {
        fmt::print(err, "invalid model {}: {}\n", model_path.string(), e.what());
        return kExitModel;
    }

    std::optional<spectrum::SpectrumRequest> request;
    try {
        request = spectrum::make_request(std::move(*model), options.two_J, options.points, options.route,
                                         options.settings);
    } catch (const InvalidLabel& e) {
        fmt::print(err, "invalid request: {}\n", e.what());
        return kExitParse;
    } catch (const Error& e) {
        fmt::print(err, "invalid model {}: {}\n", model_path.string(), e.what());
        return kExitModel;
    }

    std::optional<spectrum::SpectrumResult> computed;
    try {
        computed = spectrum::compute_spectrum(*request);
    } catch (const Error& e) {
        fmt::print(err, "numerical failure: {}\n", e.what());
        return kExitNumerical;
    }
    const auto& result = *computed;
    for (const auto& w : result.warnings) fmt::print(err, "warning: {}\n", w);
    if (result.route == spectrum::Route::both) {
        const auto cmp = spectrum::compare_routes(result, options.settings);
        if (!cmp.within_tolerance)
            fmt::print(err, "warning: routes differ by {} (tolerance {})\n", num(cmp.max_delta),
                       num(options.settings.route_tolerance));
    }

    const std::string text = options.format == Format::csv ? format_csv(result) : format_table(result);
    if (options.out) {
        std::ofstream file(*options.out, std::ios::binary);
        if (!file) {
            fmt::print(err, "cannot write {}\n", options.out->string());
            return kExitParse;
        }
        file << text;
    } else {
        out << text;
    }
    return kExitOk;
}

int cmd_cramer(const std::filesystem::path& matrix_path, const std::filesystem::path& rhs_path,
               const std::string& columns, std::ostream& out, std::ostream& err)
{
    lalg::DenseMatrix a(1, 1);
    std::vector<std::vector<double>> rhs;
    std::vector<std::size_t> cols;
    try {
        a = parse_matrix(read_file(matrix_path));
        rhs = parse_vectors(read_file(rhs_path));
        cols = parse_columns(columns);
        if (!a.is_square())
            throw ParseError(fmt::format("matrix is {}x{}, not square", a.rows(), a.cols()));
        if (rhs.size() != cols.size())
            throw ParseError(fmt::format("{} right-hand sides for {} columns", rhs.size(), cols.size()));
        for (std::size_t k = 0; k < rhs.size(); ++k)
            if (rhs[k].size() != a.rows())
                throw ParseError(fmt::format("rhs[{}] has length {}, expected {}", k, rhs[k].size(), a.rows()));
        for (auto c : cols)
            if (c >= a.cols()) throw ParseError(fmt::format("column {} outside 1..{}", c + 1, a.cols()));
        a.check_finite();
    } catch (const Error& e) {
        fmt::print(err, "parse error: {}\n", e.what());
        return kExitParse;
    }

    const auto lu = lalg::lu_factor(a);
    if (lu.singular()) {
        fmt::print(err, "matrix is singular (smallest pivot {})\n", num(lu.smallest_pivot()));
        return kExitSingular;
    }
    const double det = lalg::determinant(lu);
    const auto x = lalg::solve_columns(lu, rhs);
    std::vector<std::size_t> rows(cols.size());
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = k;

    double replaced = 0.0;
    try {
        replaced = lalg::replaced_determinant(det, x, rows, cols);
    } catch (const Error& e) {
        fmt::print(err, "parse error: {}\n", e.what());
        return kExitParse;
    }

    fmt::print(out, "det(A) = {}\n", num(det));
    fmt::print(out, "minor [x(k, i)] ({}x{}):\n", cols.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string line = " ";
        for (auto c : cols) line += " " + num(x(r, c));
        fmt::print(out, "{}\n", line);
    }
    fmt::print(out, "replaced determinant = {}\n", num(replaced));

    if (a.rows() <= lalg::kBruteForceMaxOrder) {
        lalg::DenseMatrix direct = a;
        for (std::size_t b = 0; b < cols.size(); ++b) direct.set_column(cols[b], rhs[b]);
        const double oracle = lalg::brute_force_determinant(direct);
        const double scale = std::max({1.0, std::abs(oracle), std::abs(replaced)});
        const bool match = std::abs(oracle - replaced) <= 1e-10 * scale;
        fmt::print(out, "brute force = {}\n", num(oracle));
        fmt::print(out, "oracle: {}\n", match ? "match" : "MISMATCH");
    }
    return kExitOk;
}

int cmd_check_projectors(const ProjectorCheckOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.two_j_max < 0 || o.two_j_max > 20) {
        fmt::print(err, "jmax must lie in [0, 10]\n");
        return kExitParse;
    }
    fmt::print(out, "{:>5} {:>5} {:>12} {:>12} {:>12} {:>12} {:>12}  {}\n", "j", "m", "idempotence",
               "annihilation", "integral", "imag", "radial", "status");
    bool all_ok = true;
    for (int two_j = 0; two_j <= o.two_j_max; ++two_j)
        for (int two_m = two_j % 2; two_m <= std::min(two_j, o.two_m_max); two_m += 2) {
            const int trunc = two_j + o.extra_two_j;

            const auto p = projector::lowdin_projector_matrix(two_j, two_m, trunc);
            const auto p2 = p * p;
            double idem = 0.0;
            for (std::size_t x = 0; x < p.rows(); ++x)
                for (std::size_t y = 0; y < p.cols(); ++y) idem = std::max(idem, std::abs(p2(x, y) - p(x, y)));

            double annih = 0.0;
            for (int two_l = two_m; two_l <= trunc; two_l += 2) {
                const double d = projector::lowdin_series_diagonal(two_j, two_m, two_l);
                annih = std::max(annih, std::abs(d - (two_l == two_j ? 1.0 : 0.0)));
            }

            const auto cmp = projector::compare_integral_to_series(two_j, two_m, trunc, o.radial_points,
                                                                   o.angular_points);

            double radial = 0.0;
            const int base = (two_j - two_m) / 2;
            for (int r = 0; r <= 4; ++r) {
                const double exact = projector::radial_moment_exact(two_j, two_m, r);
                const double quad = projector::radial_moment(two_j, two_m, base + r, o.moment_points);
                radial = std::max(radial, std::abs(quad - exact) / std::abs(exact));
            }

            const bool ok = idem <= o.idempotence_tol && annih <= o.annihilation_tol &&
                            cmp.max_deviation <= o.integral_tol && cmp.max_imag <= o.imag_tol &&
                            radial <= o.moment_tol;
            all_ok = all_ok && ok;
            fmt::print(out, "{:>5} {:>5} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}  {}\n",
                       j_label(two_j), j_label(two_m), idem, annih, cmp.max_deviation, cmp.max_imag, radial,
                       ok ? "ok" : "FAIL");
        }
    fmt::print(out, "{}\n", all_ok ? "all checks passed" : "some checks failed");
    return all_ok ? kExitOk : kExitNumerical;
}

} // namespace angproj::cli
