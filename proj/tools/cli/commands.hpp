// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "angproj/spectrum.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace angproj::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitModel = 3,
    kExitNumerical = 4,
    kExitSingular = 5,
};

enum class Format { table, csv };

struct SpectrumOptions {
    std::size_t points = spectrum::kDefaultSettings.points;
    spectrum::Route route = spectrum::Route::both;
    std::vector<int> two_J;  // empty: all allowed
    Format format = Format::table;
    std::optional<std::filesystem::path> out;
    spectrum::Settings settings = spectrum::kDefaultSettings;
};

struct ProjectorCheckOptions {
    int two_j_max = 6;
    int two_m_max = 6;
    int extra_two_j = 6;  // truncation 2j_max = 2j + extra_two_j
    std::size_t radial_points = 40;
    std::size_t angular_points = 64;
    std::size_t moment_points = 40;
    double idempotence_tol = 1e-9;
    double annihilation_tol = 1e-10;
    double integral_tol = 1e-6;
    double imag_tol = 1e-10;
    double moment_tol = 1e-10;
};

// "auto" -> empty; otherwise comma-separated J values ("2", "3/2", "1.5"), returned doubled.
std::vector<int> parse_j_list(const std::string& text);
// "1,3" -> {0, 2}
std::vector<std::size_t> parse_columns(const std::string& text);
// "3", "3/2", "1.5" -> doubled
int parse_doubled(const std::string& text);

std::string format_csv(const spectrum::SpectrumResult& result);
std::string format_table(const spectrum::SpectrumResult& result);

int cmd_spectrum(const std::filesystem::path& model_path, const SpectrumOptions& options,
                 std::ostream& out, std::ostream& err);
int cmd_cramer(const std::filesystem::path& matrix_path, const std::filesystem::path& rhs_path,
               const std::string& columns, std::ostream& out, std::ostream& err);
int cmd_check_projectors(const ProjectorCheckOptions& options, std::ostream& out, std::ostream& err);

} // namespace angproj::cli
