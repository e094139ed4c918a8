// SPDX-License-Identifier: Apache-2.0
#pragma once

// Model and matrix files (JSON). Orbital ids in files are 1-based.

#include "angproj/errors.hpp"
#include "angproj/lalg.hpp"
#include "angproj/manybody.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace angproj::cli {

// Malformed document or field; message carries line/column or the field path.
class ParseError : public Error { public: using Error::Error; };

manybody::Model parse_model(std::string_view text);
manybody::Model load_model(const std::filesystem::path& path);

// Canonical form: basis by id, occupied in state order, upper-triangle one-body
// entries, one element per Hermitian pair of two-body keys.
std::string emit_model(const manybody::Model& model);

// Square or rectangular matrix: [[...], ...] or {"matrix": [[...], ...]}.
lalg::DenseMatrix parse_matrix(std::string_view text);
// List of vectors: [[...], ...] or {"rhs": [[...], ...]}.
std::vector<std::vector<double>> parse_vectors(std::string_view text);

std::string read_file(const std::filesystem::path& path);

} // namespace angproj::cli
