// SPDX-License-Identifier: Apache-2.0
#include "model_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace angproj::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t p = 0; p + 1 < e.byte && p < text.size(); ++p) {
            if (text[p] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(fmt::format("line {}, column {}: {}", line, col, e.what()));
    }
}

const json& field(const json& obj, const char* name, const std::string& where)
{
    if (!obj.is_object()) throw ParseError(fmt::format("{}: expected an object", where));
    const auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(fmt::format("{}: missing field '{}'", where, name));
    return *it;
}

long as_int(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) throw ParseError(fmt::format("{}: expected an integer", where));
    return v.get<long>();
}

double as_real(const json& v, const std::string& where)
{
    if (!v.is_number()) throw ParseError(fmt::format("{}: expected a number", where));
    return v.get<double>();
}

const json& as_array(const json& v, const std::string& where)
{
    if (!v.is_array()) throw ParseError(fmt::format("{}: expected an array", where));
    return v;
}

manybody::OrbitalId to_index(long file_id, std::size_t n, const std::string& where)
{
    if (file_id < 1 || static_cast<std::size_t>(file_id) > n)
        throw ModelInvalid(fmt::format("{}: orbital id {} not in basis", where, file_id));
    return static_cast<manybody::OrbitalId>(file_id - 1);
}

std::vector<std::vector<double>> parse_rows(const json& rows, const std::string& where)
{
    std::vector<std::vector<double>> out;
    for (std::size_t r = 0; r < as_array(rows, where).size(); ++r) {
        const auto row_where = fmt::format("{}[{}]", where, r);
        const auto& row = as_array(rows[r], row_where);
        std::vector<double> values;
        for (std::size_t c = 0; c < row.size(); ++c)
            values.push_back(as_real(row[c], fmt::format("{}[{}]", row_where, c)));
        out.push_back(std::move(values));
    }
    return out;
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

manybody::Model parse_model(std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("model: expected a JSON object");

    std::string name;
    if (const auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("name: expected a string");
        name = it->get<std::string>();
    }

    const auto& basis_json = as_array(field(doc, "basis", "model"), "basis");
    const std::size_t n = basis_json.size();
    std::vector<manybody::Orbital> basis(n);
    std::vector<bool> seen(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        const auto where = fmt::format("basis[{}]", a);
        const auto& o = basis_json[a];
        const long id = as_int(field(o, "id", where), where + ".id");
        const long shell = as_int(field(o, "shell", where), where + ".shell");
        const long two_j = as_int(field(o, "two_j", where), where + ".two_j");
        const long two_m = as_int(field(o, "two_m", where), where + ".two_m");
        if (id < 1 || static_cast<std::size_t>(id) > n)
            throw ModelInvalid(fmt::format("{}: orbital id {} outside 1..{}", where, id, n));
        const auto idx = static_cast<std::size_t>(id - 1);
        if (seen[idx]) throw ModelInvalid(fmt::format("duplicate orbital id {}", id));
        seen[idx] = true;
        if (!angmom::AngMomLabel{static_cast<int>(two_j), static_cast<int>(two_m)}.valid())
            throw ModelInvalid(fmt::format("orbital id {}: invalid label two_j={} two_m={}", id, two_j, two_m));
        basis[idx] = {idx, static_cast<int>(shell), static_cast<int>(two_j), static_cast<int>(two_m), false};
    }

    const auto& occ_json = as_array(field(doc, "occupied", "model"), "occupied");
    std::vector<manybody::OrbitalId> occupied;
    for (std::size_t a = 0; a < occ_json.size(); ++a) {
        const auto where = fmt::format("occupied[{}]", a);
        occupied.push_back(to_index(as_int(occ_json[a], where), n, where));
    }
    manybody::SlaterState state(std::move(basis), std::move(occupied));

    manybody::OneBodyOperator t(n);
    std::map<std::pair<std::size_t, std::size_t>, double> one_seen;
    if (const auto it = doc.find("one_body"); it != doc.end()) {
        const auto& list = as_array(*it, "one_body");
        for (std::size_t a = 0; a < list.size(); ++a) {
            const auto where = fmt::format("one_body[{}]", a);
            const auto i = to_index(as_int(field(list[a], "i", where), where + ".i"), n, where);
            const auto k = to_index(as_int(field(list[a], "k", where), where + ".k"), n, where);
            const double value = as_real(field(list[a], "value", where), where + ".value");
            const auto key = std::minmax(i, k);
            const auto [pos, inserted] = one_seen.emplace(key, value);
            if (!inserted && pos->second != value)
                throw ModelInvalid(fmt::format("{}: conflicting one-body element ({}, {})", where, i + 1, k + 1));
            t.set(i, k, value);
        }
    }

    manybody::TwoBodyOperator v(n);
    if (const auto it = doc.find("two_body"); it != doc.end()) {
        const auto& list = as_array(*it, "two_body");
        for (std::size_t a = 0; a < list.size(); ++a) {
            const auto where = fmt::format("two_body[{}]", a);
            const auto& e = list[a];
            const auto i = to_index(as_int(field(e, "i", where), where + ".i"), n, where);
            const auto j = to_index(as_int(field(e, "j", where), where + ".j"), n, where);
            const auto k = to_index(as_int(field(e, "k", where), where + ".k"), n, where);
            const auto l = to_index(as_int(field(e, "l", where), where + ".l"), n, where);
            const double value = as_real(field(e, "value", where), where + ".value");
            try {
                v.set(i, j, k, l, value);
            } catch (const ModelInvalid& err) {
                throw ModelInvalid(fmt::format("{}: {}", where, err.what()));
            }
        }
    }

    manybody::Model model{std::move(name), std::move(state), std::move(t), std::move(v)};
    model.validate();
    return model;
}

manybody::Model load_model(const std::filesystem::path& path)
{
    return parse_model(read_file(path));
}

std::string emit_model(const manybody::Model& model)
{
    ordered_json doc;
    doc["name"] = model.name;

    ordered_json basis = ordered_json::array();
    for (const auto& o : model.state.basis()) {
        ordered_json entry;
        entry["id"] = o.id + 1;
        entry["shell"] = o.shell;
        entry["two_j"] = o.two_j;
        entry["two_m"] = o.two_m;
        basis.push_back(std::move(entry));
    }
    doc["basis"] = std::move(basis);

    ordered_json occupied = ordered_json::array();
    for (auto id : model.state.occupied()) occupied.push_back(id + 1);
    doc["occupied"] = std::move(occupied);

    ordered_json one = ordered_json::array();
    const std::size_t n = model.one_body.n_basis();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) {
            const double value = model.one_body(i, k);
            if (value == 0.0) continue;
            ordered_json entry;
            entry["i"] = i + 1;
            entry["k"] = k + 1;
            entry["value"] = value;
            one.push_back(std::move(entry));
        }
    doc["one_body"] = std::move(one);

    ordered_json two = ordered_json::array();
    for (const auto& e : model.two_body.elements()) {
        if (std::make_pair(e.i, e.j) > std::make_pair(e.k, e.l)) continue;
        ordered_json entry;
        entry["i"] = e.i + 1;
        entry["j"] = e.j + 1;
        entry["k"] = e.k + 1;
        entry["l"] = e.l + 1;
        entry["value"] = e.value;
        two.push_back(std::move(entry));
    }
    doc["two_body"] = std::move(two);

    return doc.dump(2) + "\n";
}

lalg::DenseMatrix parse_matrix(std::string_view text)
{
    const json doc = parse_json(text);
    const json& rows = doc.is_object() ? field(doc, "matrix", "document") : doc;
    const auto values = parse_rows(rows, "matrix");
    if (values.empty() || values.front().empty()) throw ParseError("matrix: empty");
    for (std::size_t r = 0; r < values.size(); ++r)
        if (values[r].size() != values.front().size())
            throw ParseError(fmt::format("matrix[{}]: row length {} differs from {}", r,
                                         values[r].size(), values.front().size()));
    return lalg::DenseMatrix::from_rows(values);
}

std::vector<std::vector<double>> parse_vectors(std::string_view text)
{
    const json doc = parse_json(text);
    const json& rows = doc.is_object() ? field(doc, "rhs", "document") : doc;
    return parse_rows(rows, "rhs");
}

} // namespace angproj::cli
