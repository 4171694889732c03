#include "moikit/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "moikit/error.hpp"

namespace moikit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

json parse_text(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

Complex complex_number(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {number(v[0], where), number(v[1], where)};
  fail(where + " must be a number or [re, im]");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where + " is missing \"" + key + "\"");
  return obj.at(key);
}

double param_or(const json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  return number(params.at(key), std::string("params.") + key);
}

std::vector<double> matrix_rows(const json& rows, std::size_t n, const char* key) {
  if (!rows.is_array() || rows.size() != n) fail(std::string("\"") + key + "\" must have n rows");
  std::vector<double> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) fail(std::string("\"") + key + "\" row " + std::to_string(i) + " must have n entries");
    for (const auto& v : row) out.push_back(number(v, key));
  }
  return out;
}

}  // namespace

Matrix parse_matrix_json(std::string_view text) {
  const json doc = parse_text(text, "matrix");
  const auto& n_field = field(doc, "n", "matrix");
  if (!n_field.is_number_integer() || n_field.get<long long>() < 1) fail("matrix \"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(n_field.get<long long>());
  const auto re = matrix_rows(field(doc, "re", "matrix"), n, "re");
  const auto im = doc.contains("im") ? matrix_rows(doc.at("im"), n, "im") : std::vector<double>(n * n, 0.0);
  std::vector<Complex> entries(n * n);
  for (std::size_t e = 0; e < n * n; ++e) entries[e] = {re[e], im[e]};
  try {
    return Matrix(n, std::move(entries));
  } catch (const Error& e) {
    fail(std::string("matrix: ") + e.what());
  }
}

std::string format_matrix_json(const Matrix& m) {
  const std::size_t n = m.size();
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::ordered_json doc;
  doc["n"] = n;
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump() + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  try {
    return parse_matrix_json(read_text_file(path));
  } catch (const Error& e) {
    fail(path.string() + ": " + e.what());
  }
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << format_matrix_json(m);
}

ScalarFunction parse_function_json(std::string_view text) {
  const json doc = parse_text(text, "function spec");
  const auto& kind_field = field(doc, "kind", "function spec");
  if (!kind_field.is_string()) fail("function spec \"kind\" must be a string");
  const auto kind = kind_field.get<std::string>();

  if (kind == "polynomial") {
    const auto& coeffs = field(doc, "coeffs", "polynomial");
    if (!coeffs.is_array() || coeffs.empty()) fail("polynomial \"coeffs\" must be a non-empty array");
    std::vector<Complex> c;
    for (const auto& v : coeffs) c.push_back(complex_number(v, "polynomial coefficient"));
    return Polynomial(std::move(c));
  }
  if (kind == "wiener") {
    const auto& atoms = field(doc, "atoms", "wiener");
    if (!atoms.is_array()) fail("wiener \"atoms\" must be an array");
    std::vector<WienerAtom> out;
    for (const auto& a : atoms) {
      if (!a.is_array() || (a.size() != 2 && a.size() != 3)) fail("wiener atom must be [xi, re] or [xi, re, im]");
      const double im = a.size() == 3 ? number(a[2], "atom weight") : 0.0;
      out.push_back({number(a[0], "atom frequency"), {number(a[1], "atom weight"), im}});
    }
    return WienerAtomic(std::move(out));
  }
  if (kind == "builtin") {
    const auto& name_field = field(doc, "name", "builtin");
    if (!name_field.is_string()) fail("builtin \"name\" must be a string");
    const auto name = name_field.get<std::string>();
    const json params = doc.contains("params") ? doc.at("params") : json::object();
    if (!params.is_object()) fail("builtin \"params\" must be an object");
    const int order = static_cast<int>(param_or(params, "max_order", 16));
    if (name == "exp") return builtin::exp(param_or(params, "rate", 1.0), order);
    if (name == "sin") return builtin::sin(param_or(params, "omega", 1.0), order);
    if (name == "cos") return builtin::cos(param_or(params, "omega", 1.0), order);
    if (name == "abs_pow") {
      if (!params.contains("p")) fail("abs_pow needs params.p");
      std::optional<int> max_order;
      if (params.contains("max_order")) max_order = order;
      return builtin::abs_pow(number(params.at("p"), "params.p"), max_order);
    }
    fail("unknown builtin \"" + name + "\"");
  }
  fail("unknown function kind \"" + kind + "\"");
}

ScalarFunction read_function_file(const std::filesystem::path& path) {
  try {
    return parse_function_json(read_text_file(path));
  } catch (const Error& e) {
    fail(path.string() + ": " + e.what());
  }
}

}  // namespace moikit
