#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "moikit/matrix.hpp"
#include "moikit/scalar_function.hpp"

namespace moikit {

/// {"n": int, "re": [[...]], "im": [[...]]}; "im" may be omitted for real
/// matrices. Throws Parse on malformed input.
Matrix parse_matrix_json(std::string_view text);
/// Shortest round-trip representation of every entry, so re-parsing the
/// output gives an entrywise-identical matrix.
std::string format_matrix_json(const Matrix& m);
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

/// {"kind":"polynomial","coeffs":[[re,im],...]}
/// {"kind":"wiener","atoms":[[xi,re,im],...]}
/// {"kind":"builtin","name":"exp|sin|cos|abs_pow","params":{...}}
/// Real coefficients may be given as plain numbers.
ScalarFunction parse_function_json(std::string_view text);
ScalarFunction read_function_file(const std::filesystem::path& path);

/// Whole file as a string; throws Parse when it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace moikit
