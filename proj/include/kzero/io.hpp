#pragma once

// JSON presentation of root data and located input diagnostics.

#include "kzero/root_datum.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace kzero {

/// Malformed input with a 1-based line and column; what() is "line:column: message".
class InputError : public std::runtime_error {
public:
    InputError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

nlohmann::ordered_json vec_to_json(const Vec& v);
/// Throws std::invalid_argument unless j is an array of integers.
Vec vec_from_json(const nlohmann::ordered_json& j);

/// {"name", "rank", "simple_roots", "simple_coroots"}.
nlohmann::ordered_json datum_to_json(const RootDatum& d);
/// Throws std::invalid_argument on a missing or mistyped field and InvalidRootDatum on a bad datum.
RootDatum datum_from_json(const nlohmann::ordered_json& j);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

/// Parses JSON text; syntax errors and field errors become InputError with a location (field
/// errors point at the first occurrence of the offending key).
nlohmann::ordered_json parse_json(const std::string& text);
RootDatum parse_datum(const std::string& text);

/// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t offset);

}  // namespace kzero
