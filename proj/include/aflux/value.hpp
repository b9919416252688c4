#ifndef AFLUX_VALUE_HPP
#define AFLUX_VALUE_HPP

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aflux {

/// The six value kinds a keyword can declare. Deserialization is total
/// per kind: every raw string either decodes or fails loudly.
enum class ValueKind {
    ScalarNumber,
    NumberList,
    ScalarString,
    StringList,
    Matrix,
    Kpoints,
};

const char* to_string(ValueKind kind);
std::optional<ValueKind> value_kind_from_string(const std::string& name);

bool is_numeric_kind(ValueKind kind);
bool is_string_kind(ValueKind kind);
/// Matrix and kpoints: decodable but not comparable or sortable by value.
bool is_comparable_kind(ValueKind kind);

/// Reciprocal-space sampling description: relaxation grid, optional static
/// grid, band path segments ("G-X"), points per segment.
struct Kpoints {
    std::array<int, 3> relaxation_grid{};
    std::optional<std::array<int, 3>> static_grid;
    std::vector<std::string> band_path;
    int points_per_segment = 0;

    bool operator==(const Kpoints&) const = default;
};

/// One decoded property value. Which alternative is held is dictated by
/// the keyword's ValueKind.
struct TypedValue {
    using Matrix = std::vector<std::vector<double>>;

    std::variant<double,                     // scalar-number
                 std::vector<double>,        // number-list
                 std::string,                // scalar-string
                 std::vector<std::string>,   // string-list
                 Matrix,                     // matrix
                 Kpoints>                    // kpoints
        value;

    static TypedValue number(double v) { return {v}; }
    static TypedValue number_list(std::vector<double> v) { return {std::move(v)}; }
    static TypedValue text(std::string v) { return {std::move(v)}; }
    static TypedValue text_list(std::vector<std::string> v) { return {std::move(v)}; }
    static TypedValue matrix(Matrix v) { return {std::move(v)}; }
    static TypedValue kpoints(Kpoints v) { return {std::move(v)}; }

    bool is_number() const { return std::holds_alternative<double>(value); }
    bool is_text() const { return std::holds_alternative<std::string>(value); }

    double as_number() const { return std::get<double>(value); }
    const std::vector<double>& as_number_list() const { return std::get<std::vector<double>>(value); }
    const std::string& as_text() const { return std::get<std::string>(value); }
    const std::vector<std::string>& as_text_list() const { return std::get<std::vector<std::string>>(value); }
    const Matrix& as_matrix() const { return std::get<Matrix>(value); }
    const Kpoints& as_kpoints() const { return std::get<Kpoints>(value); }

    bool operator==(const TypedValue&) const = default;
};

/// Kind-directed parse of a raw database string into a typed value.
/// Whitespace around separators is rejected, not trimmed.
TypedValue decode(ValueKind kind, const std::string& raw);

/// Canonical inverse of decode: decode(kind, encode(kind, v)) == v.
/// Decimals are rendered shortest-round-trip, fixed notation for
/// magnitudes in [1e-4, 1e15].
std::string encode(ValueKind kind, const TypedValue& v);

/// Shortest-round-trip rendering of one decimal (the scalar building block
/// of encode; exposed because exporters and the simulator reuse it).
std::string format_number(double v);

/// Strict decimal parse of a whole token; nullopt when any byte is left over.
std::optional<double> parse_number(const std::string& token);

}  // namespace aflux

#endif  // AFLUX_VALUE_HPP
