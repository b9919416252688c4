#include "aflux/value.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "aflux/errors.hpp"

namespace aflux {

namespace {

// Splits on a single-character separator. Empty fields are kept so callers
// can reject them (or, for kpoints, treat an empty static grid as absent).
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_number_token(const std::string& token, std::size_t offset, ValueKind kind) {
    auto v = parse_number(token);
    if (!v) {
        throw DecodeError(std::string("cannot decode ") + to_string(kind) + ": bad decimal",
                          offset, token);
    }
    return *v;
}

int parse_int_token(const std::string& token, std::size_t offset, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw DecodeError(std::string("cannot decode kpoints: bad ") + what, offset, token);
    }
    return value;
}

// Byte offset of the n-th field when `s` was split on `sep`.
std::size_t field_offset(const std::string& s, char sep, std::size_t index) {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < index; ++i) {
        offset = s.find(sep, offset) + 1;
    }
    return offset;
}

std::vector<double> decode_number_fields(const std::string& raw, char sep, ValueKind kind,
                                         std::size_t base_offset = 0) {
    std::vector<double> out;
    auto fields = split(raw, sep);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out.push_back(
            parse_number_token(fields[i], base_offset + field_offset(raw, sep, i), kind));
    }
    return out;
}

std::array<int, 3> decode_grid(const std::string& field, std::size_t offset) {
    auto parts = split(field, ',');
    if (parts.size() != 3) {
        throw DecodeError("cannot decode kpoints: grid needs three integers", offset, field);
    }
    std::array<int, 3> grid{};
    for (int i = 0; i < 3; ++i) {
        grid[i] = parse_int_token(parts[i], offset, "grid value");
        if (grid[i] <= 0) {
            throw DecodeError("cannot decode kpoints: grid values must be positive", offset,
                              parts[i]);
        }
    }
    return grid;
}

bool is_path_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// relax ';' [static] ';' path ';' n  with path = SEG (',' SEG)*, SEG = LABEL '-' LABEL
Kpoints decode_kpoints(const std::string& raw) {
    auto fields = split(raw, ';');
    if (fields.size() != 4) {
        throw DecodeError("cannot decode kpoints: expected relax;static;path;n", 0, raw);
    }
    Kpoints kp;
    kp.relaxation_grid = decode_grid(fields[0], 0);
    std::size_t static_off = field_offset(raw, ';', 1);
    if (!fields[1].empty()) {
        kp.static_grid = decode_grid(fields[1], static_off);
    }
    std::size_t path_off = field_offset(raw, ';', 2);
    for (const auto& seg : split(fields[2], ',')) {
        std::size_t dash = seg.find('-');
        if (dash == std::string::npos || !is_path_label(seg.substr(0, dash)) ||
            !is_path_label(seg.substr(dash + 1))) {
            throw DecodeError("cannot decode kpoints: bad path segment", path_off, seg);
        }
        kp.band_path.push_back(seg);
    }
    std::size_t n_off = field_offset(raw, ';', 3);
    kp.points_per_segment = parse_int_token(fields[3], n_off, "points-per-segment");
    if (kp.points_per_segment <= 0) {
        throw DecodeError("cannot decode kpoints: points-per-segment must be positive", n_off,
                          fields[3]);
    }
    return kp;
}

std::string encode_number_fields(const std::vector<double>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += format_number(values[i]);
    }
    return out;
}

std::string encode_grid(const std::array<int, 3>& g) {
    return std::to_string(g[0]) + "," + std::to_string(g[1]) + "," + std::to_string(g[2]);
}

void require_kind(bool ok, ValueKind kind, const char* held) {
    if (!ok) {
        throw ValueTypeError(std::string("value of type ") + held +
                             " cannot be encoded as " + to_string(kind));
    }
}

}  // namespace

const char* to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::ScalarNumber: return "scalar-number";
        case ValueKind::NumberList: return "number-list";
        case ValueKind::ScalarString: return "scalar-string";
        case ValueKind::StringList: return "string-list";
        case ValueKind::Matrix: return "matrix";
        case ValueKind::Kpoints: return "kpoints";
    }
    return "?";
}

std::optional<ValueKind> value_kind_from_string(const std::string& name) {
    if (name == "scalar-number") return ValueKind::ScalarNumber;
    if (name == "number-list") return ValueKind::NumberList;
    if (name == "scalar-string") return ValueKind::ScalarString;
    if (name == "string-list") return ValueKind::StringList;
    if (name == "matrix") return ValueKind::Matrix;
    if (name == "kpoints") return ValueKind::Kpoints;
    return std::nullopt;
}

bool is_numeric_kind(ValueKind kind) {
    return kind == ValueKind::ScalarNumber || kind == ValueKind::NumberList;
}

bool is_string_kind(ValueKind kind) {
    return kind == ValueKind::ScalarString || kind == ValueKind::StringList;
}

bool is_comparable_kind(ValueKind kind) {
    return is_numeric_kind(kind) || is_string_kind(kind);
}

std::optional<double> parse_number(const std::string& token) {
    if (token.empty()) return std::nullopt;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    // from_chars has no leading-'+' support; the wire format never needs one
    // except inside a scientific exponent, which it does handle.
    double value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (std::isnan(value) || std::isinf(value)) return std::nullopt;
    return value;
}

std::string format_number(double v) {
    char buf[64];
    double mag = std::fabs(v);
    bool fixed = mag == 0.0 || (mag >= 1e-4 && mag < 1e15);
    auto [ptr, ec] = fixed
        ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed)
        : std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general);
    (void)ec;
    return std::string(buf, ptr);
}

TypedValue decode(ValueKind kind, const std::string& raw) {
    if (raw.empty()) {
        throw DecodeError(std::string("cannot decode ") + to_string(kind) + ": empty value", 0, "");
    }
    switch (kind) {
        case ValueKind::ScalarNumber:
            return TypedValue::number(parse_number_token(raw, 0, kind));
        case ValueKind::NumberList:
            return TypedValue::number_list(decode_number_fields(raw, ',', kind));
        case ValueKind::ScalarString:
            return TypedValue::text(raw);
        case ValueKind::StringList: {
            auto items = split(raw, ',');
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (items[i].empty()) {
                    throw DecodeError("cannot decode string-list: empty element",
                                      field_offset(raw, ',', i), "");
                }
            }
            return TypedValue::text_list(std::move(items));
        }
        case ValueKind::Matrix: {
            TypedValue::Matrix rows;
            auto row_fields = split(raw, ';');
            for (std::size_t r = 0; r < row_fields.size(); ++r) {
                std::size_t off = field_offset(raw, ';', r);
                if (row_fields[r].empty()) {
                    throw DecodeError("cannot decode matrix: empty row", off, "");
                }
                auto row = decode_number_fields(row_fields[r], ',', kind, off);
                if (!rows.empty() && row.size() != rows.front().size()) {
                    throw DecodeError("cannot decode matrix: ragged rows", off, row_fields[r]);
                }
                rows.push_back(std::move(row));
            }
            return TypedValue::matrix(std::move(rows));
        }
        case ValueKind::Kpoints:
            return TypedValue::kpoints(decode_kpoints(raw));
    }
    throw DecodeError("unreachable kind", 0, raw);
}

std::string encode(ValueKind kind, const TypedValue& v) {
    switch (kind) {
        case ValueKind::ScalarNumber:
            require_kind(v.is_number(), kind, "non-number");
            return format_number(v.as_number());
        case ValueKind::NumberList: {
            require_kind(std::holds_alternative<std::vector<double>>(v.value), kind, "non-list");
            const auto& values = v.as_number_list();
            require_kind(!values.empty(), kind, "empty list");
            return encode_number_fields(values, ',');
        }
        case ValueKind::ScalarString:
            require_kind(v.is_text(), kind, "non-string");
            require_kind(!v.as_text().empty(), kind, "empty string");
            return v.as_text();
        case ValueKind::StringList: {
            require_kind(std::holds_alternative<std::vector<std::string>>(v.value), kind,
                         "non-list");
            const auto& items = v.as_text_list();
            require_kind(!items.empty(), kind, "empty list");
            std::string out;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i) out += ',';
                out += items[i];
            }
            return out;
        }
        case ValueKind::Matrix: {
            require_kind(std::holds_alternative<TypedValue::Matrix>(v.value), kind, "non-matrix");
            const auto& rows = v.as_matrix();
            require_kind(!rows.empty(), kind, "empty matrix");
            std::string out;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                require_kind(!rows[r].empty() && rows[r].size() == rows.front().size(), kind,
                             "ragged matrix");
                if (r) out += ';';
                out += encode_number_fields(rows[r], ',');
            }
            return out;
        }
        case ValueKind::Kpoints: {
            require_kind(std::holds_alternative<Kpoints>(v.value), kind, "non-kpoints");
            const auto& kp = v.as_kpoints();
            require_kind(!kp.band_path.empty() && kp.points_per_segment > 0, kind,
                         "incomplete kpoints");
            std::string out = encode_grid(kp.relaxation_grid);
            out += ';';
            if (kp.static_grid) out += encode_grid(*kp.static_grid);
            out += ';';
            for (std::size_t i = 0; i < kp.band_path.size(); ++i) {
                if (i) out += ',';
                out += kp.band_path[i];
            }
            out += ';';
            out += std::to_string(kp.points_per_segment);
            return out;
        }
    }
    throw ValueTypeError("unreachable kind");
}

}  // namespace aflux
