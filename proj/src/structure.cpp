#include "aflux/structure.hpp"

#include <cmath>
#include <cstdio>

#include "aflux/errors.hpp"

namespace aflux {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Trigonometry in degrees with exact values at multiples of 90, so that
// right angles produce cell components that are exactly zero.
double cos_deg(double degrees) {
    double r = std::fmod(degrees, 360.0);
    if (r < 0) r += 360.0;
    if (r == 0.0) return 1.0;
    if (r == 90.0) return 0.0;
    if (r == 180.0) return -1.0;
    if (r == 270.0) return 0.0;
    return std::cos(degrees * kPi / 180.0);
}

double sin_deg(double degrees) {
    double r = std::fmod(degrees, 360.0);
    if (r < 0) r += 360.0;
    if (r == 0.0) return 0.0;
    if (r == 90.0) return 1.0;
    if (r == 180.0) return 0.0;
    if (r == 270.0) return -1.0;
    return std::sin(degrees * kPi / 180.0);
}

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

bool is_positive_integer(double x) { return x >= 1.0 && x == std::floor(x); }

}  // namespace

std::array<std::array<double, 3>, 3> cell_from_parameters(double a, double b, double c,
                                                          double alpha, double beta,
                                                          double gamma) {
    if (!(a > 0) || !(b > 0) || !(c > 0))
        throw ConsistencyError("lattice lengths must be positive");
    double ca = cos_deg(alpha);
    double cb = cos_deg(beta);
    double cg = cos_deg(gamma);
    double sg = sin_deg(gamma);
    if (sg <= 0) throw ConsistencyError("lattice angle gamma is degenerate");
    double volume_term = 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
    if (volume_term <= 0)
        throw ConsistencyError("lattice parameters describe a degenerate cell");
    return {{{a, 0.0, 0.0},
             {b * cg, b * sg, 0.0},
             {c * cb, c * (ca - cb * cg) / sg, c * std::sqrt(volume_term) / sg}}};
}

AtomicStructure to_structure(const Entry& entry) {
    static const char* const required[] = {"geometry", "species", "composition",
                                           "positions_cartesian"};
    std::vector<std::string> missing;
    for (const char* keyword : required) {
        try {
            entry.raw(keyword);
        } catch (const MissingPropertyError&) {
            missing.push_back(keyword);
        }
    }
    if (!missing.empty()) throw IncompleteStructureError(missing);

    const auto& geometry = entry.value("geometry").as_number_list();
    const auto& symbols = entry.value("species").as_text_list();
    const auto& counts = entry.value("composition").as_number_list();
    const auto& rows = entry.value("positions_cartesian").as_matrix();

    if (geometry.size() != 6)
        throw ConsistencyError("geometry has " + std::to_string(geometry.size()) +
                               " values, expected 6");
    if (symbols.size() != counts.size())
        throw ConsistencyError("species lists " + std::to_string(symbols.size()) +
                               " symbols but composition has " +
                               std::to_string(counts.size()) + " counts");

    std::size_t total = 0;
    for (double count : counts) {
        if (!is_positive_integer(count))
            throw ConsistencyError("composition counts must be positive integers");
        total += static_cast<std::size_t>(count);
    }
    if (total != rows.size())
        throw ConsistencyError("composition totals " + std::to_string(total) +
                               " atoms but positions_cartesian has " +
                               std::to_string(rows.size()) + " rows");

    AtomicStructure s;
    if (const std::string* compound = entry.raw_if_present("compound"))
        s.comment = *compound;
    else
        s.comment = entry.auid();
    s.cell = cell_from_parameters(geometry[0], geometry[1], geometry[2], geometry[3],
                                  geometry[4], geometry[5]);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        auto repeat = static_cast<std::size_t>(counts[i]);
        for (std::size_t k = 0; k < repeat; ++k) s.species.push_back(symbols[i]);
    }
    s.positions.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != 3)
            throw ConsistencyError("positions_cartesian rows must have 3 coordinates");
        s.positions.push_back({row[0], row[1], row[2]});
    }
    return s;
}

std::string to_xyz(const AtomicStructure& s) {
    std::string out = std::to_string(s.positions.size());
    out += "\nLattice=\"";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i || j) out += ' ';
            out += fixed6(s.cell[i][j]);
        }
    out += "\"\n";
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
        out += s.species[i];
        for (double coord : s.positions[i]) {
            out += ' ';
            out += fixed6(coord);
        }
        out += '\n';
    }
    return out;
}

std::string to_poscar(const AtomicStructure& s) {
    std::string out = s.comment + "\n1.0\n";
    for (const auto& row : s.cell)
        out += fixed6(row[0]) + " " + fixed6(row[1]) + " " + fixed6(row[2]) + "\n";

    // Collapse the per-atom symbols back into runs for the species/counts
    // lines; expansion kept them grouped in composition order.
    std::vector<std::string> names;
    std::vector<std::size_t> counts;
    for (const auto& symbol : s.species) {
        if (names.empty() || names.back() != symbol) {
            names.push_back(symbol);
            counts.push_back(1);
        } else {
            ++counts.back();
        }
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? " " : "") + names[i];
    out += '\n';
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(counts[i]);
    }
    out += "\nCartesian\n";
    for (const auto& position : s.positions)
        out += fixed6(position[0]) + " " + fixed6(position[1]) + " " + fixed6(position[2]) +
               "\n";
    return out;
}

std::string export_structure(const AtomicStructure& s, const std::string& format) {
    if (format == "xyz") return to_xyz(s);
    if (format == "poscar") return to_poscar(s);
    throw UsageError("unknown export format '" + format + "' (expected xyz or poscar)");
}

}  // namespace aflux
