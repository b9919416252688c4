#pragma once

#include <array>
#include <string>
#include <vector>

#include "aflux/query.hpp"

namespace aflux {

// Cartesian crystal structure assembled from an entry's structural
// properties. `species` holds one symbol per atom, already expanded by the
// composition counts, so species.size() == positions.size().
struct AtomicStructure {
    std::string comment;
    std::array<std::array<double, 3>, 3> cell{};
    std::vector<std::string> species;
    std::vector<std::array<double, 3>> positions;
};

// Builds the cell matrix and atom list from `geometry`, `species`,
// `composition`, and `positions_cartesian`, fetching any of them lazily.
// Throws IncompleteStructureError naming every absent property, or
// ConsistencyError when the properties disagree with each other.
AtomicStructure to_structure(const Entry& entry);

// Converts lattice parameters (a, b, c in the same length unit; angles in
// degrees) to the row-vector cell matrix with a along x and b in the xy
// plane. Throws ConsistencyError for degenerate parameter sets.
std::array<std::array<double, 3>, 3> cell_from_parameters(double a, double b, double c,
                                                          double alpha, double beta,
                                                          double gamma);

std::string to_xyz(const AtomicStructure& s);
std::string to_poscar(const AtomicStructure& s);

// format is "xyz" or "poscar"; anything else raises UsageError.
std::string export_structure(const AtomicStructure& s, const std::string& format);

}  // namespace aflux
