#ifndef AFLUX_FIXTURE_HPP
#define AFLUX_FIXTURE_HPP

#include <string>

#include "aflux/simulator.hpp"

namespace aflux {

/// Deterministic 200-record dataset spanning all six value kinds: a band
/// of 62 records with Egap > 6 (distinct conductivities, three of them
/// with the conductivity absent), band-gap populations inside and around
/// the (0,2) and (5,7) windows, records with selected properties missing,
/// and a handful of structurally incomplete records. Bytes are identical
/// across runs and platforms.
Dataset fixture_dataset();

/// The same records in the dataset file format (JSON array).
std::string fixture_dataset_json();

/// auid of the record pinned to zero-based index 55 of the standard
/// band-gap/conductivity query ordering; carries the hand-set Cartesian
/// positions used by the paging and lazy-fetch tests.
const char* fixture_designated_auid();

}  // namespace aflux

#endif  // AFLUX_FIXTURE_HPP
