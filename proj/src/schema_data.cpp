#include "aflux/keyword.hpp"

namespace aflux {

// Keyword descriptors served by the simulator at GET /API/schema and used
// as the default client registry. Kept as one JSON document so both sides
// of the protocol consume identical bytes.
const std::string& embedded_schema() {
    static const std::string schema = R"SCHEMA([
  {
    "name": "Egap",
    "kind": "scalar-number",
    "units": "eV",
    "title": "electronic band gap",
    "description": "Band gap of the relaxed structure, taken as the difference between the conduction band minimum and the valence band maximum.",
    "status": "production"
  },
  {
    "name": "Egap_type",
    "kind": "scalar-string",
    "units": "",
    "title": "band gap type",
    "description": "Classification of the band structure: metal, half-metal, insulator-direct or insulator-indirect.",
    "status": "production"
  },
  {
    "name": "agl_debye",
    "kind": "scalar-number",
    "units": "K",
    "title": "Debye temperature",
    "description": "Debye temperature obtained from the quasi-harmonic Debye-Grueneisen model.",
    "status": "production"
  },
  {
    "name": "agl_thermal_conductivity_300K",
    "kind": "scalar-number",
    "units": "W/m*K",
    "title": "thermal conductivity at 300K",
    "description": "Lattice thermal conductivity at 300 K from the quasi-harmonic Debye-Grueneisen model.",
    "status": "production"
  },
  {
    "name": "auid",
    "kind": "scalar-string",
    "units": "",
    "title": "unique identifier",
    "description": "Permanent identifier of the database entry, stable across releases.",
    "status": "production"
  },
  {
    "name": "aurl",
    "kind": "scalar-string",
    "units": "",
    "title": "resource locator",
    "description": "Locator of the entry's own resource, used for per-property requests.",
    "status": "production"
  },
  {
    "name": "author",
    "kind": "string-list",
    "units": "",
    "title": "authors",
    "description": "Names of the researchers credited with the calculation.",
    "status": "production"
  },
  {
    "name": "catalog",
    "kind": "scalar-string",
    "units": "",
    "title": "catalog",
    "description": "Sub-catalog the entry belongs to, e.g. ICSD or one of the LIB prototype sets.",
    "status": "production"
  },
  {
    "name": "composition",
    "kind": "number-list",
    "units": "",
    "title": "composition counts",
    "description": "Number of atoms of each species in the cell, ordered as in the species list.",
    "status": "production"
  },
  {
    "name": "compound",
    "kind": "scalar-string",
    "units": "",
    "title": "compound formula",
    "description": "Chemical formula of the cell with per-species atom counts.",
    "status": "production"
  },
  {
    "name": "density",
    "kind": "scalar-number",
    "units": "g/cm^3",
    "title": "mass density",
    "description": "Mass density of the relaxed cell.",
    "status": "production"
  },
  {
    "name": "energy_atom",
    "kind": "scalar-number",
    "units": "eV/atom",
    "title": "energy per atom",
    "description": "Total energy of the relaxed cell divided by the number of atoms.",
    "status": "production"
  },
  {
    "name": "enthalpy_formation_atom",
    "kind": "scalar-number",
    "units": "eV/atom",
    "title": "formation enthalpy per atom",
    "description": "Formation enthalpy per atom relative to the ground states of the constituent elements.",
    "status": "production"
  },
  {
    "name": "geometry",
    "kind": "number-list",
    "units": "A,A,A,deg,deg,deg",
    "title": "lattice parameters",
    "description": "Conventional lattice parameters a, b, c and the angles alpha, beta, gamma of the relaxed cell.",
    "status": "production"
  },
  {
    "name": "kpoints",
    "kind": "kpoints",
    "units": "",
    "title": "k-point sampling",
    "description": "Reciprocal-space sampling: relaxation grid, optional static grid, band path segments and points per segment.",
    "status": "production"
  },
  {
    "name": "natoms",
    "kind": "scalar-number",
    "units": "",
    "title": "atom count",
    "description": "Number of atoms in the calculated cell.",
    "status": "production"
  },
  {
    "name": "nspecies",
    "kind": "scalar-number",
    "units": "",
    "title": "species count",
    "description": "Number of distinct atomic species in the cell.",
    "status": "production"
  },
  {
    "name": "positions_cartesian",
    "kind": "matrix",
    "units": "A",
    "title": "Cartesian positions",
    "description": "Cartesian coordinates of every atom in the relaxed cell, one row per atom.",
    "status": "production"
  },
  {
    "name": "positions_fractional",
    "kind": "matrix",
    "units": "",
    "title": "fractional positions",
    "description": "Fractional coordinates of every atom with respect to the relaxed cell vectors.",
    "status": "production"
  },
  {
    "name": "prototype",
    "kind": "scalar-string",
    "units": "",
    "title": "structure prototype",
    "description": "Label of the structural prototype the entry was generated from.",
    "status": "production"
  },
  {
    "name": "scintillation_attenuation_length",
    "kind": "scalar-number",
    "units": "cm",
    "title": "attenuation length",
    "description": "Scintillation attenuation length of the compound.",
    "status": "production"
  },
  {
    "name": "spacegroup_relax",
    "kind": "scalar-number",
    "units": "",
    "title": "relaxed space group",
    "description": "Space group number of the structure after relaxation.",
    "status": "production"
  },
  {
    "name": "species",
    "kind": "string-list",
    "units": "",
    "title": "species symbols",
    "description": "Chemical symbols of the distinct species in the cell, alphabetically ordered.",
    "status": "production"
  },
  {
    "name": "stoich",
    "kind": "number-list",
    "units": "",
    "title": "stoichiometry (legacy)",
    "description": "Legacy alias for the fractional stoichiometry; superseded by stoichiometry.",
    "status": "deprecated"
  },
  {
    "name": "stoichiometry",
    "kind": "number-list",
    "units": "",
    "title": "stoichiometry",
    "description": "Fractional composition of each species, ordered as in the species list and summing to one.",
    "status": "production"
  },
  {
    "name": "volume_cell",
    "kind": "scalar-number",
    "units": "A^3",
    "title": "cell volume",
    "description": "Volume of the relaxed cell.",
    "status": "production"
  }
]
)SCHEMA";
    return schema;
}

}  // namespace aflux
