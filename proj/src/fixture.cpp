#include "aflux/fixture.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "json.hpp"

#include "aflux/value.hpp"

namespace aflux {

namespace {

constexpr std::size_t kRecordCount = 200;
constexpr std::size_t kDesignated = 165;
constexpr const char* kDesignatedAuid = "aflow:ed51b5f9a1f6c0f3";

const std::vector<std::string>& element_pool() {
    static const std::vector<std::string> pool = {
        "Ag", "Al", "As", "Au", "B",  "Ba", "Be", "Bi", "C",  "Ca", "Cd", "Co", "Cr", "Cu",
        "Fe", "Ga", "Ge", "Hf", "In", "Ir", "K",  "La", "Li", "Mg", "Mn", "Mo", "Na", "Nb",
        "Ni", "O",  "Os", "P",  "Pb", "Pd", "Pt", "Re", "Rh", "Ru", "S",  "Sb", "Sc", "Se",
        "Si", "Sn", "Sr", "Ta", "Te", "Ti", "Tl", "V",  "W",  "Y",  "Zn", "Zr"};
    return pool;
}

const std::vector<std::string>& author_pool() {
    static const std::vector<std::string> pool = {
        "curtarolo", "s.curtarolo", "curtarolo.s", "toher", "oses",
        "taylor",    "rose",        "hart",        "levy",  "mehl"};
    return pool;
}

std::string hex8(std::uint32_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 7; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

Record designated_record() {
    Record r;
    r.auid = kDesignatedAuid;
    r.aurl = "/AFLOWDATA/ICSD_WEB/CUB/Mg1O2_10165";
    r.compound = "Mg1O2";
    r.properties["Egap"] = "8.8";  // (605 + 5*55) / 100, the band formula
    r.properties["Egap_type"] = "insulator-direct";
    r.properties["agl_thermal_conductivity_300K"] = "57.5";  // (2500 - 35*55) / 10
    r.properties["density"] = "7.605";                       // (1500 + 37*165) / 1000
    r.properties["volume_cell"] = "247.285";
    r.properties["natoms"] = "3";
    r.properties["nspecies"] = "2";
    r.properties["species"] = "Mg,O";
    r.properties["composition"] = "1,2";
    r.properties["stoichiometry"] =
        format_number(1.0 / 3.0) + "," + format_number(2.0 / 3.0);
    r.properties["geometry"] = "6.2764,6.2764,6.2764,90,90,90";
    r.properties["positions_cartesian"] =
        "0,0,-0;1.5691,1.5691,1.5691;4.7073,4.7073,4.7073";
    r.properties["kpoints"] = "12,12,12;18,18,18;G-X,X-W,W-K;20";
    r.properties["author"] = "curtarolo,toher";
    r.properties["spacegroup_relax"] = "225";
    r.properties["energy_atom"] = "-5.813";
    r.properties["enthalpy_formation_atom"] = "-2.056";
    r.properties["agl_debye"] = "743";
    r.properties["catalog"] = "ICSD";
    r.properties["prototype"] = "AB2_cF12_225_a_c";
    return r;
}

std::vector<Record> build_records() {
    std::mt19937 rng(20260816u);
    auto draw = [&rng]() -> std::uint32_t { return rng(); };

    std::vector<Record> records;
    records.reserve(kRecordCount);
    std::set<std::string> used_auids = {kDesignatedAuid};

    for (std::size_t r = 0; r < kRecordCount; ++r) {
        if (r == kDesignated) {
            records.push_back(designated_record());
            continue;
        }
        Record rec;

        std::string auid;
        do {
            std::uint32_t hi = draw();
            std::uint32_t lo = draw();
            auid = "aflow:" + hex8(hi) + hex8(lo);
        } while (!used_auids.insert(auid).second);
        rec.auid = auid;

        // Structural identity: species, counts, cell, positions.
        std::size_t nspecies = 1 + draw() % 3;
        std::vector<std::string> species;
        while (species.size() < nspecies) {
            const std::string& candidate = element_pool()[draw() % element_pool().size()];
            if (std::find(species.begin(), species.end(), candidate) == species.end())
                species.push_back(candidate);
        }
        std::sort(species.begin(), species.end());
        std::vector<int> counts;
        int natoms = 0;
        for (std::size_t j = 0; j < nspecies; ++j) {
            counts.push_back(1 + static_cast<int>(draw() % 4));
            natoms += counts.back();
        }
        std::string compound;
        for (std::size_t j = 0; j < nspecies; ++j)
            compound += species[j] + std::to_string(counts[j]);
        rec.compound = compound;

        std::vector<std::string> geom;
        for (int j = 0; j < 3; ++j)
            geom.push_back(format_number((3000 + draw() % 9000) / 1000.0));
        // Angles capped at 119 degrees: with every angle in [60, 119] no
        // integer combination can make the cell volume vanish.
        for (int j = 0; j < 3; ++j)
            geom.push_back(format_number(static_cast<double>(60 + draw() % 60)));
        std::string geometry = join(geom, ',');

        std::vector<std::string> rows;
        for (int atom = 0; atom < natoms; ++atom) {
            if (atom == 0) {
                rows.push_back("0,0,0");
                continue;
            }
            std::vector<std::string> coords;
            for (int j = 0; j < 3; ++j)
                coords.push_back(format_number((draw() % 120000) / 10000.0));
            rows.push_back(join(coords, ','));
        }
        std::string positions = join(rows, ';');

        std::string catalog = r % 2 == 0 ? "ICSD" : (r % 4 == 1 ? "LIB2" : "LIB3");
        static const char* lattices[] = {"FCC", "BCC", "HEX", "RHL", "TET", "CUB"};
        std::string lattice = lattices[draw() % 6];
        std::string shelf = catalog == "ICSD" ? "ICSD_WEB" : catalog + "_RAW";
        rec.aurl = "/AFLOWDATA/" + shelf + "/" + lattice + "/" + compound + "_" +
                   std::to_string(10000 + r);

        // Band gap: r%3==0 below 186 is the >6 band (62 records); r%3==1 is
        // the (0,2) population with ten gaps removed; r%3==2 spans 3.3..6.0,
        // grazing both the 6.0 boundary and the (5,7) window.
        bool has_egap = true;
        double egap = 0;
        if (r % 3 == 0 && r < 186) {
            std::size_t i = r / 3;
            egap = static_cast<double>(605 + 5 * static_cast<int>(i)) / 100.0;
        } else if (r % 3 == 1) {
            if (r % 7 == 1)
                has_egap = false;
            else
                egap = static_cast<double>(r % 20) / 10.0;
        } else if (r % 3 == 2) {
            egap = static_cast<double>(33 + r % 28) / 10.0;
        } else {
            egap = static_cast<double>(26 + r % 11) / 10.0;
        }
        if (has_egap) {
            rec.properties["Egap"] = format_number(egap);
            rec.properties["Egap_type"] =
                egap == 0 ? "metal"
                          : (r % 2 == 0 ? "insulator-direct" : "insulator-indirect");
        }

        // Conductivity: the >6 band gets a strictly decreasing sequence
        // (absent for the last three members); elsewhere present on even r.
        if (r % 3 == 0 && r < 186) {
            std::size_t i = r / 3;
            if (i <= 58)
                rec.properties["agl_thermal_conductivity_300K"] =
                    format_number(static_cast<double>(2500 - 35 * static_cast<int>(i)) / 10.0);
        } else if (r % 2 == 0) {
            rec.properties["agl_thermal_conductivity_300K"] =
                format_number(static_cast<double>(20 + (r * 13) % 970) / 10.0);
        }

        rec.properties["density"] =
            format_number(static_cast<double>(1500 + 37 * static_cast<int>(r)) / 1000.0);
        if (r % 10 != 9)
            rec.properties["volume_cell"] =
                format_number(static_cast<double>(4000 + 23 * r + draw() % 2000) / 10.0);

        rec.properties["natoms"] = std::to_string(natoms);
        rec.properties["nspecies"] = std::to_string(nspecies);

        if (r % 8 != 5) {
            std::size_t names = 1 + draw() % 3;
            std::vector<std::string> authors;
            while (authors.size() < names) {
                const std::string& candidate = author_pool()[draw() % author_pool().size()];
                if (std::find(authors.begin(), authors.end(), candidate) == authors.end())
                    authors.push_back(candidate);
            }
            rec.properties["author"] = join(authors, ',');
        }

        std::vector<std::string> count_strs;
        std::vector<std::string> stoich_strs;
        for (std::size_t j = 0; j < nspecies; ++j) {
            count_strs.push_back(std::to_string(counts[j]));
            stoich_strs.push_back(format_number(static_cast<double>(counts[j]) / natoms));
        }
        rec.properties["species"] = join(species, ',');
        rec.properties["composition"] = join(count_strs, ',');
        rec.properties["stoichiometry"] = join(stoich_strs, ',');
        if (r % 25 == 7) rec.properties["stoich"] = rec.properties["stoichiometry"];
        rec.properties["geometry"] = geometry;
        rec.properties["positions_cartesian"] = positions;

        if (r % 9 != 8) {
            int g1 = 6 + static_cast<int>(draw() % 14);
            int g2 = g1 + static_cast<int>(draw() % 3);
            int g3 = g1 + static_cast<int>(draw() % 3);
            std::string relax = std::to_string(g1) + "," + std::to_string(g2) + "," +
                                std::to_string(g3);
            std::string stat;
            if (r % 5 != 3)
                stat = std::to_string(g1 + 6) + "," + std::to_string(g2 + 6) + "," +
                       std::to_string(g3 + 6);
            static const char* paths[] = {"G-X,X-W,W-K", "G-L,L-W", "G-M,M-K,K-G"};
            std::string path = paths[draw() % 3];
            int pps = 16 + 4 * static_cast<int>(draw() % 3);
            rec.properties["kpoints"] = relax + ";" + stat + ";" + path + ";" +
                                        std::to_string(pps);
        }

        if (r % 4 != 3)
            rec.properties["spacegroup_relax"] =
                std::to_string(1 + draw() % 230);
        if (r % 6 != 5)
            rec.properties["energy_atom"] =
                format_number(-static_cast<double>(3000 + draw() % 6000) / 1000.0);
        if (r % 5 != 4)
            rec.properties["enthalpy_formation_atom"] =
                format_number(-static_cast<double>(draw() % 3000) / 1000.0);
        if (r % 3 != 1)
            rec.properties["agl_debye"] = std::to_string(200 + draw() % 800);
        if (r % 6 == 0)
            rec.properties["scintillation_attenuation_length"] =
                format_number(static_cast<double>(10 + draw() % 400) / 10.0);
        if (r % 5 != 2) {
            static const char* prototypes[] = {"AB_cF8_225_a_b", "A2B_cF12_225_a_c",
                                               "AB2_hP9_164_bd_a", "A_cI2_229_a",
                                               "AB_tP2_123_a_d"};
            rec.properties["prototype"] = prototypes[draw() % 5];
        }
        rec.properties["catalog"] = catalog;

        // A few records miss parts of the structural quartet so that
        // incomplete-structure handling stays exercised.
        switch (r) {
            case 7:
                rec.properties.erase("geometry");
                rec.properties.erase("species");
                rec.properties.erase("composition");
                rec.properties.erase("positions_cartesian");
                break;
            case 34:
                rec.properties.erase("geometry");
                break;
            case 71:
                rec.properties.erase("species");
                break;
            case 98:
                rec.properties.erase("composition");
                break;
            case 133:
                rec.properties.erase("positions_cartesian");
                break;
            case 158:
                rec.properties.erase("geometry");
                rec.properties.erase("positions_cartesian");
                break;
            default:
                break;
        }

        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace

Dataset fixture_dataset() { return Dataset(build_records(), embedded_registry()); }

std::string fixture_dataset_json() {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const Record& r : build_records()) {
        nlohmann::ordered_json item;
        item["auid"] = r.auid;
        item["aurl"] = r.aurl;
        item["compound"] = r.compound;
        nlohmann::ordered_json props = nlohmann::ordered_json::object();
        for (const auto& [keyword, raw] : r.properties) props[keyword] = raw;
        item["properties"] = std::move(props);
        doc.push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

const char* fixture_designated_auid() { return kDesignatedAuid; }

}  // namespace aflux
