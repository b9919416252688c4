#pragma once

// Shared test plumbing: a brute-force record matcher and sorter written
// directly against raw strings (independent of the library's decode,
// match_compare and evaluate paths), random generators for filters, plans
// and typed values, a numeric cell-to-parameters inverter, and one
// in-process simulator server shared by the whole binary.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "aflux/codec.hpp"
#include "aflux/filter.hpp"
#include "aflux/fixture.hpp"
#include "aflux/query.hpp"
#include "aflux/server.hpp"
#include "aflux/simulator.hpp"

namespace testsupport {

using namespace aflux;

// ---------------------------------------------------------------------------
// Brute-force evaluation over raw record strings.

inline std::vector<std::string> split_raw(const std::string& s, char sep) {
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

inline const std::string* record_raw(const Record& r, const std::string& keyword) {
    if (keyword == "auid") return &r.auid;
    if (keyword == "aurl") return &r.aurl;
    if (keyword == "compound") return &r.compound;
    auto it = r.properties.find(keyword);
    return it == r.properties.end() ? nullptr : &it->second;
}

inline double brute_number(const std::string& token) {
    return std::strtod(token.c_str(), nullptr);
}

inline bool brute_number_op(CompareOp op, double value, double operand) {
    switch (op) {
        case CompareOp::GT: return value > operand;
        case CompareOp::LT: return value < operand;
        case CompareOp::EQ: return value == operand;
        case CompareOp::CONTAINS: return false;
    }
    return false;
}

inline bool brute_text_op(CompareOp op, const std::string& value, const std::string& operand) {
    switch (op) {
        case CompareOp::GT:
            return value.size() >= operand.size() && value.compare(0, operand.size(), operand) == 0;
        case CompareOp::LT:
            return value.size() >= operand.size() &&
                   value.compare(value.size() - operand.size(), operand.size(), operand) == 0;
        case CompareOp::EQ:
            return value == operand;
        case CompareOp::CONTAINS:
            return value.find(operand) != std::string::npos;
    }
    return false;
}

inline bool brute_leaf(const Record& r, const KeywordRegistry& registry, const CompareNode& c) {
    const std::string* raw = record_raw(r, c.keyword);
    if (!raw) return false;
    ValueKind kind = registry.lookup(c.keyword).kind;
    if (c.operand.is_number()) {
        double operand = c.operand.as_number();
        if (kind == ValueKind::ScalarNumber) return brute_number_op(c.op, brute_number(*raw), operand);
        if (kind == ValueKind::NumberList) {
            for (const auto& field : split_raw(*raw, ','))
                if (brute_number_op(c.op, brute_number(field), operand)) return true;
        }
        return false;
    }
    const std::string& operand = c.operand.as_text();
    if (kind == ValueKind::ScalarString) return brute_text_op(c.op, *raw, operand);
    if (kind == ValueKind::StringList) {
        for (const auto& element : split_raw(*raw, ','))
            if (brute_text_op(c.op, element, operand)) return true;
    }
    return false;
}

inline bool brute_holds(const FilterExpr& e, const Record& r, const KeywordRegistry& registry) {
    if (e.is_compare()) return brute_leaf(r, registry, e.as_compare());
    if (e.is_not()) return !brute_holds(*e.as_not().inner, r, registry);
    if (e.is_and())
        return brute_holds(*e.as_and().left, r, registry) &&
               brute_holds(*e.as_and().right, r, registry);
    return brute_holds(*e.as_or().left, r, registry) ||
           brute_holds(*e.as_or().right, r, registry);
}

inline bool brute_plan_matches(const QueryPlan& plan, const Record& r,
                               const KeywordRegistry& registry) {
    for (const auto& entry : plan.matchbook)
        if (entry.filter && !brute_holds(*entry.filter, r, registry)) return false;
    for (const auto& group : plan.groups)
        if (!brute_holds(group, r, registry)) return false;
    return true;
}

struct BruteKey {
    bool present = false;
    bool numeric = false;
    double number = 0;
    std::string bytes;
};

inline BruteKey brute_key(const Record& r, const KeywordRegistry& registry,
                          const std::string& keyword) {
    BruteKey key;
    const std::string* raw = record_raw(r, keyword);
    if (!raw) return key;
    key.present = true;
    ValueKind kind = registry.lookup(keyword).kind;
    if (kind == ValueKind::ScalarNumber) {
        key.numeric = true;
        key.number = brute_number(*raw);
    } else if (kind == ValueKind::NumberList) {
        key.numeric = true;
        key.number = brute_number(split_raw(*raw, ',').front());
    } else {
        key.bytes = *raw;
    }
    return key;
}

// Full match list of a plan in rank order, as auids, ignoring the page cut.
inline std::vector<std::string> brute_ranked_auids(const std::vector<Record>& records,
                                                   const KeywordRegistry& registry,
                                                   const QueryPlan& plan) {
    std::vector<std::size_t> matched;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (brute_plan_matches(plan, records[i], registry)) matched.push_back(i);

    const std::string& order_kw = plan.ordering_keyword();
    bool desc = plan.descending();
    std::sort(matched.begin(), matched.end(), [&](std::size_t a, std::size_t b) {
        BruteKey ka = brute_key(records[a], registry, order_kw);
        BruteKey kb = brute_key(records[b], registry, order_kw);
        if (ka.present != kb.present) return ka.present;
        if (ka.present) {
            if (ka.numeric) {
                if (ka.number != kb.number) return desc ? ka.number > kb.number
                                                        : ka.number < kb.number;
            } else if (ka.bytes != kb.bytes) {
                return desc ? ka.bytes > kb.bytes : ka.bytes < kb.bytes;
            }
        }
        return records[a].auid < records[b].auid;
    });

    std::vector<std::string> auids;
    auids.reserve(matched.size());
    for (std::size_t i : matched) auids.push_back(records[i].auid);
    return auids;
}

// ---------------------------------------------------------------------------
// Cell matrix back to lattice parameters (for round-trip checks).

struct LatticeParams {
    double a, b, c, alpha, beta, gamma;
};

inline LatticeParams invert_cell(const std::array<std::array<double, 3>, 3>& cell) {
    auto norm = [](const std::array<double, 3>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    auto angle = [&](const std::array<double, 3>& u, const std::array<double, 3>& v) {
        double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        return std::acos(dot / (norm(u) * norm(v))) * 180.0 / std::acos(-1.0);
    };
    return {norm(cell[0]),           norm(cell[1]),           norm(cell[2]),
            angle(cell[1], cell[2]), angle(cell[0], cell[2]), angle(cell[0], cell[1])};
}

inline bool close_rel(double got, double want, double rel) {
    double scale = std::max(std::abs(got), std::abs(want));
    return std::abs(got - want) <= rel * std::max(scale, 1.0);
}

// ---------------------------------------------------------------------------
// Random generators. Every test seeds its own engine so runs are stable.

struct PoolKeyword {
    const char* name;
    ValueKind kind;
};

// Comparable fixture keywords with operand pools that overlap the fixture
// value ranges, so random filters select nontrivial subsets.
inline const std::vector<PoolKeyword>& filter_pool() {
    static const std::vector<PoolKeyword> pool = {
        {"Egap", ValueKind::ScalarNumber},
        {"agl_thermal_conductivity_300K", ValueKind::ScalarNumber},
        {"density", ValueKind::ScalarNumber},
        {"natoms", ValueKind::ScalarNumber},
        {"nspecies", ValueKind::ScalarNumber},
        {"energy_atom", ValueKind::ScalarNumber},
        {"volume_cell", ValueKind::ScalarNumber},
        {"agl_debye", ValueKind::ScalarNumber},
        {"spacegroup_relax", ValueKind::ScalarNumber},
        {"composition", ValueKind::NumberList},
        {"stoichiometry", ValueKind::NumberList},
        {"author", ValueKind::StringList},
        {"species", ValueKind::StringList},
        {"compound", ValueKind::ScalarString},
        {"catalog", ValueKind::ScalarString},
        {"prototype", ValueKind::ScalarString},
    };
    return pool;
}

inline double random_operand_number(std::mt19937& rng, const std::string& keyword) {
    auto pick = [&](std::initializer_list<double> values) {
        std::vector<double> v(values);
        return v[rng() % v.size()];
    };
    if (keyword == "Egap") return pick({0, 0.5, 1, 2, 3.3, 5, 6, 6.05, 7, 8.8, 9.1});
    if (keyword == "agl_thermal_conductivity_300K") return pick({2, 46.5, 57.5, 100, 180, 250});
    if (keyword == "density") return pick({1.5, 2.5, 4, 5.2, 7.605, 8.9});
    if (keyword == "natoms") return pick({1, 2, 3, 4, 6, 8, 10, 12});
    if (keyword == "nspecies") return pick({1, 2, 3});
    if (keyword == "energy_atom") return pick({-9, -5.813, -4, -3, -0.5});
    if (keyword == "volume_cell") return pick({247.285, 400, 500, 600, 700, 820});
    if (keyword == "agl_debye") return pick({200, 400, 743, 900, 999});
    if (keyword == "spacegroup_relax") return pick({1, 62, 139, 194, 225, 230});
    if (keyword == "composition") return pick({1, 2, 3, 4});
    if (keyword == "stoichiometry") return pick({0.25, 1.0 / 3, 0.5, 2.0 / 3, 0.75});
    return static_cast<double>(rng() % 100) / 10.0;
}

inline std::string random_operand_text(std::mt19937& rng, const std::string& keyword) {
    auto pick = [&](std::initializer_list<const char*> values) {
        std::vector<const char*> v(values);
        return std::string(v[rng() % v.size()]);
    };
    if (keyword == "author")
        return pick({"curtarolo", "toher", "oses", "s.", ".s", "rose", "taylor", "hart", "o"});
    if (keyword == "species") return pick({"Si", "O", "Mg", "Al", "Fe", "Cu", "N", "C", "e"});
    if (keyword == "compound") return pick({"O2", "Si", "Mg", "1", "3", "Fe"});
    if (keyword == "catalog") return pick({"ICSD", "LIB2", "LIB3", "LIB", "I"});
    if (keyword == "prototype") return pick({"AB2_cF12_225_a_c", "225", "AB", "_a_"});
    return pick({"a", "b", "x"});
}

inline FilterExpr random_leaf(std::mt19937& rng, const PoolKeyword& kw) {
    if (kw.kind == ValueKind::ScalarNumber || kw.kind == ValueKind::NumberList) {
        CompareOp ops[] = {CompareOp::GT, CompareOp::LT, CompareOp::EQ};
        return compare(kw.name, ops[rng() % 3],
                       Literal::number(random_operand_number(rng, kw.name)));
    }
    CompareOp ops[] = {CompareOp::GT, CompareOp::LT, CompareOp::EQ, CompareOp::CONTAINS};
    return compare(kw.name, ops[rng() % 4], Literal::text(random_operand_text(rng, kw.name)));
}

// Random validating filter over the fixture keyword pool.
inline FilterExpr random_filter(std::mt19937& rng, int depth) {
    const auto& pool = filter_pool();
    if (depth <= 0 || rng() % 100 < 35) return random_leaf(rng, pool[rng() % pool.size()]);
    unsigned roll = rng() % 100;
    if (roll < 20) return negate(random_filter(rng, depth - 1));
    BoolOp op = roll < 60 ? BoolOp::And : BoolOp::Or;
    return combine(op, random_filter(rng, depth - 1), random_filter(rng, depth - 1));
}

// Random filter whose leaves all use one keyword (matchbook entry shape).
inline FilterExpr random_filter_single(std::mt19937& rng, const PoolKeyword& kw, int depth) {
    if (depth <= 0 || rng() % 100 < 40) return random_leaf(rng, kw);
    unsigned roll = rng() % 100;
    if (roll < 20) return negate(random_filter_single(rng, kw, depth - 1));
    BoolOp op = roll < 60 ? BoolOp::And : BoolOp::Or;
    return combine(op, random_filter_single(rng, kw, depth - 1),
                   random_filter_single(rng, kw, depth - 1));
}

// Random plan already in the codec's normal form: keyword-unique matchbook,
// normalized per-entry filters, normalized multi-keyword groups, paging in
// range.
inline QueryPlan random_plan(std::mt19937& rng) {
    const auto& pool = filter_pool();
    QueryPlan plan;

    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::size_t entries = 1 + rng() % 4;
    for (std::size_t i = 0; i < entries; ++i) {
        const PoolKeyword& kw = pool[order[i]];
        MatchbookEntry entry;
        entry.keyword = kw.name;
        if (rng() % 100 < 70) entry.filter = normalize(random_filter_single(rng, kw, 2));
        entry.hidden = rng() % 100 < 25;
        plan.matchbook.push_back(std::move(entry));
    }

    std::size_t groups = rng() % 3;
    while (plan.groups.size() < groups) {
        std::size_t ia = rng() % pool.size();
        std::size_t ib = (ia + 1 + rng() % (pool.size() - 1)) % pool.size();
        FilterExpr left = random_filter_single(rng, pool[ia], 1);
        FilterExpr right = random_filter_single(rng, pool[ib], 1);
        FilterExpr group = rng() % 2 ? combine(BoolOp::Or, std::move(left), std::move(right))
                                     : combine(BoolOp::Or, std::move(right), std::move(left));
        // Or-rooted only: a conjunction at the top of a group is not a
        // normalized factor (assembly would split it into entries).
        if (rng() % 2) {
            FilterExpr third = random_filter_single(rng, pool[rng() % pool.size()], 1);
            if (rng() % 2)
                third = combine(BoolOp::And, std::move(third),
                                random_filter_single(rng, pool[rng() % pool.size()], 1));
            group = combine(BoolOp::Or, std::move(group), std::move(third));
        }
        FilterExpr normalized = normalize(group);
        if (keywords_of(normalized).size() < 2) continue;  // collapsed; draw again
        plan.groups.push_back(std::move(normalized));
    }

    int page = 1 + static_cast<int>(rng() % 500);
    plan.page = rng() % 100 < 30 ? -page : page;
    plan.page_size = 1 + static_cast<int>(rng() % 200);
    return plan;
}

inline TypedValue random_value(std::mt19937& rng, ValueKind kind) {
    auto number = [&]() -> double {
        switch (rng() % 5) {
            case 0: return static_cast<double>(rng() % 2001) - 1000.0;
            case 1: return (static_cast<double>(rng() % 200001) - 100000.0) / 100.0;
            case 2: return (static_cast<double>(rng() % 19) - 9.0) * 1e-6;
            case 3: return static_cast<double>(rng() % 1000) * 1e12;
            default: return -0.0;
        }
    };
    auto label = [&]() {
        static const char* names[] = {"G", "X", "W", "K", "L", "U", "M", "A", "R", "Z"};
        return std::string(names[rng() % 10]);
    };
    auto word = [&]() {
        static const char* words[] = {"alpha", "Mg",  "ICSD", "a-b", "x_1",
                                      "0.5",   "end", "mid",  "N"};
        return std::string(words[rng() % 9]);
    };
    switch (kind) {
        case ValueKind::ScalarNumber:
            return TypedValue::number(number());
        case ValueKind::NumberList: {
            std::vector<double> v(1 + rng() % 6);
            for (auto& x : v) x = number();
            return TypedValue::number_list(std::move(v));
        }
        case ValueKind::ScalarString:
            return TypedValue::text(word() + (rng() % 2 ? "," + word() : ""));
        case ValueKind::StringList: {
            std::vector<std::string> v(1 + rng() % 5);
            for (auto& s : v) s = word();
            return TypedValue::text_list(std::move(v));
        }
        case ValueKind::Matrix: {
            TypedValue::Matrix m(1 + rng() % 4);
            std::size_t cols = 1 + rng() % 4;
            for (auto& row : m) {
                row.resize(cols);
                for (auto& x : row) x = number();
            }
            return TypedValue::matrix(std::move(m));
        }
        case ValueKind::Kpoints: {
            Kpoints kp;
            for (auto& g : kp.relaxation_grid) g = 1 + static_cast<int>(rng() % 30);
            if (rng() % 2) {
                std::array<int, 3> grid{};
                for (auto& g : grid) g = 1 + static_cast<int>(rng() % 30);
                kp.static_grid = grid;
            }
            std::size_t segments = 1 + rng() % 4;
            for (std::size_t i = 0; i < segments; ++i)
                kp.band_path.push_back(label() + "-" + label());
            kp.points_per_segment = 1 + static_cast<int>(rng() % 40);
            return TypedValue::kpoints(kp);
        }
    }
    return TypedValue::number(0);
}

// ---------------------------------------------------------------------------
// One in-process simulator on the fixture dataset per test binary.

inline SimulatorServer& shared_server() {
    static SimulatorServer server(fixture_dataset(), 0);
    return server;
}

inline std::string shared_root() { return shared_server().root(); }

// Fresh transport per call so cache statistics start at zero.
inline Query fixture_query(int page_size = 100) {
    return Query(shared_root(), page_size, embedded_registry(),
                 std::make_shared<Transport>(TransportOptions{}));
}

inline std::vector<std::string> auids_of(const std::vector<Entry>& entries) {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.auid());
    return out;
}

}  // namespace testsupport
