#ifndef AFLUX_FILTER_HPP
#define AFLUX_FILTER_HPP

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aflux/keyword.hpp"
#include "aflux/value.hpp"

namespace aflux {

/// Comparison operand: exactly one of a decimal or a string.
class Literal {
public:
    static Literal number(double v) { return Literal(v); }
    static Literal text(std::string v) { return Literal(std::move(v)); }

    bool is_number() const { return std::holds_alternative<double>(value_); }
    bool is_text() const { return std::holds_alternative<std::string>(value_); }
    double as_number() const { return std::get<double>(value_); }
    const std::string& as_text() const { return std::get<std::string>(value_); }

    /// Structural equality; numbers compare bit-faithfully so that 0 and -0
    /// are distinct literals (they encode to distinct bytes).
    bool operator==(const Literal& other) const;

private:
    explicit Literal(double v) : value_(v) {}
    explicit Literal(std::string v) : value_(std::move(v)) {}

    std::variant<double, std::string> value_;
};

/// Comparison operators. On numbers GT/LT/EQ are strict comparisons; on
/// strings GT means starts-with, LT means ends-with, CONTAINS means
/// substring and EQ exact match.
enum class CompareOp { GT, LT, EQ, CONTAINS };

enum class BoolOp { And, Or };

const char* to_string(CompareOp op);

class FilterExpr;
using FilterRef = std::shared_ptr<const FilterExpr>;

struct CompareNode {
    std::string keyword;
    CompareOp op;
    Literal operand;
};

struct NotNode {
    FilterRef inner;
};

struct AndNode {
    FilterRef left;
    FilterRef right;
};

struct OrNode {
    FilterRef left;
    FilterRef right;
};

/// Immutable boolean filter tree. Every leaf is a comparison; inner nodes
/// are Not/And/Or. Values share subtrees freely.
class FilterExpr {
public:
    using Node = std::variant<CompareNode, NotNode, AndNode, OrNode>;

    explicit FilterExpr(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

    bool is_compare() const { return std::holds_alternative<CompareNode>(node_); }
    bool is_not() const { return std::holds_alternative<NotNode>(node_); }
    bool is_and() const { return std::holds_alternative<AndNode>(node_); }
    bool is_or() const { return std::holds_alternative<OrNode>(node_); }

    const CompareNode& as_compare() const { return std::get<CompareNode>(node_); }
    const NotNode& as_not() const { return std::get<NotNode>(node_); }
    const AndNode& as_and() const { return std::get<AndNode>(node_); }
    const OrNode& as_or() const { return std::get<OrNode>(node_); }

private:
    Node node_;
};

/// Comparison leaf. Throws InvalidComparisonError for CONTAINS with a
/// numeric literal; all other validation happens in validate().
FilterExpr compare(std::string keyword, CompareOp op, Literal operand);

FilterExpr negate(FilterExpr e);
FilterExpr combine(BoolOp op, FilterExpr a, FilterExpr b);

/// Semantically equivalent tree in canonical form: negation pushed down to
/// the comparison leaves (De Morgan) and And/Or chains left-associated.
/// Idempotent.
FilterExpr normalize(const FilterExpr& e);

bool structurally_equal(const FilterExpr& a, const FilterExpr& b);

struct ValidationIssue {
    std::string keyword;
    CompareOp op;
    std::string reason;
};

/// Empty iff every leaf references a known keyword and its operand type
/// fits the keyword kind (numbers against numeric kinds, text against
/// string kinds, CONTAINS only on string kinds, no comparisons on
/// matrix/kpoints kinds).
std::vector<ValidationIssue> validate(const FilterExpr& e, const KeywordRegistry& registry);

/// validate() that throws ValidationError when the report is non-empty.
void require_valid(const FilterExpr& e, const KeywordRegistry& registry);

/// Property accessor used during evaluation: value for a keyword, or
/// nullptr when the record does not carry it.
using PropertyFn = std::function<const TypedValue*(const std::string&)>;

/// One comparison leaf against one value. List kinds match when any
/// element matches; matrices, kpoints and operand/value type mismatches
/// never match.
bool match_compare(CompareOp op, const Literal& operand, const TypedValue& value);

/// Classical evaluation: a comparison on a missing property is false and
/// Not/And/Or behave as ordinary boolean connectives.
bool evaluate(const FilterExpr& e, const PropertyFn& property);

/// Distinct keyword names in order of first appearance.
std::vector<std::string> keywords_of(const FilterExpr& e);

/// Fluent construction mirroring the query operators: key("Egap") > 6.0,
/// key("author") % "curtarolo", ~e, a & b, a | b.
struct KeywordRef {
    std::string name;
};

inline KeywordRef key(std::string name) { return {std::move(name)}; }

inline FilterExpr operator>(const KeywordRef& k, double v) {
    return compare(k.name, CompareOp::GT, Literal::number(v));
}
inline FilterExpr operator<(const KeywordRef& k, double v) {
    return compare(k.name, CompareOp::LT, Literal::number(v));
}
inline FilterExpr operator==(const KeywordRef& k, double v) {
    return compare(k.name, CompareOp::EQ, Literal::number(v));
}
inline FilterExpr operator>(const KeywordRef& k, const std::string& v) {
    return compare(k.name, CompareOp::GT, Literal::text(v));
}
inline FilterExpr operator<(const KeywordRef& k, const std::string& v) {
    return compare(k.name, CompareOp::LT, Literal::text(v));
}
inline FilterExpr operator==(const KeywordRef& k, const std::string& v) {
    return compare(k.name, CompareOp::EQ, Literal::text(v));
}
inline FilterExpr operator%(const KeywordRef& k, const std::string& v) {
    return compare(k.name, CompareOp::CONTAINS, Literal::text(v));
}
inline FilterExpr operator>(const KeywordRef& k, const char* v) { return k > std::string(v); }
inline FilterExpr operator<(const KeywordRef& k, const char* v) { return k < std::string(v); }
inline FilterExpr operator==(const KeywordRef& k, const char* v) { return k == std::string(v); }
inline FilterExpr operator%(const KeywordRef& k, const char* v) { return k % std::string(v); }

inline FilterExpr operator~(FilterExpr e) { return negate(std::move(e)); }
inline FilterExpr operator&(FilterExpr a, FilterExpr b) {
    return combine(BoolOp::And, std::move(a), std::move(b));
}
inline FilterExpr operator|(FilterExpr a, FilterExpr b) {
    return combine(BoolOp::Or, std::move(a), std::move(b));
}

}  // namespace aflux

#endif  // AFLUX_FILTER_HPP
