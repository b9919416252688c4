#include "aflux/filter.hpp"

#include <algorithm>
#include <cmath>

#include "aflux/errors.hpp"

namespace aflux {

namespace {

FilterRef ref(FilterExpr e) { return std::make_shared<const FilterExpr>(std::move(e)); }

FilterExpr clone(const FilterExpr& e) { return e; }

// Negation pushed to the leaves; `negated` tracks the pending Not.
FilterExpr push_not(const FilterExpr& e, bool negated) {
    if (e.is_compare()) {
        if (negated) return FilterExpr(NotNode{ref(clone(e))});
        return clone(e);
    }
    if (e.is_not()) {
        return push_not(*e.as_not().inner, !negated);
    }
    if (e.is_and()) {
        const auto& n = e.as_and();
        FilterExpr left = push_not(*n.left, negated);
        FilterExpr right = push_not(*n.right, negated);
        if (negated) return FilterExpr(OrNode{ref(std::move(left)), ref(std::move(right))});
        return FilterExpr(AndNode{ref(std::move(left)), ref(std::move(right))});
    }
    const auto& n = e.as_or();
    FilterExpr left = push_not(*n.left, negated);
    FilterExpr right = push_not(*n.right, negated);
    if (negated) return FilterExpr(AndNode{ref(std::move(left)), ref(std::move(right))});
    return FilterExpr(OrNode{ref(std::move(left)), ref(std::move(right))});
}

FilterExpr left_associate(const FilterExpr& e);

// Collects the maximal chain of `op` nodes in left-to-right order, then
// rebuilds it left-nested so equivalent chains share one shape.
void collect_chain(const FilterExpr& e, BoolOp op, std::vector<FilterExpr>& parts) {
    if (op == BoolOp::And && e.is_and()) {
        collect_chain(*e.as_and().left, op, parts);
        collect_chain(*e.as_and().right, op, parts);
        return;
    }
    if (op == BoolOp::Or && e.is_or()) {
        collect_chain(*e.as_or().left, op, parts);
        collect_chain(*e.as_or().right, op, parts);
        return;
    }
    parts.push_back(left_associate(e));
}

FilterExpr fold_left(BoolOp op, std::vector<FilterExpr> parts) {
    FilterExpr acc = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (op == BoolOp::And) {
            acc = FilterExpr(AndNode{ref(std::move(acc)), ref(std::move(parts[i]))});
        } else {
            acc = FilterExpr(OrNode{ref(std::move(acc)), ref(std::move(parts[i]))});
        }
    }
    return acc;
}

FilterExpr left_associate(const FilterExpr& e) {
    if (e.is_and() || e.is_or()) {
        BoolOp op = e.is_and() ? BoolOp::And : BoolOp::Or;
        std::vector<FilterExpr> parts;
        collect_chain(e, op, parts);
        return fold_left(op, std::move(parts));
    }
    if (e.is_not()) {
        return FilterExpr(NotNode{ref(left_associate(*e.as_not().inner))});
    }
    return clone(e);
}

void collect_issues(const FilterExpr& e, const KeywordRegistry& registry,
                    std::vector<ValidationIssue>& out) {
    if (e.is_compare()) {
        const auto& c = e.as_compare();
        if (!registry.contains(c.keyword)) {
            out.push_back({c.keyword, c.op, "unknown keyword"});
            return;
        }
        const Keyword& kw = registry.lookup(c.keyword);
        if (!is_comparable_kind(kw.kind)) {
            out.push_back({c.keyword, c.op,
                           std::string(to_string(kw.kind)) + " keywords do not support comparisons"});
            return;
        }
        if (c.op == CompareOp::CONTAINS && !is_string_kind(kw.kind)) {
            out.push_back({c.keyword, c.op, "CONTAINS requires a string keyword"});
            return;
        }
        if (c.operand.is_number() && !is_numeric_kind(kw.kind)) {
            out.push_back({c.keyword, c.op, "numeric literal against string keyword"});
            return;
        }
        if (c.operand.is_text() && !is_string_kind(kw.kind)) {
            out.push_back({c.keyword, c.op, "string literal against numeric keyword"});
            return;
        }
        return;
    }
    if (e.is_not()) {
        collect_issues(*e.as_not().inner, registry, out);
        return;
    }
    if (e.is_and()) {
        collect_issues(*e.as_and().left, registry, out);
        collect_issues(*e.as_and().right, registry, out);
        return;
    }
    collect_issues(*e.as_or().left, registry, out);
    collect_issues(*e.as_or().right, registry, out);
}

bool match_number(CompareOp op, double operand, double value) {
    switch (op) {
        case CompareOp::GT: return value > operand;
        case CompareOp::LT: return value < operand;
        case CompareOp::EQ: return value == operand;  // -0 == 0 by design of ==
        case CompareOp::CONTAINS: return false;
    }
    return false;
}

bool match_text(CompareOp op, const std::string& operand, const std::string& value) {
    switch (op) {
        case CompareOp::GT: return value.starts_with(operand);
        case CompareOp::LT: return value.ends_with(operand);
        case CompareOp::EQ: return value == operand;
        case CompareOp::CONTAINS: return value.find(operand) != std::string::npos;
    }
    return false;
}

void collect_keywords(const FilterExpr& e, std::vector<std::string>& out) {
    if (e.is_compare()) {
        const auto& name = e.as_compare().keyword;
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
        return;
    }
    if (e.is_not()) {
        collect_keywords(*e.as_not().inner, out);
        return;
    }
    if (e.is_and()) {
        collect_keywords(*e.as_and().left, out);
        collect_keywords(*e.as_and().right, out);
        return;
    }
    collect_keywords(*e.as_or().left, out);
    collect_keywords(*e.as_or().right, out);
}

}  // namespace

bool Literal::operator==(const Literal& other) const {
    if (is_number() != other.is_number()) return false;
    if (is_number()) {
        double a = as_number();
        double b = other.as_number();
        return a == b && std::signbit(a) == std::signbit(b);
    }
    return as_text() == other.as_text();
}

const char* to_string(CompareOp op) {
    switch (op) {
        case CompareOp::GT: return ">";
        case CompareOp::LT: return "<";
        case CompareOp::EQ: return "==";
        case CompareOp::CONTAINS: return "%";
    }
    return "?";
}

FilterExpr compare(std::string keyword, CompareOp op, Literal operand) {
    if (op == CompareOp::CONTAINS && operand.is_number()) {
        throw InvalidComparisonError("CONTAINS requires a string literal (keyword '" + keyword +
                                     "')");
    }
    return FilterExpr(CompareNode{std::move(keyword), op, std::move(operand)});
}

FilterExpr negate(FilterExpr e) { return FilterExpr(NotNode{ref(std::move(e))}); }

FilterExpr combine(BoolOp op, FilterExpr a, FilterExpr b) {
    if (op == BoolOp::And) {
        return FilterExpr(AndNode{ref(std::move(a)), ref(std::move(b))});
    }
    return FilterExpr(OrNode{ref(std::move(a)), ref(std::move(b))});
}

FilterExpr normalize(const FilterExpr& e) { return left_associate(push_not(e, false)); }

bool structurally_equal(const FilterExpr& a, const FilterExpr& b) {
    if (a.node().index() != b.node().index()) return false;
    if (a.is_compare()) {
        const auto& ca = a.as_compare();
        const auto& cb = b.as_compare();
        return ca.keyword == cb.keyword && ca.op == cb.op && ca.operand == cb.operand;
    }
    if (a.is_not()) {
        return structurally_equal(*a.as_not().inner, *b.as_not().inner);
    }
    if (a.is_and()) {
        return structurally_equal(*a.as_and().left, *b.as_and().left) &&
               structurally_equal(*a.as_and().right, *b.as_and().right);
    }
    return structurally_equal(*a.as_or().left, *b.as_or().left) &&
           structurally_equal(*a.as_or().right, *b.as_or().right);
}

std::vector<ValidationIssue> validate(const FilterExpr& e, const KeywordRegistry& registry) {
    std::vector<ValidationIssue> issues;
    collect_issues(e, registry, issues);
    return issues;
}

void require_valid(const FilterExpr& e, const KeywordRegistry& registry) {
    auto issues = validate(e, registry);
    if (issues.empty()) return;
    std::vector<std::string> lines;
    lines.reserve(issues.size());
    for (const auto& i : issues) {
        lines.push_back(i.keyword + " " + to_string(i.op) + " ...: " + i.reason);
    }
    throw ValidationError(std::move(lines));
}

bool match_compare(CompareOp op, const Literal& operand, const TypedValue& value) {
    if (operand.is_number()) {
        if (value.is_number()) {
            return match_number(op, operand.as_number(), value.as_number());
        }
        if (std::holds_alternative<std::vector<double>>(value.value)) {
            const auto& list = value.as_number_list();
            return std::any_of(list.begin(), list.end(), [&](double v) {
                return match_number(op, operand.as_number(), v);
            });
        }
        return false;
    }
    if (value.is_text()) {
        return match_text(op, operand.as_text(), value.as_text());
    }
    if (std::holds_alternative<std::vector<std::string>>(value.value)) {
        const auto& list = value.as_text_list();
        return std::any_of(list.begin(), list.end(), [&](const std::string& v) {
            return match_text(op, operand.as_text(), v);
        });
    }
    return false;
}

bool evaluate(const FilterExpr& e, const PropertyFn& property) {
    if (e.is_compare()) {
        const auto& c = e.as_compare();
        const TypedValue* value = property(c.keyword);
        if (!value) return false;
        return match_compare(c.op, c.operand, *value);
    }
    if (e.is_not()) {
        return !evaluate(*e.as_not().inner, property);
    }
    if (e.is_and()) {
        return evaluate(*e.as_and().left, property) && evaluate(*e.as_and().right, property);
    }
    return evaluate(*e.as_or().left, property) || evaluate(*e.as_or().right, property);
}

std::vector<std::string> keywords_of(const FilterExpr& e) {
    std::vector<std::string> out;
    collect_keywords(e, out);
    return out;
}

}  // namespace aflux
