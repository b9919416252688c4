#include "aflux/codec.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <unordered_map>
#include <utility>
#include <variant>

#include "aflux/errors.hpp"
#include "aflux/value.hpp"

namespace aflux {

namespace {

// ---------------------------------------------------------------------------
// Encoding

bool is_unencoded(unsigned char c) {
    if (std::isalnum(c)) return true;
    switch (c) {
        case '-': case '_': case '.': case '~':
        case '(': case ')': case ',': case ':':
        case '*': case '$': case '!': case '\'':
            return true;
        default:
            return false;
    }
}

std::string quote_text(const std::string& s, const std::string& keyword) {
    if (s.find('\'') != std::string::npos)
        throw UsageError("string value for '" + keyword +
                         "' contains a single quote, which the summons grammar cannot carry");
    return "'" + s + "'";
}

std::string encode_pattern(const CompareNode& c) {
    if (c.operand.is_number()) {
        std::string n = format_number(c.operand.as_number());
        switch (c.op) {
            case CompareOp::GT: return n + "*";
            case CompareOp::LT: return "*" + n;
            case CompareOp::EQ: return n;
            case CompareOp::CONTAINS:
                throw InvalidComparisonError("substring match does not apply to numbers");
        }
    }
    std::string q = quote_text(c.operand.as_text(), c.keyword);
    switch (c.op) {
        case CompareOp::GT: return q + "*";
        case CompareOp::LT: return "*" + q;
        case CompareOp::EQ: return q;
        case CompareOp::CONTAINS: return "*" + q + "*";
    }
    throw Error("unreachable compare op");
}

std::vector<const FilterExpr*> and_chain(const FilterExpr& e) {
    std::vector<const FilterExpr*> terms;
    const FilterExpr* cur = &e;
    while (cur->is_and()) {
        terms.push_back(cur->as_and().right.get());
        cur = cur->as_and().left.get();
    }
    terms.push_back(cur);
    std::reverse(terms.begin(), terms.end());
    return terms;
}

std::vector<const FilterExpr*> or_chain(const FilterExpr& e) {
    std::vector<const FilterExpr*> branches;
    const FilterExpr* cur = &e;
    while (cur->is_or()) {
        branches.push_back(cur->as_or().right.get());
        cur = cur->as_or().left.get();
    }
    branches.push_back(cur);
    std::reverse(branches.begin(), branches.end());
    return branches;
}

// Inner-grammar precedence: ',' (AND) binds tighter than ':' (OR), so OR
// branches that are AND chains take parentheses and a nested OR under AND
// takes parentheses.
std::string encode_inner(const FilterExpr& e) {
    if (e.is_compare()) return encode_pattern(e.as_compare());
    if (e.is_not()) {
        const FilterExpr& inner = *e.as_not().inner;
        if (inner.is_compare()) return "!" + encode_pattern(inner.as_compare());
        return "!(" + encode_inner(inner) + ")";
    }
    std::string out;
    if (e.is_and()) {
        auto terms = and_chain(e);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) out += ",";
            if (terms[i]->is_or())
                out += "(" + encode_inner(*terms[i]) + ")";
            else
                out += encode_inner(*terms[i]);
        }
        return out;
    }
    auto branches = or_chain(e);
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i) out += ":";
        if (branches[i]->is_and())
            out += "(" + encode_inner(*branches[i]) + ")";
        else
            out += encode_inner(*branches[i]);
    }
    return out;
}

// Cross-keyword groups use the same precedence at the outer level; every
// maximal single-keyword fragment renders as keyword(inner).
std::string encode_group(const FilterExpr& e) {
    if (keywords_of(e).size() == 1) {
        std::string kw = e.is_compare() ? e.as_compare().keyword : keywords_of(e).front();
        return kw + "(" + encode_inner(e) + ")";
    }
    std::string out;
    if (e.is_and()) {
        auto terms = and_chain(e);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) out += ",";
            if (terms[i]->is_or() && keywords_of(*terms[i]).size() > 1)
                out += "(" + encode_group(*terms[i]) + ")";
            else
                out += encode_group(*terms[i]);
        }
        return out;
    }
    auto branches = or_chain(e);
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (i) out += ":";
        if (branches[i]->is_and() && keywords_of(*branches[i]).size() > 1)
            out += "(" + encode_group(*branches[i]) + ")";
        else
            out += encode_group(*branches[i]);
    }
    return out;
}

std::string encode_entry(const MatchbookEntry& e) {
    std::string out;
    if (e.hidden) out += "$";
    out += e.keyword;
    if (e.filter) out += "(" + encode_inner(*e.filter) + ")";
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

constexpr const char* kPagingHead = "$paging(";

// Outer boolean structure over matchbook atoms, kept apart from FilterExpr
// until the plan is assembled so cross-keyword groups can be told apart
// from plain entries.
struct OuterAtom {
    std::string keyword;
    std::optional<FilterExpr> filter;
    bool hidden = false;
    std::size_t offset = 0;
};
struct OuterNode;
using OuterPtr = std::shared_ptr<const OuterNode>;
struct OuterAnd {
    std::vector<OuterPtr> terms;
};
struct OuterOr {
    std::vector<OuterPtr> branches;
};
struct OuterNode {
    std::variant<OuterAtom, OuterAnd, OuterOr> node;
};

OuterPtr make_outer(std::variant<OuterAtom, OuterAnd, OuterOr> n) {
    return std::make_shared<OuterNode>(OuterNode{std::move(n)});
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' ||
           c == '-' || c == '+';
}

bool is_bareword(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_' && c != '.' && c != '-')
            return false;
    return true;
}

class SummonsParser {
  public:
    explicit SummonsParser(const std::string& s) : s_(s) {}

    QueryPlan parse_summons() {
        if (at_paging()) fail({"matchbook entry"}, "summons carries no matchbook entries");
        OuterPtr outer = parse_orgroup();
        if (!eat(',')) {
            if (done())
                throw MissingDirectiveError("summons ends before its $paging directive");
            fail({"','"}, "unexpected character");
        }
        if (!at_paging()) {
            if (done()) throw MissingDirectiveError("summons ends before its $paging directive");
            fail({"'$paging('"}, "expected the $paging directive");
        }
        auto [page, size] = parse_paging();
        if (!done()) fail({"end of input"}, "unexpected trailing characters");
        QueryPlan plan = assemble(outer);
        plan.page = page;
        plan.page_size = size;
        return plan;
    }

    FilterExpr parse_pattern_string(const std::string& keyword) {
        FilterExpr e = parse_inner(keyword);
        if (!done()) fail({"':'", "','", "end of input"}, "unexpected character");
        return normalize(e);
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool at_paging() const { return s_.compare(pos_, 8, kPagingHead) == 0; }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what,
                           std::size_t at = std::string::npos) const {
        std::size_t off = at == std::string::npos ? pos_ : at;
        std::string msg = what;
        if (off >= s_.size()) msg += " at end of input";
        throw ParseError(msg, off, std::move(expected));
    }

    void expect(char c, const char* label) {
        if (!eat(c)) fail({label}, done() ? "unexpected end of input" : "unexpected character");
    }

    // outer grammar -------------------------------------------------------

    OuterPtr parse_orgroup() {
        OuterOr group;
        group.branches.push_back(parse_andgroup());
        while (eat(':')) group.branches.push_back(parse_andgroup());
        if (group.branches.size() == 1) return group.branches.front();
        return make_outer(std::move(group));
    }

    OuterPtr parse_andgroup() {
        OuterAnd group;
        group.terms.push_back(parse_item());
        while (peek() == ',') {
            // A comma followed by $paging (or by nothing) ends the matchbook.
            if (pos_ + 1 >= s_.size() || s_.compare(pos_ + 1, 8, kPagingHead) == 0) break;
            ++pos_;
            group.terms.push_back(parse_item());
        }
        if (group.terms.size() == 1) return group.terms.front();
        return make_outer(std::move(group));
    }

    OuterPtr parse_item() {
        if (eat('(')) {
            OuterPtr inner = parse_orgroup();
            expect(')', "')'");
            return inner;
        }
        return parse_entry();
    }

    OuterPtr parse_entry() {
        OuterAtom atom;
        atom.offset = pos_;
        if (eat('$')) atom.hidden = true;
        atom.keyword = parse_name();
        if (atom.hidden &&
            (atom.keyword == "paging" || atom.keyword == "format" || atom.keyword == "schema"))
            fail({"matchbook entry"},
                 "'$" + atom.keyword + "' is a directive, not a matchbook entry", atom.offset);
        if (eat('(')) {
            atom.filter = parse_inner(atom.keyword);
            expect(')', "')'");
        }
        return make_outer(std::move(atom));
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (!done() &&
               (std::isalnum(static_cast<unsigned char>(peek())) != 0 || peek() == '_'))
            ++pos_;
        if (pos_ == start)
            fail({"keyword name"}, done() ? "unexpected end of input" : "unexpected character");
        return s_.substr(start, pos_ - start);
    }

    std::pair<int, int> parse_paging() {
        pos_ += 8;  // "$paging("
        bool negative = eat('-');
        long long page = parse_int("page number");
        if (page == 0) throw RangeError("page number must be nonzero");
        expect(',', "','");
        long long size = parse_int("page size");
        if (size == 0) throw RangeError("page size must be positive");
        expect(')', "')'");
        return {static_cast<int>(negative ? -page : page), static_cast<int>(size)};
    }

    long long parse_int(const char* label) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
        if (pos_ == start)
            fail({label}, done() ? "unexpected end of input" : "unexpected character");
        long long v = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            v = v * 10 + (s_[i] - '0');
            if (v > 1000000000) throw RangeError("paging value is out of range");
        }
        return v;
    }

    // inner grammar -------------------------------------------------------

    FilterExpr parse_inner(const std::string& keyword) {
        FilterExpr e = parse_iand(keyword);
        while (eat(':')) e = combine(BoolOp::Or, std::move(e), parse_iand(keyword));
        return e;
    }

    FilterExpr parse_iand(const std::string& keyword) {
        FilterExpr e = parse_iterm(keyword);
        while (eat(',')) e = combine(BoolOp::And, std::move(e), parse_iterm(keyword));
        return e;
    }

    FilterExpr parse_iterm(const std::string& keyword) {
        if (eat('!')) return negate(parse_iterm(keyword));
        if (eat('(')) {
            FilterExpr inner = parse_inner(keyword);
            expect(')', "')'");
            return inner;
        }
        return parse_compare(keyword);
    }

    FilterExpr parse_compare(const std::string& keyword) {
        std::size_t start = pos_;
        bool lead = eat('*');
        auto [lit, is_num] = parse_pattern_literal();
        bool trail = eat('*');
        CompareOp op;
        if (is_num) {
            if (lead && trail)
                fail({"string pattern"}, "a number cannot take wildcards on both sides", start);
            op = lead ? CompareOp::LT : trail ? CompareOp::GT : CompareOp::EQ;
        } else {
            op = lead && trail ? CompareOp::CONTAINS
                 : lead        ? CompareOp::LT
                 : trail       ? CompareOp::GT
                               : CompareOp::EQ;
        }
        return compare(keyword, op, std::move(lit));
    }

    std::pair<Literal, bool> parse_pattern_literal() {
        if (eat('\'')) {
            std::size_t start = pos_;
            while (!done() && peek() != '\'') ++pos_;
            if (done()) fail({"'''"}, "unterminated string", start - 1);
            std::string text = s_.substr(start, pos_ - start);
            ++pos_;
            return {Literal::text(std::move(text)), false};
        }
        std::size_t start = pos_;
        while (!done() && is_word_char(peek())) ++pos_;
        if (pos_ == start)
            fail({"pattern"}, done() ? "unexpected end of input" : "unexpected character");
        std::string word = s_.substr(start, pos_ - start);
        if (auto num = parse_number(word)) return {Literal::number(*num), true};
        if (is_bareword(word)) return {Literal::text(std::move(word)), false};
        fail({"number", "string"}, "'" + word + "' is neither a number nor a bare string", start);
    }

    // plan assembly ---------------------------------------------------------

    static void flatten_and(const OuterPtr& n, std::vector<OuterPtr>& out) {
        if (const auto* a = std::get_if<OuterAnd>(&n->node)) {
            for (const auto& t : a->terms) flatten_and(t, out);
            return;
        }
        out.push_back(n);
    }

    FilterExpr group_to_filter(const OuterPtr& n) const {
        if (const auto* atom = std::get_if<OuterAtom>(&n->node)) {
            if (atom->hidden)
                throw ParseError("the hidden marker applies to whole matchbook entries, "
                                 "not to group members",
                                 atom->offset, {"matchbook entry"});
            if (!atom->filter)
                throw ParseError(
                    "'" + atom->keyword + "' appears inside a group without a filter",
                    atom->offset, {"'('"});
            return *atom->filter;
        }
        if (const auto* a = std::get_if<OuterAnd>(&n->node)) {
            FilterExpr e = group_to_filter(a->terms.front());
            for (std::size_t i = 1; i < a->terms.size(); ++i)
                e = combine(BoolOp::And, std::move(e), group_to_filter(a->terms[i]));
            return e;
        }
        const auto& o = std::get<OuterOr>(n->node);
        FilterExpr e = group_to_filter(o.branches.front());
        for (std::size_t i = 1; i < o.branches.size(); ++i)
            e = combine(BoolOp::Or, std::move(e), group_to_filter(o.branches[i]));
        return e;
    }

    QueryPlan assemble(const OuterPtr& outer) const {
        std::vector<OuterPtr> factors;
        flatten_and(outer, factors);

        QueryPlan plan;
        std::unordered_map<std::string, std::size_t> index;
        auto merge_entry = [&](const std::string& kw, const std::optional<FilterExpr>& filter,
                               bool hidden) {
            auto it = index.find(kw);
            if (it == index.end()) {
                index.emplace(kw, plan.matchbook.size());
                plan.matchbook.push_back({kw, filter, hidden});
                return;
            }
            MatchbookEntry& e = plan.matchbook[it->second];
            if (filter)
                e.filter = e.filter ? combine(BoolOp::And, std::move(*e.filter), *filter)
                                    : *filter;
            e.hidden = e.hidden && hidden;
        };

        for (const auto& f : factors) {
            if (const auto* atom = std::get_if<OuterAtom>(&f->node)) {
                merge_entry(atom->keyword, atom->filter, atom->hidden);
                continue;
            }
            FilterExpr g = normalize(group_to_filter(f));
            auto kws = keywords_of(g);
            if (kws.size() == 1)
                merge_entry(kws.front(), g, false);
            else
                plan.groups.push_back(std::move(g));
        }
        for (auto& e : plan.matchbook)
            if (e.filter) e.filter = normalize(*e.filter);
        if (plan.matchbook.empty()) {
            // Groups alone leave no ordering keyword; surface the first one
            // as a hidden entry so the plan stays well formed.
            std::string kw = keywords_of(plan.groups.front()).front();
            plan.matchbook.push_back({std::move(kw), std::nullopt, true});
        }
        return plan;
    }
};

}  // namespace

// ---------------------------------------------------------------------------

bool entries_equal(const MatchbookEntry& a, const MatchbookEntry& b) {
    if (a.keyword != b.keyword || a.hidden != b.hidden) return false;
    if (a.filter.has_value() != b.filter.has_value()) return false;
    return !a.filter || structurally_equal(*a.filter, *b.filter);
}

bool plans_equal(const QueryPlan& a, const QueryPlan& b) {
    if (a.page != b.page || a.page_size != b.page_size) return false;
    if (a.matchbook.size() != b.matchbook.size() || a.groups.size() != b.groups.size())
        return false;
    for (std::size_t i = 0; i < a.matchbook.size(); ++i)
        if (!entries_equal(a.matchbook[i], b.matchbook[i])) return false;
    for (std::size_t i = 0; i < a.groups.size(); ++i)
        if (!structurally_equal(a.groups[i], b.groups[i])) return false;
    return true;
}

QueryPlan plan_from_query(const std::vector<std::string>& selects,
                          const std::vector<std::string>& excludes,
                          const std::optional<FilterExpr>& filter,
                          const std::optional<OrderBy>& order, int page, int page_size) {
    if (page < 1) throw RangeError("page number must be positive");
    if (page_size < 1) throw RangeError("page size must be positive");

    QueryPlan plan;
    std::unordered_map<std::string, std::size_t> index;
    auto entry_index = [&](const std::string& kw) {
        auto it = index.find(kw);
        if (it != index.end()) return it->second;
        index.emplace(kw, plan.matchbook.size());
        plan.matchbook.push_back({kw, std::nullopt, false});
        return plan.matchbook.size() - 1;
    };

    std::vector<std::string> filter_keywords;
    if (filter) {
        FilterExpr n = normalize(*filter);
        filter_keywords = keywords_of(n);
        std::vector<const FilterExpr*> factors;
        const FilterExpr* cur = &n;
        while (cur->is_and()) {
            factors.push_back(cur->as_and().right.get());
            cur = &*cur->as_and().left;
        }
        factors.push_back(cur);
        std::reverse(factors.begin(), factors.end());
        for (const FilterExpr* f : factors) {
            auto kws = keywords_of(*f);
            if (kws.size() == 1) {
                MatchbookEntry& e = plan.matchbook[entry_index(kws.front())];
                e.filter = e.filter ? normalize(combine(BoolOp::And, std::move(*e.filter), *f))
                                    : *f;
            } else {
                plan.groups.push_back(*f);
            }
        }
    }
    for (const auto& kw : selects) entry_index(kw);
    for (const auto& kw : excludes) plan.matchbook[entry_index(kw)].hidden = true;

    std::string ordering;
    if (order) {
        ordering = order->keyword;
        entry_index(ordering);
    } else if (!selects.empty()) {
        ordering = selects.front();
    } else if (!filter_keywords.empty()) {
        ordering = filter_keywords.front();
        entry_index(ordering);
    } else {
        throw UsageError("a query needs at least one selected or filtered keyword");
    }

    auto it = std::find_if(plan.matchbook.begin(), plan.matchbook.end(),
                           [&](const MatchbookEntry& e) { return e.keyword == ordering; });
    std::rotate(plan.matchbook.begin(), it, it + 1);

    plan.page = order && order->descending ? -page : page;
    plan.page_size = page_size;
    return plan;
}

std::string encode_summons(const QueryPlan& plan) {
    if (plan.matchbook.empty()) throw UsageError("a plan needs at least one matchbook entry");
    if (plan.page == 0) throw RangeError("page number must be nonzero");
    if (plan.page_size < 1) throw RangeError("page size must be positive");
    std::string out;
    for (const auto& e : plan.matchbook) {
        out += encode_entry(e);
        out += ",";
    }
    for (const auto& g : plan.groups) {
        out += "(" + encode_group(g) + ")";
        out += ",";
    }
    out += "$paging(" + std::to_string(plan.page) + "," + std::to_string(plan.page_size) + ")";
    return out;
}

QueryPlan parse_summons(const std::string& summons) {
    SummonsParser p(summons);
    return p.parse_summons();
}

std::string encode_filter(const FilterExpr& e) {
    if (keywords_of(e).size() != 1)
        throw UsageError("a matchbook pattern covers exactly one keyword");
    return encode_inner(e);
}

FilterExpr parse_filter(const Keyword& keyword, const std::string& pattern) {
    SummonsParser p(pattern);
    FilterExpr e = p.parse_pattern_string(keyword.name);
    KeywordRegistry scope({keyword}, KeywordRegistry::Source::Embedded);
    require_valid(e, scope);
    return e;
}

std::string percent_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (is_unencoded(c)) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

std::string percent_decode(const std::string& s) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out += s[i];
            continue;
        }
        if (i + 2 >= s.size()) throw ParseError("truncated percent escape", i, {"two hex digits"});
        int hi = nibble(s[i + 1]);
        int lo = nibble(s[i + 2]);
        if (hi < 0 || lo < 0) throw ParseError("invalid percent escape", i, {"two hex digits"});
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
    }
    return out;
}

}  // namespace aflux
