#ifndef AFLUX_CODEC_HPP
#define AFLUX_CODEC_HPP

#include <optional>
#include <string>
#include <vector>

#include "aflux/filter.hpp"
#include "aflux/keyword.hpp"

namespace aflux {

/// One keyword inside a summons: an optional filter restricted to this
/// keyword's leaves, and a hidden flag (present for filtering/ordering but
/// excluded from the response payload).
struct MatchbookEntry {
    std::string keyword;
    std::optional<FilterExpr> filter;
    bool hidden = false;
};

/// Normalized request. Matchbook entries are AND-joined and keyword-unique;
/// the first entry names the ordering keyword. Filters that span several
/// keywords under one disjunction live in `groups`, AND-joined with the
/// rest. The sign of `page` carries the sort direction.
struct QueryPlan {
    std::vector<MatchbookEntry> matchbook;
    std::vector<FilterExpr> groups;
    int page = 1;       // |page| >= 1; negative means descending order
    int page_size = 100;

    const std::string& ordering_keyword() const { return matchbook.front().keyword; }
    bool descending() const { return page < 0; }
    int page_number() const { return page < 0 ? -page : page; }
};

bool entries_equal(const MatchbookEntry& a, const MatchbookEntry& b);
bool plans_equal(const QueryPlan& a, const QueryPlan& b);

struct OrderBy {
    std::string keyword;
    bool descending = false;
};

/// Builds the normalized plan for one request: the filter is normalized and
/// split per keyword (conjunctions over distinct keywords become separate
/// matchbook entries, cross-keyword disjunctions become groups), the
/// ordering keyword moves to the front, excluded keywords turn hidden, and
/// a descending order flips the page sign.
QueryPlan plan_from_query(const std::vector<std::string>& selects,
                          const std::vector<std::string>& excludes,
                          const std::optional<FilterExpr>& filter,
                          const std::optional<OrderBy>& order, int page, int page_size);

/// Deterministic wire form of a plan; equal plans encode to identical bytes.
std::string encode_summons(const QueryPlan& plan);

/// Inverse of encode_summons over the summons grammar. Errors carry a byte
/// offset and the expected-token set; a missing $paging directive raises
/// MissingDirectiveError and a zero page RangeError.
QueryPlan parse_summons(const std::string& summons);

/// Inner-grammar pattern string for a normalized single-keyword filter.
std::string encode_filter(const FilterExpr& e);

/// Parses an inner pattern string into a filter over `keyword`, then checks
/// the pattern kinds against the keyword kind.
FilterExpr parse_filter(const Keyword& keyword, const std::string& pattern);

/// Transport form: every byte outside A-Za-z0-9 - _ . ~ ( ) , : * $ ! '
/// becomes %XX. percent_decode inverts it (no '+'-as-space handling).
std::string percent_encode(const std::string& s);
std::string percent_decode(const std::string& s);

}  // namespace aflux

#endif  // AFLUX_CODEC_HPP
