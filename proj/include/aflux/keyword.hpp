#ifndef AFLUX_KEYWORD_HPP
#define AFLUX_KEYWORD_HPP

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aflux/value.hpp"

namespace aflux {

enum class KeywordStatus { Production, Deprecated };

/// One queryable database property: its name, value kind, units and docs.
struct Keyword {
    std::string name;
    ValueKind kind = ValueKind::ScalarString;
    std::string units;
    std::string title;
    std::string description;
    KeywordStatus status = KeywordStatus::Production;

    bool operator==(const Keyword&) const = default;
};

/// Immutable catalog of keywords, in schema-document order. Lookup by name
/// is total over the entries and fails with suggestions otherwise.
class KeywordRegistry {
public:
    enum class Source { Embedded, Fetched };

    KeywordRegistry(std::vector<Keyword> entries, Source source);

    const Keyword& lookup(const std::string& name) const;
    bool contains(const std::string& name) const;

    const std::vector<Keyword>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    Source source() const { return source_; }

    /// The three known names closest to `name` by edit distance, ties
    /// broken alphabetically.
    std::vector<std::string> closest(const std::string& name, std::size_t count = 3) const;

private:
    std::vector<Keyword> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    Source source_;
};

using RegistryPtr = std::shared_ptr<const KeywordRegistry>;

/// Parses a schema document (JSON array of keyword descriptors) into a
/// registry. Malformed documents raise SchemaError with a byte offset;
/// repeated names raise DuplicateKeywordError.
KeywordRegistry load_schema(const std::string& document,
                            KeywordRegistry::Source source = KeywordRegistry::Source::Fetched);

/// Deterministic human-readable keyword listing, sorted by name.
std::string render_catalog(const KeywordRegistry& registry);

/// The schema document compiled into the library; the simulator serves
/// these exact bytes at GET /API/schema.
const std::string& embedded_schema();

/// Registry built from embedded_schema(), loaded once and shared.
RegistryPtr embedded_registry();

/// Levenshtein distance between two names (suggestion machinery).
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace aflux

#endif  // AFLUX_KEYWORD_HPP
