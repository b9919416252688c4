#include "aflux/keyword.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include <json.hpp>

#include "aflux/errors.hpp"

namespace aflux {

namespace {

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

std::string required_string(const nlohmann::json& obj, const char* field, std::size_t index) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_string()) {
        throw SchemaError("descriptor " + std::to_string(index) + " lacks string field '" +
                          field + "'");
    }
    return it->get<std::string>();
}

}  // namespace

KeywordRegistry::KeywordRegistry(std::vector<Keyword> entries, Source source)
    : entries_(std::move(entries)), source_(source) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!index_.emplace(entries_[i].name, i).second) {
            throw DuplicateKeywordError(entries_[i].name);
        }
    }
}

const Keyword& KeywordRegistry::lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
        throw UnknownKeywordError(name, closest(name));
    }
    return entries_[it->second];
}

bool KeywordRegistry::contains(const std::string& name) const {
    return index_.count(name) != 0;
}

std::vector<std::string> KeywordRegistry::closest(const std::string& name,
                                                  std::size_t count) const {
    std::vector<std::pair<std::size_t, std::string>> ranked;
    ranked.reserve(entries_.size());
    for (const auto& kw : entries_) {
        ranked.emplace_back(edit_distance(name, kw.name), kw.name);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ranked.size() && i < count; ++i) {
        out.push_back(ranked[i].second);
    }
    return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            diag = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, subst});
        }
    }
    return row[b.size()];
}

KeywordRegistry load_schema(const std::string& document, KeywordRegistry::Source source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("schema is not valid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_array()) {
        throw SchemaError("schema document must be a JSON array");
    }

    std::vector<Keyword> entries;
    entries.reserve(doc.size());
    std::size_t index = 0;
    for (const auto& item : doc) {
        if (!item.is_object()) {
            throw SchemaError("descriptor " + std::to_string(index) + " is not an object");
        }
        Keyword kw;
        kw.name = required_string(item, "name", index);
        if (!valid_name(kw.name)) {
            throw SchemaError("descriptor " + std::to_string(index) + " has invalid name '" +
                              kw.name + "'");
        }
        auto kind_name = required_string(item, "kind", index);
        auto kind = value_kind_from_string(kind_name);
        if (!kind) {
            throw SchemaError("descriptor '" + kw.name + "' has unknown kind '" + kind_name + "'");
        }
        kw.kind = *kind;
        kw.units = required_string(item, "units", index);
        kw.title = required_string(item, "title", index);
        kw.description = required_string(item, "description", index);
        auto status = required_string(item, "status", index);
        if (status == "production") {
            kw.status = KeywordStatus::Production;
        } else if (status == "deprecated") {
            kw.status = KeywordStatus::Deprecated;
        } else {
            throw SchemaError("descriptor '" + kw.name + "' has unknown status '" + status + "'");
        }
        entries.push_back(std::move(kw));
        ++index;
    }
    return KeywordRegistry(std::move(entries), source);
}

std::string render_catalog(const KeywordRegistry& registry) {
    std::vector<const Keyword*> sorted;
    sorted.reserve(registry.size());
    for (const auto& kw : registry.entries()) sorted.push_back(&kw);
    std::sort(sorted.begin(), sorted.end(),
              [](const Keyword* a, const Keyword* b) { return a->name < b->name; });

    std::string out;
    for (const Keyword* kw : sorted) {
        out += kw->name;
        out += "  [";
        out += to_string(kw->kind);
        out += "]";
        if (!kw->units.empty()) {
            out += "  (";
            out += kw->units;
            out += ")";
        }
        if (kw->status == KeywordStatus::Deprecated) {
            out += "  (deprecated)";
        }
        out += "\n";
        if (!kw->title.empty()) {
            out += "    ";
            out += kw->title;
            out += "\n";
        }
        if (!kw->description.empty()) {
            out += "    ";
            out += kw->description;
            out += "\n";
        }
        out += "\n";
    }
    return out;
}

RegistryPtr embedded_registry() {
    static const RegistryPtr registry = std::make_shared<const KeywordRegistry>(
        load_schema(embedded_schema(), KeywordRegistry::Source::Embedded));
    return registry;
}

}  // namespace aflux
