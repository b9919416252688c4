#ifndef AFLUX_SIMULATOR_HPP
#define AFLUX_SIMULATOR_HPP

#include <atomic>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aflux/codec.hpp"
#include "aflux/keyword.hpp"
#include "aflux/value.hpp"

namespace aflux {

struct Record {
    std::string auid;
    std::string aurl;
    std::string compound;
    std::map<std::string, std::string> properties;  // keyword -> raw string
};

/// Immutable, eagerly validated record collection: auids unique, every
/// property keyword known to the registry, every raw value decodable under
/// its kind. auid/aurl/compound are reachable as properties of their own.
class Dataset {
  public:
    Dataset(std::vector<Record> records, RegistryPtr registry);

    const std::vector<Record>& records() const { return records_; }
    const KeywordRegistry& registry() const { return *registry_; }
    RegistryPtr registry_ptr() const { return registry_; }

    const Record* find(const std::string& auid) const;
    const Record* find_by_aurl(const std::string& aurl) const;

    /// Raw bytes for a property, including the implicit auid/aurl/compound
    /// fields; nullptr when the record does not carry it.
    const std::string* raw(std::size_t index, const std::string& keyword) const;
    const TypedValue* value(std::size_t index, const std::string& keyword) const;

  private:
    std::vector<Record> records_;
    RegistryPtr registry_;
    std::vector<std::map<std::string, TypedValue>> decoded_;
    std::vector<std::map<std::string, std::string>> raws_;  // with implicit fields
    std::unordered_map<std::string, std::size_t> by_auid_;
    std::unordered_map<std::string, std::size_t> by_aurl_;
};

/// Parses the dataset file format: a JSON array of records
/// {"auid", "aurl", "compound", "properties": {keyword: raw}}.
/// Malformed input raises DatasetError naming the record and field.
Dataset load_dataset(const std::string& json_text, RegistryPtr registry);

struct Evaluation {
    std::vector<std::size_t> matches;  // record indices, full ordered match list
    std::vector<std::size_t> page;     // the slice selected by the plan's paging
    std::size_t first_rank = 1;        // 1-based global rank of page.front()
    std::vector<std::string> visible;  // visible keywords in matchbook order
};

/// Applies a plan: boolean match (missing property makes a comparison
/// false), sort by the ordering keyword (numeric kinds by value, string
/// kinds by raw bytes; direction from the page sign; records without the
/// keyword last; ties broken by auid ascending), then the page cut.
Evaluation evaluate(const Dataset& dataset, const QueryPlan& plan);

struct SimResponse {
    int status = 200;
    std::string content_type = "text/plain";
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;
};

/// Transport-independent request handler for the three routes:
/// GET /API/?<summons>, GET /API/schema, GET <aurl>?<keyword>.
class Simulator {
  public:
    explicit Simulator(Dataset dataset) : dataset_(std::move(dataset)) {}

    SimResponse handle(const std::string& method, const std::string& target) const;
    const Dataset& dataset() const { return dataset_; }
    std::size_t requests() const { return requests_.load(); }

  private:
    SimResponse search(const std::string& summons) const;
    SimResponse property(const std::string& path, const std::string& keyword) const;

    Dataset dataset_;
    mutable std::atomic<std::size_t> requests_{0};
};

}  // namespace aflux

#endif  // AFLUX_SIMULATOR_HPP
