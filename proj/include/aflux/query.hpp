#ifndef AFLUX_QUERY_HPP
#define AFLUX_QUERY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "aflux/codec.hpp"
#include "aflux/filter.hpp"
#include "aflux/keyword.hpp"
#include "aflux/transport.hpp"
#include "aflux/value.hpp"

namespace aflux {

/// One database record. Copies share state: raw strings arrive with the
/// search response or through lazy per-property GETs against the entry's
/// aurl, and decoded values are memoized (each property fetched and
/// decoded at most once).
class Entry {
  public:
    Entry(std::string origin, RegistryPtr registry, TransportPtr transport,
          std::map<std::string, std::string> raw);

    const std::string& auid() const;
    const std::string& aurl() const;

    /// Raw bytes already on hand, without any network activity.
    const std::string* raw_if_present(const std::string& keyword) const;
    /// Raw bytes, fetching from the entry's aurl when absent.
    const std::string& raw(const std::string& keyword) const;
    /// Decoded value, memoized; fetches like raw() when needed.
    const TypedValue& value(const std::string& keyword) const;

    /// Keywords with raw bytes currently on hand, sorted by name.
    std::vector<std::string> loaded_keywords() const;

  private:
    struct State;
    std::shared_ptr<State> state_;
};

class ResultSet;

/// Immutable query description. Refinements return new values; nothing
/// touches the network until execute().
class Query {
  public:
    explicit Query(std::string root, int page_size = 100,
                   RegistryPtr registry = embedded_registry(),
                   TransportPtr transport = std::make_shared<Transport>());

    Query select(const std::vector<std::string>& keywords) const;
    Query select(const std::string& keyword) const;
    Query exclude(const std::vector<std::string>& keywords) const;
    Query exclude(const std::string& keyword) const;
    Query filter(const FilterExpr& expr) const;  // repeated filters AND-combine
    Query orderby(const std::string& keyword, bool descending = false) const;

    QueryPlan plan(int page = 1) const;
    ResultSet execute() const;

    const std::string& root() const { return root_; }
    int page_size() const { return page_size_; }
    RegistryPtr registry() const { return registry_; }
    TransportPtr transport() const { return transport_; }

  private:
    std::string root_;  // normalized
    int page_size_;
    RegistryPtr registry_;
    TransportPtr transport_;
    std::vector<std::string> selects_;
    std::vector<std::string> excludes_;
    std::optional<FilterExpr> filter_;
    std::optional<OrderBy> order_;
};

/// Entry point mirroring the builder chain: search(root, 20).filter(...).
Query search(const std::string& root, int page_size = 100);

/// Lazily paged, globally ordered results. The total comes from the
/// X-AFLUX-Matches header of the first response; each page is fetched at
/// most once, on first touch.
class ResultSet {
  public:
    std::size_t total() const;

    /// Zero-based; negative counts from the end.
    Entry at(long long index) const;
    /// Zero-based half-open [a, b); touches only the covering pages.
    std::vector<Entry> slice(std::size_t a, std::size_t b) const;
    /// All entries in rank order.
    std::vector<Entry> entries() const;

    class iterator {
      public:
        using value_type = Entry;
        using difference_type = std::ptrdiff_t;

        iterator(const ResultSet* set, std::size_t index) : set_(set), index_(index) {}
        Entry operator*() const { return set_->at(static_cast<long long>(index_)); }
        iterator& operator++() { ++index_; return *this; }
        iterator operator++(int) { iterator old = *this; ++index_; return old; }
        bool operator==(const iterator& o) const = default;

      private:
        const ResultSet* set_;
        std::size_t index_;
    };
    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, total()}; }

  private:
    friend class Query;
    struct State;
    explicit ResultSet(std::shared_ptr<State> state) : state_(std::move(state)) {}

    std::shared_ptr<State> state_;
};

}  // namespace aflux

#endif  // AFLUX_QUERY_HPP
