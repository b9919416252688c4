#include "aflux/query.hpp"

#include <algorithm>
#include <charconv>

#include "json.hpp"

#include "aflux/errors.hpp"

namespace aflux {

// ---------------------------------------------------------------------------
// Entry

struct Entry::State {
    std::string origin;
    RegistryPtr registry;
    TransportPtr transport;
    std::map<std::string, std::string> raw;
    std::map<std::string, TypedValue> decoded;
    std::mutex mutex;
};

Entry::Entry(std::string origin, RegistryPtr registry, TransportPtr transport,
             std::map<std::string, std::string> raw)
    : state_(std::make_shared<State>()) {
    state_->origin = std::move(origin);
    state_->registry = std::move(registry);
    state_->transport = std::move(transport);
    state_->raw = std::move(raw);
    if (state_->raw.find("auid") == state_->raw.end() ||
        state_->raw.find("aurl") == state_->raw.end())
        throw ProtocolError("entry record lacks auid/aurl");
}

const std::string& Entry::auid() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    return state_->raw.at("auid");  // map nodes are stable; never erased
}

const std::string& Entry::aurl() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    return state_->raw.at("aurl");
}

const std::string* Entry::raw_if_present(const std::string& keyword) const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto it = state_->raw.find(keyword);
    return it == state_->raw.end() ? nullptr : &it->second;
}

const std::string& Entry::raw(const std::string& keyword) const {
    state_->registry->lookup(keyword);  // throws UnknownKeywordError
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto it = state_->raw.find(keyword);
    if (it != state_->raw.end()) return it->second;
    std::string url = state_->origin + state_->raw.at("aurl") + "?" + percent_encode(keyword);
    HttpResponse response = state_->transport->fetch(url);
    if (response.status == 404)
        throw MissingPropertyError("entry " + state_->raw.at("auid") + " has no property '" +
                                   keyword + "'");
    if (response.status != 200)
        throw ProtocolError("property fetch for '" + keyword + "' returned status " +
                            std::to_string(response.status));
    return state_->raw.emplace(keyword, std::move(response.body)).first->second;
}

const TypedValue& Entry::value(const std::string& keyword) const {
    const Keyword& meta = state_->registry->lookup(keyword);
    {
        std::lock_guard<std::mutex> lock(state_->mutex);
        auto it = state_->decoded.find(keyword);
        if (it != state_->decoded.end()) return it->second;
    }
    const std::string& bytes = raw(keyword);
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto it = state_->decoded.find(keyword);
    if (it != state_->decoded.end()) return it->second;
    return state_->decoded.emplace(keyword, decode(meta.kind, bytes)).first->second;
}

std::vector<std::string> Entry::loaded_keywords() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    std::vector<std::string> out;
    out.reserve(state_->raw.size());
    for (const auto& [keyword, bytes] : state_->raw) out.push_back(keyword);
    return out;
}

// ---------------------------------------------------------------------------
// Query

Query::Query(std::string root, int page_size, RegistryPtr registry, TransportPtr transport)
    : root_(normalize_root(std::move(root))),
      page_size_(page_size),
      registry_(std::move(registry)),
      transport_(std::move(transport)) {
    if (page_size_ < 1) throw UsageError("batch size must be at least 1");
}

Query search(const std::string& root, int page_size) { return Query(root, page_size); }

Query Query::select(const std::vector<std::string>& keywords) const {
    Query next = *this;
    for (const auto& keyword : keywords) {
        registry_->lookup(keyword);
        if (std::find(next.selects_.begin(), next.selects_.end(), keyword) ==
            next.selects_.end())
            next.selects_.push_back(keyword);
    }
    return next;
}

Query Query::select(const std::string& keyword) const {
    return select(std::vector<std::string>{keyword});
}

Query Query::exclude(const std::vector<std::string>& keywords) const {
    Query next = *this;
    for (const auto& keyword : keywords) {
        registry_->lookup(keyword);
        if (std::find(next.excludes_.begin(), next.excludes_.end(), keyword) ==
            next.excludes_.end())
            next.excludes_.push_back(keyword);
    }
    return next;
}

Query Query::exclude(const std::string& keyword) const {
    return exclude(std::vector<std::string>{keyword});
}

Query Query::filter(const FilterExpr& expr) const {
    require_valid(expr, *registry_);
    Query next = *this;
    next.filter_ = next.filter_ ? combine(BoolOp::And, std::move(*next.filter_), expr) : expr;
    return next;
}

Query Query::orderby(const std::string& keyword, bool descending) const {
    registry_->lookup(keyword);
    Query next = *this;
    next.order_ = OrderBy{keyword, descending};
    return next;
}

QueryPlan Query::plan(int page) const {
    return plan_from_query(selects_, excludes_, filter_, order_, page, page_size_);
}

// ---------------------------------------------------------------------------
// ResultSet

struct ResultSet::State {
    Query query;
    std::size_t total = 0;
    mutable std::mutex mutex;
    mutable std::map<int, std::vector<Entry>> pages;

    explicit State(Query q) : query(std::move(q)) {}

    std::string page_url(int page) const {
        QueryPlan p = query.plan(page);
        return query.root() + "/API/?" + percent_encode(encode_summons(p));
    }

    std::vector<Entry> parse_page(const std::string& body, std::size_t expected_first) const {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ProtocolError(std::string("search response is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw ProtocolError("search response is not a JSON object");
        std::vector<std::pair<std::size_t, std::map<std::string, std::string>>> rows;
        rows.reserve(doc.size());
        for (const auto& [key, row] : doc.items()) {
            std::size_t rank = 0;
            auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), rank);
            if (ec != std::errc{} || ptr != key.data() + key.size() || rank == 0)
                throw ProtocolError("search response key '" + key + "' is not a rank");
            if (!row.is_object()) throw ProtocolError("search response row is not an object");
            std::map<std::string, std::string> raw;
            for (const auto& [keyword, v] : row.items()) {
                if (!v.is_string())
                    throw ProtocolError("property '" + keyword + "' is not a raw string");
                raw[keyword] = v.get<std::string>();
            }
            rows.emplace_back(rank, std::move(raw));
        }
        std::sort(rows.begin(), rows.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Entry> out;
        out.reserve(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].first != expected_first + i)
                throw ProtocolError("search response ranks are not contiguous");
            out.emplace_back(query.root(), query.registry(), query.transport(),
                             std::move(rows[i].second));
        }
        return out;
    }

    /// Fetch (or reuse) one page; serialized so each page loads once.
    const std::vector<Entry>& page_entries(int page, std::size_t* total_out = nullptr) const {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = pages.find(page);
        if (it != pages.end()) return it->second;
        HttpResponse response = query.transport()->fetch(page_url(page));
        if (response.status != 200)
            throw ProtocolError("search returned status " + std::to_string(response.status) +
                                ": " + response.body);
        auto header = response.header("X-AFLUX-Matches");
        if (!header) throw ProtocolError("search response lacks the X-AFLUX-Matches header");
        std::size_t matches = 0;
        auto [ptr, ec] =
            std::from_chars(header->data(), header->data() + header->size(), matches);
        if (ec != std::errc{} || ptr != header->data() + header->size())
            throw ProtocolError("X-AFLUX-Matches is not a count: " + *header);
        if (total_out != nullptr) *total_out = matches;
        std::size_t first =
            (static_cast<std::size_t>(page) - 1) * static_cast<std::size_t>(query.page_size()) +
            1;
        return pages.emplace(page, parse_page(response.body, first)).first->second;
    }
};

ResultSet Query::execute() const {
    if (selects_.empty() && !filter_ && !order_)
        throw UsageError("a query needs at least one select, filter, or orderby");
    auto state = std::make_shared<ResultSet::State>(*this);
    std::size_t total = 0;
    state->page_entries(1, &total);
    state->total = total;
    return ResultSet(std::move(state));
}

std::size_t ResultSet::total() const { return state_->total; }

Entry ResultSet::at(long long index) const {
    long long total = static_cast<long long>(state_->total);
    long long rank0 = index < 0 ? total + index : index;
    if (rank0 < 0 || rank0 >= total) throw IndexError(index, total);
    int size = state_->query.page_size();
    int page = static_cast<int>(rank0 / size) + 1;
    const std::vector<Entry>& entries = state_->page_entries(page);
    std::size_t offset = static_cast<std::size_t>(rank0 % size);
    if (offset >= entries.size())
        throw ProtocolError("page " + std::to_string(page) + " is shorter than expected");
    return entries[offset];
}

std::vector<Entry> ResultSet::slice(std::size_t a, std::size_t b) const {
    if (a > b) throw UsageError("slice start exceeds its end");
    if (b > state_->total) throw IndexError(static_cast<long long>(b), state_->total);
    std::vector<Entry> out;
    out.reserve(b - a);
    for (std::size_t i = a; i < b; ++i) out.push_back(at(static_cast<long long>(i)));
    return out;
}

std::vector<Entry> ResultSet::entries() const { return slice(0, state_->total); }

}  // namespace aflux
