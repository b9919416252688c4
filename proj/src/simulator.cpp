#include "aflux/simulator.hpp"

#include <algorithm>

#include "json.hpp"

#include "aflux/errors.hpp"
#include "aflux/filter.hpp"

namespace aflux {

namespace {

const char* kReserved[] = {"auid", "aurl", "compound"};

bool is_reserved(const std::string& keyword) {
    for (const char* r : kReserved)
        if (keyword == r) return true;
    return false;
}

}  // namespace

Dataset::Dataset(std::vector<Record> records, RegistryPtr registry)
    : records_(std::move(records)), registry_(std::move(registry)) {
    decoded_.reserve(records_.size());
    raws_.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const Record& r = records_[i];
        std::string where = "record " + std::to_string(i) +
                            (r.auid.empty() ? "" : " (" + r.auid + ")");
        if (r.auid.empty()) throw DatasetError(where + ": empty auid");
        if (r.aurl.empty() || r.aurl.front() != '/')
            throw DatasetError(where + ": aurl must be a server-rooted path");
        if (r.compound.empty()) throw DatasetError(where + ": empty compound");
        if (!by_auid_.emplace(r.auid, i).second)
            throw DatasetError(where + ": duplicate auid");
        if (!by_aurl_.emplace(r.aurl, i).second)
            throw DatasetError(where + ": duplicate aurl");

        std::map<std::string, TypedValue> typed;
        std::map<std::string, std::string> raw;
        raw["auid"] = r.auid;
        raw["aurl"] = r.aurl;
        raw["compound"] = r.compound;
        for (const auto& [keyword, bytes] : r.properties) {
            if (is_reserved(keyword))
                throw DatasetError(where + ": property '" + keyword +
                                   "' duplicates a record field");
            if (!registry_->contains(keyword))
                throw DatasetError(where + ": unknown keyword '" + keyword + "'");
            try {
                typed.emplace(keyword, decode(registry_->lookup(keyword).kind, bytes));
            } catch (const Error& e) {
                throw DatasetError(where + ", property '" + keyword + "': " + e.what());
            }
            raw[keyword] = bytes;
        }
        for (const char* field : kReserved)
            typed.emplace(field, decode(registry_->lookup(field).kind, raw[field]));
        decoded_.push_back(std::move(typed));
        raws_.push_back(std::move(raw));
    }
}

const Record* Dataset::find(const std::string& auid) const {
    auto it = by_auid_.find(auid);
    return it == by_auid_.end() ? nullptr : &records_[it->second];
}

const Record* Dataset::find_by_aurl(const std::string& aurl) const {
    auto it = by_aurl_.find(aurl);
    return it == by_aurl_.end() ? nullptr : &records_[it->second];
}

const std::string* Dataset::raw(std::size_t index, const std::string& keyword) const {
    const auto& map = raws_[index];
    auto it = map.find(keyword);
    return it == map.end() ? nullptr : &it->second;
}

const TypedValue* Dataset::value(std::size_t index, const std::string& keyword) const {
    const auto& map = decoded_[index];
    auto it = map.find(keyword);
    return it == map.end() ? nullptr : &it->second;
}

Dataset load_dataset(const std::string& json_text, RegistryPtr registry) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DatasetError(std::string("dataset is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw DatasetError("dataset must be a JSON array of records");
    std::vector<Record> records;
    records.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        std::string where = "record " + std::to_string(i);
        if (!item.is_object()) throw DatasetError(where + ": not a JSON object");
        Record r;
        for (const char* field : kReserved) {
            if (!item.contains(field) || !item[field].is_string())
                throw DatasetError(where + ": missing string field '" + std::string(field) +
                                   "'");
        }
        r.auid = item["auid"].get<std::string>();
        r.aurl = item["aurl"].get<std::string>();
        r.compound = item["compound"].get<std::string>();
        if (item.contains("properties")) {
            if (!item["properties"].is_object())
                throw DatasetError(where + ": 'properties' must be an object");
            for (const auto& [keyword, value] : item["properties"].items()) {
                if (!value.is_string())
                    throw DatasetError(where + ", property '" + keyword +
                                       "': raw value must be a string");
                r.properties[keyword] = value.get<std::string>();
            }
        }
        records.push_back(std::move(r));
    }
    return Dataset(std::move(records), std::move(registry));
}

// ---------------------------------------------------------------------------

namespace {

struct SortKey {
    bool present = false;
    bool numeric = false;
    double number = 0;
    const std::string* bytes = nullptr;
};

SortKey sort_key(const Dataset& d, std::size_t index, const std::string& keyword,
                 ValueKind kind) {
    SortKey key;
    const TypedValue* v = d.value(index, keyword);
    if (v == nullptr) return key;
    key.present = true;
    switch (kind) {
        case ValueKind::ScalarNumber:
            key.numeric = true;
            key.number = v->as_number();
            break;
        case ValueKind::NumberList:
            key.numeric = true;
            key.number = v->as_number_list().front();
            break;
        default:
            key.bytes = d.raw(index, keyword);
            break;
    }
    return key;
}

}  // namespace

Evaluation evaluate(const Dataset& dataset, const QueryPlan& plan) {
    const KeywordRegistry& registry = dataset.registry();
    for (const auto& entry : plan.matchbook) {
        registry.lookup(entry.keyword);  // throws UnknownKeywordError
        if (entry.filter) require_valid(*entry.filter, registry);
    }
    for (const auto& group : plan.groups) require_valid(group, registry);

    Evaluation out;
    for (const auto& entry : plan.matchbook)
        if (!entry.hidden) out.visible.push_back(entry.keyword);

    for (std::size_t i = 0; i < dataset.records().size(); ++i) {
        PropertyFn property = [&](const std::string& kw) { return dataset.value(i, kw); };
        bool ok = true;
        for (const auto& entry : plan.matchbook) {
            if (entry.filter && !aflux::evaluate(*entry.filter, property)) {
                ok = false;
                break;
            }
        }
        if (ok)
            for (const auto& group : plan.groups)
                if (!aflux::evaluate(group, property)) {
                    ok = false;
                    break;
                }
        if (ok) out.matches.push_back(i);
    }

    const std::string& order_kw = plan.ordering_keyword();
    ValueKind kind = registry.lookup(order_kw).kind;
    bool descending = plan.descending();
    std::sort(out.matches.begin(), out.matches.end(), [&](std::size_t a, std::size_t b) {
        SortKey ka = sort_key(dataset, a, order_kw, kind);
        SortKey kb = sort_key(dataset, b, order_kw, kind);
        if (ka.present != kb.present) return ka.present;  // absent sorts last
        if (ka.present) {
            if (ka.numeric) {
                if (ka.number != kb.number)
                    return descending ? kb.number < ka.number : ka.number < kb.number;
            } else if (*ka.bytes != *kb.bytes) {
                return descending ? *kb.bytes < *ka.bytes : *ka.bytes < *kb.bytes;
            }
        }
        return dataset.records()[a].auid < dataset.records()[b].auid;
    });

    std::size_t size = static_cast<std::size_t>(plan.page_size);
    std::size_t begin = (static_cast<std::size_t>(plan.page_number()) - 1) * size;
    out.first_rank = begin + 1;
    for (std::size_t i = begin; i < out.matches.size() && i < begin + size; ++i)
        out.page.push_back(out.matches[i]);
    return out;
}

// ---------------------------------------------------------------------------

SimResponse Simulator::handle(const std::string& method, const std::string& target) const {
    ++requests_;
    if (method != "GET") return {404, "text/plain", "unknown route\n", {}};
    std::string path = target;
    std::string query;
    std::size_t qpos = target.find('?');
    if (qpos != std::string::npos) {
        path = target.substr(0, qpos);
        query = target.substr(qpos + 1);
    }
    try {
        path = percent_decode(path);
        query = percent_decode(query);
    } catch (const ParseError& e) {
        return {400, "text/plain", std::string(e.what()) + "\n", {}};
    }
    if (path == "/API/" || path == "/API") {
        if (path == "/API" && query.empty()) return {404, "text/plain", "unknown route\n", {}};
        return search(query);
    }
    if (path == "/API/schema") return {200, "application/json", embedded_schema(), {}};
    if (path.rfind("/AFLOWDATA/", 0) == 0) return property(path, query);
    return {404, "text/plain", "unknown route\n", {}};
}

SimResponse Simulator::search(const std::string& summons) const {
    Evaluation eval;
    try {
        QueryPlan plan = parse_summons(summons);
        eval = evaluate(dataset_, plan);
    } catch (const Error& e) {
        return {400, "text/plain", std::string(e.what()) + "\n", {}};
    }

    nlohmann::ordered_json body = nlohmann::ordered_json::object();
    std::size_t rank = eval.first_rank;
    for (std::size_t index : eval.page) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        row["auid"] = dataset_.records()[index].auid;
        row["aurl"] = dataset_.records()[index].aurl;
        row["compound"] = dataset_.records()[index].compound;
        for (const auto& keyword : eval.visible) {
            if (is_reserved(keyword)) continue;
            if (const std::string* raw = dataset_.raw(index, keyword)) row[keyword] = *raw;
        }
        body[std::to_string(rank)] = std::move(row);
        ++rank;
    }
    SimResponse response{200, "application/json", body.dump(), {}};
    response.headers.emplace_back("X-AFLUX-Matches", std::to_string(eval.matches.size()));
    return response;
}

SimResponse Simulator::property(const std::string& path, const std::string& keyword) const {
    const Record* record = dataset_.find_by_aurl(path);
    if (record == nullptr) return {404, "text/plain", "unknown entry\n", {}};
    if (keyword.empty()) return {400, "text/plain", "missing property keyword\n", {}};
    std::size_t index =
        static_cast<std::size_t>(record - dataset_.records().data());
    const std::string* raw = dataset_.raw(index, keyword);
    if (raw == nullptr)
        return {404, "text/plain", "entry has no property '" + keyword + "'\n", {}};
    return {200, "text/plain", *raw, {}};
}

}  // namespace aflux
