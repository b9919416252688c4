#include "aflux/transport.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"

#include "aflux/errors.hpp"

namespace aflux {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<int> env_int(const char* name) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    int v = 0;
    auto [ptr, ec] = std::from_chars(raw, raw + std::char_traits<char>::length(raw), v);
    if (ec != std::errc{} || *ptr != '\0' || v < 0) return std::nullopt;
    return v;
}

struct UrlParts {
    std::string host;
    int port = 80;
    std::string target;  // path + query, starts with '/'
};

UrlParts split_url(const std::string& url) {
    const std::string scheme = "http://";
    if (url.compare(0, scheme.size(), scheme) != 0)
        throw UsageError("unsupported URL (only http:// is handled): " + url);
    std::size_t host_begin = scheme.size();
    std::size_t path_begin = url.find('/', host_begin);
    std::string authority = url.substr(
        host_begin, path_begin == std::string::npos ? std::string::npos : path_begin - host_begin);
    UrlParts parts;
    std::size_t colon = authority.rfind(':');
    if (colon == std::string::npos) {
        parts.host = authority;
    } else {
        parts.host = authority.substr(0, colon);
        std::string port_str = authority.substr(colon + 1);
        int port = 0;
        auto [ptr, ec] =
            std::from_chars(port_str.data(), port_str.data() + port_str.size(), port);
        if (ec != std::errc{} || ptr != port_str.data() + port_str.size() || port < 1 ||
            port > 65535)
            throw UsageError("invalid port in URL: " + url);
        parts.port = port;
    }
    if (parts.host.empty()) throw UsageError("URL has no host: " + url);
    parts.target = path_begin == std::string::npos ? "/" : url.substr(path_begin);
    return parts;
}

}  // namespace

std::optional<std::string> HttpResponse::header(const std::string& name) const {
    auto it = headers.find(lower(name));
    if (it == headers.end()) return std::nullopt;
    return it->second;
}

TransportOptions TransportOptions::from_env() {
    TransportOptions opts;
    if (auto t = env_int("AFLUX_TIMEOUT_MS")) opts.timeout_ms = *t;
    if (auto r = env_int("AFLUX_RETRIES")) opts.retries = *r;
    return opts;
}

Transport::Transport(TransportOptions options) : options_(options) {}

HttpResponse Transport::fetch(const std::string& url) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(url);
        if (it != cache_.end()) {
            ++stats_.hits;
            return it->second;
        }
        ++stats_.misses;
    }
    HttpResponse response = network_get(url);
    if (response.status == 200) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = cache_.try_emplace(url, response);
        if (inserted) stats_.stored_bytes += response.body.size();
    }
    return response;
}

CacheStats Transport::stats() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return stats_;
}

HttpResponse Transport::network_get(const std::string& url) const {
    UrlParts parts = split_url(url);
    int attempts = options_.retries + 1;
    std::string last_error;
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        if (attempt > 1)
            std::this_thread::sleep_for(std::chrono::milliseconds(options_.backoff_ms));
        httplib::Client client(parts.host, parts.port);
        client.set_connection_timeout(std::chrono::milliseconds(options_.timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(options_.timeout_ms));
        client.set_write_timeout(std::chrono::milliseconds(options_.timeout_ms));
        httplib::Result result = client.Get(parts.target);
        if (!result) {
            last_error = httplib::to_string(result.error());
            continue;
        }
        HttpResponse response;
        response.status = result->status;
        response.body = result->body;
        for (const auto& [key, value] : result->headers) response.headers[lower(key)] = value;
        return response;
    }
    throw TransportError("GET " + url + " failed: " + last_error, attempts);
}

std::string normalize_root(std::string root) {
    while (!root.empty() && root.back() == '/') root.pop_back();
    if (root.size() >= 4) {
        std::string tail = root.substr(root.size() - 4);
        std::transform(tail.begin(), tail.end(), tail.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (tail == "/API") root.resize(root.size() - 4);
    }
    while (!root.empty() && root.back() == '/') root.pop_back();
    if (root.empty()) throw UsageError("service root URL is empty");
    return root;
}

}  // namespace aflux
