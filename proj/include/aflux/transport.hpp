#ifndef AFLUX_TRANSPORT_HPP
#define AFLUX_TRANSPORT_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace aflux {

struct HttpResponse {
    int status = 0;
    std::string body;
    std::map<std::string, std::string> headers;  // keys lowercased

    std::optional<std::string> header(const std::string& name) const;
};

struct CacheStats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t stored_bytes = 0;
};

struct TransportOptions {
    int timeout_ms = 10000;
    int retries = 2;
    int backoff_ms = 100;

    /// Defaults with AFLUX_TIMEOUT_MS / AFLUX_RETRIES applied when set to
    /// valid non-negative integers.
    static TransportOptions from_env();
};

/// HTTP GET with a read-through in-memory cache. Bodies of 200 responses
/// are stored keyed by exact URL bytes; non-200 responses pass through
/// uncached. Connection failures retry with fixed backoff, HTTP error
/// statuses never do.
class Transport {
  public:
    explicit Transport(TransportOptions options = TransportOptions::from_env());

    HttpResponse fetch(const std::string& url);
    CacheStats stats() const;
    const TransportOptions& options() const { return options_; }

  private:
    HttpResponse network_get(const std::string& url) const;

    TransportOptions options_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, HttpResponse> cache_;
    CacheStats stats_;
};

using TransportPtr = std::shared_ptr<Transport>;

/// Canonical service root: scheme://host[:port] with any trailing '/' and
/// trailing '/API' removed, so route paths can be appended uniformly.
std::string normalize_root(std::string root);

}  // namespace aflux

#endif  // AFLUX_TRANSPORT_HPP
