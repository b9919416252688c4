#ifndef AFLUX_ERRORS_HPP
#define AFLUX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aflux {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed schema document (bad JSON, missing field, unknown kind).
class SchemaError : public Error {
public:
    SchemaError(const std::string& msg, std::size_t byte_offset)
        : Error(msg + " (at byte " + std::to_string(byte_offset) + ")"),
          byte_offset_(byte_offset) {}
    explicit SchemaError(const std::string& msg) : Error(msg), byte_offset_(0) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// Two schema descriptors share one name.
class DuplicateKeywordError : public SchemaError {
public:
    explicit DuplicateKeywordError(const std::string& name)
        : SchemaError("duplicate keyword in schema: " + name), name_(name) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Registry lookup failed; carries the closest known names.
class UnknownKeywordError : public Error {
public:
    UnknownKeywordError(const std::string& name, std::vector<std::string> suggestions)
        : Error(format(name, suggestions)), name_(name), suggestions_(std::move(suggestions)) {}

    const std::string& name() const { return name_; }
    const std::vector<std::string>& suggestions() const { return suggestions_; }

private:
    static std::string format(const std::string& name, const std::vector<std::string>& sug) {
        std::string msg = "unknown keyword: '" + name + "'";
        if (!sug.empty()) {
            msg += " (closest matches:";
            for (const auto& s : sug) msg += " " + s;
            msg += ")";
        }
        return msg;
    }

    std::string name_;
    std::vector<std::string> suggestions_;
};

/// Comparison construction rejected (e.g. CONTAINS with a numeric literal).
class InvalidComparisonError : public Error {
public:
    using Error::Error;
};

/// A filter failed validation against a registry; carries one line per
/// offending leaf.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : Error(format(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string format(const std::vector<std::string>& issues) {
        std::string msg = "filter failed validation:";
        for (const auto& i : issues) msg += "\n  " + i;
        return msg;
    }

    std::vector<std::string> issues_;
};

/// Syntax error with byte offset and the tokens that would have been accepted.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::vector<std::string> expected = {})
        : Error(format(msg, offset, expected)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& msg, std::size_t offset,
                              const std::vector<std::string>& expected) {
        std::string out = msg + " at offset " + std::to_string(offset);
        if (!expected.empty()) {
            out += "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) out += " or ";
                out += expected[i];
            }
        }
        return out;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Summons is missing a required directive ($paging).
class MissingDirectiveError : public Error {
public:
    using Error::Error;
};

/// A directive or value lies outside the accepted range (e.g. page 0).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Raw property string could not be decoded under its declared kind.
class DecodeError : public Error {
public:
    DecodeError(const std::string& msg, std::size_t offset, std::string token)
        : Error(msg + " (offset " + std::to_string(offset) + ", token '" + token + "')"),
          offset_(offset), token_(std::move(token)) {}

    std::size_t offset() const { return offset_; }
    const std::string& token() const { return token_; }

private:
    std::size_t offset_;
    std::string token_;
};

/// A typed value does not match the kind it is being encoded or compared under.
class ValueTypeError : public Error {
public:
    using Error::Error;
};

/// Network-level failure after all retries were spent.
class TransportError : public Error {
public:
    TransportError(const std::string& msg, int attempts)
        : Error(msg + " (after " + std::to_string(attempts) + " attempt" +
                (attempts == 1 ? "" : "s") + ")"),
          attempts_(attempts) {}

    int attempts() const { return attempts_; }

private:
    int attempts_;
};

/// Caller misuse: bad argument, invalid URL, zero batch size.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Peer spoke the protocol wrong: malformed response body, unexpected status.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Result index outside [-total, total).
class IndexError : public Error {
public:
    IndexError(long long index, long long total)
        : Error("index " + std::to_string(index) + " out of range for result set of " +
                std::to_string(total) + (total == 1 ? " entry" : " entries")),
          total_(total) {}

    long long total() const { return total_; }

private:
    long long total_;
};

/// Lazy property fetch came back 404: the entry does not carry the property.
class MissingPropertyError : public Error {
public:
    using Error::Error;
};

/// Entry lacks one or more properties required to build a structure.
class IncompleteStructureError : public Error {
public:
    explicit IncompleteStructureError(std::vector<std::string> missing)
        : Error(format(missing)), missing_(std::move(missing)) {}

    const std::vector<std::string>& missing() const { return missing_; }

private:
    static std::string format(const std::vector<std::string>& missing) {
        std::string msg = "entry is missing structural properties:";
        for (const auto& m : missing) msg += " " + m;
        return msg;
    }

    std::vector<std::string> missing_;
};

/// Structural properties disagree with each other (counts vs. positions).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Dataset file failed validation; names the record and field.
class DatasetError : public Error {
public:
    using Error::Error;
};

}  // namespace aflux

#endif  // AFLUX_ERRORS_HPP
