#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace retmem {

// One error domain for the whole engine. Callers that need to branch on the
// failure kind switch on code() instead of parsing what() text.
enum class ErrorCode {
    EmptyTerm,
    ReservedDelimiter,
    InvalidQueryShape,
    DimensionMismatch,
    MalformedCall,
    MalformedSnapshot,
    Io,
    BackendUnavailable,
    ExternalEmbedderUnavailable,
    PoolExhausted,
    NoMatchingFact,
    MixedGroup,
    Config,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class MalformedCallError : public Error {
public:
    MalformedCallError(std::size_t offset, const std::string& reason)
        : Error(ErrorCode::MalformedCall,
                "malformed call at offset " + std::to_string(offset) + ": " + reason),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class MalformedSnapshotError : public Error {
public:
    MalformedSnapshotError(std::size_t line, const std::string& reason)
        : Error(ErrorCode::MalformedSnapshot,
                "malformed snapshot line " + std::to_string(line) + ": " + reason),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace retmem
