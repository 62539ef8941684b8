#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "retmem/errors.hpp"

namespace retmem::protocol {

inline constexpr std::string_view kWriteOpen = "[MEM_WRITE{";
inline constexpr std::string_view kReadOpen = "[MEM_READ{";
inline constexpr std::string_view kDelimiter = ">>";

struct WriteCall {
    std::string t1, t2, t3;
    bool operator==(const WriteCall&) const = default;
};

// Empty string means the slot is unfilled; one or two slots must be filled.
struct ReadCall {
    std::string q1, q2, q3;

    int filled_count() const {
        return static_cast<int>(!q1.empty()) + static_cast<int>(!q2.empty()) +
               static_cast<int>(!q3.empty());
    }
    bool operator==(const ReadCall&) const = default;
};

using ApiCall = std::variant<WriteCall, ReadCall>;

struct ReadResponse {
    std::vector<std::array<std::string, 3>> triplets;
    bool operator==(const ReadResponse&) const = default;
};

// "[MEM_WRITE{" t1 ">>" t2 ">>" t3 "}]"
std::string render_write(const WriteCall& call);

// "[MEM_READ{" q1 ">>" q2 ">>" q3 "}:"  — note the trailing colon and no
// closing bracket; the response is spliced in afterwards.
std::string render_read_query(const ReadCall& call);

// "{a>>b>>c};{d>>e>>f}]" — an empty response renders as just "]".
std::string render_read_response(const ReadResponse& response);

// Strict inverse of the two renderers. Throws MalformedCallError.
ApiCall parse_call(std::string_view text);

// Parses a rendered response segment including its final ']'.
ReadResponse parse_read_response(std::string_view segment);

enum class ScanStatus {
    NoCall,      // nothing call-like in the text
    Incomplete,  // a call opening that has not closed yet; await more tokens
    Complete,    // a well-formed call; `call` is set
    Malformed,   // a call that closed with invalid structure; `reason` is set
};

struct ScanResult {
    ScanStatus status = ScanStatus::NoCall;
    std::size_t begin = 0;  // byte offsets into the scanned text
    std::size_t end = 0;    // one past the region; resume scanning here
    std::optional<ApiCall> call;
    std::string reason;
};

// Finds the earliest API call in the text. A read call is complete once its
// query segment through "}:" is present; a write call at its closing ']'.
ScanResult scan(std::string_view text);

// When `from` sits right after a read call's "}:", returns the offset one
// past the closing ']' of the spliced response, if a well-formed response is
// present there.
std::optional<std::size_t> find_response_end(std::string_view text, std::size_t from);

}  // namespace retmem::protocol
