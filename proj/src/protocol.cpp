#include "retmem/protocol.hpp"

#include "retmem/text.hpp"

namespace retmem::protocol {

namespace {

void check_term(std::string_view term, const char* where) {
    if (std::string v = term_wire_violation(term); !v.empty())
        throw Error(ErrorCode::ReservedDelimiter, std::string(where) + ": " + v);
    if (normalize_term(term).empty())
        throw Error(ErrorCode::EmptyTerm, std::string(where) + ": term is empty");
}

// Greedy leftmost split on ">>". Terms may not begin or end with '>', so the
// rendered form splits back exactly.
std::vector<std::string> split_slots(std::string_view body) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t d = body.find(kDelimiter, pos);
        if (d == std::string_view::npos) {
            parts.emplace_back(body.substr(pos));
            return parts;
        }
        parts.emplace_back(body.substr(pos, d - pos));
        pos = d + kDelimiter.size();
    }
}

ScanResult classify_at(std::string_view text, std::size_t p, bool is_write) {
    const std::string_view marker = is_write ? kWriteOpen : kReadOpen;
    ScanResult r;
    r.begin = p;

    std::size_t j = p + marker.size();
    for (; j < text.size(); ++j) {
        char c = text[j];
        if (c == '}') break;
        if (c == '{' || c == '[' || c == ']') {
            r.status = ScanStatus::Malformed;
            r.end = j;  // the offending char may open the next call; do not consume it
            r.reason = std::string("unexpected '") + c + "' inside call body";
            return r;
        }
    }
    if (j >= text.size() || j + 1 >= text.size()) {
        // no '}' yet, or '}' is the last byte so the closer may still arrive
        r.status = ScanStatus::Incomplete;
        r.end = text.size();
        return r;
    }

    const char closer = is_write ? ']' : ':';
    if (text[j + 1] != closer) {
        r.status = ScanStatus::Malformed;
        r.end = j + 1;
        r.reason = std::string("expected '") + closer + "' after '}'";
        return r;
    }
    r.end = j + 2;

    std::vector<std::string> parts = split_slots(text.substr(p + marker.size(), j - p - marker.size()));
    if (parts.size() != 3) {
        r.status = ScanStatus::Malformed;
        r.reason = (is_write ? std::string("write call has ") : std::string("read call has ")) +
                   std::to_string(parts.size()) + " slots, expected 3";
        return r;
    }
    for (const std::string& part : parts) {
        if (std::string v = term_wire_violation(part); !v.empty()) {
            r.status = ScanStatus::Malformed;
            r.reason = v;
            return r;
        }
    }

    if (is_write) {
        for (const std::string& part : parts)
            if (part.empty()) {
                r.status = ScanStatus::Malformed;
                r.reason = "write call has an empty term";
                return r;
            }
        r.status = ScanStatus::Complete;
        r.call = WriteCall{parts[0], parts[1], parts[2]};
    } else {
        ReadCall call{parts[0], parts[1], parts[2]};
        int filled = call.filled_count();
        if (filled < 1 || filled > 2) {
            r.status = ScanStatus::Malformed;
            r.reason = "read call fills " + std::to_string(filled) + " slots, expected 1 or 2";
            return r;
        }
        r.status = ScanStatus::Complete;
        r.call = std::move(call);
    }
    return r;
}

}  // namespace

std::string render_write(const WriteCall& call) {
    check_term(call.t1, "t1");
    check_term(call.t2, "t2");
    check_term(call.t3, "t3");
    std::string out;
    out.reserve(kWriteOpen.size() + call.t1.size() + call.t2.size() + call.t3.size() + 6);
    out.append(kWriteOpen);
    out.append(call.t1).append(kDelimiter).append(call.t2).append(kDelimiter).append(call.t3);
    out.append("}]");
    return out;
}

std::string render_read_query(const ReadCall& call) {
    int filled = call.filled_count();
    if (filled < 1 || filled > 2)
        throw Error(ErrorCode::InvalidQueryShape,
                    "read call fills " + std::to_string(filled) + " slots, expected 1 or 2");
    for (const std::string* slot : {&call.q1, &call.q2, &call.q3})
        if (!slot->empty())
            if (std::string v = term_wire_violation(*slot); !v.empty())
                throw Error(ErrorCode::ReservedDelimiter, v);
    std::string out;
    out.append(kReadOpen);
    out.append(call.q1).append(kDelimiter).append(call.q2).append(kDelimiter).append(call.q3);
    out.append("}:");
    return out;
}

std::string render_read_response(const ReadResponse& response) {
    std::string out;
    for (std::size_t i = 0; i < response.triplets.size(); ++i) {
        const auto& t = response.triplets[i];
        check_term(t[0], "response t1");
        check_term(t[1], "response t2");
        check_term(t[2], "response t3");
        if (i) out.push_back(';');
        out.push_back('{');
        out.append(t[0]).append(kDelimiter).append(t[1]).append(kDelimiter).append(t[2]);
        out.push_back('}');
    }
    out.push_back(']');
    return out;
}

ScanResult scan(std::string_view text) {
    std::size_t pos = 0;
    while (true) {
        std::size_t p = text.find('[', pos);
        if (p == std::string_view::npos) return ScanResult{};  // NoCall

        std::string_view rest = text.substr(p);
        if (rest.substr(0, kWriteOpen.size()) == kWriteOpen)
            return classify_at(text, p, /*is_write=*/true);
        if (rest.substr(0, kReadOpen.size()) == kReadOpen)
            return classify_at(text, p, /*is_write=*/false);

        // a truncated opening at the end of the text may still grow into a call
        if (rest.size() < kWriteOpen.size() &&
            (kWriteOpen.substr(0, rest.size()) == rest ||
             kReadOpen.substr(0, rest.size()) == rest)) {
            ScanResult r;
            r.status = ScanStatus::Incomplete;
            r.begin = p;
            r.end = text.size();
            return r;
        }
        pos = p + 1;
    }
}

ApiCall parse_call(std::string_view text) {
    ScanResult r = scan(text);
    if (r.status == ScanStatus::Malformed)
        throw MalformedCallError(r.begin, r.reason);
    if (r.status != ScanStatus::Complete || r.begin != 0 || r.end != text.size())
        throw MalformedCallError(0, "text is not exactly one API call");
    return *r.call;
}

namespace {

// Walks one "{a>>b>>c}" group starting at `pos`; returns one past '}' or
// nullopt when the structure does not match.
std::optional<std::size_t> walk_triple(std::string_view text, std::size_t pos,
                                       std::array<std::string, 3>* out) {
    if (pos >= text.size() || text[pos] != '{') return std::nullopt;
    std::size_t close = pos + 1;
    for (; close < text.size(); ++close) {
        char c = text[close];
        if (c == '}') break;
        if (c == '{' || c == '[' || c == ']') return std::nullopt;
    }
    if (close >= text.size()) return std::nullopt;
    std::vector<std::string> parts = split_slots(text.substr(pos + 1, close - pos - 1));
    if (parts.size() != 3) return std::nullopt;
    for (const std::string& part : parts)
        if (part.empty() || !term_wire_violation(part).empty()) return std::nullopt;
    if (out) *out = {parts[0], parts[1], parts[2]};
    return close + 1;
}

std::optional<std::size_t> walk_response(std::string_view text, std::size_t from,
                                         ReadResponse* out) {
    std::size_t pos = from;
    if (pos < text.size() && text[pos] == ']') return pos + 1;  // empty response
    while (true) {
        std::array<std::string, 3> triple;
        auto next = walk_triple(text, pos, out ? &triple : nullptr);
        if (!next) return std::nullopt;
        if (out) out->triplets.push_back(std::move(triple));
        pos = *next;
        if (pos >= text.size()) return std::nullopt;
        if (text[pos] == ']') return pos + 1;
        if (text[pos] != ';') return std::nullopt;
        ++pos;
    }
}

}  // namespace

ReadResponse parse_read_response(std::string_view segment) {
    ReadResponse response;
    auto end = walk_response(segment, 0, &response);
    if (!end || *end != segment.size())
        throw MalformedCallError(end ? *end : 0, "not a well-formed read response segment");
    return response;
}

std::optional<std::size_t> find_response_end(std::string_view text, std::size_t from) {
    return walk_response(text, from, nullptr);
}

}  // namespace retmem::protocol
