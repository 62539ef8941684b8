#include "retmem/text.hpp"

#include <algorithm>
#include <array>

namespace retmem {

namespace {

#include "unicode_tables.inc"

char32_t compose_pair(char32_t base, char32_t mark) {
    auto cmp = [](const ComposePair& p, std::pair<char32_t, char32_t> key) {
        return p.base != key.first ? p.base < key.first : p.mark < key.second;
    };
    auto it = std::lower_bound(std::begin(kComposePairs), std::end(kComposePairs),
                               std::make_pair(base, mark), cmp);
    if (it != std::end(kComposePairs) && it->base == base && it->mark == mark)
        return it->composed;
    return 0;
}

char32_t to_lower(char32_t cp) {
    auto cmp = [](const LowerPair& p, char32_t key) { return p.from < key; };
    auto it = std::lower_bound(std::begin(kLowerPairs), std::end(kLowerPairs), cp, cmp);
    if (it != std::end(kLowerPairs) && it->from == cp) return it->to;
    return cp;
}

}  // namespace

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680:
        case 0x2000: case 0x2001: case 0x2002: case 0x2003: case 0x2004:
        case 0x2005: case 0x2006: case 0x2007: case 0x2008: case 0x2009:
        case 0x200A: case 0x2028: case 0x2029: case 0x202F: case 0x205F:
        case 0x3000:
            return true;
        default:
            return false;
    }
}

std::vector<char32_t> utf8_decode(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        char32_t cp = 0xFFFD;
        std::size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6 && i + 1 < text.size()) {
            len = 2;
            cp = static_cast<char32_t>(c & 0x1F) << 6 |
                 (static_cast<unsigned char>(text[i + 1]) & 0x3F);
            if (cp < 0x80) cp = 0xFFFD;
        } else if ((c >> 4) == 0xE && i + 2 < text.size()) {
            len = 3;
            cp = static_cast<char32_t>(c & 0x0F) << 12 |
                 (static_cast<char32_t>(static_cast<unsigned char>(text[i + 1]) & 0x3F) << 6) |
                 (static_cast<unsigned char>(text[i + 2]) & 0x3F);
            if (cp < 0x800) cp = 0xFFFD;
        } else if ((c >> 3) == 0x1E && i + 3 < text.size()) {
            len = 4;
            cp = static_cast<char32_t>(c & 0x07) << 18 |
                 (static_cast<char32_t>(static_cast<unsigned char>(text[i + 1]) & 0x3F) << 12) |
                 (static_cast<char32_t>(static_cast<unsigned char>(text[i + 2]) & 0x3F) << 6) |
                 (static_cast<unsigned char>(text[i + 3]) & 0x3F);
            if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
        }
        // continuation bytes must actually be continuations
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) {
                cp = 0xFFFD;
                len = 1;
                break;
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string normalize_term(std::string_view raw) {
    std::vector<char32_t> cps = utf8_decode(raw);

    // Canonical composition of adjacent (base, mark) pairs. Input already in
    // composed form passes through unchanged, so the pass is idempotent.
    std::vector<char32_t> composed;
    composed.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!composed.empty()) {
            if (char32_t c = compose_pair(composed.back(), cp)) {
                composed.back() = c;
                continue;
            }
        }
        composed.push_back(cp);
    }

    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    bool emitted = false;
    for (char32_t cp : composed) {
        if (is_unicode_space(cp)) {
            pending_space = emitted;  // leading whitespace drops entirely
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        utf8_append(out, to_lower(cp));
        emitted = true;
    }
    return out;
}

std::string term_wire_violation(std::string_view term) {
    if (term.find(">>") != std::string_view::npos) return "term contains '>>'";
    if (term.find('{') != std::string_view::npos) return "term contains '{'";
    if (term.find('}') != std::string_view::npos) return "term contains '}'";
    if (term.find('[') != std::string_view::npos) return "term contains '['";
    if (term.find(']') != std::string_view::npos) return "term contains ']'";
    if (!term.empty() && (term.front() == '>' || term.back() == '>'))
        return "term starts or ends with '>'";
    return {};
}

}  // namespace retmem
