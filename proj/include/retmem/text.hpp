#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace retmem {

// Canonical term form used for every equality check in the engine:
// canonical composition of combining sequences, 1:1 lowercase folding,
// whitespace trimmed and inner runs collapsed to a single space.
// Stored triplets keep their original surface form.
std::string normalize_term(std::string_view raw);

// Decodes UTF-8 into codepoints. Invalid bytes decode as U+FFFD.
std::vector<char32_t> utf8_decode(std::string_view text);
void utf8_append(std::string& out, char32_t cp);

bool is_unicode_space(char32_t cp);

// Terms that travel over the call wire may not contain the delimiter or the
// structural characters, and may not start or end with '>' (a boundary '>'
// would merge with the delimiter and make the wire text ambiguous).
// Returns an empty string when ok, otherwise a short reason.
std::string term_wire_violation(std::string_view term);

}  // namespace retmem
