#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace semfact::uni {

struct Decoded {
    char32_t cp = 0;
    int length = 1;  // bytes consumed; 1 for invalid sequences (copied through as-is)
    bool valid = true;
};

// Decodes one UTF-8 sequence starting at pos. Invalid bytes decode as themselves with
// valid = false so callers can pass them through unchanged.
Decoded decode_utf8(std::string_view text, std::size_t pos);

void append_utf8(std::string& out, char32_t cp);

bool is_whitespace(char32_t cp);       // Unicode White_Space property
bool is_upper_or_digit(char32_t cp);   // sentence-start test
bool is_punct(char32_t cp);
char32_t to_lower(char32_t cp);        // simple one-to-one lowering

}  // namespace semfact::uni
