#include "semfact/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>

#include <vector>

#include "semfact/errors.hpp"
#include "unicode_util.hpp"

namespace semfact {

namespace uni {

Decoded decode_utf8(std::string_view text, std::size_t pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
    const unsigned char b0 = byte(pos);
    if (b0 < 0x80) return {b0, 1, true};

    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {b0, 1, false};
    }
    if (pos + len > text.size()) return {b0, 1, false};
    for (int k = 1; k < len; ++k) {
        const unsigned char bk = byte(pos + k);
        if ((bk & 0xC0) != 0x80) return {b0, 1, false};
        cp = (cp << 6) | (bk & 0x3F);
    }
    return {cp, len, true};
}

void append_utf8(std::string& out, char32_t cp) {
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

bool is_whitespace(char32_t cp) { return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_WHITE_SPACE); }

bool is_upper_or_digit(char32_t cp) {
    const auto c = static_cast<UChar32>(cp);
    return u_isupper(c) || u_isdigit(c);
}

bool is_punct(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)); }

char32_t to_lower(char32_t cp) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))); }

}  // namespace uni

namespace {

// NFC via ICU; invalid UTF-8 sequences are substituted with U+FFFD.
std::string to_nfc(std::string_view raw) {
    UErrorCode status = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&status);
    if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");

    std::vector<UChar> u16(raw.size() + 1);
    int32_t u16_len = 0;
    u_strFromUTF8WithSub(u16.data(), static_cast<int32_t>(u16.size()), &u16_len, raw.data(),
                         static_cast<int32_t>(raw.size()), 0xFFFD, nullptr, &status);
    if (U_FAILURE(status)) throw Error("UTF-8 decoding failed");

    std::vector<UChar> out16(u16_len + 16);
    int32_t out_len = unorm2_normalize(norm, u16.data(), u16_len, out16.data(),
                                       static_cast<int32_t>(out16.size()), &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
        status = U_ZERO_ERROR;
        out16.resize(out_len + 1);
        out_len = unorm2_normalize(norm, u16.data(), u16_len, out16.data(),
                                   static_cast<int32_t>(out16.size()), &status);
    }
    if (U_FAILURE(status)) throw Error("NFC normalization failed");

    std::string out8(static_cast<std::size_t>(out_len) * 3 + 4, '\0');
    int32_t out8_len = 0;
    u_strToUTF8(out8.data(), static_cast<int32_t>(out8.size()), &out8_len, out16.data(), out_len, &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
        status = U_ZERO_ERROR;
        out8.resize(out8_len + 1);
        u_strToUTF8(out8.data(), static_cast<int32_t>(out8.size()), &out8_len, out16.data(), out_len, &status);
    }
    if (U_FAILURE(status)) throw Error("UTF-8 encoding failed");
    out8.resize(out8_len);
    return out8;
}

}  // namespace

std::string normalize_text(std::string_view raw) {
    const std::string nfc = to_nfc(raw);

    std::string out;
    out.reserve(nfc.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < nfc.size()) {
        const auto d = uni::decode_utf8(nfc, i);
        if (d.valid && uni::is_whitespace(d.cp)) {
            if (!out.empty()) pending_space = true;  // drops leading whitespace
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.append(nfc, i, d.length);
        }
        i += d.length;
    }
    return out;  // trailing whitespace stays pending and is dropped
}

}  // namespace semfact
