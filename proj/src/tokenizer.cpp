#include "semfact/tokenizer.hpp"

#include "semfact/errors.hpp"
#include "unicode_util.hpp"

namespace semfact {

namespace {

// Byte ranges between Unicode whitespace, in input order.
std::vector<std::string> whitespace_split(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    std::size_t token_start = 0;
    bool in_token = false;
    while (i < text.size()) {
        const auto d = uni::decode_utf8(text, i);
        const bool ws = d.valid && uni::is_whitespace(d.cp);
        if (ws) {
            if (in_token) {
                tokens.emplace_back(text.substr(token_start, i - token_start));
                in_token = false;
            }
        } else if (!in_token) {
            token_start = i;
            in_token = true;
        }
        i += d.length;
    }
    if (in_token) tokens.emplace_back(text.substr(token_start));
    return tokens;
}

}  // namespace

const std::string& WhitespaceTokenizer::name() const {
    static const std::string n = "whitespace";
    return n;
}

std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const {
    return whitespace_split(text);
}

const std::string& WordTokenizer::name() const {
    static const std::string n = "word";
    return n;
}

std::vector<std::string> WordTokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> out;
    for (const std::string& raw : whitespace_split(text)) {
        // decode once, then strip punctuation from both ends and lowercase
        std::vector<char32_t> cps;
        std::size_t i = 0;
        while (i < raw.size()) {
            const auto d = uni::decode_utf8(raw, i);
            cps.push_back(d.cp);
            i += d.length;
        }
        std::size_t lo = 0;
        std::size_t hi = cps.size();
        while (lo < hi && uni::is_punct(cps[lo])) ++lo;
        while (hi > lo && uni::is_punct(cps[hi - 1])) --hi;
        if (lo == hi) continue;
        std::string token;
        for (std::size_t k = lo; k < hi; ++k) uni::append_utf8(token, uni::to_lower(cps[k]));
        out.push_back(std::move(token));
    }
    return out;
}

std::shared_ptr<const Tokenizer> make_tokenizer(const std::string& name) {
    if (name == "whitespace") return std::make_shared<WhitespaceTokenizer>();
    if (name == "word") return std::make_shared<WordTokenizer>();
    throw Error("unknown tokenizer '" + name + "' (expected \"whitespace\" or \"word\")");
}

}  // namespace semfact
