#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace semfact {

// Token basis shared by segmentation, TF-IDF scoring, and the remote wire format.
// Implementations must be deterministic, and tokenize("") must return an empty list.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual const std::string& name() const = 0;
    virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
};

// Splits on Unicode whitespace and keeps every other character verbatim. Default basis.
class WhitespaceTokenizer final : public Tokenizer {
public:
    const std::string& name() const override;
    std::vector<std::string> tokenize(std::string_view text) const override;
};

// Whitespace split plus per-token cleanup: leading/trailing punctuation stripped and
// letters lowercased. Better suited to keyword matching than the raw basis.
class WordTokenizer final : public Tokenizer {
public:
    const std::string& name() const override;
    std::vector<std::string> tokenize(std::string_view text) const override;
};

// Resolves "whitespace" or "word"; throws Error for anything else.
std::shared_ptr<const Tokenizer> make_tokenizer(const std::string& name);

}  // namespace semfact
