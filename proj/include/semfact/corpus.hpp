#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semfact/label.hpp"
#include "semfact/tokenizer.hpp"

namespace semfact {

// Unicode NFC, whitespace runs collapsed to single ASCII spaces, outer whitespace
// stripped; no other character changes. Evidence matching relies on this staying
// conservative, so every module must normalize through this one function.
std::string normalize_text(std::string_view raw);

struct Sentence {
    int index = 0;        // ordinal within the context
    std::string text;     // no leading/trailing whitespace
    std::vector<std::string> tokens;
    std::size_t begin = 0;  // char span into the normalized context, [begin, end)
    std::size_t end = 0;

    int token_count() const { return static_cast<int>(tokens.size()); }
};

const std::vector<std::string>& default_abbreviations();

// Rule-based splitter. A boundary is a run of terminal punctuation (. ! ? ...) plus
// any closing quotes/brackets, followed by whitespace and an uppercase letter or
// digit. A single '.' whose preceding word is on the abbreviation guard list does not
// end a sentence. Context without terminal punctuation yields one sentence; empty
// context yields none. Token counts come from the given tokenizer.
std::vector<Sentence> split_sentences(std::string_view normalized_context, const Tokenizer& tokenizer,
                                      const std::vector<std::string>& abbreviations = default_abbreviations());

struct VerificationRecord {
    std::string id;
    std::string claim;    // normalized
    std::string context;  // normalized
    std::optional<VerdictLabel> gold_verdict;
    std::optional<std::string> gold_evidence;  // normalized; absent for NEI
};

enum class DatasetFormat { SemviqaJson };

// Parses the semviqa-json schema: a UTF-8 array of objects {"id", "context", "claim",
// "verdict"?, "evidence"?}. Text fields are normalized; empty or null evidence is
// canonicalized to absent. Throws MalformedRecord / DuplicateId on invariant
// violations; order is preserved.
std::vector<VerificationRecord> parse_dataset(std::string_view json_text);

std::vector<VerificationRecord> ingest_dataset(const std::filesystem::path& path,
                                               DatasetFormat format = DatasetFormat::SemviqaJson);

}  // namespace semfact
