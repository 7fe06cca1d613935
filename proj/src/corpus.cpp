#include "semfact/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "semfact/errors.hpp"
#include "unicode_util.hpp"

namespace semfact {

namespace {

bool is_terminal_punct(char32_t cp) {
    return cp == U'.' || cp == U'!' || cp == U'?' || cp == U'…';  // ellipsis
}

bool is_closing(char32_t cp) {
    switch (cp) {
        case U'"':
        case U'\'':
        case U')':
        case U']':
        case U'»':  // »
        case U'’':  // ’
        case U'”':  // ”
            return true;
        default:
            return false;
    }
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

// The word ending right before the '.' at dot_pos, including the dot itself.
std::string word_ending_at(std::string_view text, std::size_t dot_pos) {
    std::size_t start = dot_pos;
    while (start > 0) {
        // normalized text only carries ASCII spaces between words
        if (text[start - 1] == ' ') break;
        --start;
    }
    return std::string(text.substr(start, dot_pos - start)) + ".";
}

Sentence make_sentence(std::string_view context, std::size_t begin, std::size_t end, int index,
                       const Tokenizer& tokenizer) {
    Sentence s;
    s.index = index;
    s.begin = begin;
    s.end = end;
    s.text = std::string(context.substr(begin, end - begin));
    s.tokens = tokenizer.tokenize(s.text);
    return s;
}

}  // namespace

const std::vector<std::string>& default_abbreviations() {
    static const std::vector<std::string> abbrevs = {
        "mr.",  "mrs.", "ms.",  "dr.",   "prof.", "st.",  "jr.",  "sr.",  "vs.",
        "etc.", "e.g.", "i.e.", "no.",   "vol.",  "fig.", "inc.", "ltd.", "co.",
        // common Vietnamese title/place abbreviations
        "tp.",  "ts.",  "ths.", "pgs.",  "gs.",   "bs.",  "kts.", "tt.",
    };
    return abbrevs;
}

std::vector<Sentence> split_sentences(std::string_view context, const Tokenizer& tokenizer,
                                      const std::vector<std::string>& abbreviations) {
    std::vector<Sentence> sentences;
    if (context.empty()) return sentences;

    std::unordered_set<std::string> guard;
    for (const auto& a : abbreviations) guard.insert(ascii_lower(a));

    std::size_t sentence_start = 0;
    std::size_t i = 0;
    while (i < context.size()) {
        const auto d = uni::decode_utf8(context, i);
        if (!(d.valid && is_terminal_punct(d.cp))) {
            i += d.length;
            continue;
        }

        // consume the whole run of terminal punctuation plus closing quotes/brackets
        std::size_t run_end = i;
        int punct_count = 0;
        bool only_periods = true;
        std::size_t j = i;
        while (j < context.size()) {
            const auto c = uni::decode_utf8(context, j);
            if (c.valid && is_terminal_punct(c.cp)) {
                ++punct_count;
                if (c.cp != U'.') only_periods = false;
                j += c.length;
            } else if (c.valid && is_closing(c.cp)) {
                j += c.length;
            } else {
                break;
            }
        }
        run_end = j;

        bool boundary = false;
        std::size_t next_start = run_end;
        if (run_end < context.size()) {
            const auto ws = uni::decode_utf8(context, run_end);
            if (ws.valid && uni::is_whitespace(ws.cp)) {
                std::size_t k = run_end + ws.length;
                while (k < context.size()) {
                    const auto c = uni::decode_utf8(context, k);
                    if (c.valid && uni::is_whitespace(c.cp)) k += c.length;
                    else break;
                }
                if (k < context.size()) {
                    const auto nxt = uni::decode_utf8(context, k);
                    if (nxt.valid && uni::is_upper_or_digit(nxt.cp)) {
                        boundary = true;
                        next_start = k;
                        if (punct_count == 1 && only_periods &&
                            guard.count(ascii_lower(word_ending_at(context, i))) > 0) {
                            boundary = false;
                        }
                    }
                }
            }
        }

        if (boundary) {
            sentences.push_back(make_sentence(context, sentence_start, run_end,
                                              static_cast<int>(sentences.size()), tokenizer));
            sentence_start = next_start;
            i = next_start;
        } else {
            i = run_end;
        }
    }

    if (sentence_start < context.size()) {
        sentences.push_back(make_sentence(context, sentence_start, context.size(),
                                          static_cast<int>(sentences.size()), tokenizer));
    }
    return sentences;
}

namespace {

using nlohmann::json;

std::string record_label(const json& obj, std::size_t position) {
    if (obj.is_object() && obj.contains("id") && obj.at("id").is_string())
        return obj.at("id").get<std::string>();
    return "#" + std::to_string(position);
}

std::string require_string(const json& obj, const char* key, const std::string& id) {
    if (!obj.contains(key)) throw MalformedRecord(id, std::string("missing field \"") + key + "\"");
    const json& v = obj.at(key);
    if (!v.is_string()) throw MalformedRecord(id, std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

}  // namespace

std::vector<VerificationRecord> parse_dataset(std::string_view json_text) {
    if (json_text.size() >= 3 && json_text.substr(0, 3) == "\xEF\xBB\xBF")
        throw MalformedRecord("", "dataset must be UTF-8 without a BOM");

    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw MalformedRecord("", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_array()) throw MalformedRecord("", "top-level JSON value must be an array");

    std::vector<VerificationRecord> records;
    records.reserve(root.size());
    std::unordered_set<std::string> seen_ids;

    for (std::size_t pos = 0; pos < root.size(); ++pos) {
        const json& obj = root[pos];
        const std::string label = record_label(obj, pos);
        if (!obj.is_object()) throw MalformedRecord(label, "record must be a JSON object");

        VerificationRecord rec;
        rec.id = require_string(obj, "id", label);
        rec.claim = normalize_text(require_string(obj, "claim", rec.id));
        rec.context = normalize_text(require_string(obj, "context", rec.id));
        if (rec.claim.empty()) throw MalformedRecord(rec.id, "claim is empty after normalization");
        if (rec.context.empty()) throw MalformedRecord(rec.id, "context is empty after normalization");

        if (obj.contains("verdict") && !obj.at("verdict").is_null()) {
            if (!obj.at("verdict").is_string())
                throw MalformedRecord(rec.id, "field \"verdict\" must be a string");
            const std::string v = obj.at("verdict").get<std::string>();
            const auto parsed = verdict_from_string(v);
            if (!parsed)
                throw MalformedRecord(rec.id, "verdict \"" + v + "\" is not one of SUPPORTED/REFUTED/NEI");
            rec.gold_verdict = *parsed;
        }

        if (obj.contains("evidence") && !obj.at("evidence").is_null()) {
            if (!obj.at("evidence").is_string())
                throw MalformedRecord(rec.id, "field \"evidence\" must be a string or null");
            std::string ev = normalize_text(obj.at("evidence").get<std::string>());
            if (!ev.empty()) rec.gold_evidence = std::move(ev);  // "" canonicalizes to absent
        }

        if (rec.gold_verdict == VerdictLabel::SUPPORTED || rec.gold_verdict == VerdictLabel::REFUTED) {
            if (!rec.gold_evidence)
                throw MalformedRecord(rec.id, "gold evidence is required for a " +
                                                  std::string(to_string(*rec.gold_verdict)) + " verdict");
            if (rec.context.find(*rec.gold_evidence) == std::string::npos)
                throw MalformedRecord(rec.id, "gold evidence is not a substring of the context");
        } else if (rec.gold_verdict == VerdictLabel::NEI && rec.gold_evidence) {
            throw MalformedRecord(rec.id, "NEI records must not carry gold evidence");
        }

        if (!seen_ids.insert(rec.id).second) throw DuplicateId(rec.id);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<VerificationRecord> ingest_dataset(const std::filesystem::path& path, DatasetFormat format) {
    (void)format;  // SemviqaJson is the only format
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open dataset file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str());
}

}  // namespace semfact
