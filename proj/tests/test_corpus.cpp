#include <doctest.h>

#include <cstdlib>
#include <set>

#include "semfact/corpus.hpp"
#include "semfact/errors.hpp"
#include "testutil.hpp"

using namespace semfact;

TEST_CASE("normalize_text collapses whitespace and trims") {
    CHECK(normalize_text("  a\xC2\xA0 b ") == "a b");  // NBSP counts as whitespace
    CHECK(normalize_text("abc") == "abc");
    CHECK(normalize_text("a\t\nb\r\n  c") == "a b c");
    CHECK(normalize_text("") == "");
    CHECK(normalize_text(" \t \n ") == "");
}

TEST_CASE("normalize_text applies NFC composition") {
    // expected bytes frozen from a reference Unicode NFC normalizer
    CHECK(normalize_text("tie\xcc\x82\xcc\x81ng") == "ti\xe1\xba\xbfng");
    CHECK(normalize_text("Vie\xcc\xa3\xcc\x82t") == "Vi\xe1\xbb\x87t");
    CHECK(normalize_text("ho\xcc\xa3c sinh gio\xcc\x89i") == "h\xe1\xbb\x8dc sinh gi\xe1\xbb\x8fi");
    CHECK(normalize_text("Ha\xcc\x80 No\xcc\xa3\xcc\x82i") == "H\xc3\xa0 N\xe1\xbb\x99i");
    // already-composed input is untouched
    CHECK(normalize_text("ti\xe1\xba\xbfng") == "ti\xe1\xba\xbfng");
    // composed and decomposed forms of the same word normalize identically
    CHECK(normalize_text("tie\xcc\x82\xcc\x81ng") == normalize_text("ti\xe1\xba\xbfng"));
}

TEST_CASE("normalize_text is idempotent") {
    const std::string once = normalize_text("  Vie\xcc\xa3\xcc\x82t \t Nam ");
    CHECK(normalize_text(once) == once);
}

namespace {

const WhitespaceTokenizer kWs;

std::vector<std::string> sentence_texts(const std::vector<Sentence>& sentences) {
    std::vector<std::string> out;
    out.reserve(sentences.size());
    for (const Sentence& s : sentences) out.push_back(s.text);
    return out;
}

}  // namespace

TEST_CASE("split_sentences basic boundaries") {
    const auto sentences = split_sentences("A b. C d.", kWs);
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "A b.");
    CHECK(sentences[1].text == "C d.");
    CHECK(sentences[0].index == 0);
    CHECK(sentences[1].index == 1);
    CHECK(sentences[0].token_count() == 2);
}

TEST_CASE("split_sentences degenerate inputs") {
    CHECK(split_sentences("", kWs).empty());
    const auto one = split_sentences("no terminal punctuation here", kWs);
    REQUIRE(one.size() == 1);
    CHECK(one[0].text == "no terminal punctuation here");
}

TEST_CASE("split_sentences hand-labeled boundary fixture") {
    const std::string context =
        "Dinner starts at 7 PM. Drinking water afterwards helps. The hike takes 2-3 hours. "
        "Dr. Smith arrived at 9. It cost 3.50 dollars.";
    const auto sentences = split_sentences(context, kWs);
    const std::vector<std::string> expected = {
        "Dinner starts at 7 PM.",
        "Drinking water afterwards helps.",
        "The hike takes 2-3 hours.",
        "Dr. Smith arrived at 9.",
        "It cost 3.50 dollars.",
    };
    CHECK(sentence_texts(sentences) == expected);
}

TEST_CASE("split_sentences handles ellipsis, quotes, and abbreviation guard") {
    const auto ellipsis = split_sentences("Wait\xe2\x80\xa6 Then go.", kWs);
    REQUIRE(ellipsis.size() == 2);
    CHECK(ellipsis[0].text == "Wait\xe2\x80\xa6");

    const auto quoted = split_sentences("He said \"Go now!\" Then he left.", kWs);
    REQUIRE(quoted.size() == 2);
    CHECK(quoted[0].text == "He said \"Go now!\"");

    // custom guard list
    const auto custom = split_sentences("See app. B for details. Next sentence.", kWs, {"app."});
    REQUIRE(custom.size() == 2);
    CHECK(custom[0].text == "See app. B for details.");

    // lowercase after the period is never a boundary
    const auto lower = split_sentences("version 2.0 is out. really.", kWs);
    CHECK(lower.size() == 1);
}

TEST_CASE("split_sentences works on Vietnamese uppercase starts") {
    // "Đ" (U+0110) must count as an uppercase sentence start
    const auto sentences = split_sentences("Anh \xc4\x91i xa. \xc4\x90\xc3\xa2y l\xc3\xa0 nh\xc3\xa0.", kWs);
    CHECK(sentences.size() == 2);
}

TEST_CASE("split_sentences round-trips through recorded spans") {
    testutil::Rng rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        // random normalized context: mixed-case words with scattered punctuation
        std::string context;
        const int words = testutil::rand_int(rng, 1, 60);
        for (int w = 0; w < words; ++w) {
            std::string word = testutil::word_pool()[testutil::rand_int(
                rng, 0, static_cast<int>(testutil::word_pool().size()) - 1)];
            if (testutil::rand_int(rng, 0, 3) == 0) word = testutil::capitalize(word);
            if (!context.empty()) context.push_back(' ');
            context += word;
            const int punct = testutil::rand_int(rng, 0, 9);
            if (punct == 0) context.push_back('.');
            else if (punct == 1) context.push_back('!');
            else if (punct == 2) context.push_back('?');
        }
        context = normalize_text(context);
        const auto sentences = split_sentences(context, kWs);

        if (context.empty()) {
            CHECK(sentences.empty());
            continue;
        }
        REQUIRE(!sentences.empty());

        // spans are ordered, non-overlapping, and tile the context up to separators
        CHECK(sentences.front().begin == 0);
        CHECK(sentences.back().end == context.size());
        std::string rebuilt;
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            const Sentence& s = sentences[i];
            CHECK(s.index == static_cast<int>(i));
            CHECK(s.begin < s.end);
            CHECK(s.text == context.substr(s.begin, s.end - s.begin));
            if (i > 0) {
                CHECK(sentences[i - 1].end <= s.begin);
                rebuilt += context.substr(sentences[i - 1].end, s.begin - sentences[i - 1].end);
            }
            rebuilt += s.text;
        }
        CHECK(rebuilt == context);
    }
}

TEST_CASE("tokenizers are deterministic and handle empty input") {
    const WordTokenizer word;
    CHECK(kWs.tokenize("").empty());
    CHECK(word.tokenize("").empty());
    CHECK(kWs.tokenize("a b  c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(kWs.tokenize("a b") == kWs.tokenize("a b"));
    CHECK(word.tokenize("Hello, World!") == std::vector<std::string>{"hello", "world"});
    CHECK(word.tokenize("...") == std::vector<std::string>{});
    CHECK(make_tokenizer("whitespace")->name() == "whitespace");
    CHECK(make_tokenizer("word")->name() == "word");
    CHECK_THROWS_AS(make_tokenizer("subword"), Error);
}

namespace {

std::string dataset_json() {
    return R"([
      {"id": "a", "context": "The tower opened in 1889. It is in Paris.",
       "claim": "The tower is in Paris.", "verdict": "SUPPORTED", "evidence": "It is in Paris."},
      {"id": "b", "context": "Cats sleep a lot. Dogs bark.",
       "claim": "Cats never sleep.", "verdict": "REFUTED", "evidence": "Cats sleep a lot."},
      {"id": "c", "context": "Some text without an answer.",
       "claim": "Unrelated claim.", "verdict": "NEI", "evidence": null}
    ])";
}

}  // namespace

TEST_CASE("parse_dataset ingests valid records in order") {
    const auto records = parse_dataset(dataset_json());
    REQUIRE(records.size() == 3);
    CHECK(records[0].id == "a");
    CHECK(records[1].id == "b");
    CHECK(records[2].id == "c");
    CHECK(records[0].gold_verdict == VerdictLabel::SUPPORTED);
    CHECK(records[0].gold_evidence == "It is in Paris.");
    CHECK(records[2].gold_verdict == VerdictLabel::NEI);
    CHECK(!records[2].gold_evidence.has_value());
}

TEST_CASE("parse_dataset canonicalizes empty evidence to absent") {
    const auto records = parse_dataset(
        R"([{"id": "x", "context": "Some text.", "claim": "A claim.", "verdict": "NEI", "evidence": ""}])");
    REQUIRE(records.size() == 1);
    CHECK(!records[0].gold_evidence.has_value());
}

TEST_CASE("parse_dataset rejects invariant violations") {
    CHECK_THROWS_AS(parse_dataset(R"([{"id": "x", "context": "A b.", "claim": "c",
        "verdict": "SUPPORTED", "evidence": "not in the context"}])"),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_dataset(R"([{"id": "x", "context": "A b.", "claim": "c",
        "verdict": "SUPPORTED"}])"),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_dataset(R"([{"id": "x", "context": "A b.", "claim": "c",
        "verdict": "NEI", "evidence": "A b."}])"),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_dataset(R"([{"id": "x", "context": "A b.", "claim": "c",
        "verdict": "MAYBE"}])"),
                    MalformedRecord);
    CHECK_THROWS_AS(parse_dataset(R"([{"id": "x", "context": "A b.", "claim": ""}])"), MalformedRecord);
    CHECK_THROWS_AS(parse_dataset(R"([{"id": "x", "claim": "c"}])"), MalformedRecord);
    CHECK_THROWS_AS(parse_dataset(R"({"id": "x"})"), MalformedRecord);
    CHECK_THROWS_AS(parse_dataset("not json"), MalformedRecord);
    CHECK_THROWS_AS(parse_dataset("\xEF\xBB\xBF[]"), MalformedRecord);

    CHECK_THROWS_AS(parse_dataset(R"([
        {"id": "x", "context": "A b.", "claim": "c"},
        {"id": "x", "context": "A b.", "claim": "c"}])"),
                    DuplicateId);
}

TEST_CASE("parse_dataset normalizes evidence against normalized context") {
    // raw evidence with doubled spaces still matches after normalization
    const auto records = parse_dataset(
        R"([{"id": "x", "context": "The  tower is tall.", "claim": "A claim.",
            "verdict": "SUPPORTED", "evidence": "The tower  is tall."}])");
    REQUIRE(records.size() == 1);
    CHECK(records[0].context == "The tower is tall.");
    CHECK(records[0].gold_evidence == "The tower is tall.");
}

TEST_CASE("ingestion preserves order and count for random valid files") {
    testutil::Rng rng(7);
    for (int iter = 0; iter < 25; ++iter) {
        const int n = testutil::rand_int(rng, 1, 30);
        std::string json = "[";
        for (int i = 0; i < n; ++i) {
            if (i > 0) json += ",";
            json += R"({"id": "rec)" + std::to_string(i) + R"(", "context": "Fact number )" +
                    std::to_string(i) + R"( stands.", "claim": "Claim )" + std::to_string(i) + R"("})";
        }
        json += "]";
        const auto records = parse_dataset(json);
        REQUIRE(records.size() == static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) CHECK(records[i].id == "rec" + std::to_string(i));
    }
}

TEST_CASE("ingest_dataset surfaces missing files") {
    CHECK_THROWS_AS(ingest_dataset("/nonexistent/path.json"), Error);
}

// Runs only when the full training file is available locally.
TEST_CASE("optional: ISE-DSC01 train record count") {
    const char* path = std::getenv("SEMFACT_ISE_DSC01_TRAIN");
    if (!path || !*path) return;
    const auto records = ingest_dataset(path);
    CHECK(records.size() == 37967);
}
