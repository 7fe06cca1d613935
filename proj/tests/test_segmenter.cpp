#include <doctest.h>

#include <set>

#include "semfact/errors.hpp"
#include "semfact/segmenter.hpp"
#include "testutil.hpp"

using namespace semfact;

TEST_CASE("build_subcontexts packs greedily under the budget") {
    const auto sentences = testutil::make_sentences({150, 150, 150, 100});
    const auto subs = build_subcontexts(sentences, 400);
    REQUIRE(subs.size() == 2);
    CHECK(subs[0].first_index() == 0);
    CHECK(subs[0].last_index() == 1);
    CHECK(subs[0].token_count() == 300);
    CHECK(subs[1].first_index() == 2);
    CHECK(subs[1].last_index() == 3);
    CHECK(subs[1].token_count() == 250);
}

TEST_CASE("build_subcontexts keeps an oversized sentence whole") {
    const auto subs = build_subcontexts(testutil::make_sentences({700}), 400);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].token_count() == 700);

    const auto mixed = build_subcontexts(testutil::make_sentences({100, 700, 100}), 400);
    REQUIRE(mixed.size() == 3);
    CHECK(mixed[1].token_count() == 700);
}

TEST_CASE("build_subcontexts degenerate cases") {
    CHECK(build_subcontexts({}, 400).empty());
    const auto one = build_subcontexts(testutil::make_sentences({50, 60, 70}), 400);
    CHECK(one.size() == 1);
    CHECK_THROWS_AS(build_subcontexts({}, 0), Error);
    CHECK_THROWS_AS(build_subcontexts({}, 10, -1), Error);
}

TEST_CASE("build_subcontexts partition property") {
    testutil::Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = testutil::rand_int(rng, 0, 12);
        std::vector<int> counts;
        for (int i = 0; i < n; ++i) counts.push_back(testutil::rand_int(rng, 1, 600));
        const int budget = testutil::rand_int(rng, 1, 500);

        const auto sentences = testutil::make_sentences(counts);
        const auto subs = build_subcontexts(sentences, budget);

        int expected_index = 0;
        for (const SubContext& sc : subs) {
            REQUIRE(!sc.sentences.empty());
            for (const Sentence& s : sc.sentences) {
                CHECK(s.index == expected_index);
                ++expected_index;
            }
            if (sc.sentences.size() > 1) CHECK(sc.token_count() <= budget);
        }
        CHECK(expected_index == n);
    }
}

TEST_CASE("build_subcontexts with overlap restarts windows early") {
    const auto sentences = testutil::make_sentences({100, 100, 100, 100, 100, 100});
    const auto subs = build_subcontexts(sentences, 200, 1);
    REQUIRE(subs.size() == 5);
    for (std::size_t k = 0; k < subs.size(); ++k) {
        CHECK(subs[k].first_index() == static_cast<int>(k));
        CHECK(subs[k].last_index() == static_cast<int>(k) + 1);
    }
    // oversized sentences still advance the window
    const auto oversized = build_subcontexts(testutil::make_sentences({300, 300}), 200, 5);
    CHECK(oversized.size() == 2);
}

TEST_CASE("subcontext text and tokens mirror the member sentences") {
    const auto sentences = testutil::make_sentences({2, 3});
    const auto subs = build_subcontexts(sentences, 10);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].text == sentences[0].text + " " + sentences[1].text);
    CHECK(subs[0].token_count() == 5);
}

TEST_CASE("batch_subcontexts chunks in order") {
    const auto sentences = testutil::make_sentences({10, 10, 10, 10, 10});
    const auto subs = build_subcontexts(sentences, 10);
    REQUIRE(subs.size() == 5);

    const auto batches = batch_subcontexts(subs, 2, "rec");
    REQUIRE(batches.size() == 3);
    CHECK(batches[0].subcontexts.size() == 2);
    CHECK(batches[1].subcontexts.size() == 2);
    CHECK(batches[2].subcontexts.size() == 1);
    CHECK(batches[0].origin_record == "rec");

    CHECK(batch_subcontexts(subs, 99).size() == 1);
    CHECK(batch_subcontexts({}, 4).empty());
    CHECK_THROWS_AS(batch_subcontexts(subs, 0), Error);
}

TEST_CASE("batching neutrality: flattening returns the input") {
    testutil::Rng rng(13);
    for (int iter = 0; iter < 50; ++iter) {
        const int n = testutil::rand_int(rng, 0, 20);
        std::vector<int> counts;
        for (int i = 0; i < n; ++i) counts.push_back(testutil::rand_int(rng, 1, 50));
        const auto subs = build_subcontexts(testutil::make_sentences(counts), 60);
        const int batch_size = testutil::rand_int(rng, 1, 8);

        std::vector<SubContext> flattened;
        for (const SegmentBatch& b : batch_subcontexts(subs, batch_size))
            flattened.insert(flattened.end(), b.subcontexts.begin(), b.subcontexts.end());

        REQUIRE(flattened.size() == subs.size());
        for (std::size_t k = 0; k < subs.size(); ++k) {
            CHECK(flattened[k].first_index() == subs[k].first_index());
            CHECK(flattened[k].text == subs[k].text);
        }
    }
}

namespace {

std::vector<Segment> segments_of(const std::vector<int>& token_counts) {
    return sentences_as_segments(testutil::make_sentences(token_counts));
}

std::vector<int> segment_counts(const std::vector<Segment>& segments) {
    std::vector<int> out;
    for (const Segment& s : segments) out.push_back(s.token_count);
    return out;
}

}  // namespace

TEST_CASE("merge_short_segments merges leftward") {
    // claim of 10 tokens, ratio 0.60 -> segments under 6 tokens merge
    const auto merged = merge_short_segments(segments_of({8, 4, 9}), 10);
    CHECK(segment_counts(merged) == std::vector<int>{12, 9});
}

TEST_CASE("merge_short_segments leaves compliant input unchanged") {
    const auto merged = merge_short_segments(segments_of({6, 7, 8}), 10);
    CHECK(segment_counts(merged) == std::vector<int>{6, 7, 8});
}

TEST_CASE("merge_short_segments lone segment is returned unchanged") {
    const auto merged = merge_short_segments(segments_of({2}), 10);
    CHECK(segment_counts(merged) == std::vector<int>{2});
}

TEST_CASE("merge_short_segments short first segment merges right") {
    const auto merged = merge_short_segments(segments_of({3, 8}), 10);
    CHECK(segment_counts(merged) == std::vector<int>{11});

    // cascade: everything short collapses to a lone segment, which may still violate
    const auto cascade = merge_short_segments(segments_of({1, 1, 1}), 10);
    CHECK(segment_counts(cascade) == std::vector<int>{3});
}

TEST_CASE("merge_short_segments validates preconditions") {
    CHECK_THROWS_AS(merge_short_segments(segments_of({3}), 0), Error);
    CHECK_THROWS_AS(merge_short_segments(segments_of({3}), 10, -0.5), Error);
}

TEST_CASE("merge_short_segments preserves total tokens, order, and text") {
    testutil::Rng rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        const int n = testutil::rand_int(rng, 1, 12);
        std::vector<int> counts;
        int total = 0;
        for (int i = 0; i < n; ++i) {
            counts.push_back(testutil::rand_int(rng, 1, 15));
            total += counts.back();
        }
        const int claim_tokens = testutil::rand_int(rng, 1, 20);
        const auto input = segments_of(counts);
        const auto merged = merge_short_segments(input, claim_tokens);

        int merged_total = 0;
        std::string merged_text;
        for (const Segment& s : merged) {
            merged_total += s.token_count;
            if (!merged_text.empty()) merged_text.push_back(' ');
            merged_text += s.text;
        }
        std::string input_text;
        for (const Segment& s : input) {
            if (!input_text.empty()) input_text.push_back(' ');
            input_text += s.text;
        }
        CHECK(merged_total == total);
        CHECK(merged_text == input_text);

        // every segment except possibly a lone remaining one satisfies the ratio
        if (merged.size() > 1) {
            const double min_tokens = 0.60 * claim_tokens;
            for (const Segment& s : merged) CHECK(s.token_count >= min_tokens);
        }
    }
}
