#pragma once

#include <string>
#include <vector>

#include "semfact/corpus.hpp"

namespace semfact {

// Contiguous run of sentences packed under the token budget. Member sentence texts
// joined with single spaces give the subcontext text; tokens are the member sentence
// tokens concatenated in order.
struct SubContext {
    std::vector<Sentence> sentences;
    std::string text;
    std::vector<std::string> tokens;

    int first_index() const { return sentences.front().index; }
    int last_index() const { return sentences.back().index; }
    int token_count() const { return static_cast<int>(tokens.size()); }
};

// Greedy left-to-right packing: grow the current subcontext while the next sentence
// keeps the total within the budget, then start a new one at that sentence. A sentence
// that alone exceeds the budget becomes its own oversized subcontext; sentences are
// never split. With overlap_sentences == 0 (the default) the result is an exact
// ordered partition; a positive overlap restarts each window that many sentences
// early and gives overlapping windows instead.
std::vector<SubContext> build_subcontexts(const std::vector<Sentence>& sentences, int budget,
                                          int overlap_sentences = 0);

struct SegmentBatch {
    std::vector<SubContext> subcontexts;
    std::string origin_record;
};

// Order-preserving chunking; flattening the batches gives back the input.
std::vector<SegmentBatch> batch_subcontexts(const std::vector<SubContext>& subcontexts, int batch_size,
                                            const std::string& origin_record = {});

// Retrieval unit for first-stage scoring: one sentence, or several adjacent ones after
// short-segment merging. token_count stays additive across merges so merging never
// changes the total.
struct Segment {
    std::vector<Sentence> sentences;
    std::string text;
    int token_count = 0;
};

std::vector<Segment> sentences_as_segments(const std::vector<Sentence>& sentences);

// Merges any segment with fewer than ratio * claim_token_count tokens into its
// predecessor (a short first segment merges into its successor), scanning left to
// right until only a lone remaining segment may still violate the ratio. A single
// segment is returned unchanged regardless of length.
std::vector<Segment> merge_short_segments(std::vector<Segment> segments, int claim_token_count,
                                          double ratio = 0.60);

}  // namespace semfact
