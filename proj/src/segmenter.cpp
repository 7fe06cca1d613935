#include "semfact/segmenter.hpp"

#include <algorithm>

#include "semfact/errors.hpp"

namespace semfact {

namespace {

SubContext make_subcontext(const std::vector<Sentence>& sentences, std::size_t first, std::size_t last) {
    SubContext sc;
    sc.sentences.assign(sentences.begin() + first, sentences.begin() + last + 1);
    for (std::size_t k = first; k <= last; ++k) {
        if (!sc.text.empty()) sc.text.push_back(' ');
        sc.text += sentences[k].text;
        sc.tokens.insert(sc.tokens.end(), sentences[k].tokens.begin(), sentences[k].tokens.end());
    }
    return sc;
}

}  // namespace

std::vector<SubContext> build_subcontexts(const std::vector<Sentence>& sentences, int budget,
                                          int overlap_sentences) {
    if (budget < 1) throw Error("token budget must be >= 1");
    if (overlap_sentences < 0) throw Error("overlap_sentences must be >= 0");

    std::vector<SubContext> out;
    const std::size_t n = sentences.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        int total = sentences[i].token_count();  // first sentence always included
        while (j + 1 < n && total + sentences[j + 1].token_count() <= budget) {
            ++j;
            total += sentences[j].token_count();
        }
        out.push_back(make_subcontext(sentences, i, j));
        if (j + 1 >= n) break;
        std::size_t next = j + 1;
        if (overlap_sentences > 0)
            next = std::max(i + 1, next - std::min<std::size_t>(overlap_sentences, next));
        i = next;
    }
    return out;
}

std::vector<SegmentBatch> batch_subcontexts(const std::vector<SubContext>& subcontexts, int batch_size,
                                            const std::string& origin_record) {
    if (batch_size < 1) throw Error("batch_size must be >= 1");
    std::vector<SegmentBatch> batches;
    for (std::size_t i = 0; i < subcontexts.size(); i += batch_size) {
        SegmentBatch b;
        b.origin_record = origin_record;
        const std::size_t end = std::min(subcontexts.size(), i + batch_size);
        b.subcontexts.assign(subcontexts.begin() + i, subcontexts.begin() + end);
        batches.push_back(std::move(b));
    }
    return batches;
}

std::vector<Segment> sentences_as_segments(const std::vector<Sentence>& sentences) {
    std::vector<Segment> segments;
    segments.reserve(sentences.size());
    for (const Sentence& s : sentences) {
        Segment seg;
        seg.sentences.push_back(s);
        seg.text = s.text;
        seg.token_count = s.token_count();
        segments.push_back(std::move(seg));
    }
    return segments;
}

namespace {

Segment merge_pair(Segment left, Segment& right) {
    left.sentences.insert(left.sentences.end(), right.sentences.begin(), right.sentences.end());
    left.text += ' ';
    left.text += right.text;
    left.token_count += right.token_count;
    return left;
}

}  // namespace

std::vector<Segment> merge_short_segments(std::vector<Segment> segments, int claim_token_count,
                                          double ratio) {
    if (claim_token_count < 1) throw Error("claim token count must be >= 1");
    if (ratio < 0.0) throw Error("merge ratio must be >= 0");

    const double min_tokens = ratio * claim_token_count;
    bool changed = true;
    while (changed && segments.size() > 1) {
        changed = false;
        for (std::size_t k = 0; k < segments.size(); ++k) {
            if (segments[k].token_count >= min_tokens) continue;
            if (k == 0) {
                segments[1] = merge_pair(std::move(segments[0]), segments[1]);
                segments.erase(segments.begin());
            } else {
                segments[k - 1] = merge_pair(std::move(segments[k - 1]), segments[k]);
                segments.erase(segments.begin() + k);
            }
            changed = true;
            break;  // restart the left-to-right scan
        }
    }
    return segments;
}

}  // namespace semfact
