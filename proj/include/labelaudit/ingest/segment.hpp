#pragma once

#include <string>
#include <vector>

#include "labelaudit/ingest/document.hpp"

namespace labelaudit::ingest {

// One segment per block, except that a list immediately following a plain
// paragraph merges into that paragraph when every item is short (word count
// at most short_item_limit). Indices are contiguous from 0.
std::vector<Segment> segment_document(const CleanDocument& doc,
                                      size_t short_item_limit = 20);

// Splits block text on terminal punctuation (. ! ?) followed by whitespace
// and a capital letter, or at block end. A fixed abbreviation list
// (e.g., i.e., etc., Inc., Ltd., U.S.) never splits. A block without
// terminal punctuation is one sentence. Sentences with no tokens are
// dropped.
std::vector<Sentence> split_sentences(const CleanDocument& doc);

// Sentence splitter over raw paragraphs (used for plain-text templates).
std::vector<Sentence> split_sentences_text(
    const std::string& policy_id, const std::vector<std::string>& paragraphs);

}  // namespace labelaudit::ingest
