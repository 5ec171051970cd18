#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace labelaudit::ingest {

struct RawDocument {
  std::string url;
  std::string body;
  int status = 0;
  std::chrono::system_clock::time_point fetched_at{};
};

// One extracted text block. Items of the same source list share a list_id;
// plain paragraphs carry list_id -1.
struct TextBlock {
  std::string text;
  int list_id = -1;

  bool is_list_item() const { return list_id >= 0; }
};

// De-cluttered document: boilerplate removed, inline markup flattened, one
// block per block-level content element in document order.
struct CleanDocument {
  std::string policy_id;
  std::vector<TextBlock> blocks;
  std::string source_url;

  std::vector<std::string> paragraphs() const {
    std::vector<std::string> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) out.push_back(b.text);
    return out;
  }
};

struct Segment {
  std::string policy_id;
  int index = 0;
  std::string text;
  std::vector<std::string> tokens;
};

struct Sentence {
  std::string policy_id;
  std::string text;
  std::vector<std::string> tokens;
};

// Lowercases and splits on non-alphanumeric runs. Bytes outside ASCII are
// kept as token characters so multi-byte sequences stay intact.
std::vector<std::string> tokenize(const std::string& text);

// Whitespace-delimited token count of the raw text (the "word" of the
// short-list merge rule).
size_t word_count(const std::string& text);

}  // namespace labelaudit::ingest
