#include "labelaudit/ingest/segment.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace labelaudit::ingest {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    bool token_char = std::isalnum(c) || c >= 0x80;
    if (token_char) {
      current += static_cast<char>(std::tolower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

size_t word_count(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  size_t count = 0;
  while (in >> word) ++count;
  return count;
}

std::vector<Segment> segment_document(const CleanDocument& doc,
                                      size_t short_item_limit) {
  struct Pending {
    std::string text;
    bool from_paragraph = false;  // merge target must originate from one
  };
  std::vector<Pending> out;

  size_t i = 0;
  const auto& blocks = doc.blocks;
  while (i < blocks.size()) {
    if (!blocks[i].is_list_item()) {
      out.push_back({blocks[i].text, true});
      ++i;
      continue;
    }
    // Maximal run of items from one source list.
    const int list_id = blocks[i].list_id;
    size_t j = i;
    bool all_short = true;
    while (j < blocks.size() && blocks[j].list_id == list_id) {
      if (word_count(blocks[j].text) > short_item_limit) all_short = false;
      ++j;
    }
    if (all_short && !out.empty() && out.back().from_paragraph) {
      std::string& target = out.back().text;
      for (size_t k = i; k < j; ++k) {
        target += ' ';
        target += blocks[k].text;
      }
      out.back().from_paragraph = false;
    } else {
      for (size_t k = i; k < j; ++k) out.push_back({blocks[k].text, false});
    }
    i = j;
  }

  std::vector<Segment> segments;
  segments.reserve(out.size());
  for (size_t k = 0; k < out.size(); ++k) {
    Segment s;
    s.policy_id = doc.policy_id;
    s.index = static_cast<int>(k);
    s.text = std::move(out[k].text);
    s.tokens = tokenize(s.text);
    segments.push_back(std::move(s));
  }
  return segments;
}

namespace {

// Abbreviations that end in a period but do not terminate a sentence.
const std::array<const char*, 6> kAbbreviations = {"e.g.", "i.e.", "etc.",
                                                   "inc.", "ltd.", "u.s."};

bool ends_with_abbreviation(const std::string& text, size_t punct_pos) {
  // Token running up to and including the punctuation character.
  size_t start = punct_pos;
  while (start > 0 &&
         !std::isspace(static_cast<unsigned char>(text[start - 1]))) {
    --start;
  }
  std::string token = text.substr(start, punct_pos - start + 1);
  for (char& c : token) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (const char* abbr : kAbbreviations) {
    if (token == abbr) return true;
  }
  return false;
}

void split_block(const std::string& policy_id, const std::string& text,
                 std::vector<Sentence>& out) {
  auto emit = [&](size_t begin, size_t end) {
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (begin >= end) return;
    Sentence s;
    s.policy_id = policy_id;
    s.text = text.substr(begin, end - begin);
    s.tokens = tokenize(s.text);
    if (!s.tokens.empty()) out.push_back(std::move(s));
  };

  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    // Consume a run of terminal punctuation as one terminator.
    size_t run_end = i;
    while (run_end + 1 < text.size() &&
           (text[run_end + 1] == '.' || text[run_end + 1] == '!' ||
            text[run_end + 1] == '?')) {
      ++run_end;
    }
    if (c == '.' && run_end == i && ends_with_abbreviation(text, i)) {
      i = run_end + 1;
      continue;
    }
    size_t after = run_end + 1;
    if (after >= text.size()) {
      emit(start, text.size());
      start = text.size();
      break;
    }
    size_t next = after;
    while (next < text.size() &&
           std::isspace(static_cast<unsigned char>(text[next]))) {
      ++next;
    }
    bool had_space = next > after;
    if (had_space && next < text.size() &&
        std::isupper(static_cast<unsigned char>(text[next]))) {
      emit(start, after);
      start = next;
      i = next;
      continue;
    }
    i = after;
  }
  if (start < text.size()) emit(start, text.size());
}

}  // namespace

std::vector<Sentence> split_sentences_text(
    const std::string& policy_id, const std::vector<std::string>& paragraphs) {
  std::vector<Sentence> out;
  for (const std::string& p : paragraphs) split_block(policy_id, p, out);
  return out;
}

std::vector<Sentence> split_sentences(const CleanDocument& doc) {
  return split_sentences_text(doc.policy_id, doc.paragraphs());
}

}  // namespace labelaudit::ingest
