#include "labelaudit/ingest/readability.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "labelaudit/errors.hpp"

namespace labelaudit::ingest {

namespace {

const std::unordered_set<std::string> kBoilerplateTags = {
    "nav", "header", "footer", "aside", "head",
};

// script/style bodies are raw text: skip straight to the close tag.
const std::unordered_set<std::string> kRawTextTags = {"script", "style"};

const std::unordered_set<std::string> kBlockTags = {
    "p",       "h1",   "h2",         "h3",      "h4",     "h5",   "h6",
    "div",     "blockquote",         "pre",     "table",  "thead", "tbody",
    "tfoot",   "tr",   "td",         "th",      "dl",     "dt",   "dd",
    "section", "article",            "main",    "figure", "figcaption",
    "form",    "fieldset",           "address", "center", "hr",
};

std::string lower_ascii(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string decode_entities(const std::string& text) {
  static const std::unordered_map<std::string, std::string> kNamed = {
      {"amp", "&"},  {"lt", "<"},    {"gt", ">"},   {"quot", "\""},
      {"apos", "'"}, {"nbsp", " "},  {"ndash", "-"}, {"mdash", "-"},
      {"rsquo", "'"}, {"lsquo", "'"}, {"ldquo", "\""}, {"rdquo", "\""},
      {"copy", "(c)"}, {"reg", "(r)"}, {"trade", "(tm)"},
  };
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out += text[i++];
      continue;
    }
    size_t semi = text.find(';', i + 1);
    if (semi == std::string::npos || semi - i > 12) {
      out += text[i++];
      continue;
    }
    std::string body = text.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      unsigned long cp = 0;
      bool ok = body.size() > 1;
      try {
        cp = (body[1] == 'x' || body[1] == 'X')
                 ? std::stoul(body.substr(2), nullptr, 16)
                 : std::stoul(body.substr(1), nullptr, 10);
      } catch (...) {
        ok = false;
      }
      if (ok && cp > 0 && cp <= 0x10FFFF) {
        append_utf8(out, cp);
        i = semi + 1;
        continue;
      }
    } else {
      auto it = kNamed.find(lower_ascii(body));
      if (it != kNamed.end()) {
        out += it->second;
        i = semi + 1;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

std::string normalize_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

struct Extractor {
  std::vector<TextBlock> blocks;
  std::string current;
  int current_list_id = -1;
  int next_list_id = 0;
  int active_list_id = -1;  // id while inside a top-level <ul>/<ol>
  int list_depth = 0;
  std::unordered_map<std::string, int> skip_depth;
  int skipping = 0;  // total open boilerplate elements

  void flush() {
    std::string text = normalize_whitespace(decode_entities(current));
    if (!text.empty()) blocks.push_back({std::move(text), current_list_id});
    current.clear();
    current_list_id = -1;
  }

  void text(const std::string& chunk) {
    if (skipping == 0) current += chunk;
  }

  void open_tag(const std::string& name) {
    if (kBoilerplateTags.count(name)) {
      ++skip_depth[name];
      ++skipping;
      return;
    }
    if (skipping > 0) return;
    if (name == "ul" || name == "ol") {
      if (list_depth == 0) {
        flush();
        active_list_id = next_list_id++;
      } else {
        current += ' ';  // nested list flows into the parent item
      }
      ++list_depth;
      return;
    }
    if (name == "li") {
      if (list_depth == 1) {
        flush();
        current_list_id = active_list_id;
      } else {
        current += ' ';
      }
      return;
    }
    if (name == "br") {
      current += ' ';
      return;
    }
    if (kBlockTags.count(name)) flush();
  }

  void close_tag(const std::string& name) {
    if (kBoilerplateTags.count(name)) {
      auto it = skip_depth.find(name);
      if (it != skip_depth.end() && it->second > 0) {
        --it->second;
        --skipping;
      }
      return;
    }
    if (skipping > 0) return;
    if (name == "ul" || name == "ol") {
      if (list_depth == 1) {
        flush();
        active_list_id = -1;
      } else {
        current += ' ';
      }
      if (list_depth > 0) --list_depth;
      return;
    }
    if (name == "li") {
      if (list_depth == 1) {
        flush();
      } else {
        current += ' ';
      }
      return;
    }
    if (kBlockTags.count(name)) flush();
  }
};

// Leading tag name of a "<...>" chunk, lowercased; empty when not a tag.
std::string tag_name(const std::string& html, size_t start, size_t end,
                     bool& closing) {
  size_t i = start;
  closing = false;
  if (i < end && html[i] == '/') {
    closing = true;
    ++i;
  }
  std::string name;
  while (i < end) {
    char c = html[i];
    if (std::isalnum(static_cast<unsigned char>(c))) {
      name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      ++i;
    } else {
      break;
    }
  }
  return name;
}

}  // namespace

CleanDocument extract_readable_html(const std::string& html,
                                    const std::string& policy_id,
                                    const std::string& source_url) {
  Extractor ex;
  size_t i = 0;
  const size_t n = html.size();
  while (i < n) {
    if (html[i] != '<') {
      size_t next = html.find('<', i);
      if (next == std::string::npos) next = n;
      ex.text(html.substr(i, next - i));
      i = next;
      continue;
    }
    // Comments and declarations.
    if (html.compare(i, 4, "<!--") == 0) {
      size_t close = html.find("-->", i + 4);
      i = (close == std::string::npos) ? n : close + 3;
      continue;
    }
    if (i + 1 < n && (html[i + 1] == '!' || html[i + 1] == '?')) {
      size_t close = html.find('>', i + 1);
      i = (close == std::string::npos) ? n : close + 1;
      continue;
    }
    size_t close = html.find('>', i + 1);
    if (close == std::string::npos) {
      ex.text(html.substr(i));
      break;
    }
    bool closing = false;
    std::string name = tag_name(html, i + 1, close, closing);
    if (name.empty()) {
      // Stray '<' that does not open a tag; keep it as text.
      ex.text("<");
      ++i;
      continue;
    }
    i = close + 1;
    if (!closing && kRawTextTags.count(name)) {
      // Scan for the matching close tag; the body never renders.
      std::string needle = "</" + name;
      size_t pos = i;
      while (true) {
        pos = html.find('<', pos);
        if (pos == std::string::npos) {
          i = n;
          break;
        }
        bool match = html.size() - pos >= needle.size();
        for (size_t k = 0; match && k < needle.size(); ++k) {
          if (std::tolower(static_cast<unsigned char>(html[pos + k])) != needle[k]) {
            match = false;
          }
        }
        if (match) {
          size_t end = html.find('>', pos);
          i = (end == std::string::npos) ? n : end + 1;
          break;
        }
        ++pos;
      }
      continue;
    }
    if (closing) {
      ex.close_tag(name);
    } else {
      ex.open_tag(name);
    }
  }
  ex.flush();

  if (ex.blocks.empty()) {
    throw EmptyDocument("no readable text extracted for policy: " + policy_id);
  }
  CleanDocument doc;
  doc.policy_id = policy_id;
  doc.blocks = std::move(ex.blocks);
  doc.source_url = source_url;
  return doc;
}

CleanDocument extract_readable(const RawDocument& raw,
                               const std::string& policy_id) {
  return extract_readable_html(raw.body, policy_id, raw.url);
}

}  // namespace labelaudit::ingest
