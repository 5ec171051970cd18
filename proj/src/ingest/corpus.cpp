#include "labelaudit/ingest/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "labelaudit/errors.hpp"

namespace labelaudit::ingest {

using nlohmann::json;

std::map<std::string, size_t> AnnotatedCorpus::practice_counts() const {
  std::map<std::string, size_t> counts;
  for (const auto& s : segments) {
    for (const auto& p : s.practices) ++counts[p];
  }
  return counts;
}

std::map<Attribute, std::map<std::string, size_t>> AnnotatedCorpus::value_counts()
    const {
  std::map<Attribute, std::map<std::string, size_t>> counts;
  for (const auto& s : segments) {
    for (const auto& [attr, values] : s.attributes) {
      for (const auto& v : values) ++counts[attr][v];
    }
  }
  return counts;
}

AnnotatedSegment parse_annotated_segment(const std::string& record_json) {
  json j = json::parse(record_json, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed corpus line");
  AnnotatedSegment seg;
  if (!j.contains("text") || !j["text"].is_string()) {
    throw SchemaError("corpus segment lacks 'text'");
  }
  seg.text = j["text"].get<std::string>();
  if (j.contains("practices")) {
    for (const json& p : j["practices"]) {
      std::string name = p.get<std::string>();
      if (!is_known_practice(name)) {
        throw SchemaError("unknown practice: '" + name + "'");
      }
      seg.practices.insert(name);
    }
  }
  if (j.contains("attributes")) {
    for (const auto& [key, values] : j["attributes"].items()) {
      Attribute attr = parse_attribute(key);
      for (const json& v : values) {
        std::string name = v.get<std::string>();
        if (!is_known_attribute_value(attr, name)) {
          throw SchemaError("value '" + name + "' outside vocabulary of " +
                            to_string(attr));
        }
        seg.attributes[attr].insert(name);
      }
    }
  }
  return seg;
}

AnnotatedCorpus load_annotated_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open corpus file: " + path);
  AnnotatedCorpus corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      corpus.segments.push_back(parse_annotated_segment(line));
    } catch (const SchemaError& e) {
      throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return corpus;
}

}  // namespace labelaudit::ingest
