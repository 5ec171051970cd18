#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "labelaudit/taxonomy.hpp"

namespace labelaudit::ingest {

struct AnnotatedSegment {
  std::string text;
  std::set<std::string> practices;
  std::map<Attribute, std::set<std::string>> attributes;
};

struct AnnotatedCorpus {
  std::vector<AnnotatedSegment> segments;

  // Occurrence counts per practice and per attribute value.
  std::map<std::string, size_t> practice_counts() const;
  std::map<Attribute, std::map<std::string, size_t>> value_counts() const;
};

// JSON Lines, one segment per line:
//   {"text": str, "practices": [str], "attributes": {attr: [values]}}
// Throws SchemaError when a practice or attribute value falls outside its
// closed vocabulary.
AnnotatedCorpus load_annotated_corpus(const std::string& path);

AnnotatedSegment parse_annotated_segment(const std::string& record_json);

}  // namespace labelaudit::ingest
