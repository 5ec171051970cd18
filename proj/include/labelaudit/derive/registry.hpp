#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "labelaudit/taxonomy.hpp"

namespace labelaudit::derive {

// Per-classifier-value F1 scores that drive uncertainty propagation. The
// defaults transcribe the classifier evaluation table; practice-level scores
// are keyed under SegmentPractices.
class F1Registry {
 public:
  static F1Registry defaults();
  static F1Registry load(const std::string& path);
  void save(const std::string& path) const;

  // Throws RuleConfigError when the value has no registered F1.
  double f1(Attribute attribute, const std::string& value) const;
  std::optional<double> find(Attribute attribute, const std::string& value) const;
  void set(Attribute attribute, const std::string& value, double f1);

  const std::map<std::pair<Attribute, std::string>, double>& values() const {
    return values_;
  }

 private:
  std::map<std::pair<Attribute, std::string>, double> values_;
};

}  // namespace labelaudit::derive
