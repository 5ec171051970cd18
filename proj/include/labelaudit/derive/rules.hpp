#pragma once

#include <string>
#include <vector>

#include "labelaudit/classify/annotate.hpp"
#include "labelaudit/taxonomy.hpp"

namespace labelaudit::derive {

enum class TargetKind { PrivacyType, Purpose, DataCategory };

enum class MatchMode { AnyOf, AllOf };

struct AttributeCondition {
  Attribute attribute = Attribute::PersonalInformationType;
  std::vector<std::string> values;
  MatchMode mode = MatchMode::AnyOf;
};

// One conversion-table row: a label target, the practices that may carry it
// (any-of), the attribute values that trigger it, and, for inferential
// rules, the keyword phrases the segment text must contain (any-of).
struct ConversionRule {
  std::string target;  // enum value name of the privacy type / purpose / category
  TargetKind kind = TargetKind::DataCategory;
  bool inferential = false;
  std::vector<std::string> required_practices;
  std::vector<AttributeCondition> conditions;
  std::vector<std::string> keywords;
};

// The full rule set. DataNotCollected is held apart from the per-segment
// rules: it never fires as a collection entry and is only emitted by the
// two-pass derivation.
struct ConversionRuleSet {
  std::vector<ConversionRule> rules;
  ConversionRule data_not_collected;

  // Encodes both conversion tables verbatim.
  static ConversionRuleSet defaults();
  static ConversionRuleSet load(const std::string& path);
  void save(const std::string& path) const;

  const ConversionRule* find(TargetKind kind, const std::string& target) const;
};

// Structural checks: at least one required practice per rule, keywords only
// on inferential rules. Throws RuleConfigError.
void validate_rules(const ConversionRuleSet& rules);

// True when the annotation (and, for keyword rules, the segment text)
// satisfies the rule.
bool rule_fires(const ConversionRule& rule,
                const classify::SegmentAnnotation& annotation,
                const std::string& segment_text);

// Case-insensitive phrase containment with word boundaries at the phrase
// ends, over whitespace-normalized text.
bool contains_phrase(const std::string& text, const std::string& phrase);

}  // namespace labelaudit::derive
