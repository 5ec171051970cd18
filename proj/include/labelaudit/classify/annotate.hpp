#pragma once

#include <map>
#include <set>
#include <string>

#include "labelaudit/classify/classifier.hpp"
#include "labelaudit/ingest/document.hpp"

namespace labelaudit::classify {

// Classifier outputs for one segment. Attribute keys exist only for
// attributes a predicted practice triggered (values may still be empty when
// the triggered classifier predicted nothing).
struct SegmentAnnotation {
  std::string policy_id;
  int segment_index = 0;
  std::set<std::string> practices;
  std::map<Attribute, std::set<std::string>> attributes;

  bool has_practice(const std::string& name) const {
    return practices.count(name) > 0;
  }
  bool predicts(Attribute attribute, const std::string& name) const {
    auto it = attributes.find(attribute);
    return it != attributes.end() && it->second.count(name) > 0;
  }
};

using ClassifierStack = std::map<Attribute, ClassifierModel>;

// Runs SegmentPractices, then the attribute classifiers gated by the
// predicted practices: FirstPartyCollectionUse / ThirdPartyCollectionSharing
// trigger DoesDoesNot, Identifiability, Purpose, PersonalInformationType and
// the matching action classifier; InternationalSpecificAudiences triggers
// AudienceType. Throws MissingClassifier when a triggered attribute has no
// model in the stack.
SegmentAnnotation annotate(const ClassifierStack& stack,
                           const ingest::Segment& segment,
                           const embed::EmbeddingModel& embedding);

}  // namespace labelaudit::classify
