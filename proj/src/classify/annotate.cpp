#include "labelaudit/classify/annotate.hpp"

#include <vector>

#include "labelaudit/errors.hpp"

namespace labelaudit::classify {

namespace {

const ClassifierModel& require_model(const ClassifierStack& stack,
                                     Attribute attribute) {
  auto it = stack.find(attribute);
  if (it == stack.end()) {
    throw MissingClassifier("no model for triggered attribute " +
                            to_string(attribute));
  }
  return it->second;
}

}  // namespace

SegmentAnnotation annotate(const ClassifierStack& stack,
                           const ingest::Segment& segment,
                           const embed::EmbeddingModel& embedding) {
  const ClassifierModel& segment_classifier =
      require_model(stack, Attribute::SegmentPractices);
  embed::Vector vec = embed::embed_tokens(embedding, segment.tokens);

  SegmentAnnotation annotation;
  annotation.policy_id = segment.policy_id;
  annotation.segment_index = segment.index;
  annotation.practices = predict(segment_classifier, vec).predicted;

  bool first_party = annotation.has_practice(practice::kFirstPartyCollectionUse);
  bool third_party = annotation.has_practice(practice::kThirdPartyCollectionSharing);
  bool audiences = annotation.has_practice(practice::kInternationalSpecificAudiences);

  std::vector<Attribute> triggered;
  if (first_party || third_party) {
    triggered.push_back(Attribute::DoesDoesNot);
    triggered.push_back(Attribute::Identifiability);
    triggered.push_back(Attribute::Purpose);
    triggered.push_back(Attribute::PersonalInformationType);
    if (first_party) triggered.push_back(Attribute::ActionFirstParty);
    if (third_party) triggered.push_back(Attribute::ActionThirdParty);
  }
  if (audiences) triggered.push_back(Attribute::AudienceType);

  for (Attribute attribute : triggered) {
    const ClassifierModel& model = require_model(stack, attribute);
    annotation.attributes[attribute] = predict(model, vec).predicted;
  }
  return annotation;
}

}  // namespace labelaudit::classify
