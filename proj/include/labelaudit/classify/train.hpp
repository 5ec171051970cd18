#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "labelaudit/classify/classifier.hpp"
#include "labelaudit/ingest/corpus.hpp"

namespace labelaudit::classify {

struct Hyperparameters {
  double learning_rate = 0.5;
  int epochs = 400;
  double l2 = 1e-4;
  uint64_t seed = 0;
};

// Segments of the corpus that carry an annotation for the attribute (for
// SegmentPractices: a non-empty practice set).
std::vector<ingest::AnnotatedSegment> relevant_segments(
    const ingest::AnnotatedCorpus& corpus, Attribute attribute);

// Deterministic shuffled split over the relevant segments; train size is
// ceil(ratio * n). Throws InsufficientData when fewer than two relevant
// segments exist.
std::pair<ingest::AnnotatedCorpus, ingest::AnnotatedCorpus> split_train_test(
    const ingest::AnnotatedCorpus& corpus, Attribute attribute,
    double ratio = 0.8, uint64_t seed = 0);

// Regularized binary logistic objective over fixed features. Exposed so the
// training gradient can be checked against finite differences.
struct BinaryLogistic {
  const std::vector<embed::Vector>* features = nullptr;
  std::vector<int> targets;  // 0/1 per feature row
  double l2 = 0.0;

  double loss(const embed::Vector& weights, double bias) const;
  void gradient(const embed::Vector& weights, double bias,
                embed::Vector& grad_weights, double& grad_bias) const;
};

// One-vs-rest logistic heads over mean-embedding features, trained by
// full-batch gradient descent from zero initialization. Labels with no
// positive or no negative example become flagged constant predictors.
ClassifierModel train(Attribute attribute,
                      const ingest::AnnotatedCorpus& train_set,
                      const embed::EmbeddingModel& embedding,
                      const Hyperparameters& hyper);

// Annotation values of one segment for an attribute (practices for
// SegmentPractices).
const std::set<std::string>* segment_truth(const ingest::AnnotatedSegment& seg,
                                           Attribute attribute);

}  // namespace labelaudit::classify
