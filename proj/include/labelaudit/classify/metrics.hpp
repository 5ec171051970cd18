#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "labelaudit/classify/classifier.hpp"
#include "labelaudit/ingest/corpus.hpp"

namespace labelaudit::classify {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t support = 0;
};

// Presence treats the label as the positive class, absence inverts it, so
// the report captures the classifier's ability to detect both.
struct LabelMetrics {
  Prf presence;
  Prf absence;
};

struct MetricsReport {
  std::map<std::string, LabelMetrics> per_label;
  double macro_precision = 0.0;  // macro over all (label x presence/absence)
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
};

struct ConfidenceInterval {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int resamples = 0;
};

// Undefined precision/recall rows report 0; F1 is the harmonic mean, 0
// when precision + recall is 0.
MetricsReport evaluate(const ClassifierModel& model,
                       const ingest::AnnotatedCorpus& test_set,
                       const embed::EmbeddingModel& embedding);

// Exact-match (subset) accuracy bootstrapped over the test set: resample
// with replacement, CI = 2.5th/97.5th percentile, deterministic per seed.
ConfidenceInterval bootstrap_accuracy(const ClassifierModel& model,
                                      const ingest::AnnotatedCorpus& test_set,
                                      const embed::EmbeddingModel& embedding,
                                      int resamples = 200, uint64_t seed = 0);

}  // namespace labelaudit::classify
