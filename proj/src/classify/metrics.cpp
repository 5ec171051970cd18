#include "labelaudit/classify/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "labelaudit/classify/train.hpp"
#include "labelaudit/errors.hpp"
#include "labelaudit/ingest/segment.hpp"
#include "labelaudit/rng.hpp"

namespace labelaudit::classify {

namespace {

Prf prf_from_counts(size_t tp, size_t fp, size_t fn, size_t support) {
  Prf out;
  out.support = support;
  out.precision = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  out.recall = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  double denom = out.precision + out.recall;
  out.f1 = denom > 0 ? 2.0 * out.precision * out.recall / denom : 0.0;
  return out;
}

// Predictions for every test segment, each restricted to the model's labels.
std::vector<std::set<std::string>> predict_all(
    const ClassifierModel& model, const ingest::AnnotatedCorpus& test_set,
    const embed::EmbeddingModel& embedding) {
  std::vector<std::set<std::string>> out;
  out.reserve(test_set.segments.size());
  for (const auto& seg : test_set.segments) {
    auto vec = embed::embed_tokens(embedding, ingest::tokenize(seg.text));
    out.push_back(predict(model, vec).predicted);
  }
  return out;
}

std::set<std::string> truth_in_vocabulary(const ingest::AnnotatedSegment& seg,
                                          const ClassifierModel& model) {
  std::set<std::string> out;
  const auto* truth = segment_truth(seg, model.attribute);
  if (truth == nullptr) return out;
  for (const auto& head : model.heads) {
    if (truth->count(head.label)) out.insert(head.label);
  }
  return out;
}

}  // namespace

MetricsReport evaluate(const ClassifierModel& model,
                       const ingest::AnnotatedCorpus& test_set,
                       const embed::EmbeddingModel& embedding) {
  if (test_set.segments.empty()) throw InsufficientData("empty test set");

  auto predictions = predict_all(model, test_set, embedding);

  MetricsReport report;
  double sum_p = 0.0, sum_r = 0.0, sum_f1 = 0.0;
  size_t rows = 0;
  for (const auto& head : model.heads) {
    size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (size_t i = 0; i < test_set.segments.size(); ++i) {
      const auto* truth = segment_truth(test_set.segments[i], model.attribute);
      bool actual = truth != nullptr && truth->count(head.label);
      bool predicted = predictions[i].count(head.label);
      if (actual && predicted) ++tp;
      else if (!actual && predicted) ++fp;
      else if (actual && !predicted) ++fn;
      else ++tn;
    }
    LabelMetrics metrics;
    metrics.presence = prf_from_counts(tp, fp, fn, tp + fn);
    // Absence flips the positive class: true positives are correct
    // non-predictions.
    metrics.absence = prf_from_counts(tn, fn, fp, tn + fp);
    sum_p += metrics.presence.precision + metrics.absence.precision;
    sum_r += metrics.presence.recall + metrics.absence.recall;
    sum_f1 += metrics.presence.f1 + metrics.absence.f1;
    rows += 2;
    report.per_label[head.label] = metrics;
  }
  if (rows > 0) {
    report.macro_precision = sum_p / static_cast<double>(rows);
    report.macro_recall = sum_r / static_cast<double>(rows);
    report.macro_f1 = sum_f1 / static_cast<double>(rows);
  }
  return report;
}

namespace {

// Linear-interpolation percentile over a sorted sample.
double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted[0];
  double rank = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(rank);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = rank - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

ConfidenceInterval bootstrap_accuracy(const ClassifierModel& model,
                                      const ingest::AnnotatedCorpus& test_set,
                                      const embed::EmbeddingModel& embedding,
                                      int resamples, uint64_t seed) {
  if (test_set.segments.empty()) throw InsufficientData("empty test set");

  auto predictions = predict_all(model, test_set, embedding);
  std::vector<int> exact(test_set.segments.size());
  size_t correct = 0;
  for (size_t i = 0; i < test_set.segments.size(); ++i) {
    bool match = predictions[i] == truth_in_vocabulary(test_set.segments[i], model);
    exact[i] = match ? 1 : 0;
    correct += static_cast<size_t>(match);
  }

  ConfidenceInterval ci;
  ci.resamples = resamples;
  ci.point = static_cast<double>(correct) / static_cast<double>(exact.size());

  DeterministicRng rng(seed);
  std::vector<double> stats;
  stats.reserve(static_cast<size_t>(resamples));
  for (int r = 0; r < resamples; ++r) {
    size_t hits = 0;
    for (size_t i = 0; i < exact.size(); ++i) {
      hits += static_cast<size_t>(exact[rng.bounded(exact.size())]);
    }
    stats.push_back(static_cast<double>(hits) / static_cast<double>(exact.size()));
  }
  std::sort(stats.begin(), stats.end());
  ci.lower = percentile(stats, 0.025);
  ci.upper = percentile(stats, 0.975);
  return ci;
}

}  // namespace labelaudit::classify
