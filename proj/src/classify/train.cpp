#include "labelaudit/classify/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "labelaudit/errors.hpp"
#include "labelaudit/ingest/segment.hpp"
#include "labelaudit/rng.hpp"

namespace labelaudit::classify {

const std::set<std::string>* segment_truth(const ingest::AnnotatedSegment& seg,
                                           Attribute attribute) {
  if (attribute == Attribute::SegmentPractices) return &seg.practices;
  auto it = seg.attributes.find(attribute);
  if (it == seg.attributes.end()) return nullptr;
  return &it->second;
}

std::vector<ingest::AnnotatedSegment> relevant_segments(
    const ingest::AnnotatedCorpus& corpus, Attribute attribute) {
  std::vector<ingest::AnnotatedSegment> out;
  for (const auto& seg : corpus.segments) {
    const auto* truth = segment_truth(seg, attribute);
    if (truth != nullptr && !truth->empty()) out.push_back(seg);
  }
  return out;
}

std::pair<ingest::AnnotatedCorpus, ingest::AnnotatedCorpus> split_train_test(
    const ingest::AnnotatedCorpus& corpus, Attribute attribute, double ratio,
    uint64_t seed) {
  std::vector<ingest::AnnotatedSegment> relevant =
      relevant_segments(corpus, attribute);
  if (relevant.size() < 2) {
    throw InsufficientData("need at least 2 segments annotated for " +
                           to_string(attribute) + ", have " +
                           std::to_string(relevant.size()));
  }
  std::vector<size_t> order(relevant.size());
  std::iota(order.begin(), order.end(), 0);
  DeterministicRng rng(seed);
  rng.shuffle(order);

  size_t train_size = static_cast<size_t>(
      std::ceil(ratio * static_cast<double>(relevant.size())));
  train_size = std::min(train_size, relevant.size());

  ingest::AnnotatedCorpus train, test;
  for (size_t i = 0; i < order.size(); ++i) {
    auto& dest = (i < train_size) ? train : test;
    dest.segments.push_back(relevant[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

double BinaryLogistic::loss(const embed::Vector& weights, double bias) const {
  const auto& xs = *features;
  double total = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double z = bias;
    for (size_t d = 0; d < weights.size(); ++d) z += weights[d] * xs[i][d];
    // log(1 + exp(-m)) with m = z for positives, -z for negatives,
    // computed in the numerically stable branch.
    double m = targets[i] == 1 ? z : -z;
    total += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  }
  total /= static_cast<double>(xs.size());
  double reg = 0.0;
  for (double w : weights) reg += w * w;
  return total + 0.5 * l2 * reg;
}

void BinaryLogistic::gradient(const embed::Vector& weights, double bias,
                              embed::Vector& grad_weights,
                              double& grad_bias) const {
  const auto& xs = *features;
  grad_weights.assign(weights.size(), 0.0);
  grad_bias = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double z = bias;
    for (size_t d = 0; d < weights.size(); ++d) z += weights[d] * xs[i][d];
    double err = sigmoid(z) - static_cast<double>(targets[i]);
    for (size_t d = 0; d < weights.size(); ++d) grad_weights[d] += err * xs[i][d];
    grad_bias += err;
  }
  double inv_n = 1.0 / static_cast<double>(xs.size());
  for (size_t d = 0; d < weights.size(); ++d) {
    grad_weights[d] = grad_weights[d] * inv_n + l2 * weights[d];
  }
  grad_bias *= inv_n;
}

ClassifierModel train(Attribute attribute,
                      const ingest::AnnotatedCorpus& train_set,
                      const embed::EmbeddingModel& embedding,
                      const Hyperparameters& hyper) {
  if (train_set.segments.empty()) {
    throw InsufficientData("empty training set for " + to_string(attribute));
  }

  std::vector<embed::Vector> features;
  features.reserve(train_set.segments.size());
  std::set<std::string> label_set;
  for (const auto& seg : train_set.segments) {
    features.push_back(embed::embed_tokens(embedding, ingest::tokenize(seg.text)));
    if (const auto* truth = segment_truth(seg, attribute)) {
      label_set.insert(truth->begin(), truth->end());
    }
  }

  ClassifierModel model;
  model.attribute = attribute;
  model.dimension = embedding.dimension;

  for (const std::string& label : label_set) {
    BinaryLogistic problem;
    problem.features = &features;
    problem.l2 = hyper.l2;
    problem.targets.reserve(train_set.segments.size());
    size_t positives = 0;
    for (const auto& seg : train_set.segments) {
      const auto* truth = segment_truth(seg, attribute);
      int y = (truth != nullptr && truth->count(label)) ? 1 : 0;
      positives += static_cast<size_t>(y);
      problem.targets.push_back(y);
    }

    LabelHead head;
    head.label = label;
    head.weights.assign(embedding.dimension, 0.0);
    if (positives == 0 || positives == problem.targets.size()) {
      head.constant = positives != 0;
      model.heads.push_back(std::move(head));
      continue;
    }

    embed::Vector grad(embedding.dimension, 0.0);
    double grad_bias = 0.0;
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
      problem.gradient(head.weights, head.bias, grad, grad_bias);
      for (size_t d = 0; d < embedding.dimension; ++d) {
        head.weights[d] -= hyper.learning_rate * grad[d];
      }
      head.bias -= hyper.learning_rate * grad_bias;
    }
    model.heads.push_back(std::move(head));
  }
  return model;
}

}  // namespace labelaudit::classify
