#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "labelaudit/embed/embedding.hpp"
#include "labelaudit/taxonomy.hpp"

namespace labelaudit::classify {

// One binary one-vs-rest head. A head trained on a degenerate label (no
// positive or no negative example) becomes a constant predictor and is
// flagged through the constant field.
struct LabelHead {
  std::string label;
  embed::Vector weights;
  double bias = 0.0;
  std::optional<bool> constant;
};

struct ClassifierModel {
  Attribute attribute = Attribute::SegmentPractices;
  std::vector<LabelHead> heads;
  double threshold = 0.5;
  size_t dimension = 0;

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(heads.size());
    for (const auto& h : heads) out.push_back(h.label);
    return out;
  }
};

struct LabelScores {
  std::map<std::string, double> scores;
  std::set<std::string> predicted;
};

// Per-label sigmoid scores; predicted = labels with score >= threshold
// (multi-label, no normalization across labels). Throws DimensionMismatch.
LabelScores predict(const ClassifierModel& model,
                    const embed::Vector& segment_vector);

double sigmoid(double z);

// JSON model files round-trip to bit-identical predictions.
void save_model(const ClassifierModel& model, const std::string& path);
ClassifierModel load_model(const std::string& path);

}  // namespace labelaudit::classify
