#include "labelaudit/classify/classifier.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "labelaudit/errors.hpp"

namespace labelaudit::classify {

using nlohmann::json;

double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

LabelScores predict(const ClassifierModel& model,
                    const embed::Vector& segment_vector) {
  if (segment_vector.size() != model.dimension) {
    throw DimensionMismatch("segment vector has dimension " +
                            std::to_string(segment_vector.size()) + ", model expects " +
                            std::to_string(model.dimension));
  }
  LabelScores out;
  for (const auto& head : model.heads) {
    double score;
    if (head.constant) {
      score = *head.constant ? 1.0 : 0.0;
    } else {
      double z = head.bias;
      for (size_t d = 0; d < model.dimension; ++d) {
        z += head.weights[d] * segment_vector[d];
      }
      score = sigmoid(z);
    }
    out.scores[head.label] = score;
    if (score >= model.threshold) out.predicted.insert(head.label);
  }
  return out;
}

void save_model(const ClassifierModel& model, const std::string& path) {
  json heads = json::array();
  for (const auto& h : model.heads) {
    json head;
    head["label"] = h.label;
    head["bias"] = h.bias;
    head["weights"] = h.weights;
    if (h.constant) {
      head["constant"] = *h.constant;
    } else {
      head["constant"] = nullptr;
    }
    heads.push_back(head);
  }
  json j;
  j["attribute"] = to_string(model.attribute);
  j["threshold"] = model.threshold;
  j["dimension"] = model.dimension;
  j["labels"] = heads;

  std::ofstream out(path);
  if (!out) throw IOFailure("cannot write model file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IOFailure("write failed: " + path);
}

ClassifierModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open model file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed model file: " + path);

  ClassifierModel model;
  model.attribute = parse_attribute(j.at("attribute").get<std::string>());
  model.threshold = j.at("threshold").get<double>();
  model.dimension = j.at("dimension").get<size_t>();
  for (const json& head : j.at("labels")) {
    LabelHead h;
    h.label = head.at("label").get<std::string>();
    h.bias = head.at("bias").get<double>();
    h.weights = head.at("weights").get<embed::Vector>();
    if (h.weights.size() != model.dimension) {
      throw DimensionMismatch("model head '" + h.label + "' has " +
                              std::to_string(h.weights.size()) + " weights, expected " +
                              std::to_string(model.dimension));
    }
    if (!head.at("constant").is_null()) h.constant = head.at("constant").get<bool>();
    model.heads.push_back(std::move(h));
  }
  return model;
}

}  // namespace labelaudit::classify
