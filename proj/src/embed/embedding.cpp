#include "labelaudit/embed/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "labelaudit/errors.hpp"

namespace labelaudit::embed {

namespace {

constexpr size_t kMinGram = 3;
constexpr size_t kMaxGram = 5;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> subword_ngrams(const std::string& token) {
  std::string decorated = "<" + token + ">";
  std::vector<std::string> grams;
  for (size_t n = kMinGram; n <= kMaxGram; ++n) {
    if (decorated.size() < n) break;
    for (size_t i = 0; i + n <= decorated.size(); ++i) {
      grams.push_back(decorated.substr(i, n));
    }
  }
  return grams;
}

EmbeddingModel load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOFailure("cannot open embeddings file: " + path);

  std::string header;
  if (!std::getline(in, header)) throw EmptyModel("embeddings file is empty: " + path);

  size_t declared_rows = 0;
  size_t dimension = 0;
  {
    std::istringstream hs(header);
    if (!(hs >> declared_rows >> dimension) || dimension == 0) {
      throw SchemaError("bad embeddings header: '" + header + "'");
    }
  }

  EmbeddingModel model;
  model.dimension = dimension;

  std::string line;
  size_t rows = 0;
  const std::string prefix = kSubgramPrefix;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    Vector values;
    values.reserve(dimension);
    double v = 0.0;
    while (ls >> v) values.push_back(v);
    if (values.size() != dimension) {
      throw DimensionMismatch("row '" + token + "' has " +
                              std::to_string(values.size()) + " values, expected " +
                              std::to_string(dimension));
    }
    if (token.rfind(prefix, 0) == 0) {
      model.subgram_vocab[token.substr(prefix.size())] = std::move(values);
    } else {
      model.vocab[token] = std::move(values);
    }
    ++rows;
  }
  if (rows == 0) throw EmptyModel("no vector rows in: " + path);
  return model;
}

void save_embeddings(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOFailure("cannot write embeddings file: " + path);

  // Sorted row order keeps the file deterministic.
  std::vector<const std::string*> words;
  words.reserve(model.vocab.size());
  for (const auto& [token, _] : model.vocab) words.push_back(&token);
  std::sort(words.begin(), words.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  std::vector<const std::string*> grams;
  grams.reserve(model.subgram_vocab.size());
  for (const auto& [gram, _] : model.subgram_vocab) grams.push_back(&gram);
  std::sort(grams.begin(), grams.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  out << (model.vocab.size() + model.subgram_vocab.size()) << ' '
      << model.dimension << '\n';
  auto write_row = [&](const std::string& token, const Vector& values) {
    out << token;
    for (double v : values) out << ' ' << format_double(v);
    out << '\n';
  };
  for (const std::string* token : words) write_row(*token, model.vocab.at(*token));
  for (const std::string* gram : grams) {
    write_row(kSubgramPrefix + *gram, model.subgram_vocab.at(*gram));
  }
  if (!out) throw IOFailure("write failed: " + path);
}

namespace {

// OOV fallback: mean of the token's matched subword n-gram vectors.
Vector oov_vector(const EmbeddingModel& model, const std::string& token) {
  Vector sum(model.dimension, 0.0);
  size_t matched = 0;
  for (const std::string& gram : subword_ngrams(token)) {
    auto it = model.subgram_vocab.find(gram);
    if (it == model.subgram_vocab.end()) continue;
    for (size_t d = 0; d < model.dimension; ++d) sum[d] += it->second[d];
    ++matched;
  }
  if (matched > 0) {
    for (double& v : sum) v /= static_cast<double>(matched);
  }
  return sum;
}

}  // namespace

Vector embed_tokens(const EmbeddingModel& model,
                    const std::vector<std::string>& tokens) {
  Vector mean(model.dimension, 0.0);
  if (tokens.empty()) return mean;
  for (const std::string& token : tokens) {
    auto it = model.vocab.find(token);
    Vector fallback;
    const Vector* vec = nullptr;
    if (it != model.vocab.end()) {
      vec = &it->second;
    } else {
      fallback = oov_vector(model, token);
      vec = &fallback;
    }
    for (size_t d = 0; d < model.dimension; ++d) mean[d] += (*vec)[d];
  }
  for (double& v : mean) v /= static_cast<double>(tokens.size());
  return mean;
}

double cosine_similarity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("cosine_similarity: " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace labelaudit::embed
