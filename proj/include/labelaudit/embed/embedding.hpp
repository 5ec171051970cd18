#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace labelaudit::embed {

using Vector = std::vector<double>;

// Fixed word vectors loaded from a text file. Immutable after load and safe
// to share across parallel workers. Subword rows carry vectors for character
// n-grams used as the out-of-vocabulary fallback.
struct EmbeddingModel {
  size_t dimension = 0;
  std::unordered_map<std::string, Vector> vocab;
  std::unordered_map<std::string, Vector> subgram_vocab;
};

// Prefix marking a subword row in the vector text format.
inline constexpr const char* kSubgramPrefix = "<ng>";

// File format: first line "<vocab_size> <dimension>", then one row per line
// "<token> <v1> ... <vd>". Throws DimensionMismatch on a short/long row,
// EmptyModel when no rows survive.
EmbeddingModel load_embeddings(const std::string& path);

// Full-precision writer; load_embeddings(save_embeddings(m)) is bit-exact.
void save_embeddings(const EmbeddingModel& model, const std::string& path);

// Mean of the token vectors. An out-of-vocabulary token contributes the mean
// of its character 3..5-gram vectors (over "<token>" with boundary markers)
// found in subgram_vocab, or the zero vector when none match. An empty token
// list embeds to the zero vector.
Vector embed_tokens(const EmbeddingModel& model,
                    const std::vector<std::string>& tokens);

// dot(a,b) / (|a||b|), 0 when either norm is 0. Throws DimensionMismatch.
double cosine_similarity(const Vector& a, const Vector& b);

// Character n-grams (3..5) of a token decorated with boundary markers.
std::vector<std::string> subword_ngrams(const std::string& token);

}  // namespace labelaudit::embed
