#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "textclf/embeddings/cooccurrence.hpp"
#include "textclf/embeddings/vocabulary.hpp"
#include "textclf/tensor/tensor.hpp"

namespace textclf::embeddings {

/// Dense word vectors aligned with a vocabulary: row i embeds token i.
struct WordVectors {
  Vocabulary vocabulary;
  tensor::Tensor table;  // {V, p}

  std::size_t dim() const { return table.cols(); }
};

struct GloveConfig {
  std::size_t dim = 60;
  std::size_t iterations = 50;
  double learning_rate = 0.05;
  double x_max = 100.0;
  double alpha = 0.75;
  std::uint64_t seed = 0;
};

struct GloveResult {
  WordVectors vectors;
  double initial_loss = 0.0;
  /// Weighted squared error over all cells after each iteration.
  std::vector<double> epoch_losses;
};

/// f(x) = (x / x_max)^alpha below x_max, 1 above.
double glove_weight(double x, double x_max, double alpha);

/// Fits main/context vectors and biases to ln X_ij with per-parameter
/// AdaGrad over the nonzero cells, visited in a seeded random order each
/// iteration. The returned vectors are main + context.
///
/// Throws DataError on an empty table, NumericError on a non-finite loss.
GloveResult train_embeddings(const CooccurrenceTable& table, const Vocabulary& vocabulary, const GloveConfig& config);

/// "token v1 ... vp" per line, UNK omitted. Values use shortest round-trip
/// formatting.
void write_vectors(const std::filesystem::path& path, const WordVectors& vectors);
/// UNK is re-added at index 0 with a zero vector.
WordVectors read_vectors(const std::filesystem::path& path);

}  // namespace textclf::embeddings
