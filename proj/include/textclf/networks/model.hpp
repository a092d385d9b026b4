#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "textclf/corpus/document.hpp"
#include "textclf/embeddings/glove.hpp"
#include "textclf/embeddings/vocabulary.hpp"
#include "textclf/networks/layers.hpp"
#include "textclf/tensor/archive.hpp"

namespace textclf::networks {

/// Token ids plus sentence ranges over them.
struct EncodedDocument {
  std::vector<std::size_t> ids;
  std::vector<corpus::SentenceRange> sentences;
};

/// Result of one recorded forward pass.
struct Forward {
  Var probabilities;  // {K}
  Var features;       // document representation φ fed to the classifier
  /// Interpretable model only: u {T, K}, row t scores token t for every class.
  std::optional<Var> importance;
};

/// Minimum token count the CNN sees; shorter documents are padded with a
/// zero embedding.
inline constexpr std::size_t kCnnMinLength = 5;

Forward forward_flat(const ModelConfig& config, const Binder& bind, const ModelParams& params, const EncodedDocument& doc);
Forward forward_interpretable(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                              const EncodedDocument& doc);
/// Throws std::invalid_argument on a document without sentences.
Forward forward_hierarchical(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                             const EncodedDocument& doc);
Forward forward_cnn(const ModelConfig& config, const Binder& bind, const ModelParams& params, const EncodedDocument& doc);

/// Dispatches on the config. Parameters receive gradients on backward.
Forward forward(Tape& tape, const ModelConfig& config, ModelParams& params, const EncodedDocument& doc);
/// Read-only variant; safe to call concurrently on a shared params object.
Forward forward(Tape& tape, const ModelConfig& config, const ModelParams& params, const EncodedDocument& doc);

/// A trained neural classifier with its vocabulary.
struct Model {
  ModelConfig config;
  embeddings::Vocabulary vocabulary;
  ModelParams params;

  EncodedDocument encode(const corpus::Document& doc) const;
  /// Class probabilities for one document.
  std::vector<double> predict(const EncodedDocument& doc) const;
  /// Importance matrix u as {K, T}: row j holds u_{j,t} over positions.
  /// Throws std::invalid_argument unless the model is interpretable.
  tensor::Tensor importance(const EncodedDocument& doc) const;
};

/// New model with freshly initialized parameters.
Model make_model(const ModelConfig& config, embeddings::Vocabulary vocabulary, std::uint64_t seed);

/// Copies rows of `vectors` into the embedding table for every token both
/// vocabularies share. Returns the number of rows copied. Throws
/// std::invalid_argument on a dimension mismatch.
std::size_t load_pretrained(Model& model, const embeddings::WordVectors& vectors);

tensor::Archive model_to_archive(const Model& model);
/// Throws DataError when the archive is not a neural model or its tensors do
/// not match the stored config.
Model model_from_archive(const tensor::Archive& archive);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace textclf::networks
