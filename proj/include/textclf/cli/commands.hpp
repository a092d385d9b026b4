#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "textclf/networks/config.hpp"
#include "textclf/training/trainer.hpp"

namespace textclf::cli {

using std::filesystem::path;

struct PrepareOptions {
  path input;
  path output;
  double valid_fraction = 0.2;
  double test_fraction = 0.2;
  std::size_t min_test = 5;
};

struct SynthOptions {
  path output;
  std::optional<path> keywords;
  std::size_t classes = 61;
  std::size_t docs_per_class = 100;
  std::size_t keywords_per_class = 3;
  std::size_t min_keywords = 1;
  std::size_t max_keywords = 3;
  std::size_t min_noise = 6;
  std::size_t max_noise = 16;
  std::size_t noise_vocabulary = 200;
  std::size_t max_sentences = 3;
  double overlap = 0.0;
  std::uint64_t seed = 0;
};

struct EmbedOptions {
  path corpus;
  path output;
  std::size_t dim = 60;
  std::size_t iterations = 50;
  std::size_t window = 15;
  std::size_t min_count = 1;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
};

/// Architecture fields a user may override on top of the family defaults.
struct ArchitectureOverrides {
  std::optional<std::size_t> embedding_dim, rnn_layers, rnn_width, mlp_layers, mlp_width, attention_width,
      sentence_rnn_layers, sentence_rnn_width, sentence_attention_width, cnn_projection, cnn_filters;
  bool freeze_embeddings = false;
};

networks::ModelConfig build_config(networks::Family family, std::size_t num_classes,
                                   const ArchitectureOverrides& overrides);

struct TrainOptions {
  path corpus;
  path output;
  std::string family = "MAX";
  std::optional<path> vectors;
  std::optional<path> history;
  std::size_t min_count = 1;
  ArchitectureOverrides architecture;
  training::TrainConfig train;
  double svm_c = 1.0;
  std::size_t svm_epochs = 20;
  bool bigrams = false;
  std::uint64_t seed = 0;
};

struct GridOptions {
  path corpus;
  path output;
  std::string family = "MAX";
  std::optional<path> grid;
  std::optional<std::string> preset;
  std::optional<path> vectors;
  std::size_t jobs = 1;
  std::size_t min_count = 1;
  ArchitectureOverrides architecture;
  training::TrainConfig train;
  std::uint64_t seed = 0;
};

struct EvalOptions {
  std::optional<path> model;
  std::optional<path> corpus;
  std::optional<path> predictions;
  std::optional<path> fidelity_against;
  std::optional<path> predictions_out;
  std::optional<path> output;
  std::string split = "test";
};

struct CompareOptions {
  /// NAME=PREDICTIONS entries.
  std::vector<std::string> runs;
  std::string reference = "MAX";
  std::optional<path> output;
};

struct ExplainOptions {
  path model;
  path corpus;
  std::string split = "test";
  std::vector<std::size_t> documents = {0};
  std::optional<path> html_dir;
};

struct DistillOptions {
  path model;
  path corpus;
  path output;
  std::size_t k = 5;
};

/// Each command writes its artifacts and a short summary to `out`.
/// Errors surface as UsageError, DataError or NumericError.
void run_prepare(const PrepareOptions& options, std::ostream& out);
void run_synth(const SynthOptions& options, std::ostream& out);
void run_embed(const EmbedOptions& options, std::ostream& out);
void run_train(const TrainOptions& options, std::ostream& out);
void run_gridsearch(const GridOptions& options, std::ostream& out);
void run_eval(const EvalOptions& options, std::ostream& out);
void run_compare(const CompareOptions& options, std::ostream& out);
void run_explain(const ExplainOptions& options, std::ostream& out);
void run_distill(const DistillOptions& options, std::ostream& out);

}  // namespace textclf::cli
