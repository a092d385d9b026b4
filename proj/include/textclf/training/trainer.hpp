#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "textclf/networks/model.hpp"

namespace textclf::training {

struct LabeledDocument {
  networks::EncodedDocument doc;
  std::size_t label = 0;
};

/// Encodes documents with the model's vocabulary.
std::vector<LabeledDocument> encode_all(const networks::Model& model, std::span<const corpus::Document> docs);

struct TrainConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 50;
  std::size_t patience = 5;
  std::uint64_t seed = 0;
};

/// Throws UsageError unless batch_size, max_epochs and patience are positive
/// and the learning rate is finite and non-negative. A zero learning rate is
/// allowed and leaves the parameters untouched.
void validate(const TrainConfig& config);

struct EpochRecord {
  double train_loss = 0.0;      // mean cross-entropy over the epoch's updates
  double train_accuracy = 0.0;  // accuracy of the predictions made during the epoch
  double valid_accuracy = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  double wall_seconds = 0.0;
};

struct TrainResult {
  networks::Model model;  // best-validation snapshot
  TrainHistory history;
};

/// Minibatch Adam on mean cross-entropy. The training order is reshuffled
/// every epoch from a stream derived from the seed; after each epoch the
/// validation accuracy decides whether the parameters become the new
/// snapshot (strict improvement). Stops after max_epochs or `patience`
/// epochs without improvement.
///
/// Throws DataError on empty splits or labels outside [0, K), NumericError
/// when the loss or a gradient becomes non-finite (the message names the
/// epoch).
TrainResult train(networks::Model model, std::span<const LabeledDocument> train_set,
                  std::span<const LabeledDocument> valid_set, const TrainConfig& config);

/// Class probabilities for each document.
std::vector<std::vector<double>> predict_all(const networks::Model& model, std::span<const LabeledDocument> docs);
double accuracy_of(const networks::Model& model, std::span<const LabeledDocument> docs);

}  // namespace textclf::training
