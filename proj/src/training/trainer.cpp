#include "textclf/training/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/common/rng.hpp"
#include "textclf/tensor/ops.hpp"
#include "textclf/training/adam.hpp"

namespace textclf::training {

std::vector<LabeledDocument> encode_all(const networks::Model& model, std::span<const corpus::Document> docs) {
  std::vector<LabeledDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back({model.encode(d), d.class_index});
  return out;
}

void validate(const TrainConfig& c) {
  if (!(c.learning_rate >= 0.0) || !std::isfinite(c.learning_rate)) throw UsageError("learning rate must be >= 0");
  if (c.batch_size == 0) throw UsageError("batch size must be positive");
  if (c.max_epochs == 0) throw UsageError("max epochs must be positive");
  if (c.patience == 0) throw UsageError("patience must be positive");
}

std::vector<std::vector<double>> predict_all(const networks::Model& model, std::span<const LabeledDocument> docs) {
  std::vector<std::vector<double>> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(model.predict(d.doc));
  return out;
}

double accuracy_of(const networks::Model& model, std::span<const LabeledDocument> docs) {
  if (docs.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& d : docs) correct += tensor::argmax(model.predict(d.doc)) == d.label;
  return static_cast<double>(correct) / static_cast<double>(docs.size());
}

TrainResult train(networks::Model model, std::span<const LabeledDocument> train_set,
                  std::span<const LabeledDocument> valid_set, const TrainConfig& config) {
  validate(config);
  if (train_set.empty() || valid_set.empty()) throw DataError("training and validation splits must be non-empty");
  const std::size_t k = model.config.num_classes;
  for (auto set : {train_set, valid_set}) {
    for (const auto& d : set) {
      if (d.label >= k) throw DataError(fmt::format("label {} outside the model's {} classes", d.label, k));
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<tensor::Tensor*> tensors;
  for (auto& [name, t] : model.params.named()) tensors.push_back(t);
  Adam adam(tensors, AdamConfig{config.learning_rate});
  Rng rng(derive_seed(config.seed, "shuffle"));

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result{model, {}};
  double best_valid = -1.0;
  std::size_t stale = 0;
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      const double weight = 1.0 / static_cast<double>(end - begin);
      adam.zero_grad();
      for (std::size_t i = begin; i < end; ++i) {
        const LabeledDocument& item = train_set[order[i]];
        tensor::Tape tape;
        networks::Forward f = networks::forward(tape, model.config, model.params, item.doc);
        tensor::Var loss = tensor::cross_entropy(f.probabilities, item.label);
        const double value = tape.value(loss)[0];
        if (!std::isfinite(value)) throw NumericError(fmt::format("training diverged in epoch {}", epoch + 1));
        loss_sum += value;
        correct += tensor::argmax(tape.value(f.probabilities).data()) == item.label;
        tape.backward(loss, weight);
      }
      try {
        adam.step();
      } catch (const NumericError&) {
        throw NumericError(fmt::format("non-finite gradient in epoch {}", epoch + 1));
      }
    }

    EpochRecord record;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    record.train_accuracy = static_cast<double>(correct) / static_cast<double>(order.size());
    record.valid_accuracy = accuracy_of(model, valid_set);
    result.history.epochs.push_back(record);
    if (record.valid_accuracy > best_valid) {
      best_valid = record.valid_accuracy;
      result.history.best_epoch = epoch;
      result.model.params = model.params;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  result.history.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace textclf::training
