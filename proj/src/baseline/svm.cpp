#include "textclf/baseline/svm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/common/rng.hpp"
#include "textclf/tensor/ops.hpp"

namespace textclf::baseline {

namespace {

double hinge_objective(std::span<const double> w, double b, double lambda, const FeatureMatrix& features,
                       std::span<const std::size_t> labels, std::size_t k) {
  double loss = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double y = labels[i] == k ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - y * (dot(features[i], w) + b));
  }
  double sq = 0.0;
  for (double v : w) sq += v * v;
  return 0.5 * lambda * sq + loss / static_cast<double>(features.size());
}

}  // namespace

LinearModel svm_train(const FeatureMatrix& features, std::span<const std::size_t> labels, std::size_t num_features,
                      std::size_t num_classes, const SvmConfig& config) {
  if (features.size() != labels.size() || features.empty()) throw std::invalid_argument("svm_train: size mismatch");
  if (!(config.c > 0.0)) throw std::invalid_argument("svm_train: C must be positive");
  for (std::size_t y : labels) {
    if (y >= num_classes) throw std::invalid_argument("svm_train: label out of range");
  }
  if (std::adjacent_find(labels.begin(), labels.end(), std::not_equal_to<>()) == labels.end() || num_classes < 2) {
    throw DataError("SVM training needs examples from at least two classes");
  }

  const std::size_t n = features.size();
  const double lambda = 1.0 / (config.c * static_cast<double>(n));
  LinearModel model;
  model.c = config.c;
  model.weights = tensor::Tensor({num_classes, num_features});
  model.bias.assign(num_classes, 0.0);

  // Visiting orders are drawn once so every class sees the same sequence.
  Rng rng(derive_seed(config.seed, "svm"));
  std::vector<std::vector<std::size_t>> orders(config.epochs, std::vector<std::size_t>(n));
  for (auto& order : orders) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
  }

  std::vector<std::vector<double>> objective(config.epochs, std::vector<double>(num_classes));
  for (std::size_t k = 0; k < num_classes; ++k) {
    // w = scale * v keeps the shrink step O(1).
    std::vector<double> v(num_features, 0.0);
    double scale = 1.0, b = 0.0;
    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      for (std::size_t i : orders[epoch]) {
        const double eta = 1.0 / (lambda * static_cast<double>(t++) + 1.0);
        const double y = labels[i] == k ? 1.0 : -1.0;
        const double margin = y * (scale * dot(features[i], v) + b);
        scale *= 1.0 - eta * lambda;
        if (margin < 1.0) {
          for (const auto& [col, value] : features[i]) v[col] += eta * y * value / scale;
          b += eta * y;
        }
        if (scale < 1e-9) {
          for (double& x : v) x *= scale;
          scale = 1.0;
        }
      }
      std::vector<double> w(v);
      for (double& x : w) x *= scale;
      objective[epoch][k] = hinge_objective(w, b, lambda, features, labels, k);
      if (epoch + 1 == config.epochs) {
        std::copy(w.begin(), w.end(), model.weights.row(k).begin());
        model.bias[k] = b;
      }
    }
  }
  for (const auto& per_class : objective) {
    model.objective.push_back(std::accumulate(per_class.begin(), per_class.end(), 0.0) /
                              static_cast<double>(num_classes));
  }
  return model;
}

SvmPrediction svm_predict(const LinearModel& model, const SparseVector& features) {
  SvmPrediction out;
  out.scores.resize(model.num_classes());
  for (std::size_t k = 0; k < model.num_classes(); ++k) {
    out.scores[k] = dot(features, model.weights.row(k)) + model.bias[k];
  }
  out.label = tensor::argmax(out.scores);
  return out;
}

double svm_objective(const LinearModel& model, const FeatureMatrix& features, std::span<const std::size_t> labels,
                     std::size_t k) {
  const double lambda = 1.0 / (model.c * static_cast<double>(features.size()));
  return hinge_objective(model.weights.row(k), model.bias[k], lambda, features, labels, k);
}

tensor::Archive svm_to_archive(const SvmClassifier& classifier) {
  tensor::Archive archive;
  archive.kind = "svm";
  const auto& tf = classifier.tfidf;
  archive.config = {{"ngram_max", tf.ngram_max},
                    {"documents", tf.documents},
                    {"c", classifier.linear.c},
                    {"num_classes", classifier.linear.num_classes()}};
  archive.vocabulary.resize(tf.columns.size());
  for (const auto& [term, col] : tf.columns) archive.vocabulary[col] = term;
  std::vector<double> df(tf.document_frequency.begin(), tf.document_frequency.end());
  archive.tensors.emplace_back("document_frequency", tensor::Tensor::vector(df));
  archive.tensors.emplace_back("idf", tensor::Tensor::vector(tf.idf));
  archive.tensors.emplace_back("weights", classifier.linear.weights);
  archive.tensors.emplace_back("bias", tensor::Tensor::vector(classifier.linear.bias));
  return archive;
}

SvmClassifier svm_from_archive(const tensor::Archive& archive) {
  if (archive.kind != "svm") throw DataError(fmt::format("expected an SVM model, found kind '{}'", archive.kind));
  try {
    SvmClassifier out;
    auto& tf = out.tfidf;
    tf.ngram_max = archive.config.at("ngram_max").get<int>();
    tf.documents = archive.config.at("documents").get<std::size_t>();
    const std::size_t f = archive.vocabulary.size();
    const std::size_t k = archive.config.at("num_classes").get<std::size_t>();
    for (std::size_t col = 0; col < f; ++col) {
      if (!tf.columns.emplace(archive.vocabulary[col], col).second) throw DataError("duplicate term in SVM model");
    }
    for (double d : archive.tensor("document_frequency", {f}).values()) tf.document_frequency.push_back(static_cast<std::size_t>(d));
    tf.idf = archive.tensor("idf", {f}).values();
    out.linear.c = archive.config.at("c").get<double>();
    out.linear.weights = archive.tensor("weights", {k, f});
    out.linear.bias = archive.tensor("bias", {k}).values();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("malformed SVM model: {}", e.what()));
  }
}

}  // namespace textclf::baseline
