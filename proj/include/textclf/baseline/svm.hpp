#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "textclf/baseline/tfidf.hpp"
#include "textclf/tensor/archive.hpp"

namespace textclf::baseline {

struct SvmConfig {
  double c = 1.0;
  std::size_t epochs = 20;
  std::uint64_t seed = 0;
};

/// One weight row and bias per class, trained one-vs-rest.
struct LinearModel {
  tensor::Tensor weights;  // {K, F}
  std::vector<double> bias;
  double c = 1.0;
  /// Mean over classes of the regularized hinge objective after each epoch.
  std::vector<double> objective;

  std::size_t num_classes() const { return bias.size(); }
  std::size_t num_features() const { return weights.cols(); }
};

/// Per class k minimizes λ/2 |w|² + (1/n) Σ max(0, 1 - y_i (w·x_i + b)) with
/// y_i = ±1 and λ = 1 / (C n), by stochastic subgradient descent with step
/// 1 / (λ t + 1) and a seeded visiting order shared by all classes.
///
/// Throws DataError unless the labels cover at least two classes, and
/// std::invalid_argument on bad labels or C <= 0.
LinearModel svm_train(const FeatureMatrix& features, std::span<const std::size_t> labels, std::size_t num_features,
                      std::size_t num_classes, const SvmConfig& config);

struct SvmPrediction {
  std::size_t label = 0;
  std::vector<double> scores;
};

/// Decision values w_k·x + b_k; label is their argmax, lowest index on ties.
SvmPrediction svm_predict(const LinearModel& model, const SparseVector& features);

/// Regularized hinge objective for class k.
double svm_objective(const LinearModel& model, const FeatureMatrix& features, std::span<const std::size_t> labels,
                     std::size_t k);

/// Featurizer plus classifier, persisted together.
struct SvmClassifier {
  TfidfModel tfidf;
  LinearModel linear;

  SvmPrediction predict(std::span<const std::string> tokens) const {
    return svm_predict(linear, tfidf_transform(tfidf, tokens));
  }
};

tensor::Archive svm_to_archive(const SvmClassifier& classifier);
/// Throws DataError when the archive is not an SVM model.
SvmClassifier svm_from_archive(const tensor::Archive& archive);

}  // namespace textclf::baseline
