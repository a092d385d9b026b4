#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "textclf/tensor/tensor.hpp"

namespace textclf::training {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moment estimates of one parameter tensor.
struct AdamMoments {
  std::vector<double> m, v;
};

/// One bias-corrected Adam update at step t >= 1. Throws
/// std::invalid_argument on size mismatch or t == 0.
void adam_step(std::span<double> param, std::span<const double> grad, AdamMoments& moments, const AdamConfig& config,
               std::size_t t);

/// Adam over a fixed set of tensors, reading each tensor's gradient buffer.
/// Tensors that do not require grad are skipped.
class Adam {
 public:
  Adam(std::vector<tensor::Tensor*> params, AdamConfig config);

  /// Throws NumericError if any gradient entry is non-finite; no parameter
  /// is modified in that case.
  void step();
  void zero_grad();
  std::size_t steps() const { return t_; }

 private:
  std::vector<tensor::Tensor*> params_;
  std::vector<AdamMoments> moments_;
  AdamConfig config_;
  std::size_t t_ = 0;
};

}  // namespace textclf::training
