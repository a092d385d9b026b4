#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "textclf/networks/config.hpp"
#include "textclf/tensor/tensor.hpp"

namespace textclf::networks {

using tensor::Tensor;

/// One GRU layer. Gate rows are ordered update (z), reset (r), candidate.
struct GruLayer {
  Tensor input_weights;      // {3d, in}: W_z, W_r, W_h
  Tensor gate_weights;       // {2d, d}:  U_z, U_r
  Tensor candidate_weights;  // {d, d}:   U_h
  Tensor bias;               // {3d}

  std::size_t width() const { return candidate_weights.rows(); }
};

struct Dense {
  Tensor weight;  // {out, in}
  Tensor bias;    // {out}
};

/// c_t = tanh(projection(u_t)); scores <c, c_t>.
struct AttentionParams {
  Dense projection;
  Tensor context;
};

/// Convolution widths used by the CNN baseline.
inline constexpr std::array<std::size_t, 3> kCnnWidths = {3, 4, 5};

/// Learned tensors of every architecture; members a family does not use stay
/// empty.
struct ModelParams {
  Tensor embedding;  // {V, p}
  std::vector<GruLayer> forward, reverse;
  std::vector<Dense> mlp;
  AttentionParams attention;
  std::vector<GruLayer> sentence_forward, sentence_reverse;
  AttentionParams sentence_attention;
  Dense cnn_projection;
  std::array<Dense, 3> convolutions;
  Dense classifier;

  /// Every non-empty tensor with a stable name, in a fixed order.
  std::vector<std::pair<std::string, Tensor*>> named();
  std::vector<std::pair<std::string, const Tensor*>> named() const;
};

/// Xavier-uniform matrices, zero biases, embedding rows N(0, 1/p), attention
/// context N(0, 0.1^2). Every tensor requires grad except the embedding when
/// the config freezes it.
ModelParams init_params(const ModelConfig& config, std::size_t vocab_size, std::uint64_t seed);

std::size_t parameter_count(const ModelParams& params);
bool all_finite(const ModelParams& params);

}  // namespace textclf::networks
