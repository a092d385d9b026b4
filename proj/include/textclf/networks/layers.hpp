#pragma once

#include <span>
#include <vector>

#include "textclf/networks/params.hpp"
#include "textclf/tensor/tape.hpp"

namespace textclf::networks {

using tensor::Tape;
using tensor::Var;

/// Recorded leaves of one GRU layer.
struct GruVars {
  Var input_weights, gate_weights, candidate_weights, bias;
  std::size_t width = 0;
};

struct DenseVars {
  Var weight, bias;
};

struct AttentionVars {
  DenseVars projection;
  Var context;
};

/// Records parameter tensors on a tape, either as gradient-receiving leaves
/// or as read-only views.
class Binder {
 public:
  Binder(Tape& tape, ModelParams& params) : tape_(tape), mutable_(&params) {}
  Binder(Tape& tape, const ModelParams& params) : tape_(tape), mutable_(nullptr) { (void)params; }

  Tape& tape() const { return tape_; }
  Var operator()(const Tensor& t) const;
  GruVars operator()(const GruLayer& layer) const;
  std::vector<GruVars> operator()(const std::vector<GruLayer>& stack) const;
  DenseVars operator()(const Dense& dense) const;
  std::vector<DenseVars> operator()(const std::vector<Dense>& layers) const;
  AttentionVars operator()(const AttentionParams& attention) const;

 private:
  Tape& tape_;
  ModelParams* mutable_;
};

/// One GRU update from state h_prev on input x (both vectors):
/// z = σ(W_z x + U_z h + b_z), r = σ(W_r x + U_r h + b_r),
/// h̃ = tanh(W_h x + U_h (r ⊙ h) + b_h), h' = (1 - z) ⊙ h + z ⊙ h̃.
Var gru_step(Var x, Var h_prev, const GruVars& layer);

/// Runs one layer over the rows of `inputs` {T, in} from a zero state,
/// right-to-left when `reverse`. Row t of the result is the state after
/// consuming input t.
Var gru_sequence(Var inputs, const GruVars& layer, bool reverse);

struct Encoding {
  Var states;          // {T, 2d}: forward ⊕ reverse at each position
  Var forward_states;  // {T, d}, top layer
  Var reverse_states;  // {T, d}, top layer
};

/// Stacked bidirectional encoder. Layer k of each direction reads the
/// outputs of layer k - 1 of the same direction.
Encoding encode_bidirectional(Var inputs, std::span<const GruVars> forward, std::span<const GruVars> reverse);

/// Per-position network G over the rows of `states`: ReLU hidden layers,
/// sigmoid last layer. No layers means identity.
Var apply_mlp(Var states, std::span<const DenseVars> layers);

/// Column-wise max over positions. Tape aux of the result holds the winning
/// position per feature.
Var aggregate_max(Var positions);

struct Attended {
  Var features;  // Σ_t a_t u_t
  Var weights;   // a, sums to 1
};

Attended aggregate_attention(Var positions, const AttentionVars& attention);

}  // namespace textclf::networks
