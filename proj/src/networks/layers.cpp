#include "textclf/networks/layers.hpp"

#include <stdexcept>

#include "textclf/tensor/ops.hpp"

namespace textclf::networks {

using namespace tensor;

Var Binder::operator()(const Tensor& t) const {
  // A mutable binder only ever sees tensors owned by *mutable_.
  return mutable_ != nullptr ? tape_.param(const_cast<Tensor&>(t)) : tape_.view(t);
}

GruVars Binder::operator()(const GruLayer& layer) const {
  return {(*this)(layer.input_weights), (*this)(layer.gate_weights), (*this)(layer.candidate_weights),
          (*this)(layer.bias), layer.width()};
}

std::vector<GruVars> Binder::operator()(const std::vector<GruLayer>& stack) const {
  std::vector<GruVars> out;
  out.reserve(stack.size());
  for (const auto& layer : stack) out.push_back((*this)(layer));
  return out;
}

DenseVars Binder::operator()(const Dense& dense) const { return {(*this)(dense.weight), (*this)(dense.bias)}; }

std::vector<DenseVars> Binder::operator()(const std::vector<Dense>& layers) const {
  std::vector<DenseVars> out;
  out.reserve(layers.size());
  for (const auto& layer : layers) out.push_back((*this)(layer));
  return out;
}

AttentionVars Binder::operator()(const AttentionParams& attention) const {
  return {(*this)(attention.projection), (*this)(attention.context)};
}

namespace {

// Gate arithmetic shared by gru_step and gru_sequence; `projected` already
// holds W x + b.
Var gru_update(Var projected, Var h, const GruVars& layer) {
  const std::size_t d = layer.width;
  Var gates = sigmoid(slice(projected, 0, 2 * d) + matvec(layer.gate_weights, h));
  Var z = slice(gates, 0, d);
  Var r = slice(gates, d, d);
  Var candidate = tanh(slice(projected, 2 * d, d) + matvec(layer.candidate_weights, r * h));
  return h + z * (candidate - h);
}

}  // namespace

Var gru_step(Var x, Var h_prev, const GruVars& layer) {
  return gru_update(linear(x, layer.input_weights, layer.bias), h_prev, layer);
}

Var gru_sequence(Var inputs, const GruVars& layer, bool reverse) {
  Tape& tape = *inputs.tape;
  const std::size_t steps = tape.value(inputs).rows();
  if (tape.value(inputs).rank() != 2 || steps == 0) throw std::invalid_argument("gru_sequence: need {T, in} input");
  Var projected = linear(inputs, layer.input_weights, layer.bias);
  Var h = tape.constant(Tensor({layer.width}));
  std::vector<Var> states(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t t = reverse ? steps - 1 - k : k;
    h = gru_update(row(projected, t), h, layer);
    states[t] = h;
  }
  return stack_rows(states);
}

Encoding encode_bidirectional(Var inputs, std::span<const GruVars> forward, std::span<const GruVars> reverse) {
  if (forward.empty() || forward.size() != reverse.size()) throw std::invalid_argument("encoder stacks mismatch");
  Var f = inputs;
  for (const auto& layer : forward) f = gru_sequence(f, layer, false);
  Var r = inputs;
  for (const auto& layer : reverse) r = gru_sequence(r, layer, true);
  return {concat_cols(f, r), f, r};
}

Var apply_mlp(Var states, std::span<const DenseVars> layers) {
  Var x = states;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    x = linear(x, layers[l].weight, layers[l].bias);
    x = l + 1 == layers.size() ? sigmoid(x) : relu(x);
  }
  return x;
}

Var aggregate_max(Var positions) { return max_rows(positions); }

Attended aggregate_attention(Var positions, const AttentionVars& attention) {
  Var projected = tanh(linear(positions, attention.projection.weight, attention.projection.bias));
  Var weights = softmax(matvec(projected, attention.context));
  return {weighted_sum_rows(positions, weights), weights};
}

}  // namespace textclf::networks
