#include "textclf/tensor/tape.hpp"

#include <stdexcept>

namespace textclf::tensor {

Tape::Tape(bool grad_enabled) : grad_enabled_(grad_enabled) { nodes_.reserve(1024); }

Var Tape::make(Node node) {
  nodes_.push_back(std::move(node));
  return Var{this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Tape::constant(Tensor value) {
  Node node;
  node.own = std::move(value);
  return make(std::move(node));
}

Var Tape::param(Tensor& param) {
  Node node;
  node.param = &param;
  node.needs_grad = grad_enabled_ && param.requires_grad();
  return make(std::move(node));
}

Var Tape::view(const Tensor& value) {
  Node node;
  node.view = &value;
  return make(std::move(node));
}

Var Tape::push(Tensor value, std::initializer_list<Var> inputs, BackwardFn fn) {
  return push(std::move(value), std::span<const Var>(inputs.begin(), inputs.size()), std::move(fn));
}

Var Tape::push(Tensor value, std::span<const Var> inputs, BackwardFn fn) {
  Node node;
  node.own = std::move(value);
  node.inputs.reserve(inputs.size());
  for (const Var& in : inputs) {
    if (in.tape != this) throw std::invalid_argument("op mixes variables from different tapes");
    node.inputs.push_back(in.id);
    node.needs_grad = node.needs_grad || nodes_[in.id].needs_grad;
  }
  if (node.needs_grad) node.backward = std::move(fn);
  return make(std::move(node));
}

const Tensor& Tape::value(std::uint32_t id) const {
  const Node& node = nodes_[id];
  if (node.param != nullptr) return *node.param;
  return node.view != nullptr ? *node.view : node.own;
}

std::span<double> Tape::grad(std::uint32_t id) {
  Node& node = nodes_[id];
  if (node.param != nullptr) return node.param->grad();
  return node.grad;
}

void Tape::backward(Var loss, double seed) {
  if (loss.tape != this) throw std::invalid_argument("backward on foreign variable");
  if (value(loss).size() != 1) throw std::invalid_argument("backward requires a scalar loss");
  if (backward_done_) throw std::logic_error("tape backward called twice");
  backward_done_ = true;
  if (!nodes_[loss.id].needs_grad) return;

  for (std::uint32_t i = 0; i <= loss.id; ++i) {
    Node& node = nodes_[i];
    if (node.needs_grad && node.param == nullptr) node.grad.assign(node.own.size(), 0.0);
  }
  grad(loss.id)[0] += seed;
  for (std::uint32_t i = loss.id + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (node.needs_grad && node.backward) node.backward(*this, i);
  }
}

}  // namespace textclf::tensor
