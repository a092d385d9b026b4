#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "textclf/tensor/tensor.hpp"

namespace textclf::tensor {

class Tape;

/// Handle to a value recorded on a Tape. Cheap to copy; only valid while the
/// tape is alive.
struct Var {
  Tape* tape = nullptr;
  std::uint32_t id = 0;
};

/// Records operations in execution order so gradients can be propagated in
/// exact reverse order. A tape is single-threaded and single-use: build the
/// graph, call backward at most once, then drop it.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::uint32_t self)>;

  explicit Tape(bool grad_enabled = true);
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  bool grad_enabled() const { return grad_enabled_; }

  /// Leaf holding its own copy of `value`; never receives gradient.
  Var constant(Tensor value);

  /// Leaf referencing `param` without copying. When the tape records
  /// gradients and `param.requires_grad()`, backward sums into param.grad().
  Var param(Tensor& param);
  /// Leaf referencing `value` read-only; never receives gradient. Lets many
  /// tapes share one immutable parameter set.
  Var view(const Tensor& value);

  /// Records an op result. `fn` is dropped when no input needs gradient.
  Var push(Tensor value, std::initializer_list<Var> inputs, BackwardFn fn);
  Var push(Tensor value, std::span<const Var> inputs, BackwardFn fn);

  const Tensor& value(Var v) const { return value(v.id); }
  const Tensor& value(std::uint32_t id) const;
  bool needs_grad(Var v) const { return nodes_[v.id].needs_grad; }
  bool needs_grad(std::uint32_t id) const { return nodes_[id].needs_grad; }

  /// Gradient accumulator for a node; only valid during backward.
  std::span<double> grad(std::uint32_t id);
  std::span<double> grad(Var v) { return grad(v.id); }

  const std::vector<std::uint32_t>& inputs(std::uint32_t id) const { return nodes_[id].inputs; }

  /// Auxiliary integer data an op stores for its backward pass (argmax
  /// positions, gather indices).
  std::vector<std::size_t>& aux(std::uint32_t id) { return nodes_[id].aux; }
  const std::vector<std::size_t>& aux(Var v) const { return nodes_[v.id].aux; }

  /// Propagates d(loss)/d(node) for every recorded node. `loss` must hold a
  /// single element; `seed` scales the whole pass (used for batch means).
  void backward(Var loss, double seed = 1.0);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor own;
    Tensor* param = nullptr;
    const Tensor* view = nullptr;
    std::vector<std::uint32_t> inputs;
    std::vector<std::size_t> aux;
    std::vector<double> grad;
    BackwardFn backward;
    bool needs_grad = false;
  };

  Var make(Node node);

  std::vector<Node> nodes_;
  bool grad_enabled_;
  bool backward_done_ = false;
};

}  // namespace textclf::tensor
