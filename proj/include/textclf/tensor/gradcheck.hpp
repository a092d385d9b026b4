#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "textclf/tensor/tape.hpp"

namespace textclf::tensor {

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::size_t coordinates_checked = 0;
  /// "<tensor index>:<flat offset>" of the worst coordinate.
  std::string worst_coordinate;
};

using LossBuilder = std::function<Var(Tape&)>;

/// Compares reverse-mode gradients of `build_loss` against central
/// differences. Each tensor contributes every coordinate when it has at most
/// `max_coordinates` entries, otherwise a seeded random sample of that size.
/// Error per coordinate is |analytic - numeric| / max(1, |analytic|, |numeric|).
///
/// All params must have requires_grad set. Their gradients are overwritten.
/// Throws NumericError if the loss is ever non-finite.
GradientCheckResult gradient_check(const LossBuilder& build_loss, std::span<Tensor* const> params,
                                   double eps = 1e-5, std::uint64_t seed = 0,
                                   std::size_t max_coordinates = 200);

}  // namespace textclf::tensor
