#include "textclf/tensor/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/common/rng.hpp"

namespace textclf::tensor {
namespace {

double evaluate(const LossBuilder& build_loss) {
  Tape tape(false);
  const double loss = tape.value(build_loss(tape))[0];
  if (!std::isfinite(loss)) throw NumericError("gradient_check: non-finite loss");
  return loss;
}

}  // namespace

GradientCheckResult gradient_check(const LossBuilder& build_loss, std::span<Tensor* const> params, double eps,
                                   std::uint64_t seed, std::size_t max_coordinates) {
  for (Tensor* p : params) {
    if (!p->requires_grad()) throw std::invalid_argument("gradient_check: parameter without grad");
    p->zero_grad();
  }
  {
    Tape tape(true);
    Var loss = build_loss(tape);
    if (!std::isfinite(tape.value(loss)[0])) throw NumericError("gradient_check: non-finite loss");
    tape.backward(loss);
  }

  GradientCheckResult result;
  Rng rng(seed);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& p = *params[k];
    std::vector<std::size_t> coords(p.size());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (coords.size() > max_coordinates) {
      rng.shuffle(std::span<std::size_t>(coords));
      coords.resize(max_coordinates);
      std::sort(coords.begin(), coords.end());
    }
    for (std::size_t i : coords) {
      const double original = p[i];
      p[i] = original + eps;
      const double up = evaluate(build_loss);
      p[i] = original - eps;
      const double down = evaluate(build_loss);
      p[i] = original;
      const double numeric = (up - down) / (2.0 * eps);
      const double analytic = p.grad()[i];
      const double denom = std::max({1.0, std::abs(analytic), std::abs(numeric)});
      const double err = std::abs(analytic - numeric) / denom;
      ++result.coordinates_checked;
      if (err > result.max_relative_error || result.worst_coordinate.empty()) {
        result.max_relative_error = std::max(err, result.max_relative_error);
        if (err >= result.max_relative_error) result.worst_coordinate = fmt::format("{}:{}", k, i);
      }
    }
  }
  return result;
}

}  // namespace textclf::tensor
