#include "textclf/training/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "textclf/common/errors.hpp"

namespace textclf::training {

void adam_step(std::span<double> param, std::span<const double> grad, AdamMoments& moments, const AdamConfig& c,
               std::size_t t) {
  if (t == 0) throw std::invalid_argument("adam_step: t starts at 1");
  if (grad.size() != param.size()) throw std::invalid_argument("adam_step: gradient size mismatch");
  if (moments.m.empty()) {
    moments.m.assign(param.size(), 0.0);
    moments.v.assign(param.size(), 0.0);
  }
  if (moments.m.size() != param.size()) throw std::invalid_argument("adam_step: moment size mismatch");
  const double td = static_cast<double>(t);
  const double correct1 = 1.0 - std::pow(c.beta1, td);
  const double correct2 = 1.0 - std::pow(c.beta2, td);
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    moments.m[i] = c.beta1 * moments.m[i] + (1.0 - c.beta1) * g;
    moments.v[i] = c.beta2 * moments.v[i] + (1.0 - c.beta2) * g * g;
    const double m_hat = moments.m[i] / correct1;
    const double v_hat = moments.v[i] / correct2;
    param[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

Adam::Adam(std::vector<tensor::Tensor*> params, AdamConfig config) : config_(config) {
  for (tensor::Tensor* p : params) {
    if (p->requires_grad()) params_.push_back(p);
  }
  moments_.resize(params_.size());
}

void Adam::step() {
  for (const tensor::Tensor* p : params_) {
    for (double g : p->grad()) {
      if (!std::isfinite(g)) throw NumericError("non-finite gradient");
    }
  }
  ++t_;
  for (std::size_t k = 0; k < params_.size(); ++k) adam_step(params_[k]->data(), params_[k]->grad(), moments_[k], config_, t_);
}

void Adam::zero_grad() {
  for (tensor::Tensor* p : params_) p->zero_grad();
}

}  // namespace textclf::training
