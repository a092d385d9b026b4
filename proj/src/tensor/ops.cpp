#include "textclf/tensor/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace textclf::tensor {
namespace {

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

template <class Forward, class Derivative>
Var unary(Var a, Forward forward, Derivative derivative) {
  Tape& tape = *a.tape;
  const Tensor& x = tape.value(a);
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = forward(x[i]);
  return tape.push(std::move(out), {a}, [a_id = a.id, derivative](Tape& t, std::uint32_t self) {
    const Tensor& xv = t.value(a_id);
    const Tensor& yv = t.value(self);
    auto gy = t.grad(self);
    auto gx = t.grad(a_id);
    for (std::size_t i = 0; i < gy.size(); ++i) gx[i] += gy[i] * derivative(xv[i], yv[i]);
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Plain helpers

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

std::vector<double> softmax(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("softmax of an empty vector");
  const double peak = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - peak);
    total += out[i];
  }
  for (double& x : out) x /= total;
  return out;
}

double cross_entropy(std::span<const double> probs, std::size_t label) {
  if (label >= probs.size()) throw std::out_of_range("cross_entropy: label out of range");
  return -std::log(probs[label] + kProbabilityFloor);
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::size_t argmax(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Element-wise

Var add(Var a, Var b) {
  Tape& tape = *a.tape;
  const Tensor& x = tape.value(a);
  const Tensor& y = tape.value(b);
  require_same_shape(x, y, "add");
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return tape.push(std::move(out), {a, b}, [a_id = a.id, b_id = b.id](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    if (t.needs_grad(a_id)) axpy(1.0, g, t.grad(a_id));
    if (t.needs_grad(b_id)) axpy(1.0, g, t.grad(b_id));
  });
}

Var sub(Var a, Var b) {
  Tape& tape = *a.tape;
  const Tensor& x = tape.value(a);
  const Tensor& y = tape.value(b);
  require_same_shape(x, y, "sub");
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return tape.push(std::move(out), {a, b}, [a_id = a.id, b_id = b.id](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    if (t.needs_grad(a_id)) axpy(1.0, g, t.grad(a_id));
    if (t.needs_grad(b_id)) axpy(-1.0, g, t.grad(b_id));
  });
}

Var mul(Var a, Var b) {
  Tape& tape = *a.tape;
  const Tensor& x = tape.value(a);
  const Tensor& y = tape.value(b);
  require_same_shape(x, y, "mul");
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return tape.push(std::move(out), {a, b}, [a_id = a.id, b_id = b.id](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const Tensor& xv = t.value(a_id);
    const Tensor& yv = t.value(b_id);
    if (t.needs_grad(a_id)) {
      auto ga = t.grad(a_id);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * yv[i];
    }
    if (t.needs_grad(b_id)) {
      auto gb = t.grad(b_id);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * xv[i];
    }
  });
}

Var scale(Var a, double factor) {
  return unary(
      a, [factor](double x) { return factor * x; }, [factor](double, double) { return factor; });
}

Var sigmoid(Var a) {
  return unary(
      a, [](double x) { return sigmoid(x); }, [](double, double y) { return y * (1.0 - y); });
}

Var tanh(Var a) {
  return unary(
      a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Var relu(Var a) {
  return unary(
      a, [](double x) { return x > 0.0 ? x : 0.0; }, [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

// ---------------------------------------------------------------------------
// Linear algebra

namespace {

Var linear_impl(Var x, Var weight, const Var* bias) {
  Tape& tape = *x.tape;
  const Tensor& xv = tape.value(x);
  const Tensor& w = tape.value(weight);
  if (w.rank() != 2) throw std::invalid_argument("linear: weight must be a matrix");
  const std::size_t in = w.cols();
  const std::size_t out_dim = w.rows();
  if (xv.cols() != in) throw std::invalid_argument("linear: input width mismatch");
  const std::size_t steps = xv.rank() == 2 ? xv.rows() : 1;
  const Tensor* bv = bias != nullptr ? &tape.value(*bias) : nullptr;
  if (bv != nullptr && bv->size() != out_dim) throw std::invalid_argument("linear: bias size mismatch");

  Tensor out(xv.rank() == 2 ? Shape{steps, out_dim} : Shape{out_dim});
  for (std::size_t t = 0; t < steps; ++t) {
    auto xr = xv.data().subspan(t * in, in);
    for (std::size_t o = 0; o < out_dim; ++o) {
      out[t * out_dim + o] = dot(xr, w.row(o)) + (bv != nullptr ? (*bv)[o] : 0.0);
    }
  }

  auto backward = [x_id = x.id, w_id = weight.id, b_id = bias != nullptr ? bias->id : 0u,
                   has_bias = bias != nullptr, steps, in, out_dim](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const Tensor& xv2 = t.value(x_id);
    const Tensor& wv = t.value(w_id);
    const bool gx_on = t.needs_grad(x_id);
    const bool gw_on = t.needs_grad(w_id);
    auto gx = gx_on ? t.grad(x_id) : std::span<double>{};
    auto gw = gw_on ? t.grad(w_id) : std::span<double>{};
    for (std::size_t s = 0; s < steps; ++s) {
      auto xr = xv2.data().subspan(s * in, in);
      for (std::size_t o = 0; o < out_dim; ++o) {
        const double go = g[s * out_dim + o];
        if (go == 0.0) continue;
        if (gx_on) axpy(go, wv.row(o), gx.subspan(s * in, in));
        if (gw_on) axpy(go, xr, gw.subspan(o * in, in));
      }
    }
    if (has_bias && t.needs_grad(b_id)) {
      auto gb = t.grad(b_id);
      for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t o = 0; o < out_dim; ++o) gb[o] += g[s * out_dim + o];
      }
    }
  };
  if (bias != nullptr) return tape.push(std::move(out), {x, weight, *bias}, std::move(backward));
  return tape.push(std::move(out), {x, weight}, std::move(backward));
}

}  // namespace

Var linear(Var x, Var weight) { return linear_impl(x, weight, nullptr); }
Var linear(Var x, Var weight, Var bias) { return linear_impl(x, weight, &bias); }

Var matvec(Var a, Var x) {
  if (a.tape->value(x).rank() != 1) throw std::invalid_argument("matvec: x must be a vector");
  return linear_impl(x, a, nullptr);
}

Var weighted_sum_rows(Var x, Var weights) {
  Tape& tape = *x.tape;
  const Tensor& xv = tape.value(x);
  const Tensor& wv = tape.value(weights);
  const std::size_t steps = xv.rows();
  const std::size_t n = xv.cols();
  if (xv.rank() != 2 || wv.size() != steps) throw std::invalid_argument("weighted_sum_rows: shape mismatch");
  Tensor out({n});
  for (std::size_t t = 0; t < steps; ++t) axpy(wv[t], xv.row(t), out.data());
  return tape.push(std::move(out), {x, weights}, [x_id = x.id, w_id = weights.id, steps, n](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const Tensor& xv2 = t.value(x_id);
    const Tensor& wv2 = t.value(w_id);
    if (t.needs_grad(x_id)) {
      auto gx = t.grad(x_id);
      for (std::size_t s = 0; s < steps; ++s) axpy(wv2[s], g, gx.subspan(s * n, n));
    }
    if (t.needs_grad(w_id)) {
      auto gw = t.grad(w_id);
      for (std::size_t s = 0; s < steps; ++s) gw[s] += dot(xv2.row(s), g);
    }
  });
}

// ---------------------------------------------------------------------------
// Structural

Var row(Var x, std::size_t r) {
  Tape& tape = *x.tape;
  const Tensor& xv = tape.value(x);
  if (xv.rank() != 2 || r >= xv.rows()) throw std::out_of_range("row: index out of range");
  const std::size_t n = xv.cols();
  auto src = xv.row(r);
  Tensor out({n}, std::vector<double>(src.begin(), src.end()));
  return tape.push(std::move(out), {x}, [x_id = x.id, r, n](Tape& t, std::uint32_t self) {
    axpy(1.0, t.grad(self), t.grad(x_id).subspan(r * n, n));
  });
}

Var slice(Var v, std::size_t begin, std::size_t length) {
  Tape& tape = *v.tape;
  const Tensor& vv = tape.value(v);
  if (vv.rank() != 1 || begin + length > vv.size()) throw std::out_of_range("slice: range out of bounds");
  auto src = vv.data().subspan(begin, length);
  Tensor out({length}, std::vector<double>(src.begin(), src.end()));
  return tape.push(std::move(out), {v}, [v_id = v.id, begin, length](Tape& t, std::uint32_t self) {
    axpy(1.0, t.grad(self), t.grad(v_id).subspan(begin, length));
  });
}

Var concat(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat of nothing");
  Tape& tape = *parts.front().tape;
  std::vector<double> data;
  std::vector<std::size_t> offsets;
  for (const Var& p : parts) {
    const Tensor& pv = tape.value(p);
    if (pv.rank() != 1) throw std::invalid_argument("concat: parts must be vectors");
    offsets.push_back(data.size());
    data.insert(data.end(), pv.data().begin(), pv.data().end());
  }
  const std::size_t n = data.size();
  Var out = tape.push(Tensor({n}, std::move(data)), parts, [](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const auto& ins = t.inputs(self);
    const auto& offs = t.aux(self);
    for (std::size_t k = 0; k < ins.size(); ++k) {
      if (!t.needs_grad(ins[k])) continue;
      auto gi = t.grad(ins[k]);
      axpy(1.0, g.subspan(offs[k], gi.size()), gi);
    }
  });
  tape.aux(out.id) = std::move(offsets);
  return out;
}

Var concat(Var a, Var b) {
  const Var parts[] = {a, b};
  return concat(parts);
}

Var concat_cols(Var a, Var b) {
  Tape& tape = *a.tape;
  const Tensor& av = tape.value(a);
  const Tensor& bv = tape.value(b);
  if (av.rank() != 2 || bv.rank() != 2 || av.rows() != bv.rows()) {
    throw std::invalid_argument("concat_cols: row mismatch");
  }
  const std::size_t rows = av.rows(), na = av.cols(), nb = bv.cols();
  Tensor out({rows, na + nb});
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy(av.row(r).begin(), av.row(r).end(), out.row(r).begin());
    std::copy(bv.row(r).begin(), bv.row(r).end(), out.row(r).begin() + static_cast<std::ptrdiff_t>(na));
  }
  return tape.push(std::move(out), {a, b}, [a_id = a.id, b_id = b.id, rows, na, nb](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const std::size_t w = na + nb;
    if (t.needs_grad(a_id)) {
      auto ga = t.grad(a_id);
      for (std::size_t r = 0; r < rows; ++r) axpy(1.0, g.subspan(r * w, na), ga.subspan(r * na, na));
    }
    if (t.needs_grad(b_id)) {
      auto gb = t.grad(b_id);
      for (std::size_t r = 0; r < rows; ++r) axpy(1.0, g.subspan(r * w + na, nb), gb.subspan(r * nb, nb));
    }
  });
}

Var concat_rows(Var a, Var b) {
  Tape& tape = *a.tape;
  const Tensor& av = tape.value(a);
  const Tensor& bv = tape.value(b);
  if (av.rank() != 2 || bv.rank() != 2 || av.cols() != bv.cols()) {
    throw std::invalid_argument("concat_rows: column mismatch");
  }
  const std::size_t na = av.size(), nb = bv.size();
  Tensor out({av.rows() + bv.rows(), av.cols()});
  std::copy(av.data().begin(), av.data().end(), out.data().begin());
  std::copy(bv.data().begin(), bv.data().end(), out.data().begin() + static_cast<std::ptrdiff_t>(na));
  return tape.push(std::move(out), {a, b}, [a_id = a.id, b_id = b.id, na, nb](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    if (t.needs_grad(a_id)) axpy(1.0, g.subspan(0, na), t.grad(a_id));
    if (t.needs_grad(b_id)) axpy(1.0, g.subspan(na, nb), t.grad(b_id));
  });
}

Var stack_rows(std::span<const Var> rows) {
  if (rows.empty()) throw std::invalid_argument("stack_rows of nothing");
  Tape& tape = *rows.front().tape;
  const std::size_t n = tape.value(rows.front()).size();
  Tensor out({rows.size(), n});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Tensor& rv = tape.value(rows[r]);
    if (rv.rank() != 1 || rv.size() != n) throw std::invalid_argument("stack_rows: ragged rows");
    std::copy(rv.data().begin(), rv.data().end(), out.row(r).begin());
  }
  return tape.push(std::move(out), rows, [n](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const auto& ins = t.inputs(self);
    for (std::size_t r = 0; r < ins.size(); ++r) {
      if (t.needs_grad(ins[r])) axpy(1.0, g.subspan(r * n, n), t.grad(ins[r]));
    }
  });
}

Var max_rows(Var x) {
  Tape& tape = *x.tape;
  const Tensor& xv = tape.value(x);
  if (xv.rank() != 2 || xv.rows() == 0) throw std::invalid_argument("max_rows: need a non-empty matrix");
  const std::size_t steps = xv.rows(), n = xv.cols();
  Tensor out({n});
  std::vector<std::size_t> winners(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    double best = xv.at(0, j);
    for (std::size_t t = 1; t < steps; ++t) {
      if (xv.at(t, j) > best) {
        best = xv.at(t, j);
        winners[j] = t;
      }
    }
    out[j] = best;
  }
  Var result = tape.push(std::move(out), {x}, [x_id = x.id, n](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    auto gx = t.grad(x_id);
    const auto& win = t.aux(self);
    for (std::size_t j = 0; j < n; ++j) gx[win[j] * n + j] += g[j];
  });
  tape.aux(result.id) = std::move(winners);
  return result;
}

Var gather_rows(Var table, std::span<const std::size_t> ids) {
  Tape& tape = *table.tape;
  const Tensor& tv = tape.value(table);
  if (tv.rank() != 2) throw std::invalid_argument("gather_rows: table must be a matrix");
  const std::size_t p = tv.cols();
  Tensor out({ids.size(), p});
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] >= tv.rows()) throw std::out_of_range("gather_rows: index out of range");
    std::copy(tv.row(ids[k]).begin(), tv.row(ids[k]).end(), out.row(k).begin());
  }
  Var result = tape.push(std::move(out), {table}, [t_id = table.id, p](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    auto gt = t.grad(t_id);
    const auto& idx = t.aux(self);
    for (std::size_t k = 0; k < idx.size(); ++k) axpy(1.0, g.subspan(k * p, p), gt.subspan(idx[k] * p, p));
  });
  tape.aux(result.id).assign(ids.begin(), ids.end());
  return result;
}

Var unfold(Var x, std::size_t width) {
  Tape& tape = *x.tape;
  const Tensor& xv = tape.value(x);
  if (xv.rank() != 2 || width == 0 || xv.rows() < width) {
    throw std::invalid_argument("unfold: sequence shorter than window");
  }
  const std::size_t q = xv.cols();
  const std::size_t windows = xv.rows() - width + 1;
  const std::size_t span_len = width * q;
  Tensor out({windows, span_len});
  for (std::size_t s = 0; s < windows; ++s) {
    auto src = xv.data().subspan(s * q, span_len);
    std::copy(src.begin(), src.end(), out.row(s).begin());
  }
  return tape.push(std::move(out), {x}, [x_id = x.id, windows, q, span_len](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    auto gx = t.grad(x_id);
    for (std::size_t s = 0; s < windows; ++s) axpy(1.0, g.subspan(s * span_len, span_len), gx.subspan(s * q, span_len));
  });
}

// ---------------------------------------------------------------------------
// Reductions and losses

Var softmax(Var v) {
  Tape& tape = *v.tape;
  const Tensor& vv = tape.value(v);
  if (vv.rank() != 1) throw std::invalid_argument("softmax: expects a vector");
  std::vector<double> probs = softmax(vv.data());
  const std::size_t n = probs.size();
  return tape.push(Tensor({n}, std::move(probs)), {v}, [v_id = v.id](Tape& t, std::uint32_t self) {
    auto g = t.grad(self);
    const Tensor& y = t.value(self);
    const double inner = dot(g, y.data());
    auto gv = t.grad(v_id);
    for (std::size_t i = 0; i < g.size(); ++i) gv[i] += y[i] * (g[i] - inner);
  });
}

Var cross_entropy(Var probs, std::size_t label) {
  Tape& tape = *probs.tape;
  const Tensor& p = tape.value(probs);
  const double loss = cross_entropy(p.data(), label);
  return tape.push(Tensor({1}, {loss}), {probs}, [p_id = probs.id, label](Tape& t, std::uint32_t self) {
    const double g = t.grad(self)[0];
    const double pl = t.value(p_id)[label];
    t.grad(p_id)[label] += -g / (pl + kProbabilityFloor);
  });
}

Var sum(Var v) {
  Tape& tape = *v.tape;
  const Tensor& vv = tape.value(v);
  double total = 0.0;
  for (double x : vv.data()) total += x;
  return tape.push(Tensor({1}, {total}), {v}, [v_id = v.id](Tape& t, std::uint32_t self) {
    const double g = t.grad(self)[0];
    for (double& gi : t.grad(v_id)) gi += g;
  });
}

Var sum_squares(Var v) {
  Tape& tape = *v.tape;
  const Tensor& vv = tape.value(v);
  const double total = dot(vv.data(), vv.data());
  return tape.push(Tensor({1}, {total}), {v}, [v_id = v.id](Tape& t, std::uint32_t self) {
    const double g = t.grad(self)[0];
    const Tensor& x = t.value(v_id);
    axpy(2.0 * g, x.data(), t.grad(v_id));
  });
}

}  // namespace textclf::tensor
