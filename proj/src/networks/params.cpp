#include "textclf/networks/params.hpp"

#include <cmath>

#include <fmt/format.h>

#include "textclf/common/rng.hpp"

namespace textclf::networks {
namespace {

template <typename Self, typename Out>
void collect(Self& p, Out& out) {
  auto add = [&](std::string name, auto& t) {
    if (!t.empty()) out.emplace_back(std::move(name), &t);
  };
  auto add_gru = [&](const char* prefix, auto& stack) {
    for (std::size_t l = 0; l < stack.size(); ++l) {
      add(fmt::format("{}.{}.input_weights", prefix, l), stack[l].input_weights);
      add(fmt::format("{}.{}.gate_weights", prefix, l), stack[l].gate_weights);
      add(fmt::format("{}.{}.candidate_weights", prefix, l), stack[l].candidate_weights);
      add(fmt::format("{}.{}.bias", prefix, l), stack[l].bias);
    }
  };
  auto add_dense = [&](const std::string& prefix, auto& d) {
    add(prefix + ".weight", d.weight);
    add(prefix + ".bias", d.bias);
  };
  add("embedding", p.embedding);
  add_gru("forward", p.forward);
  add_gru("reverse", p.reverse);
  for (std::size_t l = 0; l < p.mlp.size(); ++l) add_dense(fmt::format("mlp.{}", l), p.mlp[l]);
  add_dense("attention.projection", p.attention.projection);
  add("attention.context", p.attention.context);
  add_gru("sentence_forward", p.sentence_forward);
  add_gru("sentence_reverse", p.sentence_reverse);
  add_dense("sentence_attention.projection", p.sentence_attention.projection);
  add("sentence_attention.context", p.sentence_attention.context);
  add_dense("cnn.projection", p.cnn_projection);
  for (std::size_t k = 0; k < p.convolutions.size(); ++k) add_dense(fmt::format("cnn.conv{}", kCnnWidths[k]), p.convolutions[k]);
  add_dense("classifier", p.classifier);
}

class Initializer {
 public:
  explicit Initializer(std::uint64_t seed) : rng_(derive_seed(seed, "init")) {}

  Tensor xavier(std::size_t out, std::size_t in) {
    Tensor t({out, in});
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (double& v : t.data()) v = rng_.uniform(-limit, limit);
    return t;
  }

  Tensor normal(tensor::Shape shape, double sd) {
    Tensor t(std::move(shape));
    for (double& v : t.data()) v = sd * rng_.normal();
    return t;
  }

  Dense dense(std::size_t out, std::size_t in) { return {xavier(out, in), Tensor({out})}; }

  std::vector<GruLayer> gru_stack(std::size_t layers, std::size_t in, std::size_t d) {
    std::vector<GruLayer> stack;
    for (std::size_t l = 0; l < layers; ++l) {
      GruLayer layer;
      // Each gate block is initialized with its own fan.
      layer.input_weights = Tensor({3 * d, in});
      for (std::size_t g = 0; g < 3; ++g) copy_block(xavier(d, in), layer.input_weights, g * d);
      layer.gate_weights = Tensor({2 * d, d});
      for (std::size_t g = 0; g < 2; ++g) copy_block(xavier(d, d), layer.gate_weights, g * d);
      layer.candidate_weights = xavier(d, d);
      layer.bias = Tensor({3 * d});
      stack.push_back(std::move(layer));
      in = d;
    }
    return stack;
  }

  AttentionParams attention(std::size_t width, std::size_t in) {
    return {dense(width, in), normal({width}, 0.1)};
  }

 private:
  static void copy_block(const Tensor& block, Tensor& into, std::size_t first_row) {
    std::copy(block.data().begin(), block.data().end(), into.row(first_row).begin());
  }

  Rng rng_;
};

}  // namespace

std::vector<std::pair<std::string, Tensor*>> ModelParams::named() {
  std::vector<std::pair<std::string, Tensor*>> out;
  collect(*this, out);
  return out;
}

std::vector<std::pair<std::string, const Tensor*>> ModelParams::named() const {
  std::vector<std::pair<std::string, const Tensor*>> out;
  collect(*this, out);
  return out;
}

ModelParams init_params(const ModelConfig& c, std::size_t vocab_size, std::uint64_t seed) {
  validate(c);
  Initializer init(seed);
  ModelParams p;
  const std::size_t emb = c.embedding_dim;
  p.embedding = init.normal({vocab_size, emb}, 1.0 / std::sqrt(static_cast<double>(emb)));

  if (c.family == Family::Cnn) {
    p.cnn_projection = init.dense(c.cnn_projection, emb);
    for (std::size_t k = 0; k < kCnnWidths.size(); ++k) {
      p.convolutions[k] = init.dense(c.cnn_filters, kCnnWidths[k] * c.cnn_projection);
    }
    p.classifier = init.dense(c.num_classes, kCnnWidths.size() * c.cnn_filters);
  } else {
    p.forward = init.gru_stack(c.rnn_layers, emb, c.rnn_width);
    p.reverse = init.gru_stack(c.rnn_layers, emb, c.rnn_width);
    std::size_t in = 2 * c.rnn_width;
    for (std::size_t l = 0; l < c.mlp_layers; ++l) {
      const bool last = l + 1 == c.mlp_layers;
      const std::size_t out = c.interpretable && last ? c.num_classes : c.mlp_width;
      p.mlp.push_back(init.dense(out, in));
      in = out;
    }
    if (c.aggregator == Aggregator::Attention) p.attention = init.attention(c.attention_width, in);
    if (c.hierarchical) {
      p.sentence_forward = init.gru_stack(c.sentence_rnn_layers, in, c.sentence_rnn_width);
      p.sentence_reverse = init.gru_stack(c.sentence_rnn_layers, in, c.sentence_rnn_width);
      in = 2 * c.sentence_rnn_width;
      if (c.aggregator == Aggregator::Attention) {
        p.sentence_attention = init.attention(c.sentence_attention_width, in);
      }
    }
    if (!c.interpretable) p.classifier = init.dense(c.num_classes, in);
  }

  for (auto& [name, t] : p.named()) t->set_requires_grad(true);
  p.embedding.set_requires_grad(c.embedding_trainable);
  return p;
}

std::size_t parameter_count(const ModelParams& params) {
  std::size_t n = 0;
  for (const auto& [name, t] : params.named()) n += t->size();
  return n;
}

bool all_finite(const ModelParams& params) {
  for (const auto& [name, t] : params.named()) {
    if (!t->all_finite()) return false;
  }
  return true;
}

}  // namespace textclf::networks
