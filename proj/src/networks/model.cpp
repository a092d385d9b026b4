#include "textclf/networks/model.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/tensor/ops.hpp"

namespace textclf::networks {

using namespace tensor;

namespace {

Var embed(const Binder& bind, const ModelParams& params, std::span<const std::size_t> ids) {
  if (ids.empty()) throw std::invalid_argument("cannot classify an empty document");
  return gather_rows(bind(params.embedding), ids);
}

Var classify(const Binder& bind, const ModelParams& params, Var features) {
  DenseVars c = bind(params.classifier);
  return softmax(linear(features, c.weight, c.bias));
}

// Word-level encoder + G + aggregator shared by the flat and hierarchical
// models.
Var encode_and_aggregate(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                         std::span<const std::size_t> ids, const std::vector<GruVars>& fwd,
                         const std::vector<GruVars>& rev, const std::vector<DenseVars>& mlp,
                         const std::optional<AttentionVars>& attention) {
  Encoding enc = encode_bidirectional(embed(bind, params, ids), fwd, rev);
  if (config.aggregator == Aggregator::Concat) {
    const std::size_t last = ids.size() - 1;
    return concat(row(enc.forward_states, last), row(enc.reverse_states, 0));
  }
  Var u = apply_mlp(enc.states, mlp);
  if (config.aggregator == Aggregator::Max) return aggregate_max(u);
  return aggregate_attention(u, *attention).features;
}

std::optional<AttentionVars> bind_attention(const Binder& bind, const ModelConfig& config, const AttentionParams& a) {
  if (config.aggregator != Aggregator::Attention) return std::nullopt;
  return bind(a);
}

Forward dispatch(const ModelConfig& config, const Binder& bind, const ModelParams& params, const EncodedDocument& doc) {
  if (config.family == Family::Cnn) return forward_cnn(config, bind, params, doc);
  if (config.interpretable) return forward_interpretable(config, bind, params, doc);
  if (config.hierarchical) return forward_hierarchical(config, bind, params, doc);
  return forward_flat(config, bind, params, doc);
}

}  // namespace

Forward forward_flat(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                     const EncodedDocument& doc) {
  Var phi = encode_and_aggregate(config, bind, params, doc.ids, bind(params.forward), bind(params.reverse),
                                 bind(params.mlp), bind_attention(bind, config, params.attention));
  return {classify(bind, params, phi), phi, std::nullopt};
}

Forward forward_interpretable(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                              const EncodedDocument& doc) {
  if (!config.interpretable) throw std::invalid_argument("forward_interpretable on a non-interpretable config");
  Encoding enc = encode_bidirectional(embed(bind, params, doc.ids), bind(params.forward), bind(params.reverse));
  Var u = apply_mlp(enc.states, bind(params.mlp));
  Var phi = aggregate_max(u);
  return {softmax(phi), phi, u};
}

Forward forward_hierarchical(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                             const EncodedDocument& doc) {
  if (doc.sentences.empty()) throw std::invalid_argument("hierarchical model needs at least one sentence");
  const auto fwd = bind(params.forward);
  const auto rev = bind(params.reverse);
  const auto mlp = bind(params.mlp);
  const auto attention = bind_attention(bind, config, params.attention);
  std::vector<Var> sentences;
  sentences.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) {
    if (s.begin >= s.end || s.end > doc.ids.size()) throw std::invalid_argument("sentence range out of bounds");
    auto ids = std::span<const std::size_t>(doc.ids).subspan(s.begin, s.size());
    sentences.push_back(encode_and_aggregate(config, bind, params, ids, fwd, rev, mlp, attention));
  }
  Encoding enc = encode_bidirectional(stack_rows(sentences), bind(params.sentence_forward),
                                      bind(params.sentence_reverse));
  Var phi = config.aggregator == Aggregator::Max
                ? aggregate_max(enc.states)
                : aggregate_attention(enc.states, bind(params.sentence_attention)).features;
  return {classify(bind, params, phi), phi, std::nullopt};
}

Forward forward_cnn(const ModelConfig& config, const Binder& bind, const ModelParams& params,
                    const EncodedDocument& doc) {
  Tape& tape = bind.tape();
  Var x = embed(bind, params, doc.ids);
  if (doc.ids.size() < kCnnMinLength) {
    x = concat_rows(x, tape.constant(Tensor({kCnnMinLength - doc.ids.size(), config.embedding_dim})));
  }
  DenseVars proj = bind(params.cnn_projection);
  Var projected = linear(x, proj.weight, proj.bias);
  std::vector<Var> pooled;
  for (std::size_t k = 0; k < kCnnWidths.size(); ++k) {
    DenseVars conv = bind(params.convolutions[k]);
    pooled.push_back(max_rows(relu(linear(unfold(projected, kCnnWidths[k]), conv.weight, conv.bias))));
  }
  Var phi = concat(pooled);
  return {classify(bind, params, phi), phi, std::nullopt};
}

Forward forward(Tape& tape, const ModelConfig& config, ModelParams& params, const EncodedDocument& doc) {
  return dispatch(config, Binder(tape, params), params, doc);
}

Forward forward(Tape& tape, const ModelConfig& config, const ModelParams& params, const EncodedDocument& doc) {
  return dispatch(config, Binder(tape, params), params, doc);
}

EncodedDocument Model::encode(const corpus::Document& doc) const {
  EncodedDocument out{vocabulary.encode(doc.tokens), doc.sentences};
  if (out.sentences.empty() && !out.ids.empty()) out.sentences.push_back({0, out.ids.size()});
  return out;
}

std::vector<double> Model::predict(const EncodedDocument& doc) const {
  Tape tape(false);
  Forward f = forward(tape, config, params, doc);
  return tape.value(f.probabilities).values();
}

Tensor Model::importance(const EncodedDocument& doc) const {
  if (!config.interpretable) throw std::invalid_argument("importance requires the interpretable model");
  Tape tape(false);
  Forward f = forward(tape, config, params, doc);
  const Tensor& u = tape.value(*f.importance);
  Tensor out({u.cols(), u.rows()});
  for (std::size_t t = 0; t < u.rows(); ++t) {
    for (std::size_t j = 0; j < u.cols(); ++j) out.at(j, t) = u.at(t, j);
  }
  return out;
}

Model make_model(const ModelConfig& config, embeddings::Vocabulary vocabulary, std::uint64_t seed) {
  Model model{config, std::move(vocabulary), {}};
  model.params = init_params(config, model.vocabulary.size(), seed);
  return model;
}

std::size_t load_pretrained(Model& model, const embeddings::WordVectors& vectors) {
  if (vectors.dim() != model.config.embedding_dim) {
    throw std::invalid_argument(fmt::format("word vectors have dimension {}, model expects {}", vectors.dim(),
                                            model.config.embedding_dim));
  }
  std::size_t copied = 0;
  Tensor& table = model.params.embedding;
  for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
    if (i == embeddings::Vocabulary::kUnknown) continue;
    const std::string& token = model.vocabulary.token(i);
    if (!vectors.vocabulary.contains(token)) continue;
    auto src = vectors.table.row(vectors.vocabulary.index(token));
    std::copy(src.begin(), src.end(), table.row(i).begin());
    ++copied;
  }
  return copied;
}

Archive model_to_archive(const Model& model) {
  Archive archive;
  archive.kind = "neural";
  archive.config = config_to_json(model.config);
  archive.vocabulary = model.vocabulary.tokens();
  for (const auto& [name, t] : model.params.named()) archive.tensors.emplace_back(name, *t);
  return archive;
}

Model model_from_archive(const Archive& archive) {
  if (archive.kind != "neural") throw DataError(fmt::format("expected a neural model, found kind '{}'", archive.kind));
  if (archive.vocabulary.empty() || archive.vocabulary.front() != embeddings::Vocabulary::kUnknownToken) {
    throw DataError("model vocabulary must start with the unknown-word entry");
  }
  ModelConfig config = config_from_json(archive.config);
  std::vector<std::string> tokens(archive.vocabulary.begin() + 1, archive.vocabulary.end());
  Model model = make_model(config, embeddings::Vocabulary::from_tokens(tokens), 0);
  auto named = model.params.named();
  if (named.size() != archive.tensors.size()) throw DataError("model file tensor list does not match its config");
  for (auto& [name, t] : named) {
    const Tensor& stored = archive.tensor(name, t->shape());
    std::copy(stored.data().begin(), stored.data().end(), t->data().begin());
  }
  if (!all_finite(model.params)) throw DataError("model file holds non-finite parameters");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) { write_archive(path, model_to_archive(model)); }

Model load_model(const std::filesystem::path& path) { return model_from_archive(read_archive(path)); }

}  // namespace textclf::networks
