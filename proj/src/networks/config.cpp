#include "textclf/networks/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"

namespace textclf::networks {
namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilies{{
    {Family::Svm, "SVM"},
    {Family::Cnn, "CNN"},
    {Family::Gru, "GRU"},
    {Family::Att, "ATT"},
    {Family::Max, "MAX"},
    {Family::MaxI, "MAXi"},
    {Family::MaxH, "MAXh"},
    {Family::AttH, "ATTh"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

Aggregator parse_aggregator(std::string_view name) {
  if (name == "concat") return Aggregator::Concat;
  if (name == "attention") return Aggregator::Attention;
  if (name == "max") return Aggregator::Max;
  throw DataError(fmt::format("unknown aggregator '{}'", name));
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kFamilies) {
    if (f == family) return name;
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [f, label] : kFamilies) {
    if (iequals(label, name)) return f;
  }
  return std::nullopt;
}

std::string_view aggregator_name(Aggregator aggregator) {
  switch (aggregator) {
    case Aggregator::Concat: return "concat";
    case Aggregator::Attention: return "attention";
    case Aggregator::Max: return "max";
  }
  return "?";
}

ModelConfig default_config(Family family, std::size_t num_classes) {
  ModelConfig c;
  c.family = family;
  c.num_classes = num_classes;
  switch (family) {
    case Family::Gru:
      c.aggregator = Aggregator::Concat;
      c.mlp_layers = 0;
      c.rnn_width = 64;
      break;
    case Family::Att:
      c.aggregator = Aggregator::Attention;
      break;
    case Family::Max:
      c.aggregator = Aggregator::Max;
      break;
    case Family::MaxI:
      c.aggregator = Aggregator::Max;
      c.interpretable = true;
      c.mlp_layers = 1;
      break;
    case Family::MaxH:
      c.aggregator = Aggregator::Max;
      c.hierarchical = true;
      break;
    case Family::AttH:
      c.aggregator = Aggregator::Attention;
      c.hierarchical = true;
      break;
    case Family::Cnn:
      c.mlp_layers = 0;
      break;
    case Family::Svm:
      throw std::invalid_argument("SVM has no neural configuration");
  }
  return c;
}

void validate(const ModelConfig& c) {
  auto fail = [](const char* what) { throw std::invalid_argument(fmt::format("invalid model config: {}", what)); };
  if (c.family == Family::Svm) fail("SVM is not a neural family");
  if (c.num_classes < 2) fail("need at least two classes");
  if (c.embedding_dim == 0) fail("embedding dimension must be positive");
  if (c.family == Family::Cnn) {
    if (c.cnn_projection == 0 || c.cnn_filters == 0) fail("CNN widths must be positive");
    return;
  }
  if (c.rnn_layers == 0 || c.rnn_width == 0) fail("recurrent layers and width must be positive");
  if (c.mlp_layers > (c.interpretable ? 1u : 0u) && c.mlp_width == 0) fail("G width must be positive");
  if (c.aggregator == Aggregator::Attention && c.attention_width == 0) fail("attention width must be positive");
  if (c.aggregator == Aggregator::Concat && c.mlp_layers != 0) fail("concat aggregator requires an identity G");
  if (c.aggregator == Aggregator::Concat && c.hierarchical) fail("hierarchical models aggregate with max or attention");
  if (c.interpretable) {
    if (c.aggregator != Aggregator::Max) fail("interpretable model requires the max aggregator");
    if (c.mlp_layers == 0) fail("interpretable model requires G with a class-sized last layer");
    if (c.hierarchical) fail("interpretable model is not hierarchical");
  }
  if (c.hierarchical) {
    if (c.sentence_rnn_layers == 0 || c.sentence_rnn_width == 0) fail("sentence-level widths must be positive");
    if (c.aggregator == Aggregator::Attention && c.sentence_attention_width == 0) fail("attention width must be positive");
  }
}

std::size_t position_width(const ModelConfig& c) {
  if (c.interpretable) return c.num_classes;
  if (c.mlp_layers == 0) return 2 * c.rnn_width;
  return c.mlp_width;
}

nlohmann::json config_to_json(const ModelConfig& c) {
  return {
      {"family", family_name(c.family)},
      {"num_classes", c.num_classes},
      {"embedding_dim", c.embedding_dim},
      {"embedding_trainable", c.embedding_trainable},
      {"rnn_layers", c.rnn_layers},
      {"rnn_width", c.rnn_width},
      {"mlp_layers", c.mlp_layers},
      {"mlp_width", c.mlp_width},
      {"aggregator", aggregator_name(c.aggregator)},
      {"attention_width", c.attention_width},
      {"hierarchical", c.hierarchical},
      {"sentence_rnn_layers", c.sentence_rnn_layers},
      {"sentence_rnn_width", c.sentence_rnn_width},
      {"sentence_attention_width", c.sentence_attention_width},
      {"interpretable", c.interpretable},
      {"cnn_projection", c.cnn_projection},
      {"cnn_filters", c.cnn_filters},
  };
}

ModelConfig config_from_json(const nlohmann::json& doc) {
  try {
    ModelConfig c;
    auto family = parse_family(doc.at("family").get<std::string>());
    if (!family) throw DataError("unknown model family in config");
    c.family = *family;
    c.num_classes = doc.at("num_classes").get<std::size_t>();
    c.embedding_dim = doc.at("embedding_dim").get<std::size_t>();
    c.embedding_trainable = doc.at("embedding_trainable").get<bool>();
    c.rnn_layers = doc.at("rnn_layers").get<std::size_t>();
    c.rnn_width = doc.at("rnn_width").get<std::size_t>();
    c.mlp_layers = doc.at("mlp_layers").get<std::size_t>();
    c.mlp_width = doc.at("mlp_width").get<std::size_t>();
    c.aggregator = parse_aggregator(doc.at("aggregator").get<std::string>());
    c.attention_width = doc.at("attention_width").get<std::size_t>();
    c.hierarchical = doc.at("hierarchical").get<bool>();
    c.sentence_rnn_layers = doc.at("sentence_rnn_layers").get<std::size_t>();
    c.sentence_rnn_width = doc.at("sentence_rnn_width").get<std::size_t>();
    c.sentence_attention_width = doc.at("sentence_attention_width").get<std::size_t>();
    c.interpretable = doc.at("interpretable").get<bool>();
    c.cnn_projection = doc.at("cnn_projection").get<std::size_t>();
    c.cnn_filters = doc.at("cnn_filters").get<std::size_t>();
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("malformed model config: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

}  // namespace textclf::networks
