#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace textclf::networks {

/// Model families selectable from the command line. Svm is not a neural
/// network; it is listed so one enum names every family.
enum class Family { Svm, Cnn, Gru, Att, Max, MaxI, MaxH, AttH };

enum class Aggregator { Concat, Attention, Max };

std::string_view family_name(Family family);
/// Case-insensitive; returns nullopt for unknown names.
std::optional<Family> parse_family(std::string_view name);
std::string_view aggregator_name(Aggregator aggregator);

/// Architecture hyperparameters. Forward and reverse recurrent stacks share
/// layer count and width; sentence-level fields only matter when
/// `hierarchical` is set, CNN fields only for Family::Cnn.
struct ModelConfig {
  Family family = Family::Max;
  std::size_t num_classes = 2;
  std::size_t embedding_dim = 60;
  bool embedding_trainable = true;

  std::size_t rnn_layers = 1;
  std::size_t rnn_width = 32;
  /// Layers of the per-position network G; 0 means identity. For the
  /// interpretable model the last layer has num_classes units and
  /// `mlp_width` applies to the layers before it.
  std::size_t mlp_layers = 1;
  std::size_t mlp_width = 64;
  Aggregator aggregator = Aggregator::Max;
  std::size_t attention_width = 32;

  bool hierarchical = false;
  std::size_t sentence_rnn_layers = 1;
  std::size_t sentence_rnn_width = 32;
  std::size_t sentence_attention_width = 32;

  bool interpretable = false;

  std::size_t cnn_projection = 64;
  std::size_t cnn_filters = 32;
};

/// Desk-scale defaults for a family with the structural flags (aggregator,
/// hierarchy, interpretability) set consistently.
ModelConfig default_config(Family family, std::size_t num_classes);

/// Throws std::invalid_argument when the config breaks an invariant:
/// interpretable needs the max aggregator and at least one G layer, concat
/// needs an identity G, widths must be positive, K >= 2.
void validate(const ModelConfig& config);

/// Width of the per-position vectors u_t fed to the aggregator.
std::size_t position_width(const ModelConfig& config);

nlohmann::json config_to_json(const ModelConfig& config);
/// Throws DataError on missing or invalid fields.
ModelConfig config_from_json(const nlohmann::json& doc);

}  // namespace textclf::networks
