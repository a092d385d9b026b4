#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textclf/corpus/document.hpp"
#include "textclf/networks/model.hpp"
#include "textclf/tensor/tensor.hpp"

namespace textclf::explain {

enum class Band { High, Medium, Low };

inline constexpr double kHighThreshold = 0.8;
inline constexpr double kMediumThreshold = 0.3;
inline constexpr double kLowThreshold = 0.1;

std::string_view band_name(Band band);

/// High for u >= 0.8, medium for [0.3, 0.8), low for [0.1, 0.3), no band
/// below 0.1.
std::optional<Band> band_of(double u);

struct Mark {
  std::size_t class_index = 0;
  Band band = Band::Low;
  bool operator==(const Mark&) const = default;
};

struct HighlightedDocument {
  std::vector<std::string> tokens;
  /// Per token, the classes it is marked for, by ascending class index.
  std::vector<std::vector<Mark>> marks;
  /// Classes with at least one marked token, ascending.
  std::vector<std::size_t> relevant_classes;
};

/// Bands an importance matrix {K, T} over `tokens` (T of them).
/// Throws std::invalid_argument on a shape mismatch.
HighlightedDocument highlight(const tensor::Tensor& importance, std::vector<std::string> tokens);

/// Runs the interpretable model on `doc` and bands its importance matrix.
HighlightedDocument extract_importance(const networks::Model& model, const corpus::Document& doc);

}  // namespace textclf::explain
