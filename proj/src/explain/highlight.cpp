#include "textclf/explain/highlight.hpp"

#include <stdexcept>

namespace textclf::explain {

std::string_view band_name(Band band) {
  switch (band) {
    case Band::High: return "high";
    case Band::Medium: return "medium";
    case Band::Low: return "low";
  }
  return "low";
}

std::optional<Band> band_of(double u) {
  if (u >= kHighThreshold) return Band::High;
  if (u >= kMediumThreshold) return Band::Medium;
  if (u >= kLowThreshold) return Band::Low;
  return std::nullopt;
}

HighlightedDocument highlight(const tensor::Tensor& importance, std::vector<std::string> tokens) {
  HighlightedDocument out;
  out.marks.resize(tokens.size());
  if (tokens.empty()) {
    out.tokens = std::move(tokens);
    return out;
  }
  if (importance.rank() != 2 || importance.cols() != tokens.size()) {
    throw std::invalid_argument("importance matrix must be {K, T} with one column per token");
  }
  for (std::size_t j = 0; j < importance.rows(); ++j) {
    bool relevant = false;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (auto band = band_of(importance.at(j, t))) {
        out.marks[t].push_back({j, *band});
        relevant = true;
      }
    }
    if (relevant) out.relevant_classes.push_back(j);
  }
  out.tokens = std::move(tokens);
  return out;
}

HighlightedDocument extract_importance(const networks::Model& model, const corpus::Document& doc) {
  if (!model.config.interpretable) throw std::invalid_argument("importance requires the interpretable model");
  if (doc.tokens.empty()) return highlight(tensor::Tensor{}, {});
  return highlight(model.importance(model.encode(doc)), doc.tokens);
}

}  // namespace textclf::explain
