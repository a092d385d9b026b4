#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "textclf/evaluation/metrics.hpp"
#include "textclf/evaluation/significance.hpp"

namespace textclf::evaluation {

struct MetricsReport {
  std::size_t documents = 0;
  double accuracy = 0.0;
  /// (l, A_l) for l in {1, 3, 5} not exceeding K.
  std::vector<std::pair<std::size_t, double>> top_l;
  MacroF1 macro;
  std::vector<GroupScore> groups;
  std::optional<double> fidelity;
};

/// `test_counts` (per class) drives the difficulty groups; when empty the
/// supports of `preds` are used.
MetricsReport make_report(const PredictionSet& preds, std::span<const std::size_t> test_counts = {});

/// Class names label the per-class entries; pass an empty list to use
/// indices.
nlohmann::json report_to_json(const MetricsReport& report, const std::vector<std::string>& class_names);

struct NamedPredictions {
  std::string name;
  PredictionSet predictions;
};

/// One row per model: accuracy and macro F1, each suffixed with the marks of
/// a one-sided test against the reference model (McNemar for accuracy,
/// paired macro t-test over per-class F1). Each test is run in the
/// direction of the observed difference, so marks flag models that are
/// significantly better or worse than the reference. The reference row
/// carries no marks. Tab-separated with a header line.
///
/// Throws std::invalid_argument when `reference` names no model or the sets
/// do not cover the same documents.
std::string significance_table(const std::vector<NamedPredictions>& models, const std::string& reference);

}  // namespace textclf::evaluation
