#include "textclf/evaluation/report.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace textclf::evaluation {

MetricsReport make_report(const PredictionSet& preds, std::span<const std::size_t> test_counts) {
  MetricsReport r;
  r.documents = preds.size();
  r.accuracy = accuracy(preds);
  for (std::size_t l : {1u, 3u, 5u}) {
    if (l <= preds.num_classes) r.top_l.emplace_back(l, top_l_accuracy(preds, l));
  }
  r.macro = macro_f1(preds);
  std::vector<std::size_t> counts(test_counts.begin(), test_counts.end());
  if (counts.empty()) {
    for (const auto& c : r.macro.per_class) counts.push_back(c.support);
  }
  r.groups = group_by_difficulty(r.macro, counts);
  return r;
}

nlohmann::json report_to_json(const MetricsReport& r, const std::vector<std::string>& names) {
  nlohmann::json doc;
  doc["documents"] = r.documents;
  doc["accuracy"] = r.accuracy;
  auto& top = doc["top_l_accuracy"] = nlohmann::json::object();
  for (const auto& [l, value] : r.top_l) top[std::to_string(l)] = value;
  doc["macro_f1"] = r.macro.value;
  auto& classes = doc["per_class"] = nlohmann::json::array();
  for (std::size_t k = 0; k < r.macro.per_class.size(); ++k) {
    const auto& c = r.macro.per_class[k];
    classes.push_back({{"class", k < names.size() ? names[k] : std::to_string(k)},
                       {"support", c.support},
                       {"predicted", c.predicted},
                       {"precision", c.precision},
                       {"recall", c.recall},
                       {"f1", c.f1}});
  }
  auto& groups = doc["difficulty_groups"] = nlohmann::json::object();
  for (const auto& g : r.groups) {
    groups[std::string(difficulty_name(g.group))] = {{"classes", g.classes.size()}, {"macro_f1", g.macro_f1}};
  }
  if (r.fidelity) doc["fidelity"] = *r.fidelity;
  return doc;
}

std::string significance_table(const std::vector<NamedPredictions>& models, const std::string& reference) {
  auto ref = std::find_if(models.begin(), models.end(), [&](const auto& m) { return m.name == reference; });
  if (ref == models.end()) throw std::invalid_argument(fmt::format("reference model '{}' not among the inputs", reference));
  const PredictionSet& base = ref->predictions;
  const auto base_pred = base.predicted();
  const auto base_f1 = macro_f1(base);

  auto correctness = [](const PredictionSet& p, const std::vector<std::size_t>& predicted) {
    std::vector<char> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = predicted[i] == p.labels[i];
    return out;
  };
  const auto base_correct = correctness(base, base_pred);

  std::string out = fmt::format("model\taccuracy\tmacro_f1\tmcnemar_p\tt_test_p\n");
  for (const auto& m : models) {
    const PredictionSet& p = m.predictions;
    if (p.size() != base.size() || p.num_classes != base.num_classes || p.labels != base.labels) {
      throw std::invalid_argument(fmt::format("model '{}' was evaluated on different documents", m.name));
    }
    const auto pred = p.predicted();
    const double acc = accuracy(p);
    const auto f1 = macro_f1(p);
    if (m.name == reference) {
      out += fmt::format("{}\t{:.4f}\t{:.4f}\t-\t-\n", m.name, acc, f1.value);
      continue;
    }
    const auto correct = correctness(p, pred);
    std::size_t wins = 0, losses = 0;
    for (std::size_t i = 0; i < correct.size(); ++i) {
      wins += correct[i] && !base_correct[i];
      losses += !correct[i] && base_correct[i];
    }
    const Direction acc_dir = wins >= losses ? Direction::FirstBetter : Direction::SecondBetter;
    const McNemarResult mcn = mcnemar_from_counts(wins, losses, acc_dir);

    std::vector<double> fa, fb;
    for (std::size_t k = 0; k < f1.per_class.size(); ++k) {
      fa.push_back(f1.per_class[k].f1);
      fb.push_back(base_f1.per_class[k].f1);
    }
    const Direction f1_dir = f1.value >= base_f1.value ? Direction::FirstBetter : Direction::SecondBetter;
    const TTestResult tt = macro_t_test(fa, fb, f1_dir);
    out += fmt::format("{}\t{:.4f}{}\t{:.4f}{}\t{:.3g}\t{:.3g}\n", m.name, acc, significance_marks(mcn.p_value),
                       f1.value, significance_marks(tt.p_value), mcn.p_value, tt.p_value);
  }
  return out;
}

}  // namespace textclf::evaluation
