// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   acceptance --cli <path to textclf> [--only 1,2,...] [--workdir DIR]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "support/analogy_corpus.hpp"
#include "support/architectures.hpp"
#include "support/metric_oracles.hpp"
#include "support/stat_oracles.hpp"
#include "textclf/baseline/svm.hpp"
#include "textclf/corpus/split.hpp"
#include "textclf/corpus/synthetic.hpp"
#include "textclf/embeddings/analogy.hpp"
#include "textclf/embeddings/cooccurrence.hpp"
#include "textclf/embeddings/glove.hpp"
#include "textclf/evaluation/significance.hpp"
#include "textclf/explain/distill.hpp"
#include "textclf/common/rng.hpp"
#include "textclf/evaluation/metrics.hpp"
#include "textclf/networks/layers.hpp"
#include "textclf/networks/model.hpp"
#include "textclf/tensor/gradcheck.hpp"
#include "textclf/tensor/ops.hpp"
#include "textclf/training/trainer.hpp"

using namespace textclf;
using networks::Family;
using tensor::Tensor;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------- criterion 1

Outcome gradient_correctness() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::string lines;
  Rng rng(101);
  for (Family family : testing::kNeuralFamilies) {
    auto model = networks::make_model(testing::tiny_config(family, 3),
                                      embeddings::Vocabulary::from_tokens(std::vector<std::string>{"A", "B", "C", "D", "E", "F"}),
                                      derive_seed(7, static_cast<std::uint64_t>(family)));
    std::vector<Tensor*> params;
    for (auto& [name, t] : model.params.named()) {
      for (double& v : t->data()) v = 0.5 * rng.normal();
      params.push_back(t);
    }
    const auto doc = testing::five_token_document();
    tensor::LossBuilder build = [&](tensor::Tape& t) {
      return tensor::cross_entropy(networks::forward(t, model.config, model.params, doc).probabilities, 2);
    };
    auto result = tensor::gradient_check(build, params, 1e-6, 3, 100000);
    worst = std::max(worst, result.max_relative_error);
    lines += fmt::format(" {}={:.1e}/{}", networks::family_name(family), result.max_relative_error,
                         result.coordinates_checked);
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-4 && elapsed < 60.0,
          fmt::format("max relative error {:.2e} (<1e-4), {:.1f} s (<60 s);{}", worst, elapsed, lines)};
}

// ---------------------------------------------------------------- criterion 2

Outcome metric_oracles() {
  Rng rng(202);
  std::size_t count_mismatches = 0;
  double worst_ratio = 0.0;
  auto ratio = [&](double got, double want) { worst_ratio = std::max(worst_ratio, std::abs(got - want)); };
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 2 + rng.below(12), m = 1 + rng.below(80);
    auto p = testing::random_predictions(rng, m, k);
    auto q = testing::random_predictions(rng, m, k);
    q.labels = p.labels;
    const double md = static_cast<double>(m);

    const auto c1 = testing::brute_counts(p, 1);
    ratio(evaluation::accuracy(p), static_cast<double>(c1.hits_at_l) / md);
    for (std::size_t l = 1; l <= k; ++l) {
      const auto hits = testing::brute_counts(p, l).hits_at_l;
      count_mismatches += std::llround(evaluation::top_l_accuracy(p, l) * md) != static_cast<long long>(hits);
      ratio(evaluation::top_l_accuracy(p, l), static_cast<double>(hits) / md);
    }
    const auto f1 = evaluation::macro_f1(p);
    ratio(f1.value, testing::brute_macro_f1(c1));
    for (std::size_t c = 0; c < k; ++c) {
      count_mismatches += f1.per_class[c].true_positives != c1.tp[c];
      count_mismatches += f1.per_class[c].predicted != c1.tp[c] + c1.fp[c];
      count_mismatches += f1.per_class[c].support != c1.tp[c] + c1.fn[c];
    }

    std::size_t agree = 0;
    for (std::size_t i = 0; i < m; ++i) {
      agree += testing::sorted_classes(p.scores[i])[0] == testing::sorted_classes(q.scores[i])[0];
    }
    ratio(evaluation::fidelity(p, q), static_cast<double>(agree) / md);

    std::vector<std::size_t> counts(k);
    for (auto& n : counts) n = rng.below(3) == 0 ? 90 + rng.below(20) : (rng.below(2) == 0 ? 995 + rng.below(10) : rng.below(3000));
    std::map<evaluation::Difficulty, std::vector<std::size_t>> expected;
    for (std::size_t c = 0; c < k; ++c) {
      const auto n = counts[c];
      expected[n > 1000 ? evaluation::Difficulty::Easy : n >= 100 ? evaluation::Difficulty::Average : evaluation::Difficulty::Hard]
          .push_back(c);
    }
    const auto groups = evaluation::group_by_difficulty(f1, counts);
    count_mismatches += groups.size() != expected.size();
    for (const auto& g : groups) {
      const auto& want = expected[g.group];
      count_mismatches += g.classes != want;
      double sum = 0;
      for (std::size_t c : want) sum += f1.per_class[c].f1;
      ratio(g.macro_f1, sum / static_cast<double>(want.size()));
    }
  }
  return {count_mismatches == 0 && worst_ratio <= 1e-12,
          fmt::format("500 random sets: {} count mismatches, worst ratio deviation {:.1e} (<=1e-12)", count_mismatches,
                      worst_ratio)};
}

// ---------------------------------------------------------------- criterion 3

Outcome hand_checked_f1() {
  const std::vector<std::size_t> y = {0, 0, 1, 1}, yhat = {0, 1, 1, 1};
  const auto f1 = evaluation::macro_f1(y, yhat, 2);
  // Per-class counting oracle: F1 = 2TP / (2TP + FP + FN).
  std::size_t tp[2] = {}, fp[2] = {}, fn[2] = {};
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == yhat[i]) {
      ++tp[y[i]];
    } else {
      ++fp[yhat[i]];
      ++fn[y[i]];
    }
  }
  const double oracle = (2.0 * static_cast<double>(tp[0]) / static_cast<double>(2 * tp[0] + fp[0] + fn[0]) +
                         2.0 * static_cast<double>(tp[1]) / static_cast<double>(2 * tp[1] + fp[1] + fn[1])) /
                        2.0;
  const bool counts_ok = f1.per_class[0].true_positives == tp[0] && f1.per_class[1].true_positives == tp[1] &&
                         f1.per_class[0].predicted == tp[0] + fp[0] && f1.per_class[1].predicted == tp[1] + fp[1];
  return {counts_ok && std::abs(f1.value - 11.0 / 15.0) <= 1e-15 && oracle == f1.value,
          fmt::format("macro-F1 {:.17g}, 11/15 = {:.17g} (within 1e-15), counting oracle {:.17g}", f1.value, 11.0 / 15.0,
                      oracle)};
}

// ---------------------------------------------------------------- criterion 4

Outcome significance() {
  const auto r = evaluation::mcnemar_from_counts(10, 2);
  const double tail_oracle = 0.5 * testing::chi_square_1_tail_by_quadrature(49.0 / 12.0);
  const double p_error = std::abs(r.p_value - tail_oracle);

  Rng rng(404);
  double worst_t = 0.0, worst_p = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(10), b(10);
    for (std::size_t k = 0; k < 10; ++k) {
      a[k] = rng.uniform();
      b[k] = rng.uniform();
    }
    const auto t = evaluation::macro_t_test(a, b);
    const double t_ref = testing::paired_t(a, b);
    worst_t = std::max(worst_t, std::abs(t.t - t_ref));
    worst_p = std::max(worst_p, std::abs(t.p_value - testing::student_upper_tail_by_quadrature(t_ref, 9)));
  }
  return {r.statistic == 49.0 / 12.0 && p_error < 1e-3 && worst_t < 1e-9 && worst_p < 1e-9,
          fmt::format("McNemar statistic {:.17g} (49/12 = {:.17g}), p {:.6f} vs oracle {:.6f}; t-test worst |dt| {:.1e}, "
                      "|dp| {:.1e}",
                      r.statistic, 49.0 / 12.0, r.p_value, tail_oracle, worst_t, worst_p)};
}

// ------------------------------------------------------------ criteria 5 to 7

struct Replication {
  corpus::SyntheticCorpus synthetic;
  corpus::CorpusSplit split;
  embeddings::Vocabulary vocabulary;
  std::map<std::string, double> accuracy;
  std::map<std::string, evaluation::PredictionSet> predictions;
  std::optional<networks::Model> maxi;
  double seconds = 0.0;
  std::string log;
};

constexpr std::uint64_t kSeed = 1;

embeddings::Vocabulary vocabulary_of(const std::vector<corpus::Document>& docs) {
  std::vector<std::vector<std::string>> tokens;
  for (const auto& d : docs) tokens.push_back(d.tokens);
  return embeddings::Vocabulary::build(tokens, 1);
}

networks::ModelConfig replication_config(Family family, std::size_t k) {
  auto c = networks::default_config(family, k);
  c.embedding_dim = 32;
  return c;
}

training::TrainConfig replication_training() {
  training::TrainConfig t;
  t.learning_rate = 0.005;
  t.max_epochs = 15;
  t.patience = 3;
  t.seed = derive_seed(kSeed, "train");
  return t;
}

evaluation::PredictionSet neural_predictions(const networks::Model& model, const std::vector<training::LabeledDocument>& docs) {
  evaluation::PredictionSet p;
  p.num_classes = model.config.num_classes;
  p.scores = training::predict_all(model, docs);
  for (const auto& d : docs) p.labels.push_back(d.label);
  return p;
}

/// Trains a neural family on `split` and returns (model, test predictions).
std::pair<networks::Model, evaluation::PredictionSet> train_neural(Family family, const corpus::CorpusSplit& split,
                                                                   std::string& log) {
  const auto start = Clock::now();
  auto model = networks::make_model(replication_config(family, split.num_classes()), vocabulary_of(split.train),
                                    derive_seed(kSeed, "init"));
  const auto train = training::encode_all(model, split.train);
  const auto valid = training::encode_all(model, split.valid);
  const auto test = training::encode_all(model, split.test);
  auto result = training::train(std::move(model), train, valid, replication_training());
  auto preds = neural_predictions(result.model, test);
  log += fmt::format("    {:<5} test {:.4f}  epochs {:>2}  {:5.1f} s\n", networks::family_name(family),
                     evaluation::accuracy(preds), result.history.epochs.size(), seconds_since(start));
  return {std::move(result.model), std::move(preds)};
}

Replication& replication() {
  static Replication r = [] {
    Replication rep;
    const auto start = Clock::now();
    corpus::SyntheticSpec spec;
    spec.num_classes = 61;
    spec.docs_per_class = 100;
    spec.seed = kSeed;
    rep.synthetic = corpus::generate_synthetic(spec);
    rep.split = corpus::prepare_split(rep.synthetic.records, {0.2, 0.2}, 1);
    rep.log += fmt::format("    corpus: {} classes, {} train / {} valid / {} test documents\n", rep.split.num_classes(),
                           rep.split.train.size(), rep.split.valid.size(), rep.split.test.size());

    for (Family family : {Family::Max, Family::Att, Family::MaxH, Family::AttH, Family::Cnn, Family::MaxI}) {
      auto [model, preds] = train_neural(family, rep.split, rep.log);
      const std::string name(networks::family_name(family));
      rep.accuracy[name] = evaluation::accuracy(preds);
      rep.predictions[name] = std::move(preds);
      if (family == Family::MaxI) rep.maxi = std::move(model);
    }

    const auto svm_start = Clock::now();
    std::vector<std::vector<std::string>> train_tokens;
    std::vector<std::size_t> labels;
    for (const auto& d : rep.split.train) {
      train_tokens.push_back(d.tokens);
      labels.push_back(d.class_index);
    }
    auto [tfidf, features] = baseline::tfidf_fit_transform(train_tokens, 1);
    baseline::SvmClassifier svm{std::move(tfidf), {}};
    svm.linear = baseline::svm_train(features, labels, svm.tfidf.num_features(), rep.split.num_classes(),
                                     {1.0, 20, derive_seed(kSeed, "svm")});
    evaluation::PredictionSet svm_preds;
    svm_preds.num_classes = rep.split.num_classes();
    for (const auto& d : rep.split.test) {
      svm_preds.scores.push_back(svm.predict(d.tokens).scores);
      svm_preds.labels.push_back(d.class_index);
    }
    rep.accuracy["SVM"] = evaluation::accuracy(svm_preds);
    rep.log += fmt::format("    SVM   test {:.4f}  {:5.1f} s\n", rep.accuracy["SVM"], seconds_since(svm_start));
    rep.predictions["SVM"] = std::move(svm_preds);
    rep.seconds = seconds_since(start);
    return rep;
  }();
  return r;
}

Outcome synthetic_replication() {
  auto& rep = replication();
  bool pass = true;
  std::string detail;
  for (const char* name : {"MAX", "ATT", "MAXh", "ATTh", "CNN", "SVM"}) {
    pass = pass && rep.accuracy.at(name) > 0.95;
    detail += fmt::format("{} {:.4f}, ", name, rep.accuracy.at(name));
  }
  const double maxi = rep.accuracy.at("MAXi");
  const double fid = evaluation::fidelity(rep.predictions.at("MAXi"), rep.predictions.at("MAX"));
  pass = pass && maxi > 0.90 && fid > 0.90 && rep.seconds < 1800.0;
  detail += fmt::format("MAXi {:.4f} (>0.90), fidelity(MAXi, MAX) {:.4f} (>0.90), {:.0f} s (<1800 s)\n{}", maxi, fid,
                        rep.seconds, rep.log);
  while (!detail.empty() && detail.back() == '\n') detail.pop_back();
  return {pass, detail};
}

Outcome keyword_fidelity() {
  auto& rep = replication();
  const auto& model = *rep.maxi;
  std::map<std::string, const std::vector<std::string>*> keywords;
  for (std::size_t i = 0; i < rep.synthetic.labels.size(); ++i) keywords[rep.synthetic.labels[i]] = &rep.synthetic.keywords[i];
  std::size_t correct = 0, on_keyword = 0;
  for (const auto& doc : rep.split.test) {
    const auto encoded = model.encode(doc);
    const auto p = model.predict(encoded);
    const auto predicted = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    if (predicted != doc.class_index) continue;
    ++correct;
    const auto u = model.importance(encoded);
    std::size_t best = 0;
    for (std::size_t t = 1; t < u.cols(); ++t) {
      if (u.at(predicted, t) > u.at(predicted, best)) best = t;
    }
    const auto& kw = *keywords.at(doc.label);
    on_keyword += std::find(kw.begin(), kw.end(), doc.tokens[best]) != kw.end();
  }
  const double rate = correct == 0 ? 0.0 : static_cast<double>(on_keyword) / static_cast<double>(correct);
  return {rate > 0.90, fmt::format("argmax token is a planted keyword in {}/{} correct test documents ({:.4f}, >0.90)",
                                   on_keyword, correct, rate)};
}

Outcome distillation_curve() {
  auto& rep = replication();
  std::string log;
  const auto full = evaluation::accuracy(train_neural(Family::Gru, rep.split, log).second);
  const std::vector<std::size_t> ks = {1, 2, 3, 5, 10, 20};
  std::vector<double> curve;
  for (std::size_t k : ks) {
    auto distilled = explain::distill_top_k(*rep.maxi, rep.split, k);
    log += fmt::format("    k={:<2}", k);
    curve.push_back(evaluation::accuracy(train_neural(Family::Gru, distilled.split, log).second));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < curve.size(); ++i) monotone = monotone && curve[i] >= curve[i - 1] - 0.02;
  const double at5 = curve[3];
  std::string points;
  for (std::size_t i = 0; i < ks.size(); ++i) points += fmt::format("{}{}:{:.4f}", i ? " " : "", ks[i], curve[i]);
  std::string detail = fmt::format("GRU full text {:.4f}; k=5 {:.4f} (|diff| {:.4f} <= 0.02); curve {} (non-decreasing within 0.02: {})\n{}",
                                   full, at5, std::abs(at5 - full), points, monotone ? "yes" : "no", log);
  while (!detail.empty() && detail.back() == '\n') detail.pop_back();
  return {std::abs(at5 - full) <= 0.02 && monotone, detail};
}

// ---------------------------------------------------------------- criterion 8

Outcome embedding_analogies() {
  auto corpus = testing::make_analogy_corpus(10, 30, 8);
  auto vocab = embeddings::Vocabulary::build(corpus.docs, 1);
  std::vector<std::vector<std::size_t>> ids;
  for (const auto& d : corpus.docs) ids.push_back(vocab.encode(d));
  const std::size_t window = 15;
  auto table = embeddings::count_cooccurrences(ids, window);

  // Quadratic brute force over every position pair of every document.
  std::map<std::pair<std::size_t, std::size_t>, double> oracle;
  for (const auto& doc : ids) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      for (std::size_t j = 0; j < doc.size(); ++j) {
        const std::size_t d = i > j ? i - j : j - i;
        if (d == 0 || d > window || doc[i] == 0 || doc[j] == 0) continue;
        oracle[{doc[i], doc[j]}] += 1.0 / static_cast<double>(d);
      }
    }
  }
  double worst = 0.0;
  for (const auto& [key, w] : oracle) {
    const double got = table.get(static_cast<std::uint32_t>(key.first), static_cast<std::uint32_t>(key.second));
    worst = std::max(worst, std::abs(got - w) / w);
  }
  const bool same_cells = table.nonzeros() == oracle.size();

  embeddings::GloveConfig cfg;
  cfg.dim = 30;
  cfg.seed = 3;
  auto vectors = embeddings::train_embeddings(table, vocab, cfg).vectors;
  const double trained =
      *embeddings::analogy_eval(vectors, std::span<const embeddings::RelationSet>(&corpus.relation, 1))[0].accuracy;

  Rng rng(808);
  auto random = vectors;
  for (double& v : random.table.data()) v = rng.normal();
  const double baseline =
      *embeddings::analogy_eval(random, std::span<const embeddings::RelationSet>(&corpus.relation, 1))[0].accuracy;
  const double chance = 1.0 / static_cast<double>(vocab.size() - 1);
  return {same_cells && worst < 1e-12 && trained > 0.5 && baseline < 0.1,
          fmt::format("top-1 {:.3f} (>0.5) vs random vectors {:.3f} (1/V = {:.3f}); co-occurrence cells {} vs brute force {}, "
                      "worst relative deviation {:.1e}",
                      trained, baseline, chance, table.nonzeros(), oracle.size(), worst)};
}

// ---------------------------------------------------------------- criterion 9

Outcome aggregator_invariants() {
  Rng rng(909);
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    Tensor t({r, c});
    for (double& v : t.data()) v = rng.normal();
    return t;
  };
  std::size_t max_failures = 0;
  double worst_norm = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t steps = 1 + rng.below(12), n = 1 + rng.below(8);
    Tensor x = random_matrix(steps, n);
    std::vector<std::size_t> order(steps);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    Tensor permuted({steps, n});
    for (std::size_t t = 0; t < steps; ++t) std::copy(x.row(order[t]).begin(), x.row(order[t]).end(), permuted.row(t).begin());
    tensor::Tape tape(false);
    max_failures += tape.value(networks::aggregate_max(tape.constant(x))).values() !=
                    tape.value(networks::aggregate_max(tape.constant(permuted))).values();

    const std::size_t a = 1 + rng.below(6);
    networks::AttentionParams params{{random_matrix(a, n), Tensor::vector(random_matrix(1, a).values())},
                                     Tensor::vector(random_matrix(1, a).values())};
    networks::ModelParams unused;
    networks::Binder bind(tape, static_cast<const networks::ModelParams&>(unused));
    auto attended = networks::aggregate_attention(tape.constant(x), bind(params));
    const auto& w = tape.value(attended.weights).values();
    worst_norm = std::max(worst_norm, std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0));
  }
  return {max_failures == 0 && worst_norm <= 1e-9,
          fmt::format("10000 trials: {} max-permutation mismatches, worst |sum(a) - 1| {:.1e} (<=1e-9)", max_failures,
                      worst_norm)};
}

// --------------------------------------------------------------- criterion 10

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome determinism(const fs::path& cli, const fs::path& workdir) {
  const std::vector<std::string> commands = {
      "synth --output records.jsonl --keywords keywords.tsv --classes 6 --docs-per-class 40 --seed 7",
      "prepare --input records.jsonl --output split --min-test 1",
      "embed --corpus split --output vectors.txt --dim 8 --iterations 5 --seed 7",
      "train --corpus split --family MAX --vectors vectors.txt --rnn-width 8 --mlp-width 16 --lr 0.01 --epochs 6 "
      "--output max.json --history max_history.json --seed 7",
      "train --corpus split --family MAXi --embedding-dim 8 --rnn-width 8 --lr 0.01 --epochs 6 --output maxi.json --seed 7",
      "train --corpus split --family SVM --bigrams --output svm.json --history svm_history.json --seed 7",
      "gridsearch --corpus split --family MAX --grid grid.txt --jobs 2 --embedding-dim 8 --epochs 2 --output grid.tsv "
      "--seed 7",
      "eval --model max.json --corpus split --predictions-out max.tsv --output max_report.json",
      "eval --model maxi.json --corpus split --predictions-out maxi.tsv --fidelity-against max.tsv --output maxi_report.json",
      "eval --model svm.json --corpus split --predictions-out svm.tsv --output svm_report.json",
      "compare --run MAX=max.tsv --run MAXi=maxi.tsv --run SVM=svm.tsv --output compare.tsv",
      "explain --model maxi.json --corpus split --documents 0,1,2 --html-dir html",
      "distill --model maxi.json --corpus split --k 3 --output distilled",
  };
  std::vector<fs::path> runs = {workdir / "run1", workdir / "run2"};
  std::string failure;
  for (const auto& dir : runs) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "grid.txt") << "rnn_width = 4, 8\nmlp_width = 8, 16\n";
    for (std::size_t i = 0; i < commands.size(); ++i) {
      const auto cmd = fmt::format("cd {} && {} {} > stdout_{:02}.txt 2> stderr_{:02}.txt", quote(dir.string()),
                                   quote(cli.string()), commands[i], i, i);
      if (std::system(cmd.c_str()) != 0 && failure.empty()) {
        failure = fmt::format("command failed: {}", commands[i]);
      }
    }
  }
  std::set<fs::path> files[2];
  for (int r = 0; r < 2; ++r) {
    for (const auto& entry : fs::recursive_directory_iterator(runs[static_cast<std::size_t>(r)])) {
      if (entry.is_regular_file()) files[r].insert(fs::relative(entry.path(), runs[static_cast<std::size_t>(r)]));
    }
  }
  std::size_t differing = 0;
  std::string first_diff;
  for (const auto& f : files[0]) {
    if (!files[1].contains(f) || slurp(runs[0] / f) != slurp(runs[1] / f)) {
      ++differing;
      if (first_diff.empty()) first_diff = f.string();
    }
  }
  const bool same_sets = files[0] == files[1];
  return {failure.empty() && same_sets && differing == 0 && files[0].size() > commands.size(),
          fmt::format("{} commands run twice, {} artifacts compared, {} differ{}{}", commands.size(), files[0].size(),
                      differing, first_diff.empty() ? "" : " (first: " + first_diff + ")",
                      failure.empty() ? "" : "; " + failure)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string cli_path;
  std::string workdir = (fs::temp_directory_path() / "textclf_acceptance").string();
  std::vector<int> only;
  app.add_option("--cli", cli_path, "Path to the textclf executable")->required()->check(CLI::ExistingFile);
  app.add_option("--workdir", workdir, "Scratch directory for CLI runs");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gradient correctness", gradient_correctness},
      {"metric oracle equivalence", metric_oracles},
      {"hand-checked macro-F1", hand_checked_f1},
      {"significance machinery", significance},
      {"end-to-end synthetic replication", synthetic_replication},
      {"interpretability fidelity to ground truth", keyword_fidelity},
      {"distillation curve", distillation_curve},
      {"embedding analogy check", embedding_analogies},
      {"aggregator invariants", aggregator_invariants},
      {"determinism", [&] { return determinism(fs::absolute(cli_path), workdir); }},
  };

  const auto start = Clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::cout << fmt::format("{} criterion {:>2}: {} [{:.1f} s] {}\n", outcome.pass ? "PASS" : "FAIL", number,
                             criteria[i].first, seconds_since(t0), outcome.detail)
              << std::flush;
  }
  std::cout << fmt::format("{} failed, total {:.0f} s\n", failed, seconds_since(start));
  fs::remove_all(workdir);
  return failed == 0 ? 0 : 1;
}
