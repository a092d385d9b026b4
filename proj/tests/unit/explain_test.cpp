#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "support/architectures.hpp"
#include "textclf/common/rng.hpp"
#include "textclf/corpus/io.hpp"
#include "textclf/corpus/preprocess.hpp"
#include "textclf/corpus/split.hpp"
#include "textclf/corpus/synthetic.hpp"
#include "textclf/explain/distill.hpp"
#include "textclf/explain/render.hpp"
#include "textclf/training/trainer.hpp"

using namespace textclf;
using namespace textclf::explain;
using tensor::Tensor;

namespace {

std::vector<std::string> names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("C" + std::to_string(i));
  return out;
}

std::vector<std::string> words(std::size_t t) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < t; ++i) out.push_back("W" + std::to_string(i));
  return out;
}

bool is_subsequence(const std::vector<std::string>& sub, const std::vector<std::string>& full) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < full.size() && i < sub.size(); ++j) i += sub[i] == full[j];
  return i == sub.size();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

corpus::CorpusSplit tiny_split() {
  corpus::SyntheticSpec spec;
  spec.num_classes = 3;
  spec.docs_per_class = 10;
  spec.seed = 5;
  return corpus::prepare_split(corpus::generate_synthetic(spec).records, {}, 1);
}

networks::Model tiny_maxi(const corpus::CorpusSplit& split) {
  std::vector<std::vector<std::string>> tokens;
  for (const auto& d : split.train) tokens.push_back(d.tokens);
  return networks::make_model(testing::tiny_config(networks::Family::MaxI, split.num_classes()),
                              embeddings::Vocabulary::build(tokens, 1), 3);
}

}  // namespace

TEST_CASE("band thresholds") {
  CHECK(band_of(0.8) == Band::High);
  CHECK(band_of(1.0) == Band::High);
  CHECK(band_of(std::nextafter(0.8, 0.0)) == Band::Medium);
  CHECK(band_of(0.3) == Band::Medium);
  CHECK(band_of(std::nextafter(0.3, 0.0)) == Band::Low);
  CHECK(band_of(0.1) == Band::Low);
  CHECK_FALSE(band_of(std::nextafter(0.1, 0.0)).has_value());
  CHECK_FALSE(band_of(0.0).has_value());
}

TEST_CASE("highlight marks follow the thresholds") {
  SUBCASE("all scores below the low threshold") {
    auto h = highlight(Tensor({3, 4}, 0.05), words(4));
    CHECK(h.relevant_classes.empty());
    for (const auto& m : h.marks) CHECK(m.empty());
  }
  SUBCASE("random matrices") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t k = 1 + rng.below(6), t = 1 + rng.below(12);
      Tensor u({k, t});
      for (double& v : u.data()) v = rng.uniform() * (trial % 2 == 0 ? 1.0 : 0.2);
      auto h = highlight(u, words(t));
      std::set<std::size_t> relevant;
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t p = 0; p < t; ++p) {
          auto band = band_of(u.at(j, p));
          auto it = std::find_if(h.marks[p].begin(), h.marks[p].end(), [&](const Mark& m) { return m.class_index == j; });
          CHECK(band.has_value() == (it != h.marks[p].end()));
          if (band) {
            CHECK(it->band == *band);
            relevant.insert(j);
          }
        }
      }
      CHECK(std::vector<std::size_t>(relevant.begin(), relevant.end()) == h.relevant_classes);
      auto again = highlight(u, words(t));
      CHECK(again.marks == h.marks);
    }
  }
  CHECK_THROWS_AS(highlight(Tensor({2, 3}), words(4)), std::invalid_argument);
}

TEST_CASE("rendering") {
  const auto class_names = names(12);

  SUBCASE("no relevant classes is a plain passthrough") {
    auto h = highlight(Tensor({2, 3}, 0.0), {"A", "B", "C"});
    CHECK(render_terminal(h, class_names) == "A B C\n");
    auto html = render_html(h, class_names);
    CHECK(html.find("data-marks") == std::string::npos);
    CHECK(html.find("legend") == std::string::npos);
    CHECK(tokens_from_html(html) == h.tokens);
  }
  SUBCASE("single class and a single high token") {
    Tensor u({2, 3}, 0.0);
    u.at(1, 2) = 0.9;
    auto h = highlight(u, {"A", "B", "C"});
    auto html = render_html(h, class_names);
    CHECK(count(html, "data-marks=") == 1);
    CHECK(html.find("data-marks=\"1:high\"") != std::string::npos);
    CHECK(render_terminal(h, class_names) == "A B C[C1+++]\n");
  }
  SUBCASE("legend lists exactly the relevant classes") {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t k = 2 + rng.below(11), t = 1 + rng.below(8);
      Tensor u({k, t});
      for (double& v : u.data()) v = rng.uniform() < 0.2 ? rng.uniform() : 0.0;
      auto h = highlight(u, words(t));
      auto html = render_html(h, class_names);
      std::vector<std::size_t> listed;
      for (auto pos = html.find("data-class=\""); pos != std::string::npos; pos = html.find("data-class=\"", pos + 1)) {
        listed.push_back(std::stoul(html.substr(pos + 12)));
      }
      CHECK(listed == h.relevant_classes);
      CHECK((html.find("legend-note") != std::string::npos) == (h.relevant_classes.size() > kPaletteSize));
      CHECK(tokens_from_html(html) == h.tokens);
    }
  }
  SUBCASE("more relevant classes than colors") {
    Tensor u({10, 1}, 0.5);
    auto h = highlight(u, {"X"});
    auto html = render_html(h, class_names);
    CHECK(html.find("legend-note") != std::string::npos);
    CHECK(count(html, kPalette[0]) == 2);
  }
  SUBCASE("markup characters survive the round trip") {
    std::vector<std::string> tokens = {"<B>", "&AMP;", "\"Q\"", "A&B"};
    Tensor u({1, 4}, 0.5);
    auto h = highlight(u, tokens);
    CHECK(tokens_from_html(render_html(h, class_names)) == tokens);
  }
}

TEST_CASE("top-k selection") {
  std::vector<double> scores = {0.2, 0.9, 0.5, 0.9, 0.1};
  CHECK(top_k_positions(scores, 1) == std::vector<std::size_t>{1});
  CHECK(top_k_positions(scores, 2) == std::vector<std::size_t>{1, 3});
  CHECK(top_k_positions(scores, 3) == std::vector<std::size_t>{1, 2, 3});
  CHECK(top_k_positions(scores, 9) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK_THROWS_AS(top_k_positions(scores, 0), std::invalid_argument);

  Tensor u = Tensor::matrix(2, 3, {0.1, 0.7, 0.2, 0.4, 0.3, 0.9});
  CHECK(token_scores(u) == std::vector<double>{0.4, 0.7, 0.9});

  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(1 + rng.below(20));
    for (double& v : s) v = static_cast<double>(rng.below(5));
    const std::size_t k = 1 + rng.below(25);
    auto keep = top_k_positions(s, k);
    CHECK(keep.size() == std::min(k, s.size()));
    CHECK(std::is_sorted(keep.begin(), keep.end()));
    // Every dropped position scores below the kept ones, or equal and later.
    for (std::size_t p = 0; p < s.size(); ++p) {
      if (std::binary_search(keep.begin(), keep.end(), p)) continue;
      for (std::size_t q : keep) CHECK((s[q] > s[p] || (s[q] == s[p] && q < p)));
    }
  }
}

TEST_CASE("distillation of a corpus") {
  const auto split = tiny_split();
  const auto model = tiny_maxi(split);

  for (std::size_t k : {1u, 2u, 5u, 100u}) {
    auto distilled = distill_top_k(model, split, k, "tiny");
    REQUIRE(distilled.split.test.size() == split.test.size());
    for (std::size_t i = 0; i < split.test.size(); ++i) {
      const auto& before = split.test[i];
      const auto& after = distilled.split.test[i];
      CHECK(after.tokens.size() == std::min(k, before.tokens.size()));
      CHECK(is_subsequence(after.tokens, before.tokens));
      CHECK(after.label == before.label);
      if (k >= before.tokens.size()) CHECK(after.tokens == before.tokens);
    }
  }

  const auto& doc = split.train.front();
  auto scores = token_scores(model.importance(model.encode(doc)));
  auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
  CHECK(distill_document(model, doc, 1).tokens == std::vector<std::string>{doc.tokens[static_cast<std::size_t>(best)]});

  CHECK_THROWS_AS(distill_top_k(model, split, 0), std::invalid_argument);
  auto max_model = networks::make_model(testing::tiny_config(networks::Family::Max, split.num_classes()),
                                        model.vocabulary, 1);
  CHECK_THROWS_AS(distill_top_k(max_model, split, 3), std::invalid_argument);
  CHECK_THROWS_AS(extract_importance(max_model, doc), std::invalid_argument);

  SUBCASE("written corpora read back with their provenance") {
    const auto dir = std::filesystem::temp_directory_path() / "textclf_explain_test";
    std::filesystem::remove_all(dir);
    auto distilled = distill_top_k(model, split, 2, "tiny");
    write_distilled(dir, distilled);
    auto back = corpus::read_split(dir);
    REQUIRE(back.test.size() == distilled.split.test.size());
    for (std::size_t i = 0; i < back.test.size(); ++i) CHECK(back.test[i].tokens == distilled.split.test[i].tokens);
    for (const auto& record : corpus::read_records(dir / "train.jsonl")) CHECK(record.distilled_k == 2);
    std::ifstream in(dir / "provenance.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"source\": \"tiny\"") != std::string::npos);
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("trained interpretable model points at planted keywords") {
  corpus::SyntheticSpec spec;
  spec.num_classes = 20;
  spec.docs_per_class = 60;
  spec.seed = 1;
  const auto synthetic = corpus::generate_synthetic(spec);
  const auto split = corpus::prepare_split(synthetic.records, {}, 1);
  std::vector<std::vector<std::string>> tokens;
  for (const auto& d : split.train) tokens.push_back(d.tokens);

  auto config = networks::default_config(networks::Family::MaxI, split.num_classes());
  config.embedding_dim = 16;
  config.rnn_width = 16;
  auto model = networks::make_model(config, embeddings::Vocabulary::build(tokens, 1), 1);
  training::TrainConfig tc;
  tc.learning_rate = 0.005;
  tc.max_epochs = 15;
  auto train = training::encode_all(model, split.train);
  auto valid = training::encode_all(model, split.valid);
  model = training::train(model, train, valid, tc).model;

  std::size_t correct = 0, on_keyword = 0;
  for (const auto& doc : split.test) {
    auto encoded = model.encode(doc);
    auto p = model.predict(encoded);
    const auto predicted = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    if (predicted != doc.class_index) continue;
    ++correct;
    auto u = model.importance(encoded);
    std::size_t best = 0;
    for (std::size_t t = 1; t < u.cols(); ++t) {
      if (u.at(predicted, t) > u.at(predicted, best)) best = t;
    }
    const auto label_pos = std::find(synthetic.labels.begin(), synthetic.labels.end(), doc.label) - synthetic.labels.begin();
    const auto& keywords = synthetic.keywords[static_cast<std::size_t>(label_pos)];
    on_keyword += std::find(keywords.begin(), keywords.end(), doc.tokens[best]) != keywords.end();
  }
  REQUIRE(correct > split.test.size() / 2);
  const double rate = static_cast<double>(on_keyword) / static_cast<double>(correct);
  MESSAGE("keyword argmax rate " << rate << " over " << correct << " correct documents");
  CHECK(rate > 0.9);
}
