#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "textclf/cli/app.hpp"
#include "textclf/cli/predictions.hpp"
#include "textclf/common/errors.hpp"

using namespace textclf;
using namespace textclf::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

/// Fresh scratch directory removed at scope exit.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("textclf_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& leaf) const { return (dir / leaf).string(); }
};

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_CASE("config files supply defaults and flags win") {
  Scratch s("config");
  spit(s / "c.txt", "# defaults\nlr = 0.5\nepochs=9\n");
  auto merged = merge_config({"train", "--config", s / "c.txt", "--epochs", "4"});
  CHECK(merged == std::vector<std::string>{"train", "--epochs", "4", "--lr=0.5"});
  merged = merge_config({"train", "--config=" + (s / "c.txt"), "--lr=1"});
  CHECK(merged == std::vector<std::string>{"train", "--lr=1", "--epochs=9"});
  CHECK(merge_config({"synth", "--seed", "3"}) == std::vector<std::string>{"synth", "--seed", "3"});
  CHECK_THROWS_AS(merge_config({"train", "--config"}), UsageError);
  CHECK_THROWS_AS(merge_config({"train", "--config", s / "missing.txt"}), UsageError);
  spit(s / "dup.txt", "lr=1\nlr=2\n");
  CHECK_THROWS_AS(merge_config({"train", "--config", s / "dup.txt"}), DataError);
}

TEST_CASE("synth is byte-identical for a repeated seed") {
  Scratch s("synth");
  REQUIRE(invoke({"synth", "--output", s / "a.jsonl", "--seed", "7", "--classes", "5", "--docs-per-class", "20"}).code == 0);
  REQUIRE(invoke({"synth", "--output", s / "b.jsonl", "--seed", "7", "--classes", "5", "--docs-per-class", "20"}).code == 0);
  REQUIRE(invoke({"synth", "--output", s / "c.jsonl", "--seed", "8", "--classes", "5", "--docs-per-class", "20"}).code == 0);
  CHECK(slurp(s / "a.jsonl") == slurp(s / "b.jsonl"));
  CHECK(slurp(s / "a.jsonl") != slurp(s / "c.jsonl"));
  CHECK(lines(slurp(s / "a.jsonl")) == 100);
}

TEST_CASE("eval on predictions equal to the labels") {
  Scratch s("eval");
  spit(s / "p.tsv", "label\tA\tB\tC\n0\t1\t0\t0\n2\t0\t0\t1\n1\t0\t1\t0\n2\t0.1\t0.2\t0.7\n");
  auto r = invoke({"eval", "--predictions", s / "p.tsv"});
  REQUIRE(r.code == 0);
  auto report = nlohmann::json::parse(r.out);
  CHECK(report["accuracy"] == 1.0);
  CHECK(report["macro_f1"] == 1.0);
  CHECK(report["documents"] == 4);
}

TEST_CASE("predictions files") {
  Scratch s("predictions");
  PredictionFile file{{"X", "Y"}, {{{0.25, 0.75}, {1.0 / 3.0, 2.0 / 3.0}}, {1, 0}, 2}};
  write_predictions(s / "p.tsv", file);
  auto back = read_predictions(s / "p.tsv");
  CHECK(back.class_names == file.class_names);
  CHECK(back.predictions.labels == file.predictions.labels);
  CHECK(back.predictions.scores == file.predictions.scores);

  spit(s / "short.tsv", "label\tX\tY\n0\t0.5\n");
  CHECK_THROWS_AS(read_predictions(s / "short.tsv"), DataError);
  spit(s / "range.tsv", "label\tX\tY\n2\t0.5\t0.5\n");
  CHECK_THROWS_AS(read_predictions(s / "range.tsv"), DataError);
  spit(s / "text.tsv", "label\tX\tY\n0\tabc\t0.5\n");
  CHECK_THROWS_AS(read_predictions(s / "text.tsv"), DataError);
  spit(s / "header.tsv", "id\tX\tY\n");
  CHECK_THROWS_AS(read_predictions(s / "header.tsv"), DataError);
}

TEST_CASE("failures exit with their code and one diagnostic line") {
  Scratch s("errors");
  auto check = [](const Result& r, int code) {
    CHECK(r.code == code);
    CHECK(lines(r.err) == 1);
    CHECK(r.err.rfind("textclf: ", 0) == 0);
  };
  check(invoke({}), kExitUsage);
  check(invoke({"frobnicate"}), kExitUsage);
  check(invoke({"synth", "--output", s / "x.jsonl", "--bogus"}), kExitUsage);
  check(invoke({"train", "--corpus", s / "missing", "--output", s / "m.json"}), kExitUsage);

  REQUIRE(invoke({"synth", "--output", s / "r.jsonl", "--classes", "3", "--docs-per-class", "15"}).code == 0);
  REQUIRE(invoke({"prepare", "--input", s / "r.jsonl", "--output", s / "split", "--min-test", "1"}).code == 0);
  check(invoke({"train", "--corpus", s / "split", "--output", s / "m.json", "--family", "LSTM"}), kExitUsage);
  check(invoke({"train", "--corpus", s / "split", "--output", s / "m.json", "--rnn-width", "0"}), kExitUsage);
  check(invoke({"train", "--corpus", s / "split", "--output", s / "m.json", "--lr", "1e300", "--epochs", "2",
             "--embedding-dim", "4"}),
        kExitNumeric);

  fs::copy(s.dir / "split", s.dir / "bad", fs::copy_options::recursive);
  spit(s / "bad/train.jsonl", "{not json\n");
  check(invoke({"train", "--corpus", s / "bad", "--output", s / "m.json"}), kExitData);
  spit(s / "bad.tsv", "label\tA\n");
  check(invoke({"eval", "--predictions", s / "bad.tsv"}), kExitData);
  check(invoke({"eval", "--predictions", s / "bad.tsv", "--model", s / "bad.tsv"}), kExitUsage);
}

TEST_CASE("help lists every flag") {
  const std::map<std::string, std::vector<std::string>> flags = {
      {"prepare", {"--config", "--input", "--output", "--valid-fraction", "--test-fraction", "--min-test"}},
      {"synth",
       {"--config", "--output", "--keywords", "--classes", "--docs-per-class", "--keywords-per-class", "--min-keywords",
        "--max-keywords", "--min-noise", "--max-noise", "--noise-vocabulary", "--max-sentences", "--overlap", "--seed"}},
      {"embed", {"--config", "--corpus", "--output", "--dim", "--iterations", "--window", "--min-count", "--glove-lr", "--seed"}},
      {"train",
       {"--config", "--corpus", "--output", "--family", "--vectors", "--history", "--min-count", "--embedding-dim",
        "--rnn-layers", "--rnn-width", "--mlp-layers", "--mlp-width", "--attention-width", "--sentence-rnn-layers",
        "--sentence-rnn-width", "--sentence-attention-width", "--cnn-projection", "--cnn-filters",
        "--freeze-embeddings", "--lr", "--batch-size", "--epochs", "--patience", "--svm-c", "--svm-epochs", "--bigrams",
        "--seed"}},
      {"gridsearch",
       {"--config", "--corpus", "--output", "--family", "--grid", "--preset", "--vectors", "--jobs", "--min-count",
        "--lr", "--epochs", "--patience", "--batch-size", "--seed"}},
      {"eval", {"--config", "--model", "--corpus", "--split", "--predictions", "--predictions-out", "--fidelity-against", "--output"}},
      {"compare", {"--config", "--run", "--reference", "--output"}},
      {"explain", {"--config", "--model", "--corpus", "--split", "--documents", "--html-dir"}},
      {"distill", {"--config", "--model", "--corpus", "--output", "--k"}},
  };
  auto all = invoke({"--help-all"});
  CHECK(all.code == 0);
  for (const auto& [command, names] : flags) {
    auto r = invoke({command, "--help"});
    CHECK(r.code == 0);
    for (const auto& name : names) {
      INFO(command << " " << name);
      CHECK(r.out.find(name + " ") != std::string::npos);
    }
    CHECK(all.out.find(command) != std::string::npos);
  }
}

TEST_CASE("pipeline on a separable corpus") {
  Scratch s("pipeline");
  auto ok = [](const Result& r) {
    INFO(r.err);
    REQUIRE(r.code == 0);
  };
  ok(invoke({"synth", "--output", s / "r.jsonl", "--classes", "8", "--docs-per-class", "60", "--seed", "3"}));
  ok(invoke({"prepare", "--input", s / "r.jsonl", "--output", s / "split", "--min-test", "1"}));
  ok(invoke({"embed", "--corpus", s / "split", "--output", s / "v.txt", "--dim", "12", "--iterations", "10"}));
  ok(invoke({"train", "--corpus", s / "split", "--output", s / "max.json", "--vectors", s / "v.txt", "--rnn-width", "8",
          "--mlp-width", "16", "--lr", "0.01", "--epochs", "25"}));
  ok(invoke({"eval", "--model", s / "max.json", "--corpus", s / "split", "--output", s / "report.json"}));
  auto report = nlohmann::json::parse(slurp(s / "report.json"));
  MESSAGE("pipeline test accuracy " << report["accuracy"].get<double>());
  CHECK(report["accuracy"].get<double>() > 0.95);
}
