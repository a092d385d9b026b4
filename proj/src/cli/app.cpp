#include "textclf/cli/app.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "textclf/cli/commands.hpp"
#include "textclf/common/errors.hpp"
#include "textclf/common/keyvalue.hpp"

namespace textclf::cli {
namespace {

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

void add_config_option(CLI::App* sub) {
  // Consumed by merge_config before parsing; declared so help lists it.
  sub->add_option("--config")->description("Flat key=value file of flag defaults; flags on the command line win");
}

void add_architecture_options(CLI::App* sub, ArchitectureOverrides& a) {
  sub->add_option("--embedding-dim", a.embedding_dim, "Word vector size");
  sub->add_option("--rnn-layers", a.rnn_layers, "Recurrent layers per direction");
  sub->add_option("--rnn-width", a.rnn_width, "Recurrent state size per direction");
  sub->add_option("--mlp-layers", a.mlp_layers, "Layers of the per-position network");
  sub->add_option("--mlp-width", a.mlp_width, "Hidden units of the per-position network");
  sub->add_option("--attention-width", a.attention_width, "Attention projection size");
  sub->add_option("--sentence-rnn-layers", a.sentence_rnn_layers, "Sentence-level recurrent layers");
  sub->add_option("--sentence-rnn-width", a.sentence_rnn_width, "Sentence-level recurrent state size");
  sub->add_option("--sentence-attention-width", a.sentence_attention_width, "Sentence-level attention size");
  sub->add_option("--cnn-projection", a.cnn_projection, "CNN token projection size");
  sub->add_option("--cnn-filters", a.cnn_filters, "CNN filters per width");
  sub->add_flag("--freeze-embeddings", a.freeze_embeddings, "Keep word vectors fixed during training");
}

void add_training_options(CLI::App* sub, training::TrainConfig& t) {
  sub->add_option("--lr", t.learning_rate, "Adam learning rate")->capture_default_str();
  sub->add_option("--batch-size", t.batch_size, "Documents per update")->capture_default_str();
  sub->add_option("--epochs", t.max_epochs, "Maximum epochs")->capture_default_str();
  sub->add_option("--patience", t.patience, "Epochs without validation gain before stopping")->capture_default_str();
}

}  // namespace

std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> config;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config) return rest;

  std::set<std::string> given;
  for (const auto& a : rest) {
    if (a.size() > 2 && a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
  }
  if (!std::filesystem::exists(*config)) throw UsageError("config file '" + *config + "' does not exist");
  for (const auto& [key, value] : read_key_values(*config)) {
    if (key == "config") throw UsageError("a config file cannot name another config file");
    if (!given.contains(key)) rest.push_back("--" + key + "=" + value);
  }
  return rest;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neural text classification for pathology-style reports", "textclf"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  PrepareOptions prepare;
  auto* prepare_cmd = app.add_subcommand("prepare", "Preprocess, deduplicate and split raw records by date");
  add_config_option(prepare_cmd);
  prepare_cmd->add_option("--input", prepare.input, "Records, one JSON object per line")->required()->check(CLI::ExistingFile);
  prepare_cmd->add_option("--output", prepare.output, "Split directory to write")->required();
  prepare_cmd->add_option("--valid-fraction", prepare.valid_fraction, "Validation share")->capture_default_str();
  prepare_cmd->add_option("--test-fraction", prepare.test_fraction, "Test share")->capture_default_str();
  prepare_cmd->add_option("--min-test", prepare.min_test, "Drop classes with fewer test documents")->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a labeled keyword corpus");
  add_config_option(synth_cmd);
  synth_cmd->add_option("--output", synth.output, "Records file to write")->required();
  synth_cmd->add_option("--keywords", synth.keywords, "Also write each class's planted keywords as TSV");
  synth_cmd->add_option("--classes", synth.classes, "Number of classes")->capture_default_str();
  synth_cmd->add_option("--docs-per-class", synth.docs_per_class, "Documents per class")->capture_default_str();
  synth_cmd->add_option("--keywords-per-class", synth.keywords_per_class, "Signal words per class")->capture_default_str();
  synth_cmd->add_option("--min-keywords", synth.min_keywords, "Fewest signal words per document")->capture_default_str();
  synth_cmd->add_option("--max-keywords", synth.max_keywords, "Most signal words per document")->capture_default_str();
  synth_cmd->add_option("--min-noise", synth.min_noise, "Fewest noise words per document")->capture_default_str();
  synth_cmd->add_option("--max-noise", synth.max_noise, "Most noise words per document")->capture_default_str();
  synth_cmd->add_option("--noise-vocabulary", synth.noise_vocabulary, "Distinct noise words")->capture_default_str();
  synth_cmd->add_option("--max-sentences", synth.max_sentences, "Most sentences per document")->capture_default_str();
  synth_cmd->add_option("--overlap", synth.overlap, "Share of keywords borrowed from the next class")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "Train GloVe word vectors on a split's training text");
  add_config_option(embed_cmd);
  embed_cmd->add_option("--corpus", embed.corpus, "Split directory")->required()->check(CLI::ExistingDirectory);
  embed_cmd->add_option("--output", embed.output, "Vectors file to write")->required();
  embed_cmd->add_option("--dim", embed.dim, "Vector size")->capture_default_str();
  embed_cmd->add_option("--iterations", embed.iterations, "Training passes")->capture_default_str();
  embed_cmd->add_option("--window", embed.window, "Co-occurrence window")->capture_default_str();
  embed_cmd->add_option("--min-count", embed.min_count, "Minimum token frequency")->capture_default_str();
  embed_cmd->add_option("--glove-lr", embed.learning_rate, "AdaGrad learning rate")->capture_default_str();
  embed_cmd->add_option("--seed", embed.seed, "Random seed")->capture_default_str();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train one classifier (neural family or SVM)");
  add_config_option(train_cmd);
  train_cmd->add_option("--corpus", train.corpus, "Split directory")->required()->check(CLI::ExistingDirectory);
  train_cmd->add_option("--output", train.output, "Model file to write")->required();
  train_cmd->add_option("--family", train.family, "SVM, CNN, GRU, ATT, MAX, MAXi, MAXh or ATTh")->capture_default_str();
  train_cmd->add_option("--vectors", train.vectors, "Pretrained word vectors")->check(CLI::ExistingFile);
  train_cmd->add_option("--history", train.history, "Write per-epoch history as JSON");
  train_cmd->add_option("--min-count", train.min_count, "Minimum token frequency for the vocabulary")->capture_default_str();
  add_architecture_options(train_cmd, train.architecture);
  add_training_options(train_cmd, train.train);
  train_cmd->add_option("--svm-c", train.svm_c, "SVM regularization constant")->capture_default_str();
  train_cmd->add_option("--svm-epochs", train.svm_epochs, "SVM passes over the data")->capture_default_str();
  train_cmd->add_flag("--bigrams", train.bigrams, "Add bigram features to the SVM");
  train_cmd->add_option("--seed", train.seed, "Random seed")->capture_default_str();

  GridOptions grid;
  auto* grid_cmd = app.add_subcommand("gridsearch", "Rank hyperparameter settings by validation accuracy");
  add_config_option(grid_cmd);
  grid_cmd->add_option("--corpus", grid.corpus, "Split directory")->required()->check(CLI::ExistingDirectory);
  grid_cmd->add_option("--output", grid.output, "Ranked TSV table to write")->required();
  grid_cmd->add_option("--family", grid.family, "Neural family")->capture_default_str();
  grid_cmd->add_option("--grid", grid.grid, "Grid file: one 'field = v1, v2, ...' line per axis")->check(CLI::ExistingFile);
  grid_cmd->add_option("--preset", grid.preset, "Published search space: topography or morphology");
  grid_cmd->add_option("--vectors", grid.vectors, "Pretrained word vectors")->check(CLI::ExistingFile);
  grid_cmd->add_option("--jobs", grid.jobs, "Grid points trained in parallel")->capture_default_str();
  grid_cmd->add_option("--min-count", grid.min_count, "Minimum token frequency for the vocabulary")->capture_default_str();
  add_architecture_options(grid_cmd, grid.architecture);
  add_training_options(grid_cmd, grid.train);
  grid_cmd->add_option("--seed", grid.seed, "Random seed")->capture_default_str();

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a model or a predictions file and write a metrics report");
  add_config_option(eval_cmd);
  eval_cmd->add_option("--model", eval.model, "Model file")->check(CLI::ExistingFile);
  eval_cmd->add_option("--corpus", eval.corpus, "Split directory")->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--split", eval.split, "train, valid or test")->capture_default_str();
  eval_cmd->add_option("--predictions", eval.predictions, "Predictions TSV instead of a model")->check(CLI::ExistingFile);
  eval_cmd->add_option("--predictions-out", eval.predictions_out, "Write the model's predictions as TSV");
  eval_cmd->add_option("--fidelity-against", eval.fidelity_against, "Reference predictions TSV for argmax agreement")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--output", eval.output, "Report JSON file (default: standard output)");

  CompareOptions compare;
  auto* compare_cmd = app.add_subcommand("compare", "Significance table of several models against a reference");
  add_config_option(compare_cmd);
  compare_cmd->add_option("--run", compare.runs, "NAME=PREDICTIONS, repeated once per model")->required();
  compare_cmd->add_option("--reference", compare.reference, "Reference model name")->capture_default_str();
  compare_cmd->add_option("--output", compare.output, "Table file (default: standard output)");

  ExplainOptions explain;
  auto* explain_cmd = app.add_subcommand("explain", "Highlight the words a MAXi model relies on");
  add_config_option(explain_cmd);
  explain_cmd->add_option("--model", explain.model, "MAXi model file")->required()->check(CLI::ExistingFile);
  explain_cmd->add_option("--corpus", explain.corpus, "Split directory")->required()->check(CLI::ExistingDirectory);
  explain_cmd->add_option("--split", explain.split, "train, valid or test")->capture_default_str();
  explain_cmd->add_option("--documents", explain.documents, "Comma-separated document positions")
      ->delimiter(',')
      ->capture_default_str();
  explain_cmd->add_option("--html-dir", explain.html_dir, "Also write doc_<n>.html pages here");

  DistillOptions distill;
  auto* distill_cmd = app.add_subcommand("distill", "Rebuild a corpus from each document's k most important words");
  add_config_option(distill_cmd);
  distill_cmd->add_option("--model", distill.model, "MAXi model file")->required()->check(CLI::ExistingFile);
  distill_cmd->add_option("--corpus", distill.corpus, "Split directory")->required()->check(CLI::ExistingDirectory);
  distill_cmd->add_option("--output", distill.output, "Distilled split directory")->required();
  distill_cmd->add_option("--k", distill.k, "Words kept per document")->capture_default_str();

  const std::vector<std::pair<CLI::App*, std::function<void()>>> commands = {
      {prepare_cmd, [&] { run_prepare(prepare, out); }},   {synth_cmd, [&] { run_synth(synth, out); }},
      {embed_cmd, [&] { run_embed(embed, out); }},         {train_cmd, [&] { run_train(train, out); }},
      {grid_cmd, [&] { run_gridsearch(grid, out); }},      {eval_cmd, [&] { run_eval(eval, out); }},
      {compare_cmd, [&] { run_compare(compare, out); }},   {explain_cmd, [&] { run_explain(explain, out); }},
      {distill_cmd, [&] { run_distill(distill, out); }}};

  auto fail = [&](int code, const std::string& message) {
    err << "textclf: " << one_line(message) << '\n';
    return code;
  };
  try {
    auto merged = merge_config(std::move(args));
    std::reverse(merged.begin(), merged.end());
    try {
      app.parse(merged);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      return fail(kExitUsage, e.what());
    }
    for (const auto& [sub, action] : commands) {
      if (sub->parsed()) action();
    }
    return kExitOk;
  } catch (const UsageError& e) {
    return fail(kExitUsage, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitUsage, e.what());
  } catch (const std::out_of_range& e) {
    return fail(kExitUsage, e.what());
  } catch (const DataError& e) {
    return fail(kExitData, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kExitData, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kExitData, e.what());
  } catch (const NumericError& e) {
    return fail(kExitNumeric, e.what());
  }
}

}  // namespace textclf::cli
