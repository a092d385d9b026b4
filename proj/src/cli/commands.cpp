#include "textclf/cli/commands.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "json.hpp"
#include "textclf/baseline/svm.hpp"
#include "textclf/cli/predictions.hpp"
#include "textclf/common/errors.hpp"
#include "textclf/common/rng.hpp"
#include "textclf/corpus/io.hpp"
#include "textclf/corpus/split.hpp"
#include "textclf/corpus/synthetic.hpp"
#include "textclf/embeddings/cooccurrence.hpp"
#include "textclf/embeddings/glove.hpp"
#include "textclf/evaluation/report.hpp"
#include "textclf/explain/distill.hpp"
#include "textclf/explain/render.hpp"
#include "textclf/networks/model.hpp"
#include "textclf/tensor/archive.hpp"
#include "textclf/training/grid.hpp"

namespace textclf::cli {
namespace {

using corpus::CorpusSplit;
using corpus::Document;
using networks::Family;

std::ofstream open_output(const path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", file.string()));
  return out;
}

void write_text(const path& file, const std::string& text) { open_output(file) << text; }

Family family_of(const std::string& name) {
  auto family = networks::parse_family(name);
  if (!family) throw UsageError(fmt::format("unknown model family '{}'", name));
  return *family;
}

const std::vector<Document>& split_docs(const CorpusSplit& split, const std::string& name) {
  if (name == "train") return split.train;
  if (name == "valid") return split.valid;
  if (name == "test") return split.test;
  throw UsageError(fmt::format("unknown split '{}' (expected train, valid or test)", name));
}

std::vector<std::vector<std::string>> token_lists(const std::vector<Document>& docs) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(docs.size());
  for (const auto& d : docs) tokens.push_back(d.tokens);
  return tokens;
}

/// Either kind of trained classifier behind one scoring interface.
struct Classifier {
  std::optional<networks::Model> neural;
  std::optional<baseline::SvmClassifier> svm;

  std::size_t num_classes() const { return neural ? neural->config.num_classes : svm->linear.num_classes(); }

  std::vector<double> scores(const Document& doc) const {
    if (neural) return neural->predict(neural->encode(doc));
    return svm->predict(doc.tokens).scores;
  }
};

Classifier load_classifier(const path& file) {
  auto archive = tensor::read_archive(file);
  Classifier c;
  if (archive.kind == "svm") {
    c.svm = baseline::svm_from_archive(archive);
  } else {
    c.neural = networks::model_from_archive(archive);
  }
  return c;
}

const networks::Model& interpretable_model(const Classifier& c) {
  if (!c.neural || !c.neural->config.interpretable) throw UsageError("this command needs an interpretable (MAXi) model");
  return *c.neural;
}

void check_classes(const Classifier& c, const CorpusSplit& split) {
  if (c.num_classes() != split.num_classes()) {
    throw DataError(fmt::format("model has {} classes but the corpus has {}", c.num_classes(), split.num_classes()));
  }
}

evaluation::PredictionSet predict_docs(const Classifier& c, const std::vector<Document>& docs) {
  evaluation::PredictionSet preds;
  preds.num_classes = c.num_classes();
  for (const auto& doc : docs) {
    preds.scores.push_back(c.scores(doc));
    preds.labels.push_back(doc.class_index);
  }
  return preds;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

nlohmann::ordered_json history_to_json(const training::TrainHistory& history) {
  nlohmann::ordered_json epochs = nlohmann::ordered_json::array();
  for (const auto& e : history.epochs) {
    epochs.push_back({{"train_loss", e.train_loss},
                      {"train_accuracy", e.train_accuracy},
                      {"valid_accuracy", e.valid_accuracy}});
  }
  return {{"best_epoch", history.best_epoch + 1}, {"epochs", epochs}};
}

void train_svm(const TrainOptions& options, const CorpusSplit& split, std::ostream& out) {
  std::vector<std::size_t> labels;
  for (const auto& d : split.train) labels.push_back(d.class_index);
  auto [tfidf, features] = baseline::tfidf_fit_transform(token_lists(split.train), options.bigrams ? 2 : 1);
  baseline::SvmConfig config{options.svm_c, options.svm_epochs, derive_seed(options.seed, "svm")};
  baseline::SvmClassifier classifier{std::move(tfidf), {}};
  classifier.linear = baseline::svm_train(features, labels, classifier.tfidf.num_features(), split.num_classes(), config);
  tensor::write_archive(options.output, baseline::svm_to_archive(classifier));

  std::size_t correct = 0;
  for (const auto& d : split.valid) correct += classifier.predict(d.tokens).label == d.class_index;
  const double valid = split.valid.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(split.valid.size());
  if (options.history) {
    nlohmann::ordered_json h = {{"objective", classifier.linear.objective}, {"valid_accuracy", valid}};
    write_text(*options.history, h.dump(2) + "\n");
  }
  out << fmt::format("trained SVM: {} features, valid accuracy {:.4f}\n", classifier.tfidf.num_features(), valid);
}

}  // namespace

networks::ModelConfig build_config(Family family, std::size_t num_classes, const ArchitectureOverrides& o) {
  if (family == Family::Svm) throw UsageError("SVM has no neural architecture");
  auto c = networks::default_config(family, num_classes);
  auto set = [](std::size_t& field, const std::optional<std::size_t>& value) {
    if (value) field = *value;
  };
  set(c.embedding_dim, o.embedding_dim);
  set(c.rnn_layers, o.rnn_layers);
  set(c.rnn_width, o.rnn_width);
  set(c.mlp_layers, o.mlp_layers);
  set(c.mlp_width, o.mlp_width);
  set(c.attention_width, o.attention_width);
  set(c.sentence_rnn_layers, o.sentence_rnn_layers);
  set(c.sentence_rnn_width, o.sentence_rnn_width);
  set(c.sentence_attention_width, o.sentence_attention_width);
  set(c.cnn_projection, o.cnn_projection);
  set(c.cnn_filters, o.cnn_filters);
  c.embedding_trainable = !o.freeze_embeddings;
  try {
    networks::validate(c);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("invalid {} architecture: {}", networks::family_name(family), e.what()));
  }
  return c;
}

void run_prepare(const PrepareOptions& options, std::ostream& out) {
  auto records = corpus::read_records(options.input);
  auto split = corpus::prepare_split(records, {options.test_fraction, options.valid_fraction}, options.min_test);
  corpus::write_split(options.output, split);
  out << fmt::format("prepared {} classes: {} train, {} valid, {} test documents\n", split.num_classes(),
                     split.train.size(), split.valid.size(), split.test.size());
}

void run_synth(const SynthOptions& options, std::ostream& out) {
  corpus::SyntheticSpec spec;
  spec.num_classes = options.classes;
  spec.docs_per_class = options.docs_per_class;
  spec.keywords_per_class = options.keywords_per_class;
  spec.min_keywords = options.min_keywords;
  spec.max_keywords = options.max_keywords;
  spec.min_noise = options.min_noise;
  spec.max_noise = options.max_noise;
  spec.noise_vocabulary = options.noise_vocabulary;
  spec.max_sentences = options.max_sentences;
  spec.keyword_overlap = options.overlap;
  spec.seed = derive_seed(options.seed, "synth");
  auto synthetic = corpus::generate_synthetic(spec);

  if (options.output.has_parent_path()) std::filesystem::create_directories(options.output.parent_path());
  corpus::write_records(options.output, synthetic.records);
  if (options.keywords) {
    std::string text;
    for (std::size_t i = 0; i < synthetic.labels.size(); ++i) {
      text += fmt::format("{}\t{}\n", synthetic.labels[i], fmt::join(synthetic.keywords[i], ","));
    }
    write_text(*options.keywords, text);
  }
  for (const auto& w : synthetic.warnings) out << "warning: " << w << '\n';
  out << fmt::format("wrote {} records over {} classes\n", synthetic.records.size(), synthetic.labels.size());
}

void run_embed(const EmbedOptions& options, std::ostream& out) {
  auto split = corpus::read_split(options.corpus);
  const auto tokens = token_lists(split.train);
  auto vocabulary = embeddings::Vocabulary::build(tokens, options.min_count);
  std::vector<std::vector<std::size_t>> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocabulary.encode(t));
  auto table = embeddings::count_cooccurrences(ids, options.window);

  embeddings::GloveConfig config;
  config.dim = options.dim;
  config.iterations = options.iterations;
  config.learning_rate = options.learning_rate;
  config.seed = derive_seed(options.seed, "glove");
  auto result = embeddings::train_embeddings(table, vocabulary, config);
  if (options.output.has_parent_path()) std::filesystem::create_directories(options.output.parent_path());
  embeddings::write_vectors(options.output, result.vectors);
  out << fmt::format("trained {}-dimensional vectors for {} tokens; loss {:.6g} -> {:.6g}\n", options.dim,
                     vocabulary.size() - 1, result.initial_loss,
                     result.epoch_losses.empty() ? result.initial_loss : result.epoch_losses.back());
}

void run_train(const TrainOptions& options, std::ostream& out) {
  const Family family = family_of(options.family);
  auto split = corpus::read_split(options.corpus);
  if (options.output.has_parent_path()) std::filesystem::create_directories(options.output.parent_path());
  if (family == Family::Svm) {
    train_svm(options, split, out);
    return;
  }

  auto architecture = options.architecture;
  std::optional<embeddings::WordVectors> vectors;
  if (options.vectors) {
    vectors = embeddings::read_vectors(*options.vectors);
    if (architecture.embedding_dim && *architecture.embedding_dim != vectors->dim()) {
      throw UsageError(fmt::format("--embedding-dim {} conflicts with {}-dimensional vectors", *architecture.embedding_dim,
                                   vectors->dim()));
    }
    architecture.embedding_dim = vectors->dim();
  }
  auto config = build_config(family, split.num_classes(), architecture);
  auto model = networks::make_model(config, embeddings::Vocabulary::build(token_lists(split.train), options.min_count),
                                    derive_seed(options.seed, "init"));
  if (vectors) networks::load_pretrained(model, *vectors);

  auto train_config = options.train;
  train_config.seed = derive_seed(options.seed, "train");
  training::validate(train_config);
  const auto train_set = training::encode_all(model, split.train);
  const auto valid_set = training::encode_all(model, split.valid);
  auto result = training::train(std::move(model), train_set, valid_set, train_config);

  networks::save_model(options.output, result.model);
  if (options.history) write_text(*options.history, history_to_json(result.history).dump(2) + "\n");
  const auto& best = result.history.epochs.at(result.history.best_epoch);
  out << fmt::format("trained {}: {} parameters, best epoch {} of {}, valid accuracy {:.4f}\n",
                     networks::family_name(family), networks::parameter_count(result.model.params),
                     result.history.best_epoch + 1, result.history.epochs.size(), best.valid_accuracy);
}

void run_gridsearch(const GridOptions& options, std::ostream& out) {
  const Family family = family_of(options.family);
  if (options.grid.has_value() == options.preset.has_value()) {
    throw UsageError("gridsearch needs exactly one of --grid and --preset");
  }
  if (options.jobs == 0) throw UsageError("--jobs must be at least 1");
  training::HyperGrid grid;
  if (options.grid) {
    grid = training::read_grid(*options.grid);
  } else if (*options.preset == "topography") {
    grid = training::published_grid(family, training::PaperTask::Topography);
  } else if (*options.preset == "morphology") {
    grid = training::published_grid(family, training::PaperTask::Morphology);
  } else {
    throw UsageError(fmt::format("unknown preset '{}' (expected topography or morphology)", *options.preset));
  }

  auto split = corpus::read_split(options.corpus);
  auto architecture = options.architecture;
  std::optional<embeddings::WordVectors> vectors;
  if (options.vectors) {
    vectors = embeddings::read_vectors(*options.vectors);
    architecture.embedding_dim = vectors->dim();
  }
  const auto base = build_config(family, split.num_classes(), architecture);
  const auto vocabulary = embeddings::Vocabulary::build(token_lists(split.train), options.min_count);
  // Encoding depends only on the vocabulary, so every point shares one copy.
  const auto encoder = networks::make_model(base, vocabulary, 0);
  const auto train_set = training::encode_all(encoder, split.train);
  const auto valid_set = training::encode_all(encoder, split.valid);
  auto train_config = options.train;
  train_config.seed = derive_seed(options.seed, "train");
  training::validate(train_config);
  const std::uint64_t init_seed = derive_seed(options.seed, "init");

  auto runner = [&](const training::Assignment& assignment) {
    auto config = training::apply_assignment(base, assignment);
    networks::validate(config);
    auto model = networks::make_model(config, vocabulary, init_seed);
    if (vectors) networks::load_pretrained(model, *vectors);
    auto result = training::train(std::move(model), train_set, valid_set, train_config);
    return training::GridPointResult{result.history.epochs.at(result.history.best_epoch).valid_accuracy,
                                     networks::parameter_count(result.model.params), result.history.best_epoch,
                                     result.history.epochs.size()};
  };
  auto rows = training::grid_search(grid, runner, options.jobs);
  write_text(options.output, training::grid_table(grid, rows));

  const auto& best = rows.front();
  if (!best.result) {
    out << fmt::format("all {} grid points failed; first error: {}\n", rows.size(), best.error);
    return;
  }
  std::vector<std::string> assigned;
  for (const auto& [name, value] : best.assignment) assigned.push_back(name + "=" + value);
  out << fmt::format("searched {} points; best {} with valid accuracy {:.4f}\n", rows.size(), fmt::join(assigned, " "),
                     best.result->valid_accuracy);
}

void run_eval(const EvalOptions& options, std::ostream& out) {
  PredictionFile file;
  if (options.predictions) {
    if (options.model || options.corpus) throw UsageError("--predictions excludes --model and --corpus");
    file = read_predictions(*options.predictions);
  } else {
    if (!options.model || !options.corpus) throw UsageError("eval needs --predictions or both --model and --corpus");
    auto classifier = load_classifier(*options.model);
    auto split = corpus::read_split(*options.corpus);
    check_classes(classifier, split);
    file.class_names = split.class_names();
    file.predictions = predict_docs(classifier, split_docs(split, options.split));
    if (file.predictions.size() == 0) throw DataError(fmt::format("the {} split is empty", options.split));
  }
  if (options.predictions_out) {
    if (options.predictions_out->has_parent_path()) std::filesystem::create_directories(options.predictions_out->parent_path());
    write_predictions(*options.predictions_out, file);
  }

  auto report = evaluation::make_report(file.predictions);
  if (options.fidelity_against) {
    auto reference = read_predictions(*options.fidelity_against);
    if (reference.predictions.size() != file.predictions.size() || reference.predictions.labels != file.predictions.labels) {
      throw DataError("fidelity reference covers different documents");
    }
    report.fidelity = evaluation::fidelity(file.predictions, reference.predictions);
  }
  const std::string json = evaluation::report_to_json(report, file.class_names).dump(2) + "\n";
  if (options.output) {
    write_text(*options.output, json);
    out << fmt::format("accuracy {:.4f}, macro-F1 {:.4f} over {} documents\n", report.accuracy, report.macro.value,
                       report.documents);
  } else {
    out << json;
  }
}

void run_compare(const CompareOptions& options, std::ostream& out) {
  if (options.runs.size() < 2) throw UsageError("compare needs at least two --run NAME=PREDICTIONS entries");
  std::vector<evaluation::NamedPredictions> models;
  std::optional<PredictionFile> first;
  for (const auto& run : options.runs) {
    const auto eq = run.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == run.size()) {
      throw UsageError(fmt::format("--run expects NAME=PREDICTIONS, got '{}'", run));
    }
    auto file = read_predictions(run.substr(eq + 1));
    if (first && (file.class_names != first->class_names || file.predictions.labels != first->predictions.labels)) {
      throw DataError(fmt::format("run '{}' covers different documents or classes", run.substr(0, eq)));
    }
    if (!first) first = file;
    models.push_back({run.substr(0, eq), std::move(file.predictions)});
  }
  if (std::none_of(models.begin(), models.end(), [&](const auto& m) { return m.name == options.reference; })) {
    throw UsageError(fmt::format("reference model '{}' is not among the runs", options.reference));
  }
  const auto table = evaluation::significance_table(models, options.reference);
  if (options.output) {
    write_text(*options.output, table);
    out << fmt::format("compared {} models against {}\n", models.size(), options.reference);
  } else {
    out << table;
  }
}

void run_explain(const ExplainOptions& options, std::ostream& out) {
  const auto classifier = load_classifier(options.model);
  const auto& model = interpretable_model(classifier);
  const auto split = corpus::read_split(options.corpus);
  check_classes(classifier, split);
  const auto names = split.class_names();
  const auto& docs = split_docs(split, options.split);
  for (std::size_t index : options.documents) {
    if (index >= docs.size()) {
      throw UsageError(fmt::format("document {} out of range ({} documents in {})", index, docs.size(), options.split));
    }
    const auto& doc = docs[index];
    const auto highlighted = explain::extract_importance(model, doc);
    const auto predicted = argmax(model.predict(model.encode(doc)));
    out << fmt::format("document {} label {} predicted {}\n", index, doc.label, names.at(predicted));
    out << explain::render_terminal(highlighted, names);
    if (options.html_dir) {
      std::filesystem::create_directories(*options.html_dir);
      write_text(*options.html_dir / fmt::format("doc_{}.html", index), explain::render_html(highlighted, names));
    }
  }
}

void run_distill(const DistillOptions& options, std::ostream& out) {
  if (options.k == 0) throw UsageError("--k must be at least 1");
  const auto classifier = load_classifier(options.model);
  const auto& model = interpretable_model(classifier);
  const auto split = corpus::read_split(options.corpus);
  check_classes(classifier, split);
  auto distilled = explain::distill_top_k(model, split, options.k, options.corpus.string());
  explain::write_distilled(options.output, distilled);
  out << fmt::format("distilled {} documents to at most {} tokens\n",
                     split.train.size() + split.valid.size() + split.test.size(), options.k);
}

}  // namespace textclf::cli
