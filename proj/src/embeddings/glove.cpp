#include "textclf/embeddings/glove.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/common/rng.hpp"

namespace textclf::embeddings {
namespace {

struct GloveState {
  std::size_t dim;
  std::vector<double> main, context, bias, context_bias;
  std::vector<double> main_sq, context_sq, bias_sq, context_bias_sq;

  double* w(std::size_t i) { return main.data() + i * dim; }
  double* c(std::size_t j) { return context.data() + j * dim; }

  double residual(const Cooccurrence& cell) {
    const double* wi = w(cell.row);
    const double* cj = c(cell.col);
    double inner = 0.0;
    for (std::size_t k = 0; k < dim; ++k) inner += wi[k] * cj[k];
    return inner + bias[cell.row] + context_bias[cell.col] - std::log(cell.weight);
  }
};

double total_loss(GloveState& s, const std::vector<Cooccurrence>& cells, const GloveConfig& cfg) {
  double loss = 0.0;
  for (const auto& cell : cells) {
    const double r = s.residual(cell);
    loss += glove_weight(cell.weight, cfg.x_max, cfg.alpha) * r * r;
  }
  if (!std::isfinite(loss)) throw NumericError("embedding training produced a non-finite loss");
  return loss;
}

}  // namespace

double glove_weight(double x, double x_max, double alpha) {
  return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

GloveResult train_embeddings(const CooccurrenceTable& table, const Vocabulary& vocabulary, const GloveConfig& config) {
  if (table.empty()) throw DataError("co-occurrence table is empty");
  if (config.dim == 0 || config.learning_rate <= 0) throw UsageError("invalid embedding configuration");
  const std::size_t v = vocabulary.size();
  const std::size_t p = config.dim;
  std::vector<Cooccurrence> cells = table.cells();
  for (const auto& cell : cells) {
    if (cell.row >= v || cell.col >= v) throw DataError("co-occurrence index outside the vocabulary");
  }

  Rng rng(derive_seed(config.seed, "glove"));
  GloveState s{p, {}, {}, {}, {}, {}, {}, {}, {}};
  auto init = [&](std::vector<double>& values, std::size_t n) {
    values.resize(n);
    for (double& x : values) x = (rng.uniform() - 0.5) / static_cast<double>(p);
  };
  init(s.main, v * p);
  init(s.context, v * p);
  init(s.bias, v);
  init(s.context_bias, v);
  s.main_sq.assign(v * p, 1.0);
  s.context_sq.assign(v * p, 1.0);
  s.bias_sq.assign(v, 1.0);
  s.context_bias_sq.assign(v, 1.0);

  GloveResult result;
  result.initial_loss = total_loss(s, cells, config);
  const double lr = config.learning_rate;
  std::vector<double> grad_w(p), grad_c(p);
  for (std::size_t it = 0; it < config.iterations; ++it) {
    rng.shuffle(std::span<Cooccurrence>(cells));
    for (const auto& cell : cells) {
      const double fdiff = glove_weight(cell.weight, config.x_max, config.alpha) * s.residual(cell);
      double* wi = s.w(cell.row);
      double* cj = s.c(cell.col);
      double* wi_sq = s.main_sq.data() + cell.row * p;
      double* cj_sq = s.context_sq.data() + cell.col * p;
      for (std::size_t k = 0; k < p; ++k) {
        grad_w[k] = fdiff * cj[k];
        grad_c[k] = fdiff * wi[k];
      }
      for (std::size_t k = 0; k < p; ++k) {
        wi[k] -= lr * grad_w[k] / std::sqrt(wi_sq[k]);
        cj[k] -= lr * grad_c[k] / std::sqrt(cj_sq[k]);
        wi_sq[k] += grad_w[k] * grad_w[k];
        cj_sq[k] += grad_c[k] * grad_c[k];
      }
      s.bias[cell.row] -= lr * fdiff / std::sqrt(s.bias_sq[cell.row]);
      s.context_bias[cell.col] -= lr * fdiff / std::sqrt(s.context_bias_sq[cell.col]);
      s.bias_sq[cell.row] += fdiff * fdiff;
      s.context_bias_sq[cell.col] += fdiff * fdiff;
    }
    result.epoch_losses.push_back(total_loss(s, cells, config));
  }

  result.vectors.vocabulary = vocabulary;
  result.vectors.table = tensor::Tensor({v, p});
  auto out = result.vectors.table.data();
  for (std::size_t i = 0; i < v * p; ++i) out[i] = s.main[i] + s.context[i];
  return result;
}

void write_vectors(const std::filesystem::path& path, const WordVectors& vectors) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  char buffer[64];
  for (std::size_t i = 0; i < vectors.vocabulary.size(); ++i) {
    if (i == Vocabulary::kUnknown) continue;
    out << vectors.vocabulary.token(i);
    for (double x : vectors.table.row(i)) {
      auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
      out << ' ' << std::string_view(buffer, static_cast<std::size_t>(end - buffer));
    }
    out << '\n';
  }
}

WordVectors read_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::vector<std::string> tokens;
  std::vector<double> values;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::size_t n = 0;
    std::string number;
    while (fields >> number) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), x);
      if (ec != std::errc{} || ptr != number.data() + number.size()) {
        throw DataError(fmt::format("{}:{}: bad number '{}'", path.string(), line_no, number));
      }
      values.push_back(x);
      ++n;
    }
    if (dim == 0) dim = n;
    if (n == 0 || n != dim) throw DataError(fmt::format("{}:{}: inconsistent vector width", path.string(), line_no));
    tokens.push_back(std::move(token));
  }
  if (tokens.empty()) throw DataError(fmt::format("'{}' holds no vectors", path.string()));
  WordVectors vectors;
  vectors.vocabulary = Vocabulary::from_tokens(tokens);
  vectors.table = tensor::Tensor({tokens.size() + 1, dim});
  std::copy(values.begin(), values.end(), vectors.table.data().begin() + static_cast<std::ptrdiff_t>(dim));
  return vectors;
}

}  // namespace textclf::embeddings
