#include "textclf/corpus/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "textclf/common/errors.hpp"
#include "textclf/common/rng.hpp"

namespace textclf::corpus {
namespace {

constexpr std::string_view kOnsets[] = {"B", "C", "D", "F", "G", "L", "M", "N", "P", "R", "S", "T", "V", "Z",
                                        "BR", "CR", "PL", "ST", "TR", "GL"};
constexpr std::string_view kVowels[] = {"A", "E", "I", "O", "U"};

/// Draws pseudo-words of 2-4 syllables until `count` unused ones are found.
std::vector<std::string> draw_words(std::size_t count, std::set<std::string>& used, Rng& rng) {
  std::vector<std::string> words;
  while (words.size() < count) {
    const auto syllables = static_cast<std::size_t>(rng.between(2, 4));
    std::string word;
    for (std::size_t s = 0; s < syllables; ++s) {
      word += kOnsets[rng.below(std::size(kOnsets))];
      word += kVowels[rng.below(std::size(kVowels))];
    }
    if (used.insert(word).second) words.push_back(std::move(word));
  }
  return words;
}

std::string lower(std::string_view word) {
  std::string out(word);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double overlap_ratio(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end());
  std::set<std::string> sb(b.begin(), b.end());
  std::size_t shared = 0;
  for (const auto& w : sa) shared += sb.count(w);
  const std::size_t smaller = std::min(sa.size(), sb.size());
  return smaller == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(smaller);
}

}  // namespace

std::vector<std::size_t> class_size_profile(const std::vector<std::pair<std::size_t, std::size_t>>& groups) {
  std::vector<std::size_t> sizes;
  for (const auto& [count, size] : groups) sizes.insert(sizes.end(), count, size);
  return sizes;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  const std::size_t k = spec.class_sizes.empty() ? spec.num_classes : spec.class_sizes.size();
  if (k < 2) throw UsageError("synthetic corpus needs at least two classes");
  if (spec.keywords_per_class == 0 || spec.min_keywords == 0 || spec.min_keywords > spec.max_keywords ||
      spec.min_noise > spec.max_noise || spec.max_sentences == 0 || spec.span_days <= 0) {
    throw UsageError("inconsistent synthetic corpus ranges");
  }
  if (spec.keyword_overlap < 0.0 || spec.keyword_overlap >= 1.0) {
    throw UsageError("keyword_overlap must lie in [0, 1)");
  }

  Rng rng(derive_seed(spec.seed, "synthetic"));
  SyntheticCorpus corpus;
  const int width = k <= 100 ? 2 : 3;
  for (std::size_t c = 0; c < k; ++c) corpus.labels.push_back(fmt::format("C{:0{}}", c, width));

  std::set<std::string> used;
  for (std::size_t c = 0; c < k; ++c) corpus.keywords.push_back(draw_words(spec.keywords_per_class, used, rng));
  corpus.noise_words = draw_words(spec.noise_vocabulary, used, rng);

  const auto borrowed =
      static_cast<std::size_t>(spec.keyword_overlap * static_cast<double>(spec.keywords_per_class));
  if (borrowed > 0) {
    const auto original = corpus.keywords;
    for (std::size_t c = 0; c < k; ++c) {
      const auto& next = original[(c + 1) % k];
      for (std::size_t i = 0; i < borrowed; ++i) corpus.keywords[c][i] = next[next.size() - 1 - i];
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double ratio = overlap_ratio(corpus.keywords[a], corpus.keywords[b]);
      if (ratio > spec.max_overlap_ratio) {
        corpus.warnings.push_back(fmt::format("keyword overlap {:.3f} between {} and {} exceeds {:.3f}", ratio,
                                              corpus.labels[a], corpus.labels[b], spec.max_overlap_ratio));
      }
    }
  }

  std::vector<std::size_t> doc_class;
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t n = spec.class_sizes.empty() ? spec.docs_per_class : spec.class_sizes[c];
    doc_class.insert(doc_class.end(), n, c);
  }
  rng.shuffle(std::span<std::size_t>(doc_class));

  std::vector<int> offsets(doc_class.size());
  for (int& o : offsets) o = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.span_days)));
  std::sort(offsets.begin(), offsets.end());

  corpus.records.reserve(doc_class.size());
  for (std::size_t i = 0; i < doc_class.size(); ++i) {
    const std::size_t c = doc_class[i];
    const auto n_noise = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(spec.min_noise), static_cast<std::int64_t>(spec.max_noise)));
    const auto n_kw = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(spec.min_keywords), static_cast<std::int64_t>(spec.max_keywords)));

    std::vector<std::string> words;
    for (std::size_t w = 0; w < n_noise; ++w) {
      std::string word = lower(corpus.noise_words[rng.below(corpus.noise_words.size())]);
      if (rng.uniform() < 0.05) word += ',';
      words.push_back(std::move(word));
    }
    for (std::size_t w = 0; w < n_kw; ++w) {
      const auto& kw = corpus.keywords[c][rng.below(corpus.keywords[c].size())];
      const auto pos = static_cast<std::ptrdiff_t>(rng.below(words.size() + 1));
      words.insert(words.begin() + pos, lower(kw));
    }

    // Sentence boundaries become field boundaries: first sentence in
    // macroscopy, second in diagnosis, the rest in anamnesis.
    const auto max_s = std::min(spec.max_sentences, words.size());
    const auto n_sent = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_s)));
    std::vector<std::size_t> cuts;
    std::vector<std::size_t> candidates(words.size() - 1);
    std::iota(candidates.begin(), candidates.end(), std::size_t{1});
    rng.shuffle(std::span<std::size_t>(candidates));
    cuts.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n_sent - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(words.size());

    std::vector<std::string> sentences;
    std::size_t begin = 0;
    for (std::size_t cut : cuts) {
      std::string sentence;
      for (std::size_t w = begin; w < cut; ++w) {
        if (!sentence.empty()) sentence.push_back(' ');
        sentence += words[w];
      }
      sentences.push_back(std::move(sentence));
      begin = cut;
    }

    RawRecord record;
    if (sentences.size() == 1) {
      record.diagnosis = sentences[0];
    } else {
      record.macroscopy = sentences[0];
      record.diagnosis = sentences[1];
      if (sentences.size() > 2) {
        std::string rest;
        for (std::size_t s = 2; s < sentences.size(); ++s) {
          if (!rest.empty()) rest += ". ";
          rest += sentences[s];
        }
        record.anamnesis = std::move(rest);
      }
    }
    record.label = corpus.labels[c];
    record.inserted_at = spec.start_date + std::chrono::days{offsets[i]};
    corpus.records.push_back(std::move(record));
  }
  return corpus;
}

}  // namespace textclf::corpus
