#include "textclf/corpus/preprocess.hpp"

#include <cctype>
#include <map>

namespace textclf::corpus {
namespace {

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string upper(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

void append_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t first = 0;
  while (first < chunk.size() && is_punct(chunk[first])) ++first;
  if (first == chunk.size()) {
    for (char c : chunk) out.emplace_back(1, c);
    return;
  }
  std::size_t last = chunk.size();
  while (last > first && is_punct(chunk[last - 1])) --last;
  for (std::size_t i = 0; i < first; ++i) out.emplace_back(1, chunk[i]);
  out.push_back(upper(chunk.substr(first, last - first)));
  for (std::size_t i = last; i < chunk.size(); ++i) out.emplace_back(1, chunk[i]);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) append_chunk(text.substr(i, j - i), tokens);
    i = j;
  }
  return tokens;
}

std::optional<Document> preprocess(const RawRecord& record) {
  Document doc;
  for (const auto* field : {&record.macroscopy, &record.diagnosis, &record.anamnesis}) {
    if (!field->has_value()) continue;
    std::vector<std::string> tokens = tokenize(**field);
    if (tokens.empty()) continue;
    if (!doc.tokens.empty()) doc.tokens.emplace_back(kFieldSeparator);
    doc.tokens.insert(doc.tokens.end(), std::make_move_iterator(tokens.begin()),
                      std::make_move_iterator(tokens.end()));
  }
  if (doc.tokens.empty()) return std::nullopt;
  doc.label = record.label.value_or("");
  doc.inserted_at = record.inserted_at;
  return segment_sentences(std::move(doc));
}

Document segment_sentences(Document doc) {
  doc.sentences.clear();
  std::size_t begin = 0;
  for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
    if (doc.tokens[t] == kFieldSeparator) {
      doc.sentences.push_back({begin, t + 1});
      begin = t + 1;
    }
  }
  if (begin < doc.tokens.size()) doc.sentences.push_back({begin, doc.tokens.size()});
  return doc;
}

std::vector<Document> deduplicate(std::span<const Document> docs) {
  // text -> index of the current survivor
  std::map<std::vector<std::string>, std::size_t> keeper;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto [it, inserted] = keeper.emplace(docs[i].tokens, i);
    if (!inserted && docs[i].inserted_at < docs[it->second].inserted_at) it->second = i;
  }
  std::vector<bool> keep(docs.size(), false);
  for (const auto& [tokens, index] : keeper) keep[index] = true;
  std::vector<Document> out;
  out.reserve(keeper.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (keep[i]) out.push_back(docs[i]);
  }
  return out;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string text;
  for (const auto& t : tokens) {
    if (!text.empty()) text.push_back(' ');
    text += t;
  }
  return text;
}

RawRecord to_record(const Document& doc) {
  RawRecord record;
  record.diagnosis = join_tokens(doc.tokens);
  if (!doc.label.empty()) record.label = doc.label;
  record.inserted_at = doc.inserted_at;
  return record;
}

}  // namespace textclf::corpus
