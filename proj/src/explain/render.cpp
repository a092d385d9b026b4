#include "textclf/explain/render.hpp"

#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace textclf::explain {
namespace {

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view text) {
  static const std::pair<std::string_view, char> entities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}};
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    bool replaced = false;
    if (text[i] == '&') {
      for (const auto& [entity, c] : entities) {
        if (text.substr(i, entity.size()) == entity) {
          out += c;
          i += entity.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out += text[i++];
  }
  return out;
}

int thickness(Band band) { return band == Band::High ? 3 : band == Band::Medium ? 2 : 1; }
double opacity(Band band) { return band == Band::High ? 1.0 : band == Band::Medium ? 0.6 : 0.3; }

std::string rgba(const char* hex, double alpha) {
  const auto value = static_cast<unsigned>(std::stoul(std::string(hex + 1), nullptr, 16));
  return fmt::format("rgba({},{},{},{})", (value >> 16) & 0xff, (value >> 8) & 0xff, value & 0xff, alpha);
}

const std::string& name_of(std::span<const std::string> names, std::size_t index) {
  if (index >= names.size()) throw std::invalid_argument(fmt::format("no name for class {}", index));
  return names[index];
}

}  // namespace

std::string render_html(const HighlightedDocument& doc, std::span<const std::string> class_names) {
  std::map<std::size_t, const char*> colors;
  for (std::size_t i = 0; i < doc.relevant_classes.size(); ++i) {
    colors[doc.relevant_classes[i]] = kPalette[i % kPaletteSize];
  }

  std::string out =
      "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>Word importance</title>\n"
      "<style>\nbody { font-family: sans-serif; line-height: 2.4; }\n"
      ".tok { padding-bottom: 2px; }\n.swatch { display: inline-block; width: 1em; height: 1em; "
      "margin-right: 0.4em; vertical-align: middle; }\n</style>\n</head>\n<body>\n<p class=\"doc\">";
  for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
    if (t > 0) out += ' ';
    const auto& marks = doc.marks.at(t);
    if (marks.empty()) {
      out += fmt::format("<span class=\"tok\">{}</span>", escape(doc.tokens[t]));
      continue;
    }
    // Stacked shadows draw one underline per class, each below the last.
    std::string data, shadows;
    int offset = 0;
    for (const auto& mark : marks) {
      offset += thickness(mark.band) + (shadows.empty() ? 0 : 1);
      if (!data.empty()) data += ' ';
      data += fmt::format("{}:{}", mark.class_index, band_name(mark.band));
      if (!shadows.empty()) shadows += ", ";
      shadows += fmt::format("0 {}px 0 0 {}", offset, rgba(colors.at(mark.class_index), opacity(mark.band)));
    }
    out += fmt::format("<span class=\"tok\" data-marks=\"{}\" style=\"box-shadow: {}\">{}</span>", data, shadows,
                       escape(doc.tokens[t]));
  }
  out += "</p>\n";

  if (!doc.relevant_classes.empty()) {
    out += "<ul class=\"legend\">\n";
    for (std::size_t c : doc.relevant_classes) {
      out += fmt::format("<li data-class=\"{}\"><span class=\"swatch\" style=\"background: {}\"></span>{}</li>\n", c,
                         colors.at(c), escape(name_of(class_names, c)));
    }
    out += "</ul>\n";
    if (doc.relevant_classes.size() > kPaletteSize) {
      out += fmt::format(
          "<p class=\"legend-note\">{} relevant classes share {} colors; colors repeat in legend order.</p>\n",
          doc.relevant_classes.size(), kPaletteSize);
    }
    out +=
        "<p class=\"bands\">Underline thickness: 3px high (u &ge; 0.8), 2px medium (0.3 &le; u &lt; 0.8), "
        "1px low (0.1 &le; u &lt; 0.3).</p>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::vector<std::string> tokens_from_html(const std::string& html) {
  static constexpr std::string_view open = "<span class=\"tok\"";
  static constexpr std::string_view close = "</span>";
  std::vector<std::string> tokens;
  for (std::size_t pos = html.find(open); pos != std::string::npos; pos = html.find(open, pos)) {
    const std::size_t start = html.find('>', pos);
    const std::size_t end = start == std::string::npos ? start : html.find(close, start);
    if (end == std::string::npos) throw std::invalid_argument("truncated token span");
    tokens.push_back(unescape(std::string_view(html).substr(start + 1, end - start - 1)));
    pos = end + close.size();
  }
  return tokens;
}

std::string render_terminal(const HighlightedDocument& doc, std::span<const std::string> class_names) {
  std::string out;
  for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
    if (t > 0) out += ' ';
    out += doc.tokens[t];
    const auto& marks = doc.marks.at(t);
    if (marks.empty()) continue;
    out += '[';
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (i > 0) out += ',';
      out += name_of(class_names, marks[i].class_index);
      out += std::string(static_cast<std::size_t>(thickness(marks[i].band)), '+');
    }
    out += ']';
  }
  out += '\n';
  return out;
}

}  // namespace textclf::explain
