#pragma once

#include <span>
#include <string>
#include <vector>

#include "textclf/explain/highlight.hpp"

namespace textclf::explain {

/// Colors assigned to relevant classes in order; reused cyclically when a
/// document has more relevant classes than entries.
inline constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                           "#9467bd", "#8c564b", "#e377c2", "#17becf"};
inline constexpr std::size_t kPaletteSize = std::size(kPalette);

/// Standalone HTML page: one span per token, underlined once per marked
/// class with a thickness and opacity set by the band, and a legend listing
/// the relevant classes.
std::string render_html(const HighlightedDocument& doc, std::span<const std::string> class_names);

/// Recovers the token sequence from render_html output.
std::vector<std::string> tokens_from_html(const std::string& html);

/// Plain-text rendering: marked tokens carry a suffix such as
/// "[OVARY+++,LUNG+]" (+++ high, ++ medium, + low). Without relevant classes
/// the output is the space-joined tokens.
std::string render_terminal(const HighlightedDocument& doc, std::span<const std::string> class_names);

}  // namespace textclf::explain
