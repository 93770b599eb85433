#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgp/lexicon.hpp"
#include "lgp/text.hpp"

namespace lgp {

struct SourceDocument {
  std::string source_id;
  std::string text;
};

// Paragraphs are separated by one or more blank (whitespace-only) lines.
// Empty paragraphs are dropped; paragraph indices count kept paragraphs.
std::vector<TokenizedParagraph> split_paragraphs(const SourceDocument& document,
                                                 const Tokenizer& tokenizer = tokenize_words);

// Blanks out lines that are residue of wiki extraction (<doc ...> wrappers,
// templates, table rows, headings, category/file links). Blanked lines keep
// paragraph boundaries intact.
std::string strip_wiki_markup(std::string_view text);

// Reads documents from a plain text file, a line-delimited records file
// (*.jsonl / *.ndjson with {"id": ..., "text": ...}) or a directory of those
// (recursively, sorted by path).
std::vector<SourceDocument> read_sources(const std::filesystem::path& path);

struct FilterPolicy {
  std::size_t min_tokens = 6;
  std::size_t min_indicators = 1;
  std::optional<double> min_density;  // indicators per 100 tokens

  void validate() const;
};

enum class DropReason { kKept, kTooShort, kTooFewIndicators, kTooSparse };

// Non-excluded matches only.
std::size_t counted_indicators(std::span<const IndicatorMatch> matches) noexcept;

DropReason evaluate_paragraph(const TokenizedParagraph& paragraph,
                              std::span<const IndicatorMatch> matches,
                              const FilterPolicy& policy) noexcept;

std::vector<TokenizedParagraph> filter_paragraphs(std::vector<TokenizedParagraph> paragraphs,
                                                  const IndicatorMatcher& matcher,
                                                  const FilterPolicy& policy);
std::vector<TokenizedParagraph> filter_paragraphs(std::vector<TokenizedParagraph> paragraphs,
                                                  const Lexicon& lexicon,
                                                  const FilterPolicy& policy);

}  // namespace lgp
