#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lgp/category.hpp"
#include "lgp/text.hpp"

namespace lgp {

struct LexiconEntry {
  std::string phrase;  // normalized: lowercase words joined by single spaces
  Category category = Category::kPmi;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// High-frequency indicators that do not count toward the paragraph filter.
std::set<std::string> default_exclusions();

class Lexicon {
 public:
  Lexicon() = default;

  // Validates and deduplicates entries. Rejects empty phrases, LUI entries
  // and phrases listed under two different categories.
  Lexicon(std::vector<LexiconEntry> entries, std::set<std::string> exclusions,
          std::string source);

  // The six-category library shipped with the toolkit.
  static const Lexicon& builtin();

  // One record per line: `CATEGORY<TAB>phrase`. Blank lines and lines
  // starting with '#' are ignored.
  static Lexicon parse(std::istream& in, std::string source);
  static Lexicon load(const std::filesystem::path& path);

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const std::set<std::string>& exclusions() const noexcept { return exclusions_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<Category> category_of(std::string_view phrase) const;
  bool is_excluded(std::string_view phrase) const;

  void set_exclusions(std::set<std::string> exclusions);

  // Serializes in the lexicon file format, grouped by category code.
  std::string dump() const;

 private:
  std::vector<LexiconEntry> entries_;
  std::set<std::string> exclusions_;
  std::string source_;
  std::unordered_map<std::string, Category> by_phrase_;
};

// "builtin" selects the shipped lexicon; anything else is a file path.
Lexicon load_lexicon(const std::string& source);

struct IndicatorMatch {
  std::uint64_t paragraph_id = 0;
  std::size_t token_begin = 0;  // [token_begin, token_end)
  std::size_t token_end = 0;
  std::size_t char_begin = 0;  // byte span in the paragraph text
  std::size_t char_end = 0;
  std::string phrase;
  Category category = Category::kPmi;
  bool excluded = false;  // phrase is in the lexicon's exclusion set

  std::size_t token_count() const noexcept { return token_end - token_begin; }

  friend bool operator==(const IndicatorMatch&, const IndicatorMatch&) = default;
};

// Token-level trie over the lexicon. Immutable once built and safe to share
// between threads.
class IndicatorMatcher {
 public:
  explicit IndicatorMatcher(const Lexicon& lexicon);

  // Case-insensitive, token-aligned, leftmost-longest, non-overlapping.
  std::vector<IndicatorMatch> find(const TokenizedParagraph& paragraph) const;

  const Lexicon& lexicon() const noexcept { return lexicon_; }
  std::size_t max_phrase_tokens() const noexcept { return max_len_; }

 private:
  static constexpr std::int32_t kNoWord = -1;

  std::int32_t word_id(std::string_view normalized) const;
  std::int32_t child(std::int32_t node, std::int32_t word) const;

  Lexicon lexicon_;
  std::unordered_map<std::string, std::int32_t> words_;
  std::unordered_map<std::uint64_t, std::int32_t> edges_;
  std::vector<std::int32_t> terminal_;  // node -> entry index or -1
  std::vector<bool> entry_excluded_;
  std::size_t max_len_ = 0;
};

std::vector<IndicatorMatch> find_indicators(const TokenizedParagraph& paragraph,
                                            const IndicatorMatcher& matcher);
std::vector<IndicatorMatch> find_indicators(const TokenizedParagraph& paragraph,
                                            const Lexicon& lexicon);

}  // namespace lgp
