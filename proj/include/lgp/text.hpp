#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lgp {

// Byte offsets [start, end) of one token inside the text it was cut from.
struct TokenSpan {
  std::uint32_t start = 0;
  std::uint32_t end = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// Any function text -> offset-carrying tokens can stand in for the default
// word tokenizer (e.g. a subword scheme).
using Tokenizer = std::function<std::vector<TokenSpan>(std::string_view)>;

// Word-level tokenizer over UTF-8:
//   * whitespace separates tokens and is never part of one;
//   * a word is a maximal run of letters/digits (any non-ASCII code point
//     that is not known punctuation or space counts as a letter);
//   * an apostrophe (', U+2018 or U+2019) between two word characters stays inside
//     the word, so "isn't" and "sentinel's" are single tokens;
//   * every other code point is a token of its own.
// Throws IngestError on malformed UTF-8.
std::vector<TokenSpan> tokenize_words(std::string_view text);

// Returns the byte offset of the first invalid UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view text) noexcept;

// Lowercases ASCII letters and maps U+2018/U+2019 to a straight apostrophe.
// Used for all lexicon comparisons.
void normalize_token(std::string_view surface, std::string& out);
std::string normalize_token(std::string_view surface);

// Tokenizes and normalizes a phrase, joining its words with single spaces.
std::string normalize_phrase(std::string_view phrase);

struct TokenizedParagraph {
  std::uint64_t id = 0;
  std::string source_id;
  std::size_t index = 0;  // position of the paragraph inside its source
  std::string text;       // token offsets are relative to this text
  std::vector<TokenSpan> tokens;

  std::size_t size() const noexcept { return tokens.size(); }

  std::string_view surface(std::size_t i) const noexcept {
    const TokenSpan& t = tokens[i];
    return std::string_view(text).substr(t.start, t.end - t.start);
  }
};

// Builds a paragraph from raw text with the given tokenizer.
TokenizedParagraph make_paragraph(std::string source_id, std::size_t index,
                                  std::string text,
                                  const Tokenizer& tokenizer = tokenize_words);

// Stable 64-bit id of (source id, paragraph index); identical on every
// platform and run.
std::uint64_t paragraph_id(std::string_view source_id, std::size_t index) noexcept;

}  // namespace lgp
