#include "lgp/text.hpp"

#include <limits>

#include "lgp/error.hpp"
#include "lgp/rng.hpp"

namespace lgp {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[i]; sets len. Returns kInvalid on
// malformed input (overlong forms, surrogates and values past U+10FFFF too).
char32_t decode(std::string_view text, std::size_t i, std::size_t& len) noexcept {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  std::size_t need;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3, cp = b0 & 0x07, min = 0x10000;
  } else {
    len = 1;
    return kInvalid;
  }
  if (i + need >= text.size()) {
    len = 1;
    return kInvalid;
  }
  for (std::size_t k = 1; k <= need; ++k) {
    const auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) {
      len = 1;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  len = need + 1;
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return kInvalid;
  return cp;
}

bool is_space(char32_t c) noexcept {
  switch (c) {
    case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000: case 0xFEFF:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200B;
  }
}

bool is_apostrophe(char32_t c) noexcept { return c == '\'' || c == 0x2018 || c == 0x2019; }

bool is_word(char32_t c) noexcept {
  if (c < 0x80) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  if (is_space(c)) return false;
  if (c >= 0x00A1 && c <= 0x00BF) return c == 0x00AA || c == 0x00B5 || c == 0x00BA;
  if (c == 0x00D7 || c == 0x00F7) return false;
  if (c >= 0x2010 && c <= 0x205E) return false;  // dashes, quotes, bullets, ...
  if (c >= 0x20A0 && c <= 0x20CF) return false;  // currency
  if (c >= 0x2190 && c <= 0x2BFF) return false;  // arrows, math, boxes, symbols
  if (c >= 0x3000 && c <= 0x303F) return false;  // CJK punctuation
  if (c >= 0xFF01 && c <= 0xFF0F) return false;
  return true;
}

}  // namespace

std::size_t find_invalid_utf8(std::string_view text) noexcept {
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = 0;
    if (decode(text, i, len) == kInvalid) return i;
    i += len;
  }
  return std::string_view::npos;
}

std::vector<TokenSpan> tokenize_words(std::string_view text) {
  if (text.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw IngestError("text too large for 32-bit offsets", text.size());
  }
  std::vector<TokenSpan> tokens;
  tokens.reserve(text.size() / 5 + 1);
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    std::size_t len = 0;
    const char32_t c = decode(text, i, len);
    if (c == kInvalid) throw IngestError("invalid UTF-8", i);
    if (is_space(c)) {
      i += len;
      continue;
    }
    const std::size_t start = i;
    i += len;
    if (is_word(c)) {
      while (i < n) {
        std::size_t l1 = 0;
        const char32_t d = decode(text, i, l1);
        if (d == kInvalid) throw IngestError("invalid UTF-8", i);
        if (is_word(d)) {
          i += l1;
          continue;
        }
        if (is_apostrophe(d) && i + l1 < n) {
          std::size_t l2 = 0;
          const char32_t e = decode(text, i + l1, l2);
          if (e != kInvalid && is_word(e)) {
            i += l1 + l2;
            continue;
          }
        }
        break;
      }
    }
    tokens.push_back({static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(i)});
  }
  return tokens;
}

void normalize_token(std::string_view surface, std::string& out) {
  out.clear();
  for (std::size_t i = 0; i < surface.size(); ++i) {
    const char ch = surface[i];
    if (ch >= 'A' && ch <= 'Z') {
      out.push_back(static_cast<char>(ch - 'A' + 'a'));
    } else if (ch == '\xE2' && i + 2 < surface.size() && surface[i + 1] == '\x80' &&
               (surface[i + 2] == '\x98' || surface[i + 2] == '\x99')) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(ch);
    }
  }
}

std::string normalize_token(std::string_view surface) {
  std::string out;
  normalize_token(surface, out);
  return out;
}

std::string normalize_phrase(std::string_view phrase) {
  std::string out;
  std::string word;
  for (const TokenSpan& t : tokenize_words(phrase)) {
    normalize_token(phrase.substr(t.start, t.end - t.start), word);
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

TokenizedParagraph make_paragraph(std::string source_id, std::size_t index,
                                  std::string text, const Tokenizer& tokenizer) {
  TokenizedParagraph p;
  p.id = paragraph_id(source_id, index);
  p.source_id = std::move(source_id);
  p.index = index;
  p.text = std::move(text);
  p.tokens = tokenizer(p.text);
  return p;
}

std::uint64_t paragraph_id(std::string_view source_id, std::size_t index) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char ch : source_id) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return mix64(h ^ mix64(static_cast<std::uint64_t>(index) + 0x9e3779b97f4a7c15ULL));
}

}  // namespace lgp
