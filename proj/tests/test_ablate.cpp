#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lgp/ablate.hpp"
#include "lgp/error.hpp"
#include "lgp/ingest.hpp"
#include "lgp/lexicon.hpp"
#include "reference_lexicon.hpp"
#include "test_support.hpp"

using namespace lgp;

namespace {

const Lexicon& lexicon() {
  static const Lexicon lex = Lexicon::builtin();
  return lex;
}

const IndicatorMatcher& matcher() {
  static const IndicatorMatcher m(lexicon());
  return m;
}

std::vector<IndicatorMatch> matches_in(const std::string& text) {
  return find_indicators(make_paragraph("t", 0, text), matcher());
}

std::vector<std::string> fixture_paragraphs() {
  std::vector<std::string> out;
  for (const auto& doc : read_sources(lgp::testing::fixture_dir())) {
    for (const auto& p : split_paragraphs(doc)) out.push_back(p.text);
  }
  return out;
}

std::size_t removed_matches(const std::string& text, const AblationSpec& spec) {
  std::size_t n = 0;
  for (const auto& m : matches_in(text)) n += spec.removes(m.category);
  return n;
}

std::map<std::string, int> retained_phrases(const std::string& text, const AblationSpec& spec) {
  std::map<std::string, int> out;
  for (const auto& m : matches_in(text)) {
    if (!spec.removes(m.category)) ++out[m.phrase];
  }
  return out;
}

const std::vector<std::string> kAblationSpecs = {"pmi,cli", "nti", "ati", "cni", "all"};

}  // namespace

TEST_CASE("negation is removed from a simple sentence") {
  const AblationResult r =
      ablate_text("Tom no longer likes hamburgers.", lexicon(), AblationSpec::parse("nti"));
  CHECK(r.text == "Tom likes hamburgers.");
  CHECK(r.deletions[static_cast<int>(Category::kNti)] == 1);
  CHECK(r.total_deletions() == 1);
}

TEST_CASE("text without the removed category is returned unchanged") {
  const std::string text = "The cat sat on the mat because it was tired.";
  const AblationResult r = ablate_text(text, lexicon(), AblationSpec::parse("ati"));
  CHECK(r.text == text);
  CHECK(r.total_deletions() == 0);
  CHECK(r.passes == 0);
}

TEST_CASE("removing everything from the adversative example leaves no indicators") {
  for (const auto& ex : lgp::testing::reference_examples()) {
    const AblationResult r = ablate_text(ex.text, lexicon(), AblationSpec::all());
    CAPTURE(r.text);
    CHECK(matches_in(r.text).empty());
    CHECK(r.total_deletions() > 0);
  }
  const auto& ati = lgp::testing::reference_examples()[3];
  REQUIRE(ati.category == Category::kAti);
  const AblationResult r = ablate_text(ati.text, lexicon(), AblationSpec::parse("ati"));
  CHECK(r.text.find("On the contrary") == std::string::npos);
  CHECK(r.text.find("self-interested. The sentinel's behavior") != std::string::npos);
}

TEST_CASE("punctuation repair") {
  const AblationSpec cni = AblationSpec::parse("cni");
  CHECK(ablate_text("In addition, everyone must pass.", lexicon(), cni).text ==
        "Everyone must pass.");
  CHECK(ablate_text("It rained. Moreover, it was cold.", lexicon(), cni).text ==
        "It rained. It was cold.");
  const AblationSpec nti = AblationSpec::parse("nti");
  CHECK(ablate_text("He is not happy", lexicon(), nti).text == "He is happy");
  CHECK(ablate_text("Cats,  not dogs.", lexicon(), nti).text == "Cats, dogs.");
  CHECK(ablate_text("Not bad at all.", lexicon(), nti).text == "Bad at all.");
  const AblationSpec ati = AblationSpec::parse("ati");
  CHECK(ablate_text("It works, however.", lexicon(), ati).text == "It works.");
}

TEST_CASE("placeholder mode substitutes a marker") {
  const AblationResult r = ablate_text("Tom no longer likes hamburgers.", lexicon(),
                                       AblationSpec::parse("nti", RepairMode::kPlaceholder));
  CHECK(r.text == "Tom [REMOVED] likes hamburgers.");
  CHECK(r.total_deletions() == 1);
}

TEST_CASE("deletions that create new phrases are re-ablated") {
  // Removing "not" joins "as" and "a result" into a new match.
  const AblationResult r =
      ablate_text("It came as not a result of luck.", lexicon(), AblationSpec::parse("nti,cli"));
  CAPTURE(r.text);
  CHECK(removed_matches(r.text, AblationSpec::parse("nti,cli")) == 0);
}

TEST_CASE("spec parsing") {
  const AblationSpec joint = AblationSpec::parse("PMI&cli");
  CHECK(joint.removes(Category::kPmi));
  CHECK(joint.removes(Category::kCli));
  CHECK_FALSE(joint.removes(Category::kNti));
  CHECK_FALSE(joint.removes(Category::kLui));
  const AblationSpec every = AblationSpec::parse("all");
  for (Category c : kAllCategories) CHECK(every.removes(c) == is_lexical(c));
  CHECK(AblationSpec::parse("nti+ati").removes(Category::kAti));
  CHECK_THROWS_AS(AblationSpec::parse("lui"), ConfigError);
  CHECK_THROWS_AS(AblationSpec::parse(""), ConfigError);
  CHECK_THROWS_AS(AblationSpec::parse("pmi,xyz"), ConfigError);
  CHECK_THROWS_AS(AblationSpec{}.validate(), ConfigError);
}

TEST_CASE("fixture ablation is complete, idempotent and conservative") {
  const auto paragraphs = fixture_paragraphs();
  REQUIRE(paragraphs.size() == 200);
  for (const std::string& name : kAblationSpecs) {
    const AblationSpec spec = AblationSpec::parse(name);
    std::size_t deleted = 0;
    for (const std::string& text : paragraphs) {
      const AblationResult once = ablate_text(text, matcher(), spec);
      deleted += once.total_deletions();
      CAPTURE(name);
      CAPTURE(text);
      REQUIRE(removed_matches(once.text, spec) == 0);
      REQUIRE(once.passes <= 3);
      REQUIRE(ablate_text(once.text, matcher(), spec).text == once.text);
      REQUIRE(retained_phrases(once.text, spec) == retained_phrases(text, spec));
    }
    CHECK(deleted > 0);
  }
}

TEST_CASE("fuzzed ablation is complete and idempotent") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 1000; ++round) {
    const std::string text = lgp::testing::fuzz_text(rng, lexicon());
    const AblationSpec spec = AblationSpec::parse(kAblationSpecs[round % kAblationSpecs.size()]);
    const AblationResult once = ablate_text(text, matcher(), spec);
    CAPTURE(text);
    CAPTURE(once.text);
    REQUIRE(removed_matches(once.text, spec) == 0);
    REQUIRE(ablate_text(once.text, matcher(), spec).text == once.text);
  }
}
