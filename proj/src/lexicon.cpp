#include "lgp/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "lgp/error.hpp"

namespace lgp {
namespace {

struct BuiltinLibrary {
  Category category;
  std::initializer_list<const char*> phrases;
};

// Indicator libraries per category. "nevertheless" appears twice in the
// adversative list it was transcribed from; the constructor deduplicates.
const BuiltinLibrary kBuiltinLibraries[] = {
    {Category::kPmi,
     {"given that", "seeing that", "for the reason that", "owing to",
      "as indicated by", "on the grounds that", "on account of", "considering",
      "because of", "due to", "now that", "may be inferred from", "by virtue of",
      "in view of", "for the sake of", "thanks to", "as long as", "based on that",
      "as a result of", "considering that", "inasmuch as", "if and only if",
      "according to", "in that", "only if", "because", "depend on", "rely on"}},
    {Category::kCli,
     {"conclude that", "entail that", "infer that", "that is why", "therefore",
      "thereby", "wherefore", "accordingly", "hence", "thus", "consequently",
      "whence", "so that", "it follows that", "imply that", "as a result",
      "suggest that", "prove that", "as a conclusion", "conclusively",
      "for this reason", "as a consequence", "on that account", "in conclusion",
      "to that end", "because of this", "that being so", "ergo", "in this way",
      "in this manner", "by such means", "as it turns out", "result in",
      "in order that", "show that", "eventually"}},
    {Category::kNti,
     {"not", "neither", "none of", "unable", "few", "little", "hardly", "merely",
      "seldom", "without", "never", "nobody", "nothing", "nowhere", "rarely",
      "scarcely", "barely", "no longer", "isn't", "aren't", "wasn't", "weren't",
      "can't", "cannot", "couldn't", "won't", "wouldn't", "don't", "doesn't",
      "didn't", "haven't", "hasn't"}},
    {Category::kAti,
     {"although", "though", "but", "nevertheless", "however", "instead of",
      "nonetheless", "yet", "rather", "whereas", "otherwise", "conversely",
      "on the contrary", "even", "nevertheless", "despite", "in spite of",
      "in contrast", "even if", "even though", "unless", "regardless of",
      "reckless of"}},
    {Category::kCni,
     {"and", "or", "nor", "also", "moreover", "in addition", "on the other hand",
      "meanwhile", "further", "afterward", "next", "besides", "additionally",
      "meantime", "furthermore", "as well", "simultaneously", "either", "both",
      "similarly", "likewise"}},
};

std::string_view trim(std::string_view s) {
  const auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::set<std::string> default_exclusions() {
  return {"and", "or", "also", "both", "even", "further", "next", "either"};
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries, std::set<std::string> exclusions,
                 std::string source)
    : source_(std::move(source)) {
  entries_.reserve(entries.size());
  for (LexiconEntry& e : entries) {
    if (e.category == Category::kLui) {
      throw ValidationError("lexicon", "LUI cannot be assigned to phrase '" + e.phrase + "'");
    }
    std::string phrase = normalize_phrase(e.phrase);
    if (phrase.empty()) throw ValidationError("lexicon", "empty phrase");
    auto [it, inserted] = by_phrase_.emplace(phrase, e.category);
    if (!inserted) {
      if (it->second != e.category) {
        throw ValidationError("lexicon", "phrase '" + phrase + "' listed under both " +
                                             std::string(to_string(it->second)) + " and " +
                                             std::string(to_string(e.category)));
      }
      continue;
    }
    entries_.push_back({std::move(phrase), e.category});
  }
  set_exclusions(std::move(exclusions));
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lexicon = [] {
    std::vector<LexiconEntry> entries;
    for (const BuiltinLibrary& lib : kBuiltinLibraries) {
      for (const char* phrase : lib.phrases) entries.push_back({phrase, lib.category});
    }
    return Lexicon(std::move(entries), default_exclusions(), "builtin");
  }();
  return lexicon;
}

Lexicon Lexicon::parse(std::istream& in, std::string source) {
  std::vector<LexiconEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("lexicon", line_no, "expected CATEGORY<TAB>phrase");
    }
    const std::string_view name = trim(view.substr(0, tab));
    const std::string_view phrase = trim(view.substr(tab + 1));
    const auto category = parse_category(name);
    if (!category) {
      throw ParseError("lexicon", line_no, "unknown category '" + std::string(name) + "'");
    }
    if (*category == Category::kLui) {
      throw ParseError("lexicon", line_no, "LUI is not a lexicon category");
    }
    if (phrase.empty()) throw ParseError("lexicon", line_no, "empty phrase");
    if (find_invalid_utf8(phrase) != std::string_view::npos) {
      throw ParseError("lexicon", line_no, "phrase is not valid UTF-8");
    }
    entries.push_back({std::string(phrase), *category});
  }
  return Lexicon(std::move(entries), default_exclusions(), std::move(source));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("lexicon", "cannot open lexicon file " + path.string());
  return parse(in, path.string());
}

std::optional<Category> Lexicon::category_of(std::string_view phrase) const {
  const auto it = by_phrase_.find(normalize_phrase(phrase));
  if (it == by_phrase_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::is_excluded(std::string_view phrase) const {
  return exclusions_.contains(normalize_phrase(phrase));
}

void Lexicon::set_exclusions(std::set<std::string> exclusions) {
  exclusions_.clear();
  for (const std::string& e : exclusions) {
    std::string n = normalize_phrase(e);
    if (!n.empty()) exclusions_.insert(std::move(n));
  }
}

std::string Lexicon::dump() const {
  std::ostringstream out;
  out << "# logical indicator lexicon (" << source_ << ")\n";
  out << "# CATEGORY<TAB>phrase; categories PMI=0 CLI=1 NTI=2 ATI=3 CNI=4\n";
  for (Category c : kAllCategories) {
    for (const LexiconEntry& e : entries_) {
      if (e.category == c) out << to_string(c) << '\t' << e.phrase << '\n';
    }
  }
  return out.str();
}

Lexicon load_lexicon(const std::string& source) {
  if (source.empty() || source == "builtin") return Lexicon::builtin();
  return Lexicon::load(source);
}

IndicatorMatcher::IndicatorMatcher(const Lexicon& lexicon) : lexicon_(lexicon) {
  terminal_.push_back(-1);
  std::int32_t next_node = 1;
  const auto& entries = lexicon_.entries();
  entry_excluded_.resize(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    entry_excluded_[e] = lexicon_.exclusions().contains(entries[e].phrase);
    std::int32_t node = 0;
    std::size_t len = 0;
    std::string_view rest = entries[e].phrase;
    while (!rest.empty()) {
      const auto space = rest.find(' ');
      const std::string word(rest.substr(0, space));
      rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
      auto [w, _] = words_.emplace(word, static_cast<std::int32_t>(words_.size()));
      const std::uint64_t key = (static_cast<std::uint64_t>(node) << 32) |
                                static_cast<std::uint32_t>(w->second);
      auto [edge, added] = edges_.emplace(key, next_node);
      if (added) {
        terminal_.push_back(-1);
        ++next_node;
      }
      node = edge->second;
      ++len;
    }
    terminal_[node] = static_cast<std::int32_t>(e);
    max_len_ = std::max(max_len_, len);
  }
}

std::int32_t IndicatorMatcher::word_id(std::string_view normalized) const {
  const auto it = words_.find(std::string(normalized));
  return it == words_.end() ? kNoWord : it->second;
}

std::int32_t IndicatorMatcher::child(std::int32_t node, std::int32_t word) const {
  const std::uint64_t key =
      (static_cast<std::uint64_t>(node) << 32) | static_cast<std::uint32_t>(word);
  const auto it = edges_.find(key);
  return it == edges_.end() ? -1 : it->second;
}

std::vector<IndicatorMatch> IndicatorMatcher::find(const TokenizedParagraph& paragraph) const {
  std::vector<IndicatorMatch> matches;
  const std::size_t n = paragraph.size();
  if (n == 0 || max_len_ == 0) return matches;

  std::vector<std::int32_t> ids(n);
  std::string buffer;
  for (std::size_t i = 0; i < n; ++i) {
    normalize_token(paragraph.surface(i), buffer);
    const auto it = words_.find(buffer);
    ids[i] = it == words_.end() ? kNoWord : it->second;
  }

  const auto& entries = lexicon_.entries();
  std::size_t i = 0;
  while (i < n) {
    std::int32_t node = 0;
    std::int32_t best = -1;
    std::size_t best_end = i;
    for (std::size_t j = i; j < n && j - i < max_len_ && ids[j] != kNoWord; ++j) {
      node = child(node, ids[j]);
      if (node < 0) break;
      if (terminal_[node] >= 0) {
        best = terminal_[node];
        best_end = j + 1;
      }
    }
    if (best < 0) {
      ++i;
      continue;
    }
    IndicatorMatch m;
    m.paragraph_id = paragraph.id;
    m.token_begin = i;
    m.token_end = best_end;
    m.char_begin = paragraph.tokens[i].start;
    m.char_end = paragraph.tokens[best_end - 1].end;
    m.phrase = entries[best].phrase;
    m.category = entries[best].category;
    m.excluded = entry_excluded_[best];
    matches.push_back(std::move(m));
    i = best_end;
  }
  return matches;
}

std::vector<IndicatorMatch> find_indicators(const TokenizedParagraph& paragraph,
                                            const IndicatorMatcher& matcher) {
  return matcher.find(paragraph);
}

std::vector<IndicatorMatch> find_indicators(const TokenizedParagraph& paragraph,
                                            const Lexicon& lexicon) {
  return IndicatorMatcher(lexicon).find(paragraph);
}

}  // namespace lgp
