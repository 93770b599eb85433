#include "lgp/ablate.hpp"

#include <algorithm>
#include <numeric>

#include "lgp/error.hpp"

namespace lgp {
namespace {

constexpr int kMaxPasses = 8;

bool is_hspace(char c) { return c == ' ' || c == '\t'; }

bool is_closing(char c) {
  return c == ',' || c == '.' || c == ';' || c == ':' || c == '!' || c == '?' || c == ')' ||
         c == ']';
}

bool is_opening(char c) { return c == '(' || c == '[' || c == '"' || c == '\''; }

bool ends_sentence(char c) { return c == '.' || c == '!' || c == '?' || c == '\n'; }

// Deletes text[begin, end) and repairs the seam: one space at most, no comma
// orphaned by the deletion, capitalized sentence start.
void delete_and_repair(std::string& text, std::size_t begin, std::size_t end) {
  std::size_t left_end = begin;
  while (left_end > 0 && is_hspace(text[left_end - 1])) --left_end;
  std::size_t right_begin = end;
  while (right_begin < text.size() && is_hspace(text[right_begin])) ++right_begin;
  const bool space_left = left_end < begin;
  const bool space_right = right_begin > end;

  std::string left = text.substr(0, left_end);
  std::string right = text.substr(right_begin);

  const bool sentence_start = left.empty() || ends_sentence(left.back());
  if (!right.empty() && right.front() == ',' &&
      (sentence_start || left.back() == ',' || left.back() == ';' || left.back() == ':' ||
       left.back() == '(')) {
    std::size_t skip = 1;
    while (skip < right.size() && is_hspace(right[skip])) ++skip;
    right.erase(0, skip);
  } else if (!left.empty() && left.back() == ',' &&
             (right.empty() || right.front() == '\n' || is_closing(right.front()))) {
    left.pop_back();
  }

  if (sentence_start && !right.empty() && right.front() >= 'a' && right.front() <= 'z') {
    right.front() = static_cast<char>(right.front() - 'a' + 'A');
  }

  std::string_view separator;
  if (!left.empty() && left.back() != '\n' && !right.empty() && right.front() != '\n' &&
      !is_closing(right.front())) {
    if (space_left || (space_right && !is_opening(left.back()))) separator = " ";
  }
  text = left;
  text += separator;
  text += right;
}

}  // namespace

AblationSpec AblationSpec::parse(std::string_view categories, RepairMode mode) {
  AblationSpec spec;
  spec.mode = mode;
  std::size_t pos = 0;
  while (pos <= categories.size()) {
    std::size_t cut = categories.find_first_of(",&+", pos);
    if (cut == std::string_view::npos) cut = categories.size();
    std::string_view name = categories.substr(pos, cut - pos);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    pos = cut + 1;
    if (name.empty()) continue;
    if (name.size() == 3 && (name[0] | 0x20) == 'a' && (name[1] | 0x20) == 'l' &&
        (name[2] | 0x20) == 'l') {
      spec.remove.fill(true);
      continue;
    }
    const auto c = parse_category(name);
    if (!c) throw ConfigError("ablate", "unknown category '" + std::string(name) + "'");
    if (!is_lexical(*c)) throw ConfigError("ablate", "LUI cannot be ablated");
    spec.remove[static_cast<std::size_t>(*c)] = true;
  }
  spec.validate();
  return spec;
}

AblationSpec AblationSpec::all(RepairMode mode) {
  AblationSpec spec;
  spec.remove.fill(true);
  spec.mode = mode;
  return spec;
}

void AblationSpec::validate() const {
  if (std::none_of(remove.begin(), remove.end(), [](bool b) { return b; })) {
    throw ConfigError("ablate", "at least one category must be removed");
  }
}

std::size_t AblationResult::total_deletions() const noexcept {
  return std::accumulate(deletions.begin(), deletions.end(), std::size_t{0});
}

AblationResult ablate_text(std::string_view text, const IndicatorMatcher& matcher,
                           const AblationSpec& spec) {
  spec.validate();
  AblationResult result;
  result.text = text;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    const TokenizedParagraph paragraph = make_paragraph("", 0, result.text);
    std::vector<IndicatorMatch> doomed;
    for (IndicatorMatch& m : matcher.find(paragraph)) {
      if (spec.removes(m.category)) doomed.push_back(std::move(m));
    }
    if (doomed.empty()) break;
    ++result.passes;
    for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) {
      ++result.deletions[static_cast<std::size_t>(it->category)];
      if (spec.mode == RepairMode::kPlaceholder) {
        result.text.replace(it->char_begin, it->char_end - it->char_begin, kAblationPlaceholder);
      } else {
        delete_and_repair(result.text, it->char_begin, it->char_end);
      }
    }
  }
  return result;
}

AblationResult ablate_text(std::string_view text, const Lexicon& lexicon,
                           const AblationSpec& spec) {
  return ablate_text(text, IndicatorMatcher(lexicon), spec);
}

}  // namespace lgp
