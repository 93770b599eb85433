#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "lgp/category.hpp"
#include "lgp/lexicon.hpp"

namespace lgp {

enum class RepairMode { kDeleteAndRepair, kPlaceholder };

inline constexpr std::string_view kAblationPlaceholder = "[REMOVED]";

struct AblationSpec {
  std::array<bool, kLexicalCategoryCount> remove{};
  RepairMode mode = RepairMode::kDeleteAndRepair;

  bool removes(Category c) const noexcept {
    return is_lexical(c) && remove[static_cast<std::size_t>(c)];
  }

  // "pmi,cli", "nti", "all", ... ; LUI and unknown names are rejected.
  static AblationSpec parse(std::string_view categories,
                            RepairMode mode = RepairMode::kDeleteAndRepair);
  static AblationSpec all(RepairMode mode = RepairMode::kDeleteAndRepair);

  void validate() const;
};

struct AblationResult {
  std::string text;
  std::array<std::size_t, kLexicalCategoryCount> deletions{};
  int passes = 0;  // passes that removed something

  std::size_t total_deletions() const noexcept;
};

// Removes every occurrence of the spec's categories, re-matching until no
// removed-category phrase is left.
AblationResult ablate_text(std::string_view text, const IndicatorMatcher& matcher,
                           const AblationSpec& spec);
AblationResult ablate_text(std::string_view text, const Lexicon& lexicon,
                           const AblationSpec& spec);

}  // namespace lgp
