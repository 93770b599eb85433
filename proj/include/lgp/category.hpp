#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace lgp {

// Logical indicator categories. The integer codes are part of the record
// format and must never be renumbered.
enum class Category : std::uint8_t {
  kPmi = 0,  // premise
  kCli = 1,  // conclusion
  kNti = 2,  // negative
  kAti = 3,  // adversative
  kCni = 4,  // coordinating
  kLui = 5,  // logic-unrelated; assigned only by the masker
};

inline constexpr std::size_t kCategoryCount = 6;
inline constexpr std::size_t kLexicalCategoryCount = 5;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::kPmi, Category::kCli, Category::kNti,
    Category::kAti, Category::kCni, Category::kLui};

constexpr int code(Category c) noexcept { return static_cast<int>(c); }

constexpr bool is_lexical(Category c) noexcept { return c != Category::kLui; }

constexpr std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::kPmi: return "PMI";
    case Category::kCli: return "CLI";
    case Category::kNti: return "NTI";
    case Category::kAti: return "ATI";
    case Category::kCni: return "CNI";
    case Category::kLui: return "LUI";
  }
  return "?";
}

std::optional<Category> category_from_code(int code) noexcept;

// Case-insensitive name lookup ("pmi", "PMI", ...).
std::optional<Category> parse_category(std::string_view name) noexcept;

}  // namespace lgp
