#include "lgp/category.hpp"

#include <cctype>

namespace lgp {

std::optional<Category> category_from_code(int code) noexcept {
  if (code < 0 || code >= static_cast<int>(kCategoryCount)) return std::nullopt;
  return static_cast<Category>(code);
}

std::optional<Category> parse_category(std::string_view name) noexcept {
  if (name.size() != 3) return std::nullopt;
  for (Category c : kAllCategories) {
    std::string_view canonical = to_string(c);
    bool same = true;
    for (std::size_t i = 0; i < 3; ++i) {
      if (std::toupper(static_cast<unsigned char>(name[i])) != canonical[i]) {
        same = false;
        break;
      }
    }
    if (same) return c;
  }
  return std::nullopt;
}

}  // namespace lgp
