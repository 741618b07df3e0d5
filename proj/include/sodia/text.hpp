#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sodia::text {

/// Strips leading and trailing Unicode white space.
std::string trim(std::string_view utf8);

/// Unicode-aware lower-casing (root locale).
std::string to_lower(std::string_view utf8);

/// Number of extended grapheme clusters; nullopt when the input is not valid UTF-8.
std::optional<std::size_t> grapheme_count(std::string_view utf8);

bool is_single_grapheme(std::string_view utf8);

bool is_blank(std::string_view utf8);

} // namespace sodia::text
