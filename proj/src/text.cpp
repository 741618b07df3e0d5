#include "sodia/text.hpp"

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>

#include <memory>

namespace sodia::text {

namespace {

bool valid_utf8(std::string_view s) {
    UErrorCode status = U_ZERO_ERROR;
    int32_t needed = 0;
    u_strFromUTF8(nullptr, 0, &needed, s.data(), static_cast<int32_t>(s.size()), &status);
    return status == U_BUFFER_OVERFLOW_ERROR || U_SUCCESS(status) || status == U_STRING_NOT_TERMINATED_WARNING;
}

std::string to_utf8(const icu::UnicodeString& u) {
    std::string out;
    u.toUTF8String(out);
    return out;
}

} // namespace

std::string trim(std::string_view utf8) {
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    return to_utf8(u.trim());
}

std::string to_lower(std::string_view utf8) {
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    return to_utf8(u.toLower(icu::Locale::getRoot()));
}

bool is_blank(std::string_view utf8) { return trim(utf8).empty(); }

std::optional<std::size_t> grapheme_count(std::string_view utf8) {
    if (!valid_utf8(utf8)) return std::nullopt;
    if (utf8.empty()) return 0;

    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it{icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status)};
    if (U_FAILURE(status)) return std::nullopt;
    it->setText(u);

    std::size_t count = 0;
    it->first();
    while (it->next() != icu::BreakIterator::DONE) ++count;
    return count;
}

bool is_single_grapheme(std::string_view utf8) {
    auto n = grapheme_count(utf8);
    return n && *n == 1;
}

} // namespace sodia::text
