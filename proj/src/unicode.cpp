#include "aidapub/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "aidapub/error.hpp"

namespace aidapub::unicode {
namespace {

// Calls fn(cp, begin, end) for every code point; cp < 0 on a bad sequence.
template <typename Fn>
void scan(std::string_view text, Fn&& fn) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t begin = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    fn(c, static_cast<std::size_t>(begin), static_cast<std::size_t>(i));
  }
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  bool ok = true;
  scan(text, [&](UChar32 c, std::size_t, std::size_t) {
    if (c < 0) ok = false;
  });
  return ok;
}

std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(Errc::InvalidArgument, "ICU NFC normalizer unavailable");
  }
  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (normalizer->isNormalized(source, status) && U_SUCCESS(status) &&
      is_valid_utf8(text)) {
    return std::string(text);
  }
  status = U_ZERO_ERROR;
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(Errc::InvalidArgument, "NFC normalization failed");
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::size_t codepoint_count(std::string_view text) {
  std::size_t n = 0;
  scan(text, [&](UChar32, std::size_t, std::size_t) { ++n; });
  return n;
}

std::vector<char32_t> codepoints(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  scan(text, [&](UChar32 c, std::size_t, std::size_t) {
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  });
  return out;
}

std::string encode(char32_t cp) {
  char buf[4];
  int32_t i = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), i, 4, static_cast<UChar32>(cp), error);
  if (error) return "\xEF\xBF\xBD";
  return std::string(buf, static_cast<std::size_t>(i));
}

bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }

bool is_control(char32_t cp) {
  const auto c = static_cast<UChar32>(cp);
  return u_iscntrl(c) || c == 0x2028 || c == 0x2029 || c == 0x85;
}

bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }

std::string to_lower(std::string_view text) {
  auto s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

std::string upper_first(std::string_view text) {
  std::string out;
  bool done = false;
  scan(text, [&](UChar32 c, std::size_t begin, std::size_t end) {
    if (!done && c >= 0 && u_isalpha(c)) {
      out += encode(static_cast<char32_t>(u_toupper(c)));
      out.append(text.substr(end));
      done = true;
    } else if (!done) {
      out.append(text.substr(begin, end - begin));
    }
  });
  return out;
}

std::string_view trim(std::string_view text) {
  std::size_t first = text.size();
  std::size_t last = 0;
  scan(text, [&](UChar32 c, std::size_t begin, std::size_t end) {
    if (c >= 0 && u_isUWhiteSpace(c)) return;
    if (first == text.size()) first = begin;
    last = end;
  });
  if (first == text.size()) return {};
  return text.substr(first, last - first);
}

}  // namespace aidapub::unicode
