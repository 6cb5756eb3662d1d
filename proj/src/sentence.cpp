#include "aidapub/sentence.hpp"

#include "aidapub/error.hpp"
#include "aidapub/unicode.hpp"

namespace aidapub {
namespace {

bool is_unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '~' ||
         c == '(' || c == ')' || c == '-';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::optional<std::string> AidaSentence::defect(std::string_view text) {
  if (text.empty()) return "sentence is empty";
  if (!unicode::is_valid_utf8(text)) return "sentence is not valid UTF-8";
  const auto cps = unicode::codepoints(text);
  if (cps.size() > kMaxSentenceLength) {
    return "sentence exceeds " + std::to_string(kMaxSentenceLength) + " characters";
  }
  for (char32_t cp : cps) {
    if (unicode::is_control(cp)) return "sentence contains a control character or line break";
  }
  if (unicode::is_space(cps.front()) || unicode::is_space(cps.back())) {
    return "sentence has leading or trailing whitespace";
  }
  if (cps.back() != U'.') return "sentence does not end with a full stop";
  if (cps.size() >= 2 && cps[cps.size() - 2] == U'.') {
    return "sentence ends with more than one full stop";
  }
  if (cps.size() == 1) return "sentence has no content before the full stop";
  return std::nullopt;
}

AidaSentence AidaSentence::make(std::string_view text) {
  std::string normalized = unicode::nfc(text);
  if (auto why = defect(normalized)) {
    throw Error(Errc::InvalidSentence, *why + ": \"" + normalized + "\"");
  }
  return AidaSentence(std::move(normalized));
}

AidaUri encode_uri(const AidaSentence& sentence) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out(kAidaPrefix);
  out.reserve(kAidaPrefix.size() + sentence.text().size() * 2);
  for (unsigned char c : sentence.text()) {
    if (c == ' ') {
      out += '+';
    } else if (is_unreserved(c)) {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return AidaUri(std::move(out));
}

AidaSentence decode_uri(std::string_view uri) {
  if (!uri.starts_with(kAidaPrefix)) {
    throw Error(Errc::BadPrefix, "not an AIDA URI (expected prefix " +
                                     std::string(kAidaPrefix) + "): " + std::string(uri));
  }
  const std::string_view encoded = uri.substr(kAidaPrefix.size());
  std::string text;
  text.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    const char c = encoded[i];
    if (c == '+') {
      text += ' ';
    } else if (c == '%') {
      const int hi = i + 1 < encoded.size() ? hex_value(encoded[i + 1]) : -1;
      const int lo = i + 2 < encoded.size() ? hex_value(encoded[i + 2]) : -1;
      if (hi < 0 || lo < 0) {
        throw Error(Errc::MalformedEscape,
                    "malformed percent escape at offset " + std::to_string(i) +
                        " in " + std::string(uri));
      }
      text += static_cast<char>(hi * 16 + lo);
      i += 2;
    } else if (c == ' ' || c == '<' || c == '>' || c == '"' ||
               static_cast<unsigned char>(c) < 0x20) {
      throw Error(Errc::MalformedEscape,
                  "character not allowed unescaped in an IRI at offset " +
                      std::to_string(i) + " in " + std::string(uri));
    } else {
      text += c;
    }
  }
  if (!unicode::is_valid_utf8(text)) {
    throw Error(Errc::MalformedEscape, "escapes do not decode to UTF-8: " + std::string(uri));
  }
  std::string normalized = unicode::nfc(text);
  if (auto why = AidaSentence::defect(normalized)) {
    throw Error(Errc::DecodedTextNotAida, *why + ": " + std::string(uri));
  }
  return AidaSentence::make(normalized);
}

AidaUri AidaUri::parse(std::string_view uri) { return encode_uri(decode_uri(uri)); }

AidaSentence AidaUri::sentence() const { return decode_uri(uri_); }

bool is_aida_uri(std::string_view iri) {
  if (!iri.starts_with(kAidaPrefix)) return false;
  try {
    decode_uri(iri);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace aidapub
