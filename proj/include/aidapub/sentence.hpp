#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace aidapub {

inline constexpr std::string_view kAidaPrefix = "http://purl.org/aida/";
inline constexpr std::size_t kMaxSentenceLength = 500;  // code points

/// A well-formed claim sentence in NFC. Construction enforces the surface
/// invariants only (single line, trimmed, one terminal full stop, length
/// cap); AIDA compliance proper is judged by validate().
class AidaSentence {
 public:
  /// Normalizes to NFC, then checks invariants. Throws InvalidSentence.
  static AidaSentence make(std::string_view text);

  /// Why `text` (taken as-is, no normalization) is not a well-formed
  /// sentence, or nullopt when it is.
  static std::optional<std::string> defect(std::string_view text);

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const AidaSentence&, const AidaSentence&) = default;
  friend auto operator<=>(const AidaSentence&, const AidaSentence&) = default;

 private:
  explicit AidaSentence(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

/// An IRI under kAidaPrefix in canonical encoding, i.e. always equal to
/// encode_uri of the sentence it denotes.
class AidaUri {
 public:
  /// Decodes and re-encodes, so any accepted spelling maps to the canonical
  /// one. Throws BadPrefix, MalformedEscape or DecodedTextNotAida.
  static AidaUri parse(std::string_view uri);

  const std::string& str() const noexcept { return uri_; }
  AidaSentence sentence() const;

  friend bool operator==(const AidaUri&, const AidaUri&) = default;
  friend auto operator<=>(const AidaUri&, const AidaUri&) = default;

 private:
  friend AidaUri encode_uri(const AidaSentence& sentence);
  explicit AidaUri(std::string uri) : uri_(std::move(uri)) {}
  std::string uri_;
};

/// Spaces become "+"; [A-Za-z0-9._~()-] pass through; every other byte of
/// the UTF-8 text, "+" included, becomes %XX with uppercase hex.
AidaUri encode_uri(const AidaSentence& sentence);

/// Inverse of encode_uri. Lowercase hex and raw (non-escaped) IRI characters
/// are accepted; the result is normalized to NFC.
AidaSentence decode_uri(std::string_view uri);

bool is_aida_uri(std::string_view iri);

}  // namespace aidapub
