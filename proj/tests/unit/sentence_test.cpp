#include <gtest/gtest.h>

#include <random>

#include "aidapub/sentence.hpp"
#include "errc_matchers.hpp"
#include "support.hpp"

namespace aidapub {
namespace {

TEST(Codec, EncodesMalariaSentence) {
  const auto s = AidaSentence::make("Malaria is transmitted by mosquitoes.");
  EXPECT_EQ(encode_uri(s).str(), "http://purl.org/aida/Malaria+is+transmitted+by+mosquitoes.");
}

TEST(Codec, DecodesMalariaUri) {
  EXPECT_EQ(decode_uri("http://purl.org/aida/Malaria+is+transmitted+by+mosquitoes.").text(),
            "Malaria is transmitted by mosquitoes.");
}

TEST(Codec, SingleToken) {
  EXPECT_EQ(encode_uri(AidaSentence::make("A.")).str(), "http://purl.org/aida/A.");
}

TEST(Codec, LiteralPlusIsEscaped) {
  const auto s = AidaSentence::make("Protein X + cofactor binds DNA.");
  EXPECT_EQ(encode_uri(s).str(), "http://purl.org/aida/Protein+X+%2B+cofactor+binds+DNA.");
  EXPECT_EQ(decode_uri("http://purl.org/aida/Protein+X+%2B+cofactor+binds+DNA.").text(),
            "Protein X + cofactor binds DNA.");
}

TEST(Codec, UnreservedPassThroughOthersEscaped) {
  const auto s = AidaSentence::make("a-b_c~d(e) <f> 50% caf\xC3\xA9.");
  EXPECT_EQ(encode_uri(s).str(),
            "http://purl.org/aida/a-b_c~d(e)+%3Cf%3E+50%25+caf%C3%A9.");
}

TEST(Codec, DecodeAcceptsLowercaseHexAndCanonicalizes) {
  const auto u = AidaUri::parse("http://purl.org/aida/caf%c3%a9+%3cb%3e.");
  EXPECT_EQ(u.str(), "http://purl.org/aida/caf%C3%A9+%3Cb%3E.");
  EXPECT_EQ(u.sentence().text(), "caf\xC3\xA9 <b>.");
}

TEST(Codec, DecodeNormalizesToNfc) {
  // "e" followed by a combining acute accent decodes to the composed form.
  EXPECT_EQ(decode_uri("http://purl.org/aida/Caf%65%CC%81+opens.").text(), "Caf\xC3\xA9 opens.");
}

TEST(Codec, DecodeErrors) {
  EXPECT_ERRC(decode_uri("http://example.org/x"), Errc::BadPrefix);
  EXPECT_ERRC(decode_uri("http://purl.org/aida/Bad+%4"), Errc::MalformedEscape);
  EXPECT_ERRC(decode_uri("http://purl.org/aida/Bad+%ZZ."), Errc::MalformedEscape);
  EXPECT_ERRC(decode_uri("http://purl.org/aida/No+full+stop"), Errc::DecodedTextNotAida);
  EXPECT_ERRC(decode_uri("http://purl.org/aida/Two+stops.."), Errc::DecodedTextNotAida);
  EXPECT_ERRC(decode_uri("http://purl.org/aida/Line%0Abreak."), Errc::DecodedTextNotAida);
  EXPECT_ERRC(decode_uri("http://purl.org/aida/"), Errc::DecodedTextNotAida);
}

TEST(Sentence, Invariants) {
  EXPECT_ERRC(AidaSentence::make(""), Errc::InvalidSentence);
  EXPECT_ERRC(AidaSentence::make("."), Errc::InvalidSentence);
  EXPECT_ERRC(AidaSentence::make(" Leading space."), Errc::InvalidSentence);
  EXPECT_ERRC(AidaSentence::make("No stop"), Errc::InvalidSentence);
  EXPECT_ERRC(AidaSentence::make("Ellipsis.."), Errc::InvalidSentence);
  EXPECT_ERRC(AidaSentence::make("Tab\there."), Errc::InvalidSentence);
  EXPECT_ERRC(AidaSentence::make(std::string(500, 'a') + "."), Errc::InvalidSentence);
  EXPECT_NO_THROW(AidaSentence::make(std::string(499, 'a') + "."));
  // 499 two-byte letters plus the stop: 500 code points, 999 bytes.
  std::string wide;
  for (int i = 0; i < 499; ++i) wide += "\xC3\xA9";
  EXPECT_NO_THROW(AidaSentence::make(wide + "."));
}

TEST(Codec, IsAidaUri) {
  EXPECT_TRUE(is_aida_uri("http://purl.org/aida/A."));
  EXPECT_FALSE(is_aida_uri("http://purl.org/aida/A"));
  EXPECT_FALSE(is_aida_uri("urn:aidapub:abc"));
}

TEST(CodecProperty, RandomSentencesRoundtrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const auto s = AidaSentence::make(testing::random_sentence_text(rng));
    const auto u = encode_uri(s);
    ASSERT_TRUE(u.str().starts_with(kAidaPrefix));
    ASSERT_EQ(u.str().find(' '), std::string::npos);
    ASSERT_EQ(decode_uri(u.str()), s) << u.str();
    ASSERT_EQ(AidaUri::parse(u.str()), u);
  }
}

}  // namespace
}  // namespace aidapub
