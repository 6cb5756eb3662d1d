#pragma once

#include <string_view>

// Namespace and term IRIs used across the library.
namespace aidapub::vocab {

inline constexpr std::string_view kNp = "http://www.nanopub.org/nschema#";
inline constexpr std::string_view kNpx = "http://purl.org/nanopub/x/";
inline constexpr std::string_view kAida = "http://purl.org/aida/";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";

inline constexpr std::string_view kNanopublication = "http://www.nanopub.org/nschema#Nanopublication";
inline constexpr std::string_view kHasAssertion = "http://www.nanopub.org/nschema#hasAssertion";
inline constexpr std::string_view kHasProvenance = "http://www.nanopub.org/nschema#hasProvenance";
inline constexpr std::string_view kHasPublicationInfo = "http://www.nanopub.org/nschema#hasPublicationInfo";
inline constexpr std::string_view kContainsGraph = "http://www.nanopub.org/nschema#containsGraph";

inline constexpr std::string_view kAsSentence = "http://purl.org/nanopub/x/asSentence";
inline constexpr std::string_view kAsFormula = "http://purl.org/nanopub/x/asFormula";
inline constexpr std::string_view kHasSameMeaning = "http://purl.org/nanopub/x/hasSameMeaning";
inline constexpr std::string_view kHasRelatedMeaning = "http://purl.org/nanopub/x/hasRelatedMeaning";
inline constexpr std::string_view kAgreesWith = "http://purl.org/nanopub/x/agreesWith";
inline constexpr std::string_view kDisagreesWith = "http://purl.org/nanopub/x/disagreesWith";
inline constexpr std::string_view kIsConvincedBy = "http://purl.org/nanopub/x/isConvincedBy";
inline constexpr std::string_view kIsNotConvincedBy = "http://purl.org/nanopub/x/isNotConvincedBy";
inline constexpr std::string_view kCreatedByChannel = "http://purl.org/nanopub/x/createdByChannel";
inline constexpr std::string_view kHasCertainty = "http://purl.org/nanopub/x/hasCertainty";
inline constexpr std::string_view kParametersDigest = "http://purl.org/nanopub/x/parametersDigest";
inline constexpr std::string_view kMintSalt = "http://purl.org/nanopub/x/mintSalt";
inline constexpr std::string_view kPerson = "http://purl.org/nanopub/x/Person";
inline constexpr std::string_view kBot = "http://purl.org/nanopub/x/Bot";

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
/// Used verbatim as a predicate to mark entities a formalization must mention.
inline constexpr std::string_view kRdfAbout = "http://www.w3.org/1999/02/22-rdf-syntax-ns#about";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kXsdDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";

inline constexpr std::string_view kWasAttributedTo = "http://www.w3.org/ns/prov#wasAttributedTo";
inline constexpr std::string_view kGeneratedAtTime = "http://www.w3.org/ns/prov#generatedAtTime";
inline constexpr std::string_view kWasDerivedFrom = "http://www.w3.org/ns/prov#wasDerivedFrom";

inline constexpr std::string_view kNanopubUriPrefix = "urn:aidapub:";
inline constexpr std::string_view kPubmedPrefix = "http://www.ncbi.nlm.nih.gov/pubmed/";

}  // namespace aidapub::vocab
