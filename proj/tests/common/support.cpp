#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "aidapub/error.hpp"
#include "aidapub/vocab.hpp"

#ifndef AIDAPUB_TEST_DATA
#error "AIDAPUB_TEST_DATA must point at tests/data"
#endif

namespace aidapub::testing {

using rdf::NamedGraph;
using rdf::Term;
using rdf::Triple;

namespace {

Term iri(std::string_view s) { return Term::iri(s); }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

const std::vector<std::string> kAsciiWords = {
    "malaria", "is", "transmitted", "by", "mosquitoes", "APOE4", "binds", "DNA", "x-linked",
    "2.5", "IL-6", "the", "of", "in", "cirrhotic", "patients", "reduces", "risk", "A", "p53",
    "(TNF)", "protein", "H2O", "~5", "kinase_1", "co-factor", "mRNA", "levels", "BRCA1", "Z"};

const std::vector<std::string> kSymbolWords = {
    "+", "%", "<", ">", "&", "#", "/", ":", ",", "?", "!", "\"quoted\"", "it's", "a+b",
    "50%", "<i>", "x*y", "[1]", "{}", "a|b", "$", "@", "=", "^", "`", "\\", ";", "'", "100%"};

// Precomposed (NFC) text only, so that make() keeps the text as is.
const std::vector<std::string> kUnicodeWords = {
    "caf\xC3\xA9",                      // café
    "M\xC3\xBC" "ller",                 // Müller
    "Stra\xC3\x9F" "e",                 // Straße
    "\xCE\xB1-helix",                   // α-helix
    "\xCE\xB2-catenin",                 // β-catenin
    "\xD0\xB1\xD0\xB5\xD0\xBB\xD0\xBE\xD0\xBA",  // белок
    "\xE8\x9B\x8B\xE7\x99\xBD",         // 蛋白
    "\xC2\xB5M",                        // µM
    "37\xC2\xB0" "C",                   // 37°C
    "na\xC3\xAFve",                     // naïve
    "\xC3\x85ngstr\xC3\xB6m",           // Ångström
    "\xF0\x9D\x9B\xBC",                 // 𝛼 (outside the BMP)
    "\xE2\x89\xA5" "2",                 // ≥2
    "\xD7\xA9\xD7\x9C\xD7\x95\xD7\x9D",  // שלום
};

std::string join_words(std::mt19937_64& rng, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    const auto kind = uniform(rng, 0, 9);
    if (kind < 6) {
      out += pick(rng, kAsciiWords);
    } else if (kind < 8) {
      out += pick(rng, kUnicodeWords);
    } else {
      out += pick(rng, kSymbolWords);
    }
  }
  return out;
}

std::string random_lexical(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "plain", " ", "\"", "\\", "\n", "\t", "\r", "'", "\xC3\xA9", "\xF0\x9F\xA6\x9F", "{",
      "}", "<>", "@en", "^^", "#", ".", ";", ",", "a b c", "\"\"\"", "0"};
  std::string out;
  const auto n = uniform(rng, 0, 6);
  for (std::size_t i = 0; i < n; ++i) out += pick(rng, pieces);
  return out;
}

Term random_entity(std::mt19937_64& rng) {
  static const std::vector<std::string> names = {
      "malaria", "mosquito", "Anopheles", "APOE", "gene-1", "p_53", "x.y", "caf%C3%A9",
      "a(b)", "Insect", "liver", "%7Ebrace"};
  return iri("http://example.org/ns/" + pick(rng, names));
}

Term random_subject(std::mt19937_64& rng) {
  if (uniform(rng, 0, 4) == 0) return Term::blank("b" + std::to_string(uniform(rng, 0, 5)));
  return random_entity(rng);
}

Term random_object(std::mt19937_64& rng) {
  switch (uniform(rng, 0, 7)) {
    case 0:
    case 1:
      return random_entity(rng);
    case 2:
      return Term::blank("b" + std::to_string(uniform(rng, 0, 5)));
    case 3:
      return Term::literal(random_lexical(rng));
    case 4:
      return Term::literal(random_lexical(rng), {},
                           pick(rng, std::vector<std::string>{"en", "de-CH", "fr", "zh-Hant"}));
    case 5:
      return Term::literal(std::to_string(uniform(rng, 0, 100000)),
                           "http://www.w3.org/2001/XMLSchema#integer");
    case 6:
      return Term::literal("2013-0" + std::to_string(uniform(rng, 1, 9)) + "-11T08:00:00Z",
                           vocab::kXsdDateTime);
    default:
      return Term::literal(random_lexical(rng), "http://example.org/ns/customType");
  }
}

Triple random_triple(std::mt19937_64& rng) {
  static const std::vector<std::string> preds = {"isTransmittedBy", "binds", "label",
                                                 "partOf", "hasValue", "seeAlso"};
  return Triple(random_subject(rng), iri("http://example.org/ns/" + pick(rng, preds)),
                random_object(rng));
}

NamedGraph random_graph(std::mt19937_64& rng, std::string name, std::size_t lo, std::size_t hi) {
  NamedGraph g{std::move(name), {}};
  const auto n = uniform(rng, lo, hi);
  while (g.triples.size() < n) g.triples.insert(random_triple(rng));
  return g;
}

Provenance random_provenance(std::mt19937_64& rng) {
  Provenance p;
  p.attributed_to = "http://example.org/agent/" + std::to_string(uniform(rng, 0, 20));
  p.generated_at = Timestamp(std::chrono::seconds(uniform(rng, 946684800, 1893456000)));
  const auto derived = uniform(rng, 0, 3);
  for (std::size_t i = 0; i < derived; ++i) {
    p.derived_from.push_back(std::string(vocab::kPubmedPrefix) +
                             std::to_string(uniform(rng, 10000000, 30000000)));
  }
  p.channel = static_cast<Channel>(uniform(rng, 0, 5));
  p.certainty = static_cast<Certainty>(uniform(rng, 0, 3));
  if (uniform(rng, 0, 2) == 0) p.parameters_digest = std::string(64, 'a' + uniform(rng, 0, 5));
  return p;
}

}  // namespace

std::filesystem::path data_path(std::string_view name) {
  return std::filesystem::path(AIDAPUB_TEST_DATA) / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Timestamp fixed_time() { return *parse_timestamp("2012-11-05T14:07:00Z"); }

Provenance curator_provenance() {
  Provenance p;
  p.attributed_to = "http://example.org/agent/curator";
  p.generated_at = fixed_time();
  p.channel = Channel::Curator;
  p.certainty = Certainty::Established;
  return p;
}

std::string random_sentence_text(std::mt19937_64& rng) {
  while (true) {
    std::string text = join_words(rng, uniform(rng, 1, 14));
    // Avoid "..": the sentence must end in exactly one full stop.
    while (!text.empty() && text.back() == '.') text.pop_back();
    text += '.';
    if (!AidaSentence::defect(text)) return text;
  }
}

Nanopublication random_nanopub(std::mt19937_64& rng) {
  const Provenance prov = random_provenance(rng);
  const std::string salt = uniform(rng, 0, 3) == 0 ? "" : "salt" + std::to_string(rng() % 1000);
  switch (uniform(rng, 0, 2)) {
    case 0:
      return build_aida_nanopub(AidaSentence::make(random_sentence_text(rng)), prov, salt);
    case 1: {
      auto np = build_aida_nanopub(AidaSentence::make(random_sentence_text(rng)), prov, salt);
      const std::string base = np.uri + "#";
      NamedGraph body = random_graph(rng, "", 0, 4);
      std::vector<std::string> about;
      for (std::size_t i = uniform(rng, 0, 2); i > 0; --i) about.push_back(random_entity(rng).value());
      std::vector<NamedGraph> subs;
      const auto nsubs = uniform(rng, 0, 2);
      for (std::size_t i = 0; i < nsubs; ++i) {
        subs.push_back(random_graph(rng, base + "Sub" + std::to_string(i + 1), 1, 3));
      }
      if (nsubs == 2) {
        // Nest the second subgraph under the first as well.
        subs[0].triples.emplace(iri(subs[0].name), iri(vocab::kContainsGraph), iri(subs[1].name));
      }
      return attach_formalization(np, std::move(body), about, std::move(subs));
    }
    default: {
      std::vector<Triple> triples;
      for (std::size_t i = uniform(rng, 1, 5); i > 0; --i) triples.push_back(random_triple(rng));
      return build_assertion_nanopub(triples, prov, salt);
    }
  }
}

namespace {

constexpr std::string_view kFixtureUri = "http://example.org/np/closure";

Nanopublication closure_skeleton(bool cyclic) {
  const std::string u(kFixtureUri);
  const std::string a = u + "#Assertion", ah = u + "#Assertion_Head", b = u + "#Assertion_Body",
                    s1 = u + "#Vector", s2 = u + "#Taxonomy", p = u + "#Provenance",
                    i = u + "#PubInfo";
  const std::string ns = "http://example.org/ns/";
  Nanopublication np;
  np.uri = u;
  np.head.name = u + "#Head";
  np.head.triples = {
      Triple(iri(u), iri(vocab::kRdfType), iri(vocab::kNanopublication)),
      Triple(iri(u), iri(vocab::kHasAssertion), iri(a)),
      Triple(iri(u), iri(vocab::kHasProvenance), iri(p)),
      Triple(iri(u), iri(vocab::kHasPublicationInfo), iri(i)),
      Triple(iri(a), iri(vocab::kContainsGraph), iri(ah)),
  };
  auto add = [&](const std::string& name, std::set<Triple> triples) {
    np.graphs[name] = NamedGraph{name, std::move(triples)};
  };
  add(ah, {Triple(iri(a), iri(vocab::kAsSentence),
                  iri("http://purl.org/aida/Malaria+is+transmitted+by+mosquitoes.")),
           Triple(iri(a), iri(vocab::kAsFormula), iri(b))});
  add(b, {Triple(iri(ns + "malaria"), iri(ns + "isTransmittedBy"), iri(ns + "mosquito")),
          Triple(iri(b), iri(vocab::kRdfAbout), iri(ns + "malaria")),
          Triple(iri(b), iri(vocab::kContainsGraph), iri(s1))});
  add(s1, {Triple(iri(ns + "mosquito"), iri(vocab::kRdfType), iri(ns + "Insect")),
           Triple(iri(ns + "mosquito"), iri(ns + "genus"), Term::literal("Anopheles")),
           Triple(iri(s1), iri(vocab::kContainsGraph), iri(s2))});
  std::set<Triple> deepest = {
      Triple(iri(ns + "Insect"), iri(vocab::kRdfsLabel), Term::literal("insect", {}, "en"))};
  if (cyclic) deepest.emplace(iri(s2), iri(vocab::kContainsGraph), iri(b));
  add(s2, std::move(deepest));
  add(p, {Triple(iri(a), iri(vocab::kWasAttributedTo), iri("http://example.org/agent/curator"))});
  add(i, {Triple(iri(u), iri(vocab::kGeneratedAtTime),
                 Term::literal("2012-11-05T14:07:00Z", vocab::kXsdDateTime))});
  return np;
}

}  // namespace

ClosureFixture depth3_fixture() {
  ClosureFixture f{closure_skeleton(false), {}};
  const std::string ns = "http://example.org/ns/";
  const std::string a = std::string(kFixtureUri) + "#Assertion";
  const std::string b = std::string(kFixtureUri) + "#Assertion_Body";
  // Enumerated from the graphs above: Head -> Assertion_Head -> Body ->
  // Vector -> Taxonomy, linking triples left out.
  f.expected = {
      Triple(iri(a), iri(vocab::kAsSentence),
             iri("http://purl.org/aida/Malaria+is+transmitted+by+mosquitoes.")),
      Triple(iri(ns + "malaria"), iri(ns + "isTransmittedBy"), iri(ns + "mosquito")),
      Triple(iri(b), iri(vocab::kRdfAbout), iri(ns + "malaria")),
      Triple(iri(ns + "mosquito"), iri(vocab::kRdfType), iri(ns + "Insect")),
      Triple(iri(ns + "mosquito"), iri(ns + "genus"), Term::literal("Anopheles")),
      Triple(iri(ns + "Insect"), iri(vocab::kRdfsLabel), Term::literal("insect", {}, "en")),
  };
  return f;
}

Nanopublication cyclic_fixture() { return closure_skeleton(true); }

std::vector<Label> load_labels(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<Label> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() != 6) throw std::runtime_error("bad label line: " + line);
    Label l;
    l.line = std::stoul(f[0]);
    l.verdict = parse_verdict(f[1]).value();
    if (f[2] != "-") {
      std::istringstream vs(f[2]);
      std::string v;
      while (std::getline(vs, v, ',')) l.violations.insert(parse_violation(v).value());
    }
    if (f[3] != "-") l.rejecting_rule = f[3];
    if (f[4] != "-") l.strip_rule = f[4];
    l.text = f[5];
    for (std::size_t pos; (pos = l.text.find("\\x01")) != std::string::npos;) {
      l.text.replace(pos, 4, "\x01");
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<PlantedSentence> load_planted_corpus() {
  std::istringstream in(read_file(data_path("planted_corpus.tsv")));
  std::vector<PlantedSentence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() != 2) throw std::runtime_error("bad corpus line: " + line);
    out.push_back({f[0], f[1]});
  }
  return out;
}

PairScore score_pairs(const std::vector<RelationPair>& pairs,
                      const std::map<AidaUri, std::string>& group_of) {
  PairScore s;
  s.pairs = pairs.size();
  std::size_t intra = 0;
  std::set<AidaUri> connected;
  for (const auto& p : pairs) {
    if (group_of.at(p.a) == group_of.at(p.b)) {
      ++intra;
      connected.insert(p.a);
      connected.insert(p.b);
    }
  }
  s.purity = pairs.empty() ? 0.0 : static_cast<double>(intra) / static_cast<double>(pairs.size());
  s.connectivity = group_of.empty() ? 0.0
                                    : static_cast<double>(connected.size()) /
                                          static_cast<double>(group_of.size());
  return s;
}

namespace {

bool separated(const std::vector<SentenceVector>& v, const std::vector<std::size_t>& label) {
  double max_intra = 0.0;
  double min_inter = 2.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double d = cosine_distance(v[i], v[j]);
      if (label[i] == label[j]) {
        max_intra = std::max(max_intra, d);
      } else {
        min_inter = std::min(min_inter, d);
      }
    }
  }
  return min_inter > 2.0 * max_intra;
}

}  // namespace

std::vector<OracleCorpus> oracle_family() {
  std::vector<OracleCorpus> family;
  std::mt19937_64 rng(12);
  // Every split of 6..12 points into three groups of at least two.
  std::vector<std::vector<std::size_t>> shapes;
  for (std::size_t n = 6; n <= 12; ++n) {
    for (std::size_t a = 2; a <= n; ++a) {
      for (std::size_t b = 2; a + b + 2 <= n; ++b) {
        shapes.push_back({a, b, n - a - b});
      }
    }
  }
  std::size_t corpus_no = 0;
  for (const auto& shape : shapes) {
    while (true) {
      OracleCorpus c;
      c.name = "oracle-" + std::to_string(corpus_no) + "-" + std::to_string(shape[0]) + "/" +
               std::to_string(shape[1]) + "/" + std::to_string(shape[2]);
      // Private terms 10g..10g+3 per group, background term 99, and term 98
      // shared weakly by groups 0 and 1.
      const double background = static_cast<double>(uniform(rng, 0, 2));
      std::size_t point = 0;
      for (std::size_t g = 0; g < shape.size(); ++g) {
        for (std::size_t m = 0; m < shape[g]; ++m, ++point) {
          std::map<TermId, double> w;
          for (TermId t = 0; t < 4; ++t) w[10 * g + t] = static_cast<double>(uniform(rng, 3, 5));
          w[99] = background;
          if (g < 2) w[98] = static_cast<double>(uniform(rng, 0, 1));
          const auto uri = encode_uri(AidaSentence::make(
              "Oracle corpus " + std::to_string(corpus_no) + " point " + std::to_string(point) + "."));
          c.vectors.push_back(SentenceVector::from_weights(uri, std::move(w)).normalized());
          c.group.push_back(g);
        }
      }
      // Redraw the rare draw that does not meet the separation margin.
      if (separated(c.vectors, c.group)) {
        family.push_back(std::move(c));
        break;
      }
    }
    ++corpus_no;
  }
  return family;
}

std::optional<std::vector<std::size_t>> brute_force_partition(const OracleCorpus& c) {
  const std::size_t n = c.vectors.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = cosine_distance(c.vectors[i], c.vectors[j]);
  }
  // Enumerate every partition into three non-empty blocks (restricted growth
  // strings) and keep those where each intra distance is under half of each
  // inter distance.
  std::vector<std::size_t> label(n, 0);
  std::vector<std::vector<std::size_t>> found;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (found.size() > 1) return;
    if (i == n) {
      if (used != 3) return;
      double max_intra = 0.0, min_inter = 2.0;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          if (label[p] == label[q]) {
            max_intra = std::max(max_intra, d[p][q]);
          } else {
            min_inter = std::min(min_inter, d[p][q]);
          }
        }
      }
      if (min_inter > 2.0 * max_intra) found.push_back(label);
      return;
    }
    if (n - i < 3 - used) return;
    for (std::size_t l = 0; l <= std::min<std::size_t>(used, 2); ++l) {
      label[i] = l;
      rec(i + 1, std::max(used, l + 1));
    }
  };
  rec(0, 0);
  if (found.size() != 1) return std::nullopt;
  return found[0];
}

std::vector<std::size_t> block_of(const std::vector<std::size_t>& labels, std::size_t x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == labels[x]) out.push_back(i);
  }
  return out;
}

ClusterParams small_corpus_params(std::size_t n) {
  ClusterParams p;
  p.n1 = n - 1;
  p.n2 = 0;
  return p;
}

std::vector<AidaSentence> orthogonal_corpus(std::size_t n) {
  std::vector<AidaSentence> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string s = std::to_string(i);
    out.push_back(AidaSentence::make("Alpha" + s + " beta" + s + " gamma" + s + "."));
  }
  return out;
}

std::vector<AidaSentence> duplicate_corpus(std::size_t n) {
  return std::vector<AidaSentence>(n, AidaSentence::make("Malaria is transmitted by mosquitoes."));
}

}  // namespace aidapub::testing
