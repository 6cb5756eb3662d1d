#include "aidapub/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "aidapub/clustering.hpp"
#include "aidapub/error.hpp"
#include "aidapub/extraction.hpp"
#include "aidapub/generif.hpp"
#include "aidapub/http_api.hpp"
#include "aidapub/portal.hpp"
#include "aidapub/trig.hpp"
#include "aidapub/unicode.hpp"
#include "aidapub/validate.hpp"

namespace aidapub {
namespace {

constexpr const char* kExtractorAgent = "http://purl.org/aidapub/agent/generif-extractor";
constexpr const char* kClusterAgent = "http://purl.org/aidapub/agent/sentence-clusterer";

std::string join(const auto& items, std::string_view sep) {
  std::string out;
  for (const auto& x : items) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  f.close();
  if (!f) throw Error(Errc::Io, "cannot write " + path);
}

std::string read_file(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream buf;
  buf << in->rdbuf();
  return buf.str();
}

Timestamp timestamp_flag(const std::string& text) {
  if (text.empty()) return now_utc();
  const auto ts = parse_timestamp(text);
  if (!ts) throw Error(Errc::InvalidArgument, "invalid --timestamp " + text);
  return *ts;
}

const RuleSet& rules_flag(const std::string& path, std::optional<RuleSet>& holder) {
  if (path.empty()) return default_ruleset();
  holder = RuleSet::load(path);
  return *holder;
}

// Sentences of a TriG file of AIDA nanopublications, or of a text file with
// one sentence per line.
std::vector<AidaSentence> load_sentences(const std::string& path) {
  const auto text = read_file(path);
  std::vector<AidaSentence> out;
  if (path.ends_with(".trig") || path.ends_with(".trig.gz")) {
    for (const auto& np : parse_trig(text).nanopubs)
      if (auto u = asserted_sentence(np)) out.push_back(u->sentence());
    return out;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto t = unicode::trim(line);
    if (t.empty()) continue;
    try {
      out.push_back(AidaSentence::make(t));
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

struct Parsed {
  std::string host = "127.0.0.1";
  int port = 8080;
};

Parsed parse_listen(const std::string& listen) {
  Parsed p;
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::InvalidArgument, "--listen must be HOST:PORT");
  p.host = listen.substr(0, colon);
  try {
    p.port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "invalid port in --listen " + listen);
  }
  if (p.port < 0 || p.port > 65535) throw Error(Errc::InvalidArgument, "port out of range");
  return p;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"aidapub: AIDA sentences and nanopublications"};
  app.require_subcommand(1);

  std::string text, uri;
  auto* encode = app.add_subcommand("encode", "Print the AIDA URI of a sentence");
  encode->add_option("sentence", text, "Sentence text")->required();
  auto* decode = app.add_subcommand("decode", "Print the sentence of an AIDA URI");
  decode->add_option("uri", uri, "AIDA URI")->required();

  std::string rules_path;
  std::vector<std::string> validate_texts;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Check sentences (arguments, or stdin lines); prints verdict TSV");
  validate_cmd->add_option("--rules", rules_path, "Rule file")->check(CLI::ExistingFile);
  validate_cmd->add_option("sentences", validate_texts, "Sentences to check");

  std::string input, out_path, report_path, report_format = "csv", agent, timestamp;
  auto* extract = app.add_subcommand("extract", "Extract AIDA nanopublications from GeneRIF TSV");
  extract->add_option("--input", input, "GeneRIF TSV, optionally gzip-compressed")
      ->required()
      ->check(CLI::ExistingFile);
  extract->add_option("--rules", rules_path, "Rule file")->check(CLI::ExistingFile);
  extract->add_option("--out", out_path, "Output TriG")->required();
  extract->add_option("--report", report_path, "Quality report file");
  extract->add_option("--report-format", report_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  extract->add_option("--agent", agent, "Extractor agent IRI")->default_val(kExtractorAgent);
  extract->add_option("--timestamp", timestamp, "Provenance time (default: now)");

  ClusterParams params;
  std::string csv_path;
  auto* cluster = app.add_subcommand("cluster", "Propose hasRelatedMeaning links by clustering");
  cluster->add_option("--input", input, "TriG of AIDA nanopubs, or one sentence per line")
      ->required()
      ->check(CLI::ExistingFile);
  cluster->add_option("--n1", params.n1, "First-level neighbours")->capture_default_str();
  cluster->add_option("--n2", params.n2, "Second-level neighbours")->capture_default_str();
  cluster->add_option("--k", params.k, "Clusters per k-means run")->capture_default_str();
  cluster->add_option("--reps", params.repetitions, "k-means repetitions")->capture_default_str();
  cluster->add_option("--tau", params.tau, "Isolate threshold on median distance")
      ->capture_default_str();
  cluster->add_option("--quorum", params.quorum, "Co-membership quorum")->capture_default_str();
  cluster->add_option("--seed", params.seed, "Random seed")->capture_default_str();
  cluster->add_option("--out", out_path, "Output TriG of relation nanopubs");
  cluster->add_option("--csv", csv_path, "Cluster CSV");
  cluster->add_option("--agent", agent, "Clustering agent IRI")->default_val(kClusterAgent);
  cluster->add_option("--timestamp", timestamp, "Provenance time (default: now)");

  std::string listen = "127.0.0.1:8080", journal;
  auto* serve = app.add_subcommand("serve", "Run the portal HTTP service");
  serve->add_option("--listen", listen, "HOST:PORT")->capture_default_str();
  serve->add_option("--journal", journal, "Journal file (default: in-memory)");
  serve->add_option("--rules", rules_path, "Rule file for /validate")->check(CLI::ExistingFile);

  std::string server_url, trig_file;
  auto* publish = app.add_subcommand("publish", "Send a TriG file to a portal");
  publish->add_option("--server", server_url, "Portal base URL")->required();
  publish->add_option("file", trig_file, "TriG file")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> argv_store{"aidapub"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::optional<RuleSet> loaded;
    if (*encode) {
      out << encode_uri(AidaSentence::make(text)).str() << '\n';
    } else if (*decode) {
      out << AidaUri::parse(uri).sentence().text() << '\n';
    } else if (*validate_cmd) {
      const auto& rules = rules_flag(rules_path, loaded);
      auto emit = [&](const std::string& line) {
        const auto r = validate(line, rules);
        std::vector<std::string> v;
        for (auto x : r.violations) v.emplace_back(to_string(x));
        out << to_string(r.verdict) << '\t' << (v.empty() ? "-" : join(v, ","))
            << '\t' << (r.matched_rules.empty() ? "-" : join(r.matched_rules, ",")) << '\t'
            << line << '\n';
      };
      if (!validate_texts.empty()) {
        for (const auto& t : validate_texts) emit(t);
      } else {
        std::string line;
        while (std::getline(in, line)) {
          if (!line.empty() && line.back() == '\r') line.pop_back();
          emit(line);
        }
      }
    } else if (*extract) {
      const auto& rules = rules_flag(rules_path, loaded);
      Provenance prov;
      prov.attributed_to = agent;
      prov.generated_at = timestamp_flag(timestamp);
      prov.channel = Channel::TextMining;
      Extractor ex(rules, prov);
      auto stream = open_input(input);
      GeneRifReader reader(*stream);
      while (auto rec = reader.next()) ex.add(*rec);
      for (const auto& w : reader.warnings())
        err << input << ":" << w.line << ": warning: " << w.message << '\n';
      const auto nps = ex.finish();
      write_file(out_path, serialize_trig(nps));
      if (!report_path.empty())
        write_file(report_path,
                   emit_quality_report(ex.report(), report_format == "text" ? ReportFormat::Text
                                                                            : ReportFormat::Csv));
      err << "records: " << ex.report().total << ", accepted: " << ex.report().accepted
          << ", nanopublications: " << nps.size() << '\n';
    } else if (*cluster) {
      params.check();
      const auto sentences = load_sentences(input);
      const auto result = cluster_corpus(std::span<const AidaSentence>(sentences), params);
      Provenance prov;
      prov.attributed_to = agent;
      prov.generated_at = timestamp_flag(timestamp);
      prov.channel = Channel::Bot;
      prov.parameters_digest = params.digest();
      const auto nps = emit_relation_nanopubs(result.pairs, prov);
      if (!out_path.empty()) write_file(out_path, serialize_trig(nps));
      if (!csv_path.empty()) write_file(csv_path, clusters_csv(result.clusters));
      std::size_t isolates = 0;
      for (const auto& c : result.clusters) isolates += c.is_isolate;
      err << "sentences: " << sentences.size() << ", isolates: " << isolates
          << ", candidate pairs: " << result.pairs.size() << '\n';
    } else if (*serve) {
      const auto where = parse_listen(listen);
      const auto& rules = rules_flag(rules_path, loaded);
      PortalService portal(PortalService::Options{journal, now_utc});
      ApiServer server(portal, rules);
      const int port = server.bind(where.host, where.port);
      err << "listening on " << where.host << ":" << port << std::endl;
      server.run();
    } else if (*publish) {
      const auto body = read_file(trig_file);
      httplib::Client client(server_url);
      client.set_connection_timeout(5);
      const auto res = client.Post("/nanopubs", body, "application/trig");
      if (!res) {
        err << "error: cannot reach " << server_url << ": " << httplib::to_string(res.error())
            << '\n';
        return kExitFailure;
      }
      out << res->body << '\n';
      if (res->status / 100 != 2) {
        err << "error: server answered " << res->status << '\n';
        return kExitFailure;
      }
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace aidapub
