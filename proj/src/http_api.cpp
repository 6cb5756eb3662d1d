#include "aidapub/http_api.hpp"

#include <httplib.h>
#include <json.hpp>

#include <thread>

#include "aidapub/trig.hpp"
#include "aidapub/validate.hpp"

namespace aidapub {
namespace {

using nlohmann::json;

json provenance_json(const Provenance& p) {
  json j{{"attributed_to", p.attributed_to},
         {"generated_at", format_timestamp(p.generated_at)},
         {"derived_from", p.derived_from},
         {"channel", to_string(p.channel)},
         {"certainty", to_string(p.certainty)}};
  if (p.parameters_digest) j["parameters_digest"] = *p.parameters_digest;
  return j;
}

json receipt_json(const Receipt& r) {
  return {{"uri", r.uri}, {"stored_at", format_timestamp(r.stored_at)}, {"created", r.created}};
}

json opinion_json(const Opinion& o) {
  return {{"agent", o.agent},
          {"statement", o.statement.str()},
          {"kind", to_string(o.kind)},
          {"nanopub_uri", o.nanopub_uri},
          {"at", format_timestamp(o.at)}};
}

json view_json(const StatementView& v) {
  json asserting = json::array();
  for (const auto& a : v.asserting_nanopubs) {
    json e{{"nanopub_uri", a.nanopub_uri}};
    e["provenance"] = a.provenance ? provenance_json(*a.provenance) : json(nullptr);
    asserting.push_back(std::move(e));
  }
  json related = json::array();
  for (const auto& r : v.related) {
    related.push_back({{"uri", r.other.str()},
                       {"sentence", r.other.sentence().text()},
                       {"relation", to_string(r.relation)},
                       {"nanopub_uri", r.nanopub_uri},
                       {"agent", r.agent},
                       {"channel", r.channel ? json(to_string(*r.channel)) : json(nullptr)}});
  }
  json opinions = json::array();
  for (const auto& o : v.opinions) opinions.push_back(opinion_json(o));
  return {{"uri", v.uri.str()},
          {"sentence", v.sentence.text()},
          {"asserting_nanopubs", std::move(asserting)},
          {"related", std::move(related)},
          {"opinions", std::move(opinions)}};
}

json validation_json(const ValidationReport& r) {
  json violations = json::array();
  for (auto v : r.violations) violations.push_back(to_string(v));
  return {{"verdict", to_string(r.verdict)},
          {"violations", std::move(violations)},
          {"minor_issues", r.minor_issues},
          {"matched_rules", r.matched_rules},
          {"rejecting_rule", r.rejecting_rule ? json(*r.rejecting_rule) : json(nullptr)}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, Errc code, const std::string& message) {
  send_json(res, http_status(code), {{"error", to_string(code)}, {"message", message}});
}

json parse_body(const httplib::Request& req) {
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) throw Error(Errc::InvalidArgument, "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("invalid JSON: ") + e.what());
  }
}

std::string field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || !it->is_string())
    throw Error(Errc::InvalidArgument, std::string("missing string field '") + name + "'");
  return it->get<std::string>();
}

AidaUri aida_field(const json& j, const char* name) {
  try {
    return AidaUri::parse(field(j, name));
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidArgument) throw;
    throw Error(Errc::MalformedUri, std::string(name) + ": " + e.what());
  }
}

}  // namespace

int http_status(Errc code) {
  switch (code) {
    case Errc::SyntaxError:
    case Errc::InvalidArgument:
    case Errc::MalformedUri:
    case Errc::BadPrefix:
    case Errc::MalformedEscape:
    case Errc::DecodedTextNotAida:
    case Errc::InvalidSentence:
      return 400;
    case Errc::NotFound:
      return 404;
    case Errc::ConflictingContentForUri:
    case Errc::DuplicateAgent:
      return 409;
    case Errc::StructureError:
    case Errc::StructureInvalid:
    case Errc::DanglingGraphRef:
    case Errc::CycleIntroduced:
    case Errc::UnknownAgent:
    case Errc::SelfLink:
      return 422;
    default:
      return 500;
  }
}

std::string percent_encode_component(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

struct ApiServer::Impl {
  PortalService& portal;
  const RuleSet& rules;
  httplib::Server server;
  std::thread thread;
  bool bound = false;

  Impl(PortalService& p, const RuleSet& r) : portal(p), rules(r) { routes(); }

  template <class F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const std::exception& e) {
        send_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
      }
    };
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.status = 204;
    });

    server.Post("/nanopubs", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::string trig = req.body;
      if (req.get_header_value("Content-Type").starts_with("application/json"))
        trig = field(parse_body(req), "trig");
      TrigDocument doc;
      try {
        doc = parse_trig(trig);
      } catch (const Error& e) {
        if (e.code() == Errc::StructureError) throw Error(Errc::StructureInvalid, e.what());
        throw;
      }
      if (doc.nanopubs.empty()) throw Error(Errc::InvalidArgument, "no nanopublication in body");
      if (!doc.unattached_graphs.empty())
        throw Error(Errc::StructureInvalid,
                    "graph not part of any nanopublication: " + doc.unattached_graphs.front());
      json receipts = json::array();
      bool created = false;
      for (const auto& np : doc.nanopubs) {
        const auto r = portal.publish(np);
        created = created || r.created;
        receipts.push_back(receipt_json(r));
      }
      json body = receipts.size() == 1 ? receipts.front() : json::object();
      body["receipts"] = std::move(receipts);
      send_json(res, created ? 201 : 200, body);
    }));

    server.Get("/nanopubs/(.+)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto np = portal.get_nanopub(req.matches[1].str());
      if (!np) throw Error(Errc::NotFound, "no nanopublication " + req.matches[1].str());
      res.set_content(serialize_trig(*np), "application/trig");
    }));

    server.Get("/statements/(.+)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, view_json(portal.get_statement(std::string_view(req.matches[1].str()))));
    }));

    server.Post("/opinions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const auto kind = parse_opinion_kind(field(body, "kind"));
      if (!kind) throw Error(Errc::InvalidArgument, "unknown opinion kind");
      send_json(res, 201,
                opinion_json(portal.post_opinion(field(body, "agent"),
                                                 aida_field(body, "statement"), *kind)));
    }));

    server.Post("/links", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const auto rel = parse_relation_kind(field(body, "relation"));
      if (!rel) throw Error(Errc::InvalidArgument, "unknown relation");
      const auto r = portal.link_statements(field(body, "agent"), aida_field(body, "a"),
                                            aida_field(body, "b"), *rel);
      send_json(res, r.created ? 201 : 200, receipt_json(r));
    }));

    server.Post("/agents", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      const auto kind = parse_agent_kind(body.value("kind", std::string("Person")));
      if (!kind) throw Error(Errc::InvalidArgument, "agent kind must be Person or Bot");
      const auto r = portal.register_agent(
          Agent{field(body, "iri"), body.value("display_name", std::string()), *kind});
      send_json(res, r.created ? 201 : 200, receipt_json(r));
    }));

    server.Get("/search", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::size_t limit = 10;
      if (req.has_param("limit")) {
        try {
          limit = std::stoul(req.get_param_value("limit"));
        } catch (const std::exception&) {
          throw Error(Errc::InvalidArgument, "limit must be a non-negative integer");
        }
      }
      json hits = json::array();
      for (const auto& h : portal.search_sentences(req.get_param_value("q"), limit))
        hits.push_back({{"uri", h.uri.str()}, {"sentence", h.uri.sentence().text()}, {"score", h.score}});
      send_json(res, 200, hits);
    }));

    server.Post("/validate", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, validation_json(validate(field(parse_body(req), "text"), rules)));
    }));
  }
};

ApiServer::ApiServer(PortalService& portal, const RuleSet& rules)
    : impl_(std::make_unique<Impl>(portal, rules)) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(Errc::Io, "cannot bind " + host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    throw Error(Errc::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound;
}

void ApiServer::run() {
  if (!impl_->bound) throw Error(Errc::InvalidArgument, "bind() before run()");
  impl_->server.listen_after_bind();
}

void ApiServer::start() {
  if (!impl_->bound) throw Error(Errc::InvalidArgument, "bind() before start()");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void ApiServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace aidapub
