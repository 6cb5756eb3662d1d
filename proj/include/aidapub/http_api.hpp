#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "aidapub/error.hpp"
#include "aidapub/portal.hpp"
#include "aidapub/rules.hpp"

namespace aidapub {

/// HTTP+JSON front end for a PortalService.
///
///   POST /nanopubs             TriG body (or JSON {"trig": ...})
///   GET  /nanopubs/{uri}       TriG of one nanopublication
///   GET  /statements/{uri}     statement view
///   POST /opinions             {agent, statement, kind}
///   POST /links                {agent, a, b, relation}
///   POST /agents               {iri, display_name, kind}
///   GET  /search?q=&limit=
///   POST /validate             {text}
///
/// {uri} is the percent-encoded IRI. Errors are {"error": code, "message": ...}.
class ApiServer {
 public:
  explicit ApiServer(PortalService& portal, const RuleSet& rules = default_ruleset());
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port. Throws Io.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires bind().
  void run();
  /// run() on a background thread; returns once the server accepts requests.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

int http_status(Errc code);

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string percent_encode_component(std::string_view text);

}  // namespace aidapub
