#pragma once

// HTTP routes for the session service.

#include <string>

#include <httplib.h>

#include "schmidt/session.hpp"

namespace schmidt::tools {

inline void send(httplib::Response& res, const Reply& reply) {
  res.status = reply.status;
  res.set_content(reply.body.dump(), "application/json");
}

inline Json parse_body(const httplib::Request& req, httplib::Response& res, bool& ok) {
  try {
    ok = true;
    return req.body.empty() ? Json::object() : Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    ok = false;
    send(res, Reply{400, Json{{"error", "parse-error"}, {"message", e.what()}}});
    return {};
  }
}

inline void install_routes(httplib::Server& server, SessionManager& sessions) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", [&sessions](const httplib::Request& req, httplib::Response& res) {
    bool ok = false;
    Json body = parse_body(req, res, ok);
    if (ok) send(res, sessions.create(body));
  });
  server.Get(R"(/sessions/([^/]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
    send(res, sessions.get(req.matches[1]));
  });
  server.Post(R"(/sessions/([^/]+)/moves)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    bool ok = false;
    Json body = parse_body(req, res, ok);
    if (ok) send(res, sessions.move(req.matches[1], body));
  });
}

}  // namespace schmidt::tools
