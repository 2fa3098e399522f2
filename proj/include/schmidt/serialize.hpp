#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "schmidt/adversary.hpp"
#include "schmidt/target_tree.hpp"

namespace schmidt {

using Json = nlohmann::ordered_json;

inline Json interval_json(const Interval& i) { return Json{{"lo", i.lo.str()}, {"hi", i.hi.str()}}; }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::ParseError, "rational must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

inline Interval interval_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
    throw Error(ErrorKind::ParseError, "interval must be an object with \"lo\" and \"hi\"");
  return make_interval(rational_from_json(j.at("lo")), rational_from_json(j.at("hi")));
}

// ---------------------------------------------------------------------------
// Move traces, one JSON object per line.

inline Json move_json(std::size_t round, const Move& m) {
  return Json{{"k", round}, {"role", role_tag(m.role)}, {"lo", m.interval.lo.str()}, {"hi", m.interval.hi.str()}};
}

inline Json history_json(const GameHistory& h) {
  Json moves = Json::array();
  for (std::size_t i = 0; i < h.size(); ++i) moves.push_back(move_json(i / 2, h.moves()[i]));
  return moves;
}

inline std::string trace_jsonl(const GameHistory& h) {
  std::string out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    out += move_json(i / 2, h.moves()[i]).dump();
    out += '\n';
  }
  return out;
}

/// Rebuilds a history from trace lines (or a JSON array of move objects).
/// Order and roles are checked; legality is left to the caller.
inline GameHistory history_from_json(const Json& moves, const GameParams& params) {
  if (!moves.is_array()) throw Error(ErrorKind::ParseError, "trace must be an array of moves");
  GameHistory h(params);
  for (const auto& m : moves) {
    if (!m.is_object() || !m.contains("role")) throw Error(ErrorKind::ParseError, "move needs a role");
    const std::string role = m.at("role").get<std::string>();
    Role r;
    if (role == "B")
      r = Role::Bob;
    else if (role == "A")
      r = Role::Alice;
    else
      throw Error(ErrorKind::ParseError, "role must be \"B\" or \"A\"");
    if (r != h.next_role()) throw Error(ErrorKind::ParseError, "moves must alternate, Bob first");
    if (m.contains("k") && m.at("k").get<std::size_t>() != h.next_round())
      throw Error(ErrorKind::ParseError, "round index out of sequence");
    h.push(r, interval_from_json(m));
  }
  return h;
}

inline GameHistory parse_trace(const std::string& text, const GameParams& params) {
  Json moves = Json::array();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      moves.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  }
  return history_from_json(moves, params);
}

// ---------------------------------------------------------------------------
// Foiling certificates.

inline Json to_json(const FoilCertificate& c) {
  Json rounds = Json::array();
  for (const auto& r : c.rounds)
    rounds.push_back(Json{{"A", interval_json(r.a)}, {"Aprime", interval_json(r.a_prime)}, {"contained", r.contained}});
  return Json{{"q", c.q.str()}, {"rounds", std::move(rounds)}};
}

/// Histories are not part of the wire format; they come back empty.
inline FoilCertificate foil_certificate_from_json(const Json& j, const GameParams& params) {
  FoilCertificate c{rational_from_json(j.at("q")), {GameHistory(params), GameHistory(params)}, {}};
  for (const auto& r : j.at("rounds"))
    c.rounds.push_back(FoilRound{interval_from_json(r.at("A")), interval_from_json(r.at("Aprime")), r.at("contained").get<bool>()});
  return c;
}

// ---------------------------------------------------------------------------
// Tree dump.

/// Stages 1..depth with every window, its chain head (position within the
/// stage listing) and designated interval. Listing stops once `max_omegas`
/// windows were written; "truncated" records that.
inline Json dump_tree(const TargetTree& tree, std::size_t max_omegas = 20000) {
  Json seeds = Json::array();
  for (const auto& s : tree.seeds()) seeds.push_back(interval_json(s));
  Json out{{"alpha", tree.params().alpha().str()},
           {"beta", tree.params().beta().str()},
           {"mode", to_string(tree.mode())},
           {"depth", tree.depth()},
           {"seeds", std::move(seeds)}};
  if (tree.delta()) out["delta"] = tree.delta()->str();
  out["rationals_handled"] = tree.rationals_handled();

  Json stages = Json::array();
  std::size_t written = 0;
  bool truncated = false;
  for (int t = 1; t <= tree.depth() && !truncated; ++t) {
    const StageTask task = tree.task_at(t);
    std::vector<NodeId> nodes;
    for (std::size_t s = 0; s < tree.seeds().size(); ++s) {
      const int seed = static_cast<int>(s);
      auto level = tree.level(tree.seed_root(seed), t + tree.offset(seed));
      nodes.insert(nodes.end(), level.begin(), level.end());
      if (written + nodes.size() > max_omegas) break;
    }
    if (written + nodes.size() > max_omegas) {
      truncated = true;
      break;
    }
    std::map<NodeId, std::size_t> position;
    for (std::size_t i = 0; i < nodes.size(); ++i) position[nodes[i]] = i;

    Json omegas = Json::array();
    const bool chained = task.kind == StageKind::Intra || task.kind == StageKind::Cross || task.kind == StageKind::Envelope;
    for (NodeId n : nodes) {
      Json w{{"lo", tree.omega(n).lo.str()}, {"hi", tree.omega(n).hi.str()}};
      std::optional<NodeId> head;
      if (chained) {
        head = n;
        while (auto p = tree.predecessor(*head)) head = *p;
      }
      w["chain"] = head && position.count(*head) ? Json(position.at(*head)) : Json(nullptr);
      w["alice"] = interval_json(tree.alice(n));
      w["seed"] = tree.seed_of(n);
      omegas.push_back(std::move(w));
    }
    written += nodes.size();

    Json stage{{"n", t}};
    stage["q_index"] = task.q_index ? Json(*task.q_index) : Json(nullptr);
    if (task.q_index) stage["q"] = task.q.str();
    stage["kind"] = to_string(task.kind);
    stage["shrink"] = tree.mode() == TreeMode::Thickened && t == 1 ? "7/2" : "4/1";
    stage["omegas"] = std::move(omegas);
    stages.push_back(std::move(stage));
  }
  out["stages"] = std::move(stages);
  out["truncated"] = truncated;
  return out;
}

}  // namespace schmidt
