#pragma once

// Play sessions behind the HTTP service: a human plays one side, the
// library's strategies answer. Transport-independent; requests and
// responses are JSON documents with an HTTP-style status code.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "schmidt/serialize.hpp"

namespace schmidt {

enum class SessionMode { HumanBobVsAliceTree, HumanAliceVsFoil, HumanAliceVsCantor };

inline std::string_view to_string(SessionMode m) {
  switch (m) {
    case SessionMode::HumanBobVsAliceTree: return "human-bob-vs-alice-tree";
    case SessionMode::HumanAliceVsFoil: return "human-alice-vs-foil";
    case SessionMode::HumanAliceVsCantor: return "human-alice-vs-cantor";
  }
  return "?";
}

inline SessionMode parse_session_mode(std::string_view s) {
  if (s == "human-bob-vs-alice-tree") return SessionMode::HumanBobVsAliceTree;
  if (s == "human-alice-vs-foil") return SessionMode::HumanAliceVsFoil;
  if (s == "human-alice-vs-cantor") return SessionMode::HumanAliceVsCantor;
  throw Error(ErrorKind::InvalidArgument, "unknown session mode '" + std::string(s) + "'");
}

struct Reply {
  int status = 200;
  Json body;
};

class Session {
 public:
  Session(std::string id, GameParams params, SessionMode mode, int depth_limit, const Json& options)
      : id_(std::move(id)), params_(std::move(params)), mode_(mode), depth_limit_(depth_limit), history_(params_) {
    switch (mode_) {
      case SessionMode::HumanBobVsAliceTree: {
        const Rational& a = params_.alpha();
        if (a >= alpha_limit() || !(a < params_.beta()))
          throw Error(ErrorKind::InvalidParams, "the tree strategy needs alpha < 1/12 and alpha < beta");
        break;
      }
      case SessionMode::HumanAliceVsFoil: {
        Interval first = options.contains("first_move") ? interval_from_json(options.at("first_move")) : Interval(0, 1);
        foil_.emplace(params_, first);
        break;
      }
      case SessionMode::HumanAliceVsCantor: {
        Interval first = options.contains("first_move") ? interval_from_json(options.at("first_move")) : Interval(0, 1);
        std::vector<Rational> avoid;
        if (options.contains("avoid"))
          for (const auto& x : options.at("avoid")) avoid.push_back(rational_from_json(x));
        cantor_bob_ = bob_avoid_strategy(std::move(avoid), first, params_);
        history_.push(Role::Bob, cantor_bob_(history_));
        break;
      }
    }
  }

  std::mutex& mutex() { return mu_; }

  Json state() const {
    Json s{{"id", id_},
           {"alpha", params_.alpha().str()},
           {"beta", params_.beta().str()},
           {"mode", to_string(mode_)},
           {"depth_limit", depth_limit_},
           {"status", finished() ? "finished" : "open"},
           {"turn", finished() ? "none" : "human"},
           {"human_role", mode_ == SessionMode::HumanBobVsAliceTree ? "B" : "A"}};
    if (mode_ == SessionMode::HumanAliceVsFoil) {
      Json boards = Json::array();
      for (int b = 0; b < 2; ++b) {
        const GameHistory& h = foil_->history(b);
        Json board{{"history", history_json(h)}, {"awaiting", !finished() && foil_->awaiting(b)}};
        add_requirements(board, h);
        boards.push_back(std::move(board));
      }
      s["boards"] = std::move(boards);
      s["q"] = foil_->q() ? Json(foil_->q()->str()) : Json(nullptr);
      s["board"] = finished() ? Json(nullptr) : Json(foil_->awaiting(0) ? 0 : 1);
      s["rounds"] = to_json(foil_->certificate())["rounds"];
    } else {
      s["history"] = history_json(history_);
      add_requirements(s, history_);
    }
    return s;
  }

  /// Applies a human move. Illegal or out-of-turn moves leave the state
  /// untouched.
  Reply submit(const Json& body) {
    if (finished()) return Reply{409, Json{{"error", "not-your-turn"}, {"reason", "session finished"}}};
    Interval move;
    try {
      move = interval_from_json(body);
    } catch (const Error& e) {
      return Reply{400, Json{{"error", "bad-request"}, {"message", e.what()}}};
    }

    if (mode_ == SessionMode::HumanAliceVsFoil) {
      int board = foil_->awaiting(0) ? 0 : 1;
      if (body.contains("board")) {
        if (!body.at("board").is_number_integer()) return Reply{400, Json{{"error", "bad-request"}, {"message", "board must be 0 or 1"}}};
        board = body.at("board").get<int>();
        if (board != 0 && board != 1) return Reply{400, Json{{"error", "bad-request"}, {"message", "board must be 0 or 1"}}};
      }
      if (!foil_->awaiting(board)) return Reply{409, Json{{"error", "not-your-turn"}, {"board", board}}};
      if (auto why = validate_move(foil_->history(board), Role::Alice, move)) return illegal(*why);
      const std::size_t before[2] = {foil_->history(0).size(), foil_->history(1).size()};
      foil_->play_alice(board, move);
      Json replies = Json::array();
      for (int b = 0; b < 2; ++b) {
        const GameHistory& h = foil_->history(b);
        for (std::size_t i = before[b] + (b == board ? 1 : 0); i < h.size(); ++i) replies.push_back(board_move(b, i, h));
      }
      return Reply{200, Json{{"accepted", true}, {"replies", std::move(replies)}, {"state", state()}}};
    }

    const Role human = mode_ == SessionMode::HumanBobVsAliceTree ? Role::Bob : Role::Alice;
    if (auto why = validate_move(history_, human, move)) return illegal(*why);
    GameHistory next = history_;
    next.push(human, move);
    Json replies = Json::array();
    try {
      if (!finished_after(next)) {
        Interval answer = machine_reply(next);
        const Role machine = human == Role::Bob ? Role::Alice : Role::Bob;
        if (auto why = validate_move(next, machine, answer))
          throw Error(ErrorKind::IllegalStrategyMove, "machine reply rejected: " + std::string(to_string(*why)));
        next.push(machine, answer);
        replies.push_back(move_json((next.size() - 1) / 2, next.back()));
      }
    } catch (const Error& e) {
      return Reply{422, Json{{"error", to_string(e.kind())}, {"message", e.what()}, {"state", state()}}};
    }
    history_ = std::move(next);
    return Reply{200, Json{{"accepted", true}, {"replies", std::move(replies)}, {"state", state()}}};
  }

 private:
  bool finished_after(const GameHistory& h) const {
    return static_cast<int>(h.alice_count()) >= depth_limit_;
  }

  bool finished() const {
    if (mode_ == SessionMode::HumanAliceVsFoil) return static_cast<int>(foil_->rounds().size()) >= depth_limit_;
    return finished_after(history_);
  }

  Interval machine_reply(const GameHistory& h) {
    if (mode_ == SessionMode::HumanBobVsAliceTree) {
      if (!tree_) {
        // The first move becomes the seed; the tree covers the whole session.
        tree_ = TargetTree::build({h.bob(0)}, params_, std::max(1, depth_limit_), TreeMode::Single);
        alice_ = alice_strategy(*tree_);
      }
      return alice_(h);
    }
    return cantor_bob_(h);
  }

  static void add_requirements(Json& target, const GameHistory& h) {
    auto len = h.required_length();
    target["next_role"] = role_tag(h.next_role());
    target["required_length"] = len ? Json(len->str()) : Json(nullptr);
    target["enclosing"] = h.empty() ? Json(nullptr) : interval_json(h.back().interval);
  }

  static Json board_move(int board, std::size_t index, const GameHistory& h) {
    Json m = move_json(index / 2, h.moves()[index]);
    m["board"] = board;
    return m;
  }

  Reply illegal(Violation why) const {
    return Reply{422, Json{{"error", "illegal-move"}, {"violation", to_string(why)}, {"state", state()}}};
  }

  std::string id_;
  GameParams params_;
  SessionMode mode_;
  int depth_limit_;
  GameHistory history_;
  std::optional<FoilController> foil_;
  Strategy cantor_bob_;
  std::optional<TargetTree> tree_;
  Strategy alice_;
  std::mutex mu_;
};

/// Thread-safe registry. Each session admits one in-flight move; a second
/// concurrent submission gets 409.
class SessionManager {
 public:
  static constexpr int kDefaultDepthLimit = 25;

  Reply create(const Json& body) {
    try {
      if (!body.is_object()) throw Error(ErrorKind::ParseError, "body must be a JSON object");
      GameParams params(rational_from_json(body.at("alpha")), rational_from_json(body.at("beta")));
      SessionMode mode = parse_session_mode(body.at("mode").get<std::string>());
      int depth = body.contains("depth_limit") ? body.at("depth_limit").get<int>() : kDefaultDepthLimit;
      if (depth < 1) throw Error(ErrorKind::InvalidParams, "depth_limit must be at least 1");
      std::string id = "s" + std::to_string(++counter_);
      auto session = std::make_shared<Session>(id, params, mode, depth, body);
      Json state = session->state();
      std::unique_lock lock(mu_);
      sessions_.emplace(id, std::move(session));
      return Reply{201, std::move(state)};
    } catch (const Error& e) {
      return Reply{400, Json{{"error", to_string(e.kind())}, {"message", e.what()}}};
    } catch (const Json::exception& e) {
      return Reply{400, Json{{"error", "bad-request"}, {"message", e.what()}}};
    }
  }

  Reply get(const std::string& id) {
    auto s = find(id);
    if (!s) return not_found(id);
    std::lock_guard lock(s->mutex());
    return Reply{200, s->state()};
  }

  Reply move(const std::string& id, const Json& body) {
    auto s = find(id);
    if (!s) return not_found(id);
    std::unique_lock lock(s->mutex(), std::try_to_lock);
    if (!lock.owns_lock()) return Reply{409, Json{{"error", "not-your-turn"}, {"reason", "another move is in flight"}}};
    return s->submit(body);
  }

 private:
  std::shared_ptr<Session> find(const std::string& id) {
    std::shared_lock lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static Reply not_found(const std::string& id) { return Reply{404, Json{{"error", "unknown-session"}, {"id", id}}}; }

  std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::atomic<std::uint64_t> counter_{0};
};

}  // namespace schmidt
