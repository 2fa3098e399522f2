#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schmidt/error.hpp"
#include "schmidt/interval.hpp"
#include "schmidt/rational.hpp"

namespace schmidt {

/// The two contraction ratios of an (alpha, beta)-game, both strictly in (0, 1).
class GameParams {
 public:
  GameParams(Rational alpha, Rational beta) : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    auto in_unit = [](const Rational& r) { return r.sign() > 0 && r < Rational(1); };
    if (!in_unit(alpha_) || !in_unit(beta_))
      throw Error(ErrorKind::InvalidParams, "alpha and beta must lie strictly between 0 and 1 (got alpha=" +
                                                alpha_.str() + ", beta=" + beta_.str() + ")");
  }

  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  Rational alpha_beta() const { return alpha_ * beta_; }

  friend bool operator==(const GameParams&, const GameParams&) = default;

 private:
  Rational alpha_;
  Rational beta_;
};

enum class Role { Bob, Alice };

inline std::string_view role_tag(Role r) { return r == Role::Bob ? "B" : "A"; }
inline std::string_view role_name(Role r) { return r == Role::Bob ? "Bob" : "Alice"; }

struct Move {
  Role role;
  Interval interval;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Alternating Bob/Alice moves, Bob first. Legality is enforced by whoever
/// appends (run_game, sessions); the container itself only stores.
class GameHistory {
 public:
  explicit GameHistory(GameParams params) : params_(std::move(params)) {}

  const GameParams& params() const { return params_; }
  const std::vector<Move>& moves() const { return moves_; }
  bool empty() const { return moves_.empty(); }
  std::size_t size() const { return moves_.size(); }
  const Move& back() const { return moves_.back(); }

  Role next_role() const { return moves_.size() % 2 == 0 ? Role::Bob : Role::Alice; }
  /// Round index of the next move (Bob and Alice share round k).
  std::size_t next_round() const { return moves_.size() / 2; }

  /// The k-th move of the given role.
  const Interval& bob(std::size_t k) const { return moves_.at(2 * k).interval; }
  const Interval& alice(std::size_t k) const { return moves_.at(2 * k + 1).interval; }
  std::size_t alice_count() const { return moves_.size() / 2; }
  std::size_t bob_count() const { return (moves_.size() + 1) / 2; }

  /// Length of Bob's first move, or nullopt before it.
  std::optional<Rational> rho() const {
    if (moves_.empty()) return std::nullopt;
    return moves_.front().interval.length();
  }

  /// Exact length the next move must have; nullopt for the opening move.
  std::optional<Rational> required_length() const {
    if (moves_.empty()) return std::nullopt;
    const Rational& ratio = next_role() == Role::Alice ? params_.alpha() : params_.beta();
    return ratio * moves_.back().interval.length();
  }

  void push(Role role, Interval interval) { moves_.push_back(Move{role, std::move(interval)}); }

  friend bool operator==(const GameHistory&, const GameHistory&) = default;

 private:
  GameParams params_;
  std::vector<Move> moves_;
};

enum class Violation { LengthMismatch, NotNested, WrongTurn, EmptyInterval };

inline std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::LengthMismatch: return "length-mismatch";
    case Violation::NotNested: return "not-nested";
    case Violation::WrongTurn: return "wrong-turn";
    case Violation::EmptyInterval: return "empty-interval";
  }
  return "?";
}

/// nullopt means the move is legal.
inline std::optional<Violation> validate_move(const GameHistory& history, Role role, const Interval& proposed) {
  if (role != history.next_role()) return Violation::WrongTurn;
  if (!proposed.positive()) return Violation::EmptyInterval;
  if (history.empty()) return std::nullopt;
  if (proposed.length() != *history.required_length()) return Violation::LengthMismatch;
  if (!history.back().interval.contains(proposed)) return Violation::NotNested;
  return std::nullopt;
}

inline std::optional<Violation> validate_move(const GameHistory& history, const Interval& proposed) {
  return validate_move(history, history.next_role(), proposed);
}

/// Maps a history ending with the opponent's move (or empty, for Bob's
/// opening) to the player's next interval.
using Strategy = std::function<Interval(const GameHistory&)>;

class IllegalStrategyMove : public Error {
 public:
  IllegalStrategyMove(Role role, std::size_t round, Violation why, Interval proposed)
      : Error(ErrorKind::IllegalStrategyMove,
              std::string(role_name(role)) + " at round " + std::to_string(round) + ": " + std::string(to_string(why))),
        role_(role), round_(round), why_(why), proposed_(std::move(proposed)) {}

  Role role() const { return role_; }
  std::size_t round() const { return round_; }
  Violation violation() const { return why_; }
  const Interval& proposed() const { return proposed_; }

 private:
  Role role_;
  std::size_t round_;
  Violation why_;
  Interval proposed_;
};

/// Plays `depth` full rounds (Bob then Alice). The last Alice interval is
/// the outcome window.
inline GameHistory run_game(const GameParams& params, const Strategy& bob, const Strategy& alice, std::size_t depth) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be at least 1");
  GameHistory history(params);
  for (std::size_t round = 0; round < depth; ++round) {
    for (Role role : {Role::Bob, Role::Alice}) {
      Interval proposed = role == Role::Bob ? bob(history) : alice(history);
      if (auto why = validate_move(history, role, proposed)) throw IllegalStrategyMove(role, round, *why, proposed);
      history.push(role, std::move(proposed));
    }
  }
  return history;
}

inline Interval outcome_window(const GameHistory& history) {
  if (history.alice_count() == 0) throw Error(ErrorKind::InvalidArgument, "no Alice move yet");
  return history.alice(history.alice_count() - 1);
}

// Simple positional strategies, usable for either player once the opening
// move exists.

/// Leftmost sub-interval of the required length.
inline Interval leftmost_reply(const GameHistory& h) {
  const Interval& last = h.back().interval;
  return Interval(last.lo, last.lo + *h.required_length());
}

inline Interval rightmost_reply(const GameHistory& h) {
  const Interval& last = h.back().interval;
  return Interval(last.hi - *h.required_length(), last.hi);
}

inline Interval centered_reply(const GameHistory& h) {
  return centered_at(h.back().interval.center(), *h.required_length());
}

/// Sub-interval of the required length whose left end sits at fraction
/// `t` in [0,1] of the available slack.
inline Interval reply_at(const GameHistory& h, const Rational& t) {
  const Interval& last = h.back().interval;
  Rational len = *h.required_length();
  Rational lo = last.lo + t * (last.length() - len);
  return Interval(lo, lo + len);
}

/// Bob strategy opening with `first` and then replying with `reply`.
inline Strategy opening_then(Interval first, Strategy reply) {
  return [first = std::move(first), reply = std::move(reply)](const GameHistory& h) {
    return h.empty() ? first : reply(h);
  };
}

}  // namespace schmidt
