#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/enumeration.hpp"
#include "schmidt/game.hpp"

namespace schmidt {

// ---------------------------------------------------------------------------
// Foiling: two disjoint games driven by one Alice strategy.

/// Black-box Alice answering in two interleaved games (board 0 and 1).
using PairGameOracle = std::function<Interval(int board, const GameHistory&)>;

struct FoilRound {
  Interval a;
  Interval a_prime;
  bool contained = false;
};

struct FoilCertificate {
  Rational q;
  std::array<GameHistory, 2> histories;
  std::vector<FoilRound> rounds;

  bool valid() const {
    if (q.is_zero()) return false;
    for (const auto& r : rounds)
      if (!r.contained || !shift(r.a, q).contains(r.a_prime)) return false;
    return true;
  }
};

/// Sequential referee for the two games. Bob's moves are placed
/// automatically; Alice's come from outside, one board at a time.
class FoilController {
 public:
  FoilController(const GameParams& params, const Interval& first_move)
      : params_(params), histories_{GameHistory(params), GameHistory(params)} {
    if (!(params.beta() < params.alpha()))
      throw Error(ErrorKind::PreconditionViolated, "foiling needs beta < alpha (got alpha=" + params.alpha().str() +
                                                       ", beta=" + params.beta().str() + ")");
    if (!first_move.positive()) throw Error(ErrorKind::InvalidArgument, "first move needs positive length");
    const Rational rho = first_move.length();
    histories_[0].push(Role::Bob, first_move);
    Rational lo = first_move.lo + 2 * rho;  // gap of rho after B_0
    histories_[1].push(Role::Bob, Interval(lo, lo + params.alpha() * rho));
  }

  const GameParams& params() const { return params_; }
  const GameHistory& history(int board) const { return histories_.at(static_cast<std::size_t>(board)); }
  const std::optional<Rational>& q() const { return q_; }
  const std::vector<FoilRound>& rounds() const { return rounds_; }
  /// Round whose Alice moves are awaited.
  std::size_t round() const { return rounds_.size(); }
  bool awaiting(int board) const { return history(board).next_role() == Role::Alice; }

  /// Applies Alice's move on one board. After board 0's move (from the
  /// second round on) Bob's board-1 move is the q-shift of it; after both
  /// boards answered, q is fixed (first round) and Bob's next board-0 move
  /// is placed.
  void play_alice(int board, const Interval& move) {
    if (board != 0 && board != 1) throw Error(ErrorKind::InvalidArgument, "board must be 0 or 1");
    GameHistory& h = histories_[static_cast<std::size_t>(board)];
    if (auto why = validate_move(h, Role::Alice, move))
      throw Error(ErrorKind::OracleIllegalMove, "board " + std::to_string(board) + ", round " +
                                                    std::to_string(round()) + ": " + std::string(to_string(*why)));
    h.push(Role::Alice, move);
    if (board == 0 && q_) {
      const Rational len = params_.beta() * histories_[1].back().interval.length();
      Interval moved = shift(move, *q_);
      histories_[1].push(Role::Bob, Interval(moved.lo, moved.lo + len));
      return;
    }
    if (awaiting(0) || awaiting(1)) return;

    const Interval& a = histories_[0].back().interval;
    const Interval& ap = histories_[1].back().interval;
    if (!q_) q_ = simplest_between(ap.hi - a.hi, ap.lo - a.lo);
    bool ok = shift(a, *q_).contains(ap);
    rounds_.push_back(FoilRound{a, ap, ok});
    if (!ok) throw Error(ErrorKind::InvalidArgument, "containment lost at round " + std::to_string(rounds_.size() - 1));

    // B_{n+1}: leftmost inside A_n whose q-shift stays inside A'_n.
    const Rational len = params_.beta() * a.length();
    Rational lo = max(a.lo, ap.lo - *q_);
    histories_[0].push(Role::Bob, Interval(lo, lo + len));
  }

  FoilCertificate certificate() const { return FoilCertificate{q_.value_or(Rational(0)), histories_, rounds_}; }

 private:
  GameParams params_;
  std::array<GameHistory, 2> histories_;
  std::optional<Rational> q_;
  std::vector<FoilRound> rounds_;
};

/// Plays `depth` rounds of both games against `tau` and returns the
/// certificate. Board 0 is asked first each round.
inline FoilCertificate foil(const GameParams& params, const PairGameOracle& tau, int depth, const Interval& first_move) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be at least 1");
  FoilController c(params, first_move);
  for (int n = 0; n < depth; ++n) {
    c.play_alice(0, tau(0, c.history(0)));
    c.play_alice(1, tau(1, c.history(1)));
  }
  return c.certificate();
}

/// Scripted oracles for tests and the CLI.
namespace oracles {

inline PairGameOracle leftmost() {
  return [](int, const GameHistory& h) { return leftmost_reply(h); };
}

inline PairGameOracle rightmost() {
  return [](int, const GameHistory& h) { return rightmost_reply(h); };
}

inline PairGameOracle centered() {
  return [](int, const GameHistory& h) { return centered_reply(h); };
}

/// Leftmost and rightmost in turn across every call (stateful).
inline PairGameOracle alternating() {
  auto flip = std::make_shared<bool>(false);
  return [flip](int, const GameHistory& h) {
    *flip = !*flip;
    return *flip ? leftmost_reply(h) : rightmost_reply(h);
  };
}

/// Position derived from a hash of the history and a seed; deterministic.
inline PairGameOracle pseudo_random(std::uint64_t seed = 0) {
  return [seed](int board, const GameHistory& h) {
    std::size_t x = std::hash<std::uint64_t>{}(seed) ^ (static_cast<std::size_t>(board) * 0x9e3779b97f4a7c15ULL);
    for (const auto& m : h.moves()) x = x * 1099511628211ULL ^ m.interval.lo.hash() ^ (m.interval.hi.hash() << 1);
    x ^= x >> 29;
    return reply_at(h, Rational(static_cast<std::int64_t>(x % 1025), 1024));
  };
}

inline PairGameOracle by_name(const std::string& name, std::uint64_t seed = 0) {
  if (name == "leftmost") return leftmost();
  if (name == "rightmost") return rightmost();
  if (name == "centered") return centered();
  if (name == "alternating") return alternating();
  if (name == "pseudo-random" || name == "random") return pseudo_random(seed);
  throw Error(ErrorKind::InvalidArgument, "unknown oracle '" + name + "'");
}

}  // namespace oracles

// ---------------------------------------------------------------------------
// Cantor-like avoidance.

inline void require_cantor_params(const GameParams& params) {
  if (!(params.beta() < Rational(1, 3)))
    throw Error(ErrorKind::PreconditionViolated, "Cantor construction needs beta < 1/3 (got " + params.beta().str() + ")");
}

/// Next-stage windows inside `window`: length alpha*beta*l, left-aligned,
/// period alpha*l/3.
inline std::vector<Interval> cantor_children(const Interval& window, const GameParams& params) {
  require_cantor_params(params);
  const Rational l = window.length();
  const Rational len = params.alpha_beta() * l;
  const Rational step = params.alpha() * l / 3;
  std::vector<Interval> out;
  for (Rational lo = window.lo; lo + len <= window.hi; lo += step) out.emplace_back(lo, lo + len);
  return out;
}

/// Stages 0..depth of the construction; stage 0 is the first move.
inline std::vector<std::vector<Interval>> cantor_windows(const Interval& first_move, const GameParams& params, int depth) {
  require_cantor_params(params);
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be at least 1");
  std::vector<std::vector<Interval>> stages{{first_move}};
  for (int n = 1; n <= depth; ++n) {
    std::vector<Interval> next;
    for (const auto& w : stages.back())
      for (auto& c : cantor_children(w, params)) next.push_back(std::move(c));
    stages.push_back(std::move(next));
  }
  return stages;
}

/// Bob opens with `first_move`; at round n >= 1 he plays the leftmost
/// stage-n window inside Alice's last move that misses avoid[n-1].
/// Beyond the end of `avoid` the leftmost contained window is played.
inline Strategy bob_avoid_strategy(std::vector<Rational> avoid, Interval first_move, const GameParams& params) {
  require_cantor_params(params);
  return [avoid = std::move(avoid), first_move = std::move(first_move), params](const GameHistory& h) -> Interval {
    if (h.empty()) return first_move;
    const std::size_t n = h.bob_count();
    const Interval& alice = h.back().interval;
    const Interval& parent = h.bob(n - 1);
    const Rational* point = n - 1 < avoid.size() ? &avoid[n - 1] : nullptr;
    for (const auto& w : cantor_children(parent, params))
      if (alice.contains(w) && (!point || !w.contains(*point))) return w;
    throw Error(ErrorKind::NoFreeSlot, "no stage-" + std::to_string(n) + " window left inside Alice's move");
  };
}

}  // namespace schmidt
