#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "schmidt/game.hpp"

namespace schmidt {

inline const Rational& alpha_limit() {
  static const Rational limit(1, 12);
  return limit;
}

/// Places the stage windows inside an Alice interval `parent` of length L:
/// left ends at parent.lo + l*beta*L*(1-4*alpha) for l = 0..m, m maximal
/// with the full-size (4*alpha*beta*L) window still inside the parent.
/// Placement period plus window length is exactly beta*L, so every legal
/// Bob move inside the parent swallows one full-size window. A shrink other
/// than 4 keeps the centers and rescales the length to shrink*alpha*beta*L.
inline std::vector<Interval> place_omegas(const Interval& parent, const GameParams& params, const Rational& shrink = 4) {
  const Rational& a = params.alpha();
  if (a >= alpha_limit())
    throw Error(ErrorKind::AlphaTooLarge, "alpha=" + a.str() + " >= 1/12: window gap no longer exceeds window length");
  if (!(shrink > 3 && shrink <= 4))
    throw Error(ErrorKind::InvalidArgument, "shrink must be 4, 7/2 or 4-2eps with 0<eps<1/2 (got " + shrink.str() + ")");
  const Rational L = parent.length();
  const Rational bl = params.beta() * L;
  const Rational step = bl * (1 - 4 * a);
  const Rational full = 4 * a * bl;
  const Rational m = ((L - full) / step).floor();
  std::vector<Interval> out;
  Rational lo = parent.lo;
  for (Rational l = 0; l <= m; l += 1, lo += step) {
    if (shrink == 4)
      out.emplace_back(lo, lo + full);
    else
      out.push_back(centered_at(lo + full / 2, shrink * a * bl));
  }
  return out;
}

/// Least n >= 1 with 4*alpha*(alpha*beta)^n * rho < |q|.
inline int stage_threshold(const Rational& q, const Rational& rho, const GameParams& params) {
  if (q.is_zero()) throw Error(ErrorKind::InvalidArgument, "q must be nonzero");
  if (rho.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "rho must be positive");
  const Rational target = q.abs();
  const Rational ab = params.alpha_beta();
  Rational len = 4 * params.alpha() * ab * rho;
  int n = 1;
  while (len >= target) {
    len *= ab;
    ++n;
  }
  return n;
}

/// Groups window indices into chains under "shift by q meets". Each chain
/// is listed head first; every member's shifted window meets only its
/// successor.
inline std::vector<std::vector<std::size_t>> build_chains(const std::vector<Interval>& omegas, const Rational& q) {
  if (omegas.empty()) return {};
  const Rational len = omegas.front().length();
  for (const auto& w : omegas)
    if (w.length() != len) throw Error(ErrorKind::InvalidArgument, "windows must share one length");
  if (!(len < q.abs())) throw Error(ErrorKind::InvalidArgument, "window length must be below |q|");

  const std::size_t n = omegas.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(n, none), prev(n, none);
  for (std::size_t i = 0; i < n; ++i) {
    Interval moved = shift(omegas[i], q);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !moved.meets(omegas[j])) continue;
      if (next[i] != none || prev[j] != none)
        throw Error(ErrorKind::ChainLemmaViolation, "window " + std::to_string(i) + " shifted by " + q.str() +
                                                        " meets more than one window, or window " +
                                                        std::to_string(j) + " is hit twice");
      next[i] = j;
      prev[j] = i;
    }
  }
  std::vector<std::vector<std::size_t>> chains;
  std::vector<bool> seen(n, false);
  for (std::size_t h = 0; h < n; ++h) {
    if (prev[h] != none) continue;
    auto& chain = chains.emplace_back();
    for (std::size_t k = h; k != none; k = next[k]) {
      chain.push_back(k);
      seen[k] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw Error(ErrorKind::ChainLemmaViolation, "cyclic shift relation at window " + std::to_string(i));
  return chains;
}

/// Three candidate positions for a length-u interval inside `omega`:
/// flush left, centered, flush right. When 3u < |omega| they are pairwise
/// separated, so any interval of length <= u meets at most two of them.
inline std::array<Interval, 3> slot_candidates(const Interval& omega, const Rational& u) {
  return {Interval(omega.lo, omega.lo + u), centered_at(omega.center(), u), Interval(omega.hi - u, omega.hi)};
}

/// Leftmost slot strictly disjoint from `blocker` (flush left if none).
inline Interval pick_slot(const Interval& omega, const Rational& u, const std::optional<Interval>& blocker) {
  auto slots = slot_candidates(omega, u);
  if (!blocker) return slots[0];
  for (const auto& s : slots)
    if (!s.meets(*blocker)) return s;
  throw Error(ErrorKind::NoFreeSlot, "every slot of window meets the shifted predecessor");
}

/// Designates one length-u interval inside each window so that no shifted
/// designated interval meets another. Chains are walked from their heads.
inline std::vector<Interval> choose_alice_intervals(const std::vector<Interval>& omegas,
                                                    const std::vector<std::vector<std::size_t>>& chains,
                                                    const Rational& q, const Rational& alice_len) {
  for (const auto& w : omegas)
    if (alice_len * 4 > w.length())
      throw Error(ErrorKind::InvalidArgument, "designated length exceeds a quarter of the window");
  std::vector<std::optional<Interval>> chosen(omegas.size());
  for (const auto& chain : chains) {
    std::optional<Interval> blocker;
    for (std::size_t idx : chain) {
      chosen.at(idx) = pick_slot(omegas[idx], alice_len, blocker);
      blocker = shift(*chosen[idx], q);
    }
  }
  std::vector<Interval> out;
  out.reserve(omegas.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!chosen[i]) throw Error(ErrorKind::InvalidArgument, "window " + std::to_string(i) + " is in no chain");
    out.push_back(*chosen[i]);
  }
  return out;
}

/// Lexicographically least (m, n), m, n >= 1, with
/// sqrt(ab) <= (rho2/rho1) * ab^(n-m) <= 1/sqrt(ab), compared after squaring.
inline std::pair<int, int> synchronize_stages(const Rational& rho1, const Rational& rho2, const GameParams& params) {
  if (rho1.sign() <= 0 || rho2.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "lengths must be positive");
  const Rational ab = params.alpha_beta();
  const Rational upper = ab.reciprocal();
  const Rational base = rho2 / rho1;
  for (int m = 1;; ++m) {
    // ratio(n) = base * ab^(n-m) decreases in n.
    Rational ratio = base * ab.pow(1 - m);
    for (int n = 1;; ++n, ratio *= ab) {
      Rational sq = ratio * ratio;
      if (sq < ab) break;
      if (sq <= upper) return {m, n};
    }
  }
}

}  // namespace schmidt
