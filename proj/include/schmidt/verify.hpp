#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schmidt/serialize.hpp"

namespace schmidt {

/// Outcome of one finite check. A failing certificate carries a witness
/// that reproduces the failure when the same check is re-run.
struct Certificate {
  std::string check;
  std::optional<GameParams> params;
  std::optional<int> depth;
  bool pass = true;
  Json witness;

  Json to_json() const {
    Json j;
    j["check"] = check;
    if (params) {
      j["alpha"] = params->alpha().str();
      j["beta"] = params->beta().str();
    }
    if (depth) j["depth"] = *depth;
    j["result"] = pass ? "pass" : "fail";
    if (!pass) j["witness"] = witness;
    return j;
  }

  static Certificate passed(std::string name) { return Certificate{std::move(name), std::nullopt, std::nullopt, true, {}}; }
  static Certificate failed(std::string name, Json witness) {
    return Certificate{std::move(name), std::nullopt, std::nullopt, false, std::move(witness)};
  }
};

// ---------------------------------------------------------------------------
// Critical-offset sweep.

struct SweepResult {
  std::size_t min_count = 0;
  Rational worst_offset;  // left end of a placement attaining min_count
};

/// Fewest windows fully inside a length-`move_len` interval sliding over
/// `parent`. Containment of each window changes only where the move's left
/// or right end crosses a window endpoint, so testing those offsets plus
/// midpoints between consecutive ones covers every placement.
inline SweepResult sweep_contained(const Interval& parent, const std::vector<Interval>& windows, const Rational& move_len) {
  if (move_len > parent.length()) throw Error(ErrorKind::InvalidArgument, "move longer than parent");
  const Rational first = parent.lo;
  const Rational last = parent.hi - move_len;
  std::vector<Rational> offsets{first, last};
  auto add = [&](const Rational& x) {
    if (x >= first && x <= last) offsets.push_back(x);
  };
  for (const auto& w : windows) {
    add(w.lo);
    add(w.hi);
    add(w.lo - move_len);
    add(w.hi - move_len);
  }
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  const std::size_t base = offsets.size();
  for (std::size_t i = 0; i + 1 < base; ++i) offsets.push_back((offsets[i] + offsets[i + 1]) / 2);

  std::vector<Interval> sorted = windows;
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  SweepResult best{static_cast<std::size_t>(-1), first};
  for (const auto& x : offsets) {
    const Interval move(x, x + move_len);
    // windows with lo >= x, scanned until lo passes the move
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x, [](const Interval& w, const Rational& v) { return w.lo < v; });
    std::size_t count = 0;
    for (; it != sorted.end() && it->lo <= move.hi; ++it)
      if (move.contains(*it)) ++count;
    if (count < best.min_count) best = SweepResult{count, x};
  }
  return best;
}

// ---------------------------------------------------------------------------

/// Gap and containment facts of the window placement, with rho = 1 and
/// the first Alice interval [0, alpha] as parent.
inline Certificate check_omega_geometry(const GameParams& params) {
  Certificate c = Certificate::passed("omega-geometry");
  c.params = params;
  const Rational& a = params.alpha();
  const Interval parent(0, a);
  const Rational L = parent.length();
  const Rational gap = params.beta() * L * (1 - 8 * a);
  const Rational len = 4 * a * params.beta() * L;
  if (!(gap > len)) {
    c.pass = false;
    c.witness = Json{{"reason", "gap-too-small"}, {"gap", gap.str()}, {"length", len.str()}};
    return c;
  }
  const auto windows = place_omegas(parent, params);
  const auto sweep = sweep_contained(parent, windows, params.beta() * L);
  if (sweep.min_count == 0) {
    c.pass = false;
    c.witness = Json{{"reason", "uncovered-move"}, {"offset", sweep.worst_offset.str()},
                     {"move", interval_json(Interval(sweep.worst_offset, sweep.worst_offset + params.beta() * L))}};
  }
  return c;
}

/// Every shifted window meets at most one other window.
inline Certificate check_chain_lemma(const std::vector<Interval>& omegas, const Rational& q) {
  Certificate c = Certificate::passed("chain-lemma");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const Interval moved = shift(omegas[i], q);
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      if (i == j || !moved.meets(omegas[j])) continue;
      if (hit) {
        c.pass = false;
        c.witness = Json{{"q", q.str()},
                         {"shifted", interval_json(omegas[i])},
                         {"index", i},
                         {"meets", Json::array({interval_json(omegas[*hit]), interval_json(omegas[j])})}};
        return c;
      }
      hit = j;
    }
  }
  return c;
}

/// Lengths of consecutive Cantor children versus the Alice move length:
/// every Alice move inside a window must contain two full children.
inline Certificate check_cantor_geometry(const Interval& window, const GameParams& params) {
  Certificate c = Certificate::passed("cantor-geometry");
  c.params = params;
  const auto kids = cantor_children(window, params);
  const auto sweep = sweep_contained(window, kids, params.alpha() * window.length());
  if (sweep.min_count < 2) {
    c.pass = false;
    c.witness = Json{{"offset", sweep.worst_offset.str()}, {"contained", sweep.min_count}};
  }
  return c;
}

namespace detail {

// Depth-first search for designated intervals A (under a_root) and A'
// (under b_root) at the given rounds with shift(A, q) meeting A'.
inline std::optional<std::pair<NodeId, NodeId>> find_shift_meet(const TargetTree& tree, NodeId a_root, int a_round,
                                                               NodeId b_root, int b_round, const Rational& q) {
  std::vector<std::pair<NodeId, NodeId>> stack{{a_root, b_root}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (!shift(tree.alice(x), q).meets(tree.alice(y))) continue;
    const bool x_done = tree.round(x) == a_round;
    const bool y_done = tree.round(y) == b_round;
    if (x_done && y_done) {
      if (x != y) return std::make_pair(x, y);
      continue;
    }
    const bool expand_x = !x_done && (y_done || tree.alice(x).length() >= tree.alice(y).length());
    if (expand_x) {
      for (NodeId c : tree.children(x)) stack.emplace_back(c, y);
    } else {
      for (NodeId c : tree.children(y)) stack.emplace_back(x, c);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Shift-disjointness of designated intervals at every scheduled stage,
/// plus the window-length threshold. `instances` adds thickened games
/// (by first move) to the roots checked in thickened mode.
inline Certificate check_partial_vitali(const TargetTree& tree, const std::vector<Interval>& instances = {}) {
  Certificate c = Certificate::passed("partial-vitali");
  c.params = tree.params();
  c.depth = tree.depth();
  const GameParams& p = tree.params();

  std::vector<NodeId> roots;
  for (std::size_t s = 0; s < tree.seeds().size(); ++s) roots.push_back(tree.seed_root(static_cast<int>(s)));
  for (const auto& first : instances) roots.push_back(tree.root_for(first));

  auto fail = [&](const StageTask& t, Json extra) {
    c.pass = false;
    Json w{{"stage", t.stage}, {"q_index", *t.q_index}, {"q", t.q.str()}};
    for (auto& [k, v] : extra.items()) w[k] = v;
    c.witness = std::move(w);
  };

  for (const StageTask& t : tree.tasks()) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    switch (t.kind) {
      case StageKind::Filler: break;
      case StageKind::Intra:
      case StageKind::Envelope:
        for (NodeId r : roots)
          if (t.first < 0 || tree.seed_of(r) == t.first) pairs.emplace_back(r, r);
        break;
      case StageKind::Cross:
        pairs.emplace_back(tree.seed_root(t.first), tree.seed_root(t.second));
        pairs.emplace_back(tree.seed_root(t.second), tree.seed_root(t.first));
        break;
      case StageKind::Dodge: pairs.emplace_back(tree.seed_root(t.first), tree.seed_root(t.second)); break;
    }

    for (const auto& [ra, rb] : pairs) {
      for (NodeId r : {ra, rb}) {
        const int round = t.stage + tree.offset(tree.seed_of(r));
        Rational rho = tree.seeds().at(static_cast<std::size_t>(tree.seed_of(r))).length();
        if (tree.delta()) rho *= 1 + 2 * *tree.delta();
        Rational window = 4 * p.alpha() * p.alpha_beta().pow(round) * rho;
        if (!(window < t.q.abs())) {
          fail(t, Json{{"reason", "threshold"}, {"window_length", window.str()}});
          return c;
        }
      }
      const int a_round = t.stage + tree.offset(tree.seed_of(ra));
      const int b_round = t.stage + tree.offset(tree.seed_of(rb));
      if (auto hit = detail::find_shift_meet(tree, ra, a_round, rb, b_round, t.q)) {
        fail(t, Json{{"reason", "shift-meets"},
                     {"A", interval_json(tree.alice(hit->first))},
                     {"Aprime", interval_json(tree.alice(hit->second))},
                     {"seeds", Json::array({tree.seed_of(hit->first), tree.seed_of(hit->second)})}});
        return c;
      }
    }

    if (t.kind == StageKind::Envelope) {
      // Envelopes bound the stage-1 replies of every thickened game.
      for (std::size_t s = 0; s < tree.seeds().size(); ++s) {
        auto kids = tree.children(tree.seed_root(static_cast<int>(s)));
        for (NodeId x : kids)
          for (NodeId y : kids)
            if (x != y && shift(tree.envelope(x), t.q).meets(tree.envelope(y))) {
              fail(t, Json{{"reason", "envelope-shift-meets"},
                           {"A", interval_json(tree.envelope(x))},
                           {"Aprime", interval_json(tree.envelope(y))}});
              return c;
            }
      }
    }
  }
  return c;
}

/// Does the run follow the tree? Each Alice move must equal the designated
/// interval of a window of the current stage lying inside Bob's move.
inline Certificate check_run(const GameHistory& history, const TargetTree& tree) {
  Certificate c = Certificate::passed("run");
  c.params = tree.params();
  c.depth = static_cast<int>(history.alice_count());
  if (history.empty()) return c;
  NodeId node = tree.root_for(history.bob(0));  // seed-mismatch propagates

  GameHistory replay(history.params());
  for (const auto& m : history.moves()) {
    if (auto why = validate_move(replay, m.role, m.interval)) {
      c.pass = false;
      c.witness = Json{{"round", replay.next_round()}, {"reason", "illegal-move"}, {"violation", to_string(*why)}};
      return c;
    }
    replay.push(m.role, m.interval);
  }

  for (std::size_t k = 0; k < history.alice_count(); ++k) {
    const Interval& a = history.alice(k);
    if (k > 0) {
      if (tree.round(node) >= tree.depth() + tree.offset(tree.seed_of(node))) {
        c.pass = false;
        c.witness = Json{{"round", k}, {"reason", "beyond-depth"}};
        return c;
      }
      std::optional<NodeId> next;
      for (NodeId ch : tree.children(node))
        if (tree.omega(ch).contains(a) && history.bob(k).contains(tree.omega(ch))) {
          next = ch;
          break;
        }
      if (!next) {
        c.pass = false;
        c.witness = Json{{"round", k}, {"reason", "no-window"}, {"A", interval_json(a)}};
        return c;
      }
      node = *next;
    }
    const Interval expected = tree.alice(node);
    if (expected != a) {
      c.pass = false;
      c.witness = Json{{"round", k}, {"reason", "deviation"}, {"A", interval_json(a)}, {"expected", interval_json(expected)}};
      return c;
    }
  }
  return c;
}

}  // namespace schmidt
