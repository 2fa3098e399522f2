#pragma once

// Staged window tree carrying Alice's designated replies. The tree branches
// at every stage, so nodes are materialized on demand and memoized; every
// designated interval is a pure function of the construction parameters,
// so the tree behaves as an immutable value.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schmidt/classify.hpp"
#include "schmidt/enumeration.hpp"
#include "schmidt/omega.hpp"

namespace schmidt {

enum class TreeMode { Single, Pair, Diagonal, Thickened };

inline std::string_view to_string(TreeMode m) {
  switch (m) {
    case TreeMode::Single: return "single";
    case TreeMode::Pair: return "pair";
    case TreeMode::Diagonal: return "diagonal";
    case TreeMode::Thickened: return "thickened";
  }
  return "?";
}

inline TreeMode parse_tree_mode(std::string_view s) {
  if (s == "single") return TreeMode::Single;
  if (s == "pair") return TreeMode::Pair;
  if (s == "diagonal") return TreeMode::Diagonal;
  if (s == "thickened") return TreeMode::Thickened;
  throw Error(ErrorKind::ParseError, "unknown tree mode '" + std::string(s) + "'");
}

/// What a stage does with its windows.
///  Filler:   every designated reply is the centered interval.
///  Intra:    shift-disjointness for q inside each root (or only seed `first`).
///  Cross:    shift-disjointness for q between seeds `first` and `second`, both orders.
///  Dodge:    unequal-length cross stage; seed `first` (longer moves) avoids
///            the centered replies of seed `second` shifted by -q.
///  Envelope: first stage of thickened mode; replies sit at fixed centers
///            chosen for the widest admissible thickening.
enum class StageKind { Filler, Intra, Cross, Dodge, Envelope };

inline std::string_view to_string(StageKind k) {
  switch (k) {
    case StageKind::Filler: return "filler";
    case StageKind::Intra: return "intra";
    case StageKind::Cross: return "cross";
    case StageKind::Dodge: return "dodge";
    case StageKind::Envelope: return "envelope";
  }
  return "?";
}

struct StageTask {
  int stage = 0;
  StageKind kind = StageKind::Filler;
  std::optional<std::uint64_t> q_index;
  Rational q;
  int first = -1;
  int second = -1;
};

using NodeId = int;

/// Largest dyadic thickening k/2^20 below 1/12 for which the
/// cross-game disjointness inequality holds at the worst length ratio
/// sqrt(alpha*beta) and every Bob move of a thickened game still covers a
/// first-stage window. nullopt when even delta = 0 fails.
inline std::optional<Rational> thickening_delta(const GameParams& params);

class TargetTree {
 public:
  /// Builds (lazily) the target construction. Throws InvalidParams when a
  /// mode precondition fails.
  static TargetTree build(std::vector<Interval> seeds, const GameParams& params, int depth, TreeMode mode);

  const GameParams& params() const { return impl_->params; }
  TreeMode mode() const { return impl_->mode; }
  int depth() const { return impl_->depth; }
  const std::vector<Interval>& seeds() const { return impl_->seeds; }
  /// Thickening radius (thickened mode only).
  const std::optional<Rational>& delta() const { return impl_->delta; }
  const std::vector<StageTask>& tasks() const { return impl_->tasks; }
  /// Task for stage t (a filler task when nothing is scheduled there).
  StageTask task_at(int stage) const;
  /// Number of enumerated rationals whose every scheduled job fits in depth.
  std::uint64_t rationals_handled() const { return impl_->rationals_handled; }
  /// Round offset of a seed's game relative to the global stage index.
  int offset(int seed) const { return impl_->seed_offset.at(seed); }

  /// Root node of the game opened by `first_move`: the seed itself, or in
  /// thickened mode any centered thickening of a seed up to delta. Throws
  /// SeedMismatch otherwise.
  NodeId root_for(const Interval& first_move) const;
  NodeId seed_root(int seed) const { return impl_->seed_roots.at(seed); }

  int round(NodeId n) const;
  int stage(NodeId n) const;
  int seed_of(NodeId n) const;
  /// Window the node sits in; for a root node, Bob's opening move.
  Interval omega(NodeId n) const;
  /// Alice's designated reply at this node.
  Interval alice(NodeId n) const;
  std::vector<NodeId> children(NodeId n) const;
  NodeId parent(NodeId n) const;
  /// Window whose q-shift meets this one within the stage's scope, if any.
  std::optional<NodeId> predecessor(NodeId n) const;

  /// Nodes of `root`'s game at `round` whose windows meet `q`.
  std::vector<NodeId> query(NodeId root, int round, const Interval& range) const;
  /// Every node of `root`'s game at `round` (exponential in round).
  std::vector<NodeId> level(NodeId root, int round) const;
  /// Thickened mode: the stage-1 envelope attached to a reference window.
  Interval envelope(NodeId n) const;
  /// Largest admissible length of a designated reply at this node across
  /// all covered first moves (differs from the node's own only for envelopes).
  Rational max_alice_length(NodeId n) const;

  /// Replaces a designated reply. Test hook for corrupted-input checks.
  void override_alice(NodeId n, const Interval& replacement);

 private:
  struct Node {
    int root = 0;
    int round = 0;
    NodeId parent = -1;
    int index = 0;
    Interval omega;
    std::optional<Interval> alice;
    std::optional<std::vector<NodeId>> children;
  };
  struct Root {
    int seed = 0;
    Interval first_move;
    NodeId node = -1;
    bool reference = true;
  };
  struct Impl {
    Impl(GameParams p, TreeMode m, int d, std::vector<Interval> s)
        : params(std::move(p)), mode(m), depth(d), seeds(std::move(s)) {}
    GameParams params;
    TreeMode mode;
    int depth;
    std::vector<Interval> seeds;
    std::optional<Rational> delta;
    std::vector<StageTask> tasks;
    std::uint64_t rationals_handled = 0;
    std::vector<int> seed_offset;
    std::vector<NodeId> seed_roots;
    std::vector<Root> roots;
    std::deque<Node> nodes;
    std::map<std::pair<int, std::pair<std::string, std::string>>, NodeId> instance_roots;
    std::map<NodeId, Interval> envelopes;
    mutable std::recursive_mutex mu;
  };

  explicit TargetTree(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  NodeId add_root(int seed, const Interval& first_move, bool reference);
  const Node& node(NodeId n) const { return impl_->nodes.at(static_cast<std::size_t>(n)); }
  Node& node(NodeId n) { return impl_->nodes.at(static_cast<std::size_t>(n)); }
  int max_round(int root) const { return impl_->depth + impl_->seed_offset.at(impl_->roots.at(root).seed); }
  bool participates(const StageTask& t, int root) const;
  Interval compute_alice(NodeId n);
  Interval chain_alice(NodeId n, const StageTask& t);
  Interval dodge_alice(NodeId n, const StageTask& t);
  Interval envelope_of(NodeId ref);
  std::optional<NodeId> predecessor_in(NodeId n, const StageTask& t);
  void query_into(NodeId n, int round, const Interval& range, std::vector<NodeId>& out);
  const std::vector<NodeId>& children_of(NodeId n);
  Interval alice_of(NodeId n);

  // Mutable access for the lazy cache; the logical value never changes.
  TargetTree& self() const { return const_cast<TargetTree&>(*this); }

  std::shared_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------

namespace detail {

// First-stage coverage for a thickened game: does every Bob move inside
// A_0(I) (I = lambda-scaled thickening of the seed) contain one of the
// shrunken windows placed for the seed? Works in coordinates where the
// seed's A_0 is [0, 1].
inline bool thickened_stage_one_covered(const GameParams& params, const Rational& lambda) {
  const Interval parent(0, 1);
  const auto windows = place_omegas(parent, params, Rational(7, 2));
  const Rational grow = (lambda - 1) / 2;
  const Rational lo = -grow;
  const Rational bob_len = lambda * params.beta();
  const Rational last_start = 1 + grow - bob_len;
  Rational reach = lo;  // every start in [lo, reach] is already covered
  bool first = true;
  for (const auto& w : windows) {
    // starts x with [x, x+bob_len] containing w
    Rational from = w.hi - bob_len;
    Rational to = w.lo;
    if (to < from) continue;
    if (first ? from > lo : from > reach) return false;
    reach = max(reach, to);
    first = false;
  }
  return !first && reach >= last_start;
}

inline bool thickening_ok(const GameParams& params, const Rational& delta) {
  const Rational& a = params.alpha();
  const Rational grown = 1 + 2 * delta;
  const Rational c = 1 - 4 * a - a * grown;
  if (c.sign() <= 0) return false;
  // sqrt(ab) * c >= a * grown, squared
  if (params.alpha_beta() * c * c < a * a * grown * grown) return false;
  return thickened_stage_one_covered(params, Rational(1)) && thickened_stage_one_covered(params, grown);
}

// Leftmost interval of length u inside `omega` strictly clear of every
// obstacle; placed flush left when possible, else centered in the first gap
// wide enough.
inline std::optional<Interval> leftmost_clear(const Interval& omega, const Rational& u, std::vector<Interval> obstacles) {
  std::sort(obstacles.begin(), obstacles.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (auto& o : obstacles) {
    if (!o.meets(omega)) continue;
    if (!merged.empty() && merged.back().meets(o))
      merged.back().hi = max(merged.back().hi, o.hi);
    else
      merged.push_back(o);
  }
  auto clear = [&](const Interval& c) {
    return std::none_of(merged.begin(), merged.end(), [&](const Interval& o) { return o.meets(c); });
  };
  Interval flush(omega.lo, omega.lo + u);
  if (clear(flush)) return flush;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    Rational start = merged[i].hi;
    Rational end = i + 1 < merged.size() ? merged[i + 1].lo : omega.hi;
    if (end - start <= u) continue;
    Interval c(start + (end - start - u) / 2, start + (end - start - u) / 2 + u);
    if (omega.contains(c) && clear(c)) return c;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Rational> thickening_delta(const GameParams& params) {
  constexpr std::int64_t kScale = std::int64_t{1} << 20;
  const Rational unit(1, kScale);
  if (params.alpha() >= alpha_limit() || !detail::thickening_ok(params, Rational(0))) return std::nullopt;
  // largest k with k / 2^20 strictly below 1/12
  std::int64_t good = 0, bad = (kScale + 11) / 12;
  while (bad - good > 1) {
    std::int64_t mid = (good + bad) / 2;
    if (detail::thickening_ok(params, unit * mid))
      good = mid;
    else
      bad = mid;
  }
  return unit * good;
}

inline TargetTree TargetTree::build(std::vector<Interval> seeds, const GameParams& params, int depth, TreeMode mode) {
  auto fail = [](const std::string& why) { return Error(ErrorKind::InvalidParams, why); };
  if (depth < 1) throw fail("depth must be at least 1");
  if (seeds.empty()) throw fail("at least one seed is required");
  for (const auto& s : seeds)
    if (!s.positive()) throw fail("seed intervals need positive length");
  const Rational& a = params.alpha();
  const Rational& b = params.beta();
  if (a >= alpha_limit()) throw fail("alpha must be below 1/12");
  if (!(a < b)) throw fail("alpha must be below beta");
  switch (mode) {
    case TreeMode::Single:
      if (seeds.size() != 1) throw fail("single mode takes exactly one seed");
      break;
    case TreeMode::Pair:
      if (seeds.size() != 2) throw fail("pair mode takes exactly two seeds");
      break;
    case TreeMode::Diagonal:
      if (seeds.size() < 2) throw fail("diagonal mode takes at least two seeds");
      for (const auto& s : seeds)
        if (s.length() != seeds.front().length()) throw fail("diagonal mode needs seeds of one length");
      break;
    case TreeMode::Thickened:
      if (!(b > winning_beta_floor(a))) throw fail("thickened mode needs beta > alpha/(1-5 alpha)^2");
      break;
  }

  auto impl = std::make_shared<Impl>(params, mode, depth, std::move(seeds));
  const std::size_t seed_count = impl->seeds.size();
  impl->seed_offset.assign(seed_count, 0);

  if (mode == TreeMode::Thickened) {
    impl->delta = thickening_delta(params);
    if (!impl->delta) throw fail("no admissible thickening radius for these parameters");
  }

  bool unequal_pair = false;
  if (mode == TreeMode::Pair) {
    const Rational r1 = impl->seeds[0].length();
    const Rational r2 = impl->seeds[1].length();
    auto [m, n] = synchronize_stages(r1, r2, params);
    int low = std::min(m, n);
    impl->seed_offset[0] = m - low;
    impl->seed_offset[1] = n - low;
    Rational len1 = r1 * params.alpha_beta().pow(impl->seed_offset[0]);
    Rational len2 = r2 * params.alpha_beta().pow(impl->seed_offset[1]);
    unequal_pair = len1 != len2;
    if (unequal_pair && !(b > unequal_pair_beta_floor(a)))
      throw fail("unequal seed lengths need beta > alpha/(1-8 alpha)^2");
  }

  // Job list in processing order: (q index, kind, first, second).
  struct Job {
    std::uint64_t j;
    StageKind kind;
    int first;
    int second;
  };
  // Largest window length a root can see at a given round.
  auto window_len = [&](int seed, int stage) {
    Rational rho = impl->seeds[static_cast<std::size_t>(seed)].length();
    if (impl->delta) rho *= 1 + 2 * *impl->delta;
    return 4 * a * params.alpha_beta().pow(stage + impl->seed_offset[static_cast<std::size_t>(seed)]) * rho;
  };
  auto threshold = [&](const Job& job, const Rational& q) {
    std::vector<int> scope;
    if (job.kind == StageKind::Intra && job.first < 0) {
      for (std::size_t s = 0; s < seed_count; ++s) scope.push_back(static_cast<int>(s));
    } else {
      scope.push_back(job.first);
      if (job.second >= 0) scope.push_back(job.second);
    }
    int t = 1;
    for (;; ++t) {
      bool ok = std::all_of(scope.begin(), scope.end(), [&](int s) { return window_len(s, t) < q.abs(); });
      if (ok) return t;
    }
  };

  const std::size_t pair_count = seed_count * (seed_count + 1) / 2;
  auto job_at = [&](std::uint64_t k) -> Job {
    switch (mode) {
      case TreeMode::Single:
      case TreeMode::Thickened: return Job{k, StageKind::Intra, -1, -1};
      case TreeMode::Pair:
        if (k % 2 == 0) return Job{k / 2, StageKind::Intra, -1, -1};
        return Job{k / 2, unequal_pair ? StageKind::Dodge : StageKind::Cross, 0, 1};
      case TreeMode::Diagonal: {
        // Cantor walk over (rational index, seed pair).
        std::uint64_t d = 0, rest = k;
        for (;; ++d) {
          std::uint64_t width = std::min<std::uint64_t>(d + 1, pair_count);
          if (rest < width) break;
          rest -= width;
        }
        std::uint64_t p = rest;
        std::uint64_t j = d - p;
        int first = 0, second = 0;
        for (std::uint64_t i = 0, seen = 0; i < seed_count; ++i)
          for (std::uint64_t l = i; l < seed_count; ++l, ++seen)
            if (seen == p) {
              first = static_cast<int>(i);
              second = static_cast<int>(l);
            }
        if (first == second) return Job{j, StageKind::Intra, first, -1};
        return Job{j, StageKind::Cross, first, second};
      }
    }
    return Job{k, StageKind::Intra, -1, -1};
  };

  std::map<std::uint64_t, int> per_rational;  // j -> jobs scheduled
  const int jobs_per_rational =
      mode == TreeMode::Pair ? 2 : mode == TreeMode::Diagonal ? static_cast<int>(pair_count) : 1;
  int last_stage = 0;
  for (std::uint64_t k = 0;; ++k) {
    Job job = job_at(k);
    Rational q = enumerate_rationals(job.j);
    int t = std::max(threshold(job, q), last_stage + 1);
    if (t > depth) break;
    StageTask task;
    task.stage = t;
    task.kind = job.kind;
    task.q_index = job.j;
    task.q = q;
    task.first = job.first;
    task.second = job.second;
    if (job.kind == StageKind::Dodge) {
      Rational len0 = window_len(0, t), len1 = window_len(1, t);
      task.first = len0 > len1 ? 0 : 1;
      task.second = 1 - task.first;
    }
    if (mode == TreeMode::Thickened && t == 1) task.kind = StageKind::Envelope;
    impl->tasks.push_back(task);
    per_rational[job.j] += 1;
    last_stage = t;
  }
  for (const auto& [j, count] : per_rational)
    if (count == jobs_per_rational) ++impl->rationals_handled;

  TargetTree tree(std::move(impl));
  for (std::size_t s = 0; s < seed_count; ++s)
    tree.impl_->seed_roots.push_back(tree.add_root(static_cast<int>(s), tree.impl_->seeds[s], true));
  return tree;
}

inline NodeId TargetTree::add_root(int seed, const Interval& first_move, bool reference) {
  Node n;
  n.root = static_cast<int>(impl_->roots.size());
  n.round = 0;
  n.omega = first_move;
  impl_->nodes.push_back(n);
  NodeId id = static_cast<NodeId>(impl_->nodes.size() - 1);
  impl_->roots.push_back(Root{seed, first_move, id, reference});
  return id;
}

inline StageTask TargetTree::task_at(int stage) const {
  const auto& tasks = impl_->tasks;
  auto it = std::lower_bound(tasks.begin(), tasks.end(), stage, [](const StageTask& t, int s) { return t.stage < s; });
  if (it != tasks.end() && it->stage == stage) return *it;
  StageTask filler;
  filler.stage = stage;
  return filler;
}

inline NodeId TargetTree::root_for(const Interval& first_move) const {
  std::lock_guard lock(impl_->mu);
  const auto& seeds = impl_->seeds;
  for (std::size_t s = 0; s < seeds.size(); ++s)
    if (seeds[s] == first_move) return impl_->seed_roots[s];
  if (impl_->mode == TreeMode::Thickened && first_move.positive()) {
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const Interval& seed = seeds[s];
      if (first_move.center() != seed.center() || first_move.length() < seed.length()) continue;
      Rational d = (first_move.length() - seed.length()) / (2 * seed.length());
      if (d > *impl_->delta) continue;
      auto key = std::make_pair(static_cast<int>(s), std::make_pair(first_move.lo.str(), first_move.hi.str()));
      auto it = impl_->instance_roots.find(key);
      if (it != impl_->instance_roots.end()) return it->second;
      NodeId id = self().add_root(static_cast<int>(s), first_move, false);
      impl_->instance_roots.emplace(key, id);
      return id;
    }
  }
  throw Error(ErrorKind::SeedMismatch, "opening move " + first_move.lo.str() + ".." + first_move.hi.str() +
                                           " is not covered by any seed");
}

inline int TargetTree::round(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  return node(n).round;
}

inline int TargetTree::stage(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  const Node& x = node(n);
  return x.round - impl_->seed_offset.at(impl_->roots.at(x.root).seed);
}

inline int TargetTree::seed_of(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  return impl_->roots.at(node(n).root).seed;
}

inline Interval TargetTree::omega(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  return node(n).omega;
}

inline NodeId TargetTree::parent(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  return node(n).parent;
}

inline Interval TargetTree::alice(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  return self().alice_of(n);
}

inline std::vector<NodeId> TargetTree::children(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  return self().children_of(n);
}

inline std::optional<NodeId> TargetTree::predecessor(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  if (node(n).round == 0) return std::nullopt;
  StageTask t = task_at(stage(n));
  if (t.kind == StageKind::Filler || t.kind == StageKind::Dodge || !participates(t, node(n).root)) return std::nullopt;
  return self().predecessor_in(n, t);
}

inline std::vector<NodeId> TargetTree::query(NodeId root, int round, const Interval& range) const {
  std::lock_guard lock(impl_->mu);
  std::vector<NodeId> out;
  self().query_into(root, round, range, out);
  return out;
}

inline std::vector<NodeId> TargetTree::level(NodeId root, int round) const {
  std::lock_guard lock(impl_->mu);
  std::vector<NodeId> frontier{root};
  for (int r = node(root).round; r < round; ++r) {
    std::vector<NodeId> next;
    for (NodeId x : frontier)
      for (NodeId c : self().children_of(x)) next.push_back(c);
    frontier = std::move(next);
  }
  return frontier;
}

inline Interval TargetTree::envelope(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  if (impl_->mode != TreeMode::Thickened || node(n).round != 1 || task_at(1).kind != StageKind::Envelope)
    throw Error(ErrorKind::InvalidArgument, "envelopes exist only on the first stage of a thickened tree");
  const Node& x = node(n);
  NodeId ref_root = impl_->seed_roots.at(impl_->roots.at(x.root).seed);
  NodeId ref = self().children_of(ref_root).at(static_cast<std::size_t>(x.index));
  return self().envelope_of(ref);
}

inline Rational TargetTree::max_alice_length(NodeId n) const {
  std::lock_guard lock(impl_->mu);
  const Node& x = node(n);
  Rational len = self().alice_of(n).length();
  if (impl_->delta && impl_->roots.at(x.root).reference) {
    // any covered opening move scales the reference game by at most 1 + 2 delta
    len *= 1 + 2 * *impl_->delta;
  }
  return len;
}

inline void TargetTree::override_alice(NodeId n, const Interval& replacement) {
  std::lock_guard lock(impl_->mu);
  node(n).alice = replacement;
}

inline bool TargetTree::participates(const StageTask& t, int root) const {
  const Root& r = impl_->roots.at(root);
  switch (t.kind) {
    case StageKind::Filler: return false;
    case StageKind::Envelope: return true;
    case StageKind::Intra: return t.first < 0 || r.seed == t.first;
    case StageKind::Cross:
    case StageKind::Dodge: return r.reference && (r.seed == t.first || r.seed == t.second);
  }
  return false;
}

inline const std::vector<NodeId>& TargetTree::children_of(NodeId n) {
  if (node(n).children) return *node(n).children;
  const Node x = node(n);
  const int root = x.root;
  if (x.round >= max_round(root))
    throw Error(ErrorKind::DepthExceeded, "stage " + std::to_string(x.round + 1) + " lies beyond the built depth");
  const Root r = impl_->roots.at(root);
  std::vector<Interval> windows;
  if (impl_->mode == TreeMode::Thickened && x.round == 0) {
    // Shrunken first-stage windows of the seed, shared by every thickening.
    NodeId ref_root = impl_->seed_roots.at(r.seed);
    Interval ref_a0 = alice_of(ref_root);
    windows = place_omegas(ref_a0, impl_->params, Rational(7, 2));
  } else {
    windows = place_omegas(alice_of(n), impl_->params, 4);
  }
  std::vector<NodeId> ids;
  ids.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    Node c;
    c.root = root;
    c.round = x.round + 1;
    c.parent = n;
    c.index = static_cast<int>(i);
    c.omega = windows[i];
    impl_->nodes.push_back(std::move(c));
    ids.push_back(static_cast<NodeId>(impl_->nodes.size() - 1));
  }
  node(n).children = std::move(ids);
  return *node(n).children;
}

inline Interval TargetTree::alice_of(NodeId n) {
  if (!node(n).alice) {
    Interval a = compute_alice(n);
    node(n).alice = a;
  }
  return *node(n).alice;
}

inline Interval TargetTree::compute_alice(NodeId n) {
  const Node x = node(n);
  const GameParams& p = impl_->params;
  if (x.round == 0) return centered_at(x.omega.center(), p.alpha() * x.omega.length());
  const Rational len = p.alpha_beta() * alice_of(x.parent).length();
  StageTask t = task_at(stage(n));
  if (stage(n) < 1 || !participates(t, x.root)) return centered_at(x.omega.center(), len);
  switch (t.kind) {
    case StageKind::Filler: return centered_at(x.omega.center(), len);
    case StageKind::Envelope: return centered_at(envelope(n).center(), len);
    case StageKind::Dodge: return dodge_alice(n, t);
    case StageKind::Intra:
    case StageKind::Cross: return chain_alice(n, t);
  }
  return centered_at(x.omega.center(), len);
}

inline std::optional<NodeId> TargetTree::predecessor_in(NodeId n, const StageTask& t) {
  const Node x = node(n);
  const Interval range = shift(x.omega, -t.q);
  std::vector<NodeId> found;
  if (t.kind == StageKind::Cross) {
    const Root& r = impl_->roots.at(x.root);
    int other_seed = r.seed == t.first ? t.second : t.first;
    NodeId other_root = impl_->seed_roots.at(other_seed);
    query_into(other_root, t.stage + impl_->seed_offset.at(other_seed), range, found);
  } else {
    query_into(impl_->roots.at(x.root).node, x.round, range, found);
  }
  found.erase(std::remove(found.begin(), found.end(), n), found.end());
  if (found.size() > 1)
    throw Error(ErrorKind::ChainLemmaViolation, "window " + x.omega.lo.str() + ".." + x.omega.hi.str() +
                                                    " is met by " + std::to_string(found.size()) +
                                                    " shifted windows for q=" + t.q.str());
  if (found.empty()) return std::nullopt;
  return found.front();
}

inline Interval TargetTree::chain_alice(NodeId n, const StageTask& t) {
  // Walk back to the chain head (or a decided member), then forward.
  std::vector<NodeId> path{n};
  for (;;) {
    auto pred = predecessor_in(path.back(), t);
    if (!pred) break;
    if (path.size() > impl_->nodes.size()) throw Error(ErrorKind::ChainLemmaViolation, "cyclic chain");
    path.push_back(*pred);
    if (node(*pred).alice) break;
  }
  std::optional<Interval> blocker;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    NodeId id = *it;
    if (!node(id).alice) {
      const Rational len = impl_->params.alpha_beta() * alice_of(node(id).parent).length();
      node(id).alice = pick_slot(node(id).omega, len, blocker);
    }
    blocker = shift(*node(id).alice, t.q);
  }
  return *node(n).alice;
}

inline Interval TargetTree::dodge_alice(NodeId n, const StageTask& t) {
  const Node x = node(n);
  const Rational len = impl_->params.alpha_beta() * alice_of(x.parent).length();
  const int seed = impl_->roots.at(x.root).seed;
  if (seed == t.second) return centered_at(x.omega.center(), len);
  NodeId small_root = impl_->seed_roots.at(t.second);
  std::vector<NodeId> hits;
  query_into(small_root, t.stage + impl_->seed_offset.at(t.second), shift(x.omega, t.q), hits);
  std::vector<Interval> obstacles;
  for (NodeId h : hits) obstacles.push_back(shift(alice_of(h), -t.q));
  auto placed = detail::leftmost_clear(x.omega, len, std::move(obstacles));
  if (!placed) throw Error(ErrorKind::NoFreeSlot, "no room left in window " + x.omega.lo.str() + ".." + x.omega.hi.str());
  return *placed;
}

inline Interval TargetTree::envelope_of(NodeId ref) {
  auto it = impl_->envelopes.find(ref);
  if (it != impl_->envelopes.end()) return it->second;
  const StageTask t = task_at(1);
  const Node x = node(ref);
  const Rational widest = impl_->params.alpha_beta() * alice_of(x.parent).length() * (1 + 2 * *impl_->delta);
  const auto& siblings = children_of(x.parent);
  // Stage-1 windows of a seed all share the parent, so the chain is local.
  std::optional<Interval> blocker;
  std::vector<NodeId> path{ref};
  for (;;) {
    const Interval range = shift(node(path.back()).omega, -t.q);
    std::optional<NodeId> pred;
    for (NodeId s : siblings) {
      if (s == path.back() || !node(s).omega.meets(range)) continue;
      if (pred) throw Error(ErrorKind::ChainLemmaViolation, "stage-1 window hit twice for q=" + t.q.str());
      pred = s;
    }
    if (!pred) break;
    path.push_back(*pred);
    if (impl_->envelopes.count(*pred)) break;
  }
  for (auto p = path.rbegin(); p != path.rend(); ++p) {
    auto found = impl_->envelopes.find(*p);
    if (found == impl_->envelopes.end())
      found = impl_->envelopes.emplace(*p, pick_slot(node(*p).omega, widest, blocker)).first;
    blocker = shift(found->second, t.q);
  }
  return impl_->envelopes.at(ref);
}

inline void TargetTree::query_into(NodeId n, int round, const Interval& range, std::vector<NodeId>& out) {
  const int r = node(n).round;
  if (r == round) {
    if (node(n).omega.meets(range)) out.push_back(n);
    return;
  }
  if (r > round) return;
  if (!alice_of(n).meets(range)) return;
  for (NodeId c : children_of(n)) {
    if (!node(c).omega.meets(range)) continue;
    query_into(c, round, range, out);
  }
}

}  // namespace schmidt

namespace schmidt {

/// Alice follows the tree: A_0 is the root's designated reply; afterwards
/// she finds the leftmost window of the next stage inside Bob's move and
/// plays its designated interval.
inline Strategy alice_strategy(TargetTree tree) {
  return [tree = std::move(tree)](const GameHistory& h) -> Interval {
    if (h.empty() || h.next_role() != Role::Alice)
      throw Error(ErrorKind::InvalidArgument, "alice_strategy called out of turn");
    NodeId node = tree.root_for(h.bob(0));
    const std::size_t rounds = h.bob_count();
    for (std::size_t k = 1; k < rounds; ++k) {
      const Interval& bob = h.bob(k);
      std::optional<NodeId> next;
      for (NodeId c : tree.children(node))
        if (bob.contains(tree.omega(c))) {
          next = c;
          break;
        }
      if (!next)
        throw Error(ErrorKind::IllegalStrategyMove, "no window inside Bob's move at round " + std::to_string(k));
      node = *next;
    }
    return tree.alice(node);
  };
}

enum class Membership { InWindow, Out, Unresolved };

inline std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::InWindow: return "in-window";
    case Membership::Out: return "out";
    case Membership::Unresolved: return "unresolved";
  }
  return "?";
}

/// Finite-depth view of the target set: does x survive in a designated
/// interval at every stage 0..depth of some seed's game?
inline Membership membership(const TargetTree& tree, const Rational& x, int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be non-negative");
  bool unresolved = false;
  for (std::size_t s = 0; s < tree.seeds().size(); ++s) {
    NodeId node = tree.seed_root(static_cast<int>(s));
    const int limit = tree.depth() + tree.offset(static_cast<int>(s));
    if (!tree.alice(node).contains(x)) continue;
    bool alive = true;
    for (int round = 1; round <= depth; ++round) {
      if (round > limit) {
        unresolved = true;
        alive = false;
        break;
      }
      std::optional<NodeId> next;
      for (NodeId c : tree.children(node))
        if (tree.omega(c).contains(x) && tree.alice(c).contains(x)) {
          next = c;
          break;
        }
      if (!next) {
        alive = false;
        break;
      }
      node = *next;
    }
    if (alive) return Membership::InWindow;
  }
  return unresolved ? Membership::Unresolved : Membership::Out;
}

}  // namespace schmidt
