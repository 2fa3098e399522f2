#include <gtest/gtest.h>

#include <random>

#include "schmidt/verify.hpp"

using namespace schmidt;

namespace {

const GameParams kRunning(Rational(1, 20), Rational(1, 2));

// Exhaustive version of the partial-Vitali property: every ordered pair of
// designated intervals in scope, at every scheduled stage.
std::optional<std::string> brute_force_violation(const TargetTree& tree) {
  auto level = [&](int seed, int stage) { return tree.level(tree.seed_root(seed), stage + tree.offset(seed)); };
  for (const auto& t : tree.tasks()) {
    std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> groups;
    const int seeds = static_cast<int>(tree.seeds().size());
    switch (t.kind) {
      case StageKind::Filler: break;
      case StageKind::Intra:
      case StageKind::Envelope:
        for (int s = 0; s < seeds; ++s)
          if (t.first < 0 || s == t.first) groups.emplace_back(level(s, t.stage), level(s, t.stage));
        break;
      case StageKind::Cross:
        groups.emplace_back(level(t.first, t.stage), level(t.second, t.stage));
        groups.emplace_back(level(t.second, t.stage), level(t.first, t.stage));
        break;
      case StageKind::Dodge: groups.emplace_back(level(t.first, t.stage), level(t.second, t.stage)); break;
    }
    for (const auto& [from, to] : groups)
      for (NodeId x : from)
        for (NodeId y : to)
          if (x != y && shift(tree.alice(x), t.q).meets(tree.alice(y)))
            return "stage " + std::to_string(t.stage) + " q=" + t.q.str();
  }
  return std::nullopt;
}

void expect_nested(const TargetTree& tree, NodeId n) {
  for (NodeId c : tree.children(n)) {
    EXPECT_TRUE(tree.alice(n).contains(tree.omega(c)));
    EXPECT_TRUE(tree.omega(c).contains(tree.alice(c)));
    EXPECT_EQ(tree.alice(c).length(), tree.params().alpha_beta() * tree.alice(n).length());
    if (tree.round(c) < 4) expect_nested(tree, c);
  }
}

}  // namespace

TEST(TargetTree, SingleSeedSchedule) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 4, TreeMode::Single);
  ASSERT_GE(tree.tasks().size(), 2U);
  EXPECT_EQ(tree.task_at(1).q_index, 0U);
  EXPECT_EQ(tree.task_at(1).q, Rational(1));
  EXPECT_EQ(tree.task_at(2).q_index, 1U);
  EXPECT_EQ(tree.task_at(2).q, Rational(-1));
  EXPECT_TRUE(check_partial_vitali(tree).pass);
  EXPECT_FALSE(brute_force_violation(tree));
}

TEST(TargetTree, FillerStagesWhileBelowThreshold) {
  // |q_0| = 1 is tiny against a long seed: stage 1 window length 4*(1/40)*(1/20)*1000 = 5
  auto tree = TargetTree::build({Interval(0, 1000)}, kRunning, 4, TreeMode::Single);
  EXPECT_EQ(tree.task_at(1).kind, StageKind::Filler);
  EXPECT_EQ(tree.task_at(2).q_index, 0U);
  NodeId root = tree.seed_root(0);
  for (NodeId c : tree.children(root)) EXPECT_EQ(tree.alice(c).center(), tree.omega(c).center());
}

TEST(TargetTree, DepthOneHandlesFirstRational) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 1, TreeMode::Single);
  EXPECT_EQ(tree.tasks().size(), 1U);
  EXPECT_TRUE(check_partial_vitali(tree).pass);
}

TEST(TargetTree, DesignatedIntervalsNest) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 4, TreeMode::Single);
  NodeId root = tree.seed_root(0);
  EXPECT_EQ(tree.alice(root), Interval(Rational(19, 40), Rational(21, 40)));
  expect_nested(tree, root);
}

TEST(TargetTree, Preconditions) {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind([] { TargetTree::build({Interval(0, 1)}, kRunning, 0, TreeMode::Single); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind([] { TargetTree::build({Interval(0, 1)}, GameParams(Rational(1, 12), Rational(1, 2)), 3, TreeMode::Single); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind([] { TargetTree::build({Interval(0, 1)}, GameParams(Rational(1, 20), Rational(1, 30)), 3, TreeMode::Single); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind([] { TargetTree::build({Interval(0, 1)}, kRunning, 3, TreeMode::Pair); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind([] { TargetTree::build({Interval(0, 1), Interval(2, 4)}, kRunning, 3, TreeMode::Diagonal); }),
            ErrorKind::InvalidParams);
  // unequal pair below alpha/(1-8 alpha)^2 = 5/36
  EXPECT_EQ(kind([] {
              TargetTree::build({Interval(0, 1), Interval(2, Rational(5, 2))}, GameParams(Rational(1, 20), Rational(1, 8)), 3,
                                TreeMode::Pair);
            }),
            ErrorKind::InvalidParams);
  // thickened needs beta > alpha/(1-5 alpha)^2 = 4/45
  EXPECT_EQ(kind([] { TargetTree::build({Interval(0, 1)}, GameParams(Rational(1, 20), Rational(2, 25)), 3, TreeMode::Thickened); }),
            ErrorKind::InvalidParams);
}

TEST(TargetTree, PairModeCrossStages) {
  auto tree = TargetTree::build({Interval(0, 1), Interval(2, 3)}, kRunning, 5, TreeMode::Pair);
  EXPECT_EQ(tree.task_at(1).kind, StageKind::Intra);
  EXPECT_EQ(tree.task_at(2).kind, StageKind::Cross);
  EXPECT_EQ(tree.task_at(2).q, Rational(1));
  EXPECT_TRUE(check_partial_vitali(tree).pass);
  EXPECT_FALSE(brute_force_violation(tree));
}

TEST(TargetTree, PairModeOverlappingSeeds) {
  auto tree = TargetTree::build({Interval(0, 1), Interval(Rational(1, 3), Rational(4, 3))}, kRunning, 5, TreeMode::Pair);
  EXPECT_TRUE(check_partial_vitali(tree).pass);
  EXPECT_FALSE(brute_force_violation(tree));
}

TEST(TargetTree, PairModeUnequalLengths) {
  auto tree = TargetTree::build({Interval(0, 1), Interval(2, Rational(5, 2))}, kRunning, 5, TreeMode::Pair);
  EXPECT_EQ(tree.task_at(2).kind, StageKind::Dodge);
  EXPECT_TRUE(check_partial_vitali(tree).pass);
  EXPECT_FALSE(brute_force_violation(tree));
}

TEST(TargetTree, PairModeSynchronizedOffsets) {
  auto tree = TargetTree::build({Interval(0, 1), Interval(2, Rational(81, 40))}, kRunning, 5, TreeMode::Pair);
  EXPECT_EQ(tree.offset(0), 1);
  EXPECT_EQ(tree.offset(1), 0);
  EXPECT_TRUE(check_partial_vitali(tree).pass);
  EXPECT_FALSE(brute_force_violation(tree));
}

TEST(TargetTree, DiagonalMode) {
  auto tree = TargetTree::build({Interval(0, 1), Interval(2, 3), Interval(Rational(1, 2), Rational(3, 2))}, kRunning, 5,
                                TreeMode::Diagonal);
  EXPECT_TRUE(check_partial_vitali(tree).pass);
  EXPECT_FALSE(brute_force_violation(tree));
}

TEST(TargetTree, ThickenedDelta) {
  auto delta = thickening_delta(kRunning);
  ASSERT_TRUE(delta);
  EXPECT_GT(*delta, 0);
  EXPECT_LT(*delta, Rational(1, 12));
  // dyadic
  Rational scaled = *delta * Rational(1 << 20);
  EXPECT_TRUE(scaled.is_integer());
  // the cross-game inequality at ratio sqrt(alpha beta), checked squared
  const Rational a = kRunning.alpha(), g = 1 + 2 * *delta, c = 1 - 4 * a - a * g;
  EXPECT_GE(kRunning.alpha_beta() * c * c, a * a * g * g);
  EXPECT_FALSE(thickening_delta(GameParams(Rational(1, 20), Rational(2, 25))));
}

TEST(TargetTree, ThickenedInstancesStayLegal) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 6, TreeMode::Thickened);
  const Rational d = *tree.delta();
  for (Rational dp : {Rational(0), d / 3, d}) {
    Interval first = delta_thickening(Interval(0, 1), dp);
    Strategy bob = opening_then(first, leftmost_reply);
    GameHistory h = run_game(kRunning, bob, alice_strategy(tree), 7);
    EXPECT_TRUE(check_run(h, tree).pass);
    EXPECT_TRUE(check_partial_vitali(tree, {first}).pass);
  }
  EXPECT_THROW(tree.root_for(delta_thickening(Interval(0, 1), d + Rational(1, 1000))), Error);
}

TEST(AliceStrategy, FollowsLeftmostWindow) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 4, TreeMode::Single);
  GameHistory h = run_game(kRunning, opening_then(Interval(0, 1), leftmost_reply), alice_strategy(tree), 5);
  NodeId node = tree.seed_root(0);
  EXPECT_EQ(h.alice(0), tree.alice(node));
  for (std::size_t k = 1; k < 5; ++k) {
    node = tree.children(node).front();
    EXPECT_EQ(h.alice(k), tree.alice(node));
  }
  EXPECT_TRUE(check_run(h, tree).pass);
}

TEST(AliceStrategy, EveryBobPlacementContainsAWindow) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 3, TreeMode::Single);
  NodeId root = tree.seed_root(0);
  const Interval a0 = tree.alice(root);
  const Rational len = kRunning.beta() * a0.length();
  std::vector<Rational> offsets{a0.lo, a0.hi - len};
  for (NodeId c : tree.children(root))
    for (const Rational& e : {tree.omega(c).lo, tree.omega(c).hi}) {
      offsets.push_back(e);
      offsets.push_back(e - len);
    }
  Strategy alice = alice_strategy(tree);
  for (const Rational& x : offsets) {
    if (x < a0.lo || x + len > a0.hi) continue;
    GameHistory h(kRunning);
    h.push(Role::Bob, Interval(0, 1));
    h.push(Role::Alice, a0);
    h.push(Role::Bob, Interval(x, x + len));
    Interval reply = alice(h);
    EXPECT_FALSE(validate_move(h, Role::Alice, reply)) << x;
  }
}

TEST(AliceStrategy, Errors) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 2, TreeMode::Single);
  try {
    run_game(kRunning, opening_then(Interval(0, 2), leftmost_reply), alice_strategy(tree), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SeedMismatch);
  }
  try {
    run_game(kRunning, opening_then(Interval(0, 1), leftmost_reply), alice_strategy(tree), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DepthExceeded);
  }
}

TEST(Membership, Examples) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 4, TreeMode::Single);
  EXPECT_EQ(membership(tree, 5, 4), Membership::Out);
  NodeId node = tree.seed_root(0);
  for (int k = 0; k < 4; ++k) node = tree.children(node).front();
  EXPECT_EQ(membership(tree, tree.alice(node).lo, 4), Membership::InWindow);
  EXPECT_EQ(membership(tree, tree.alice(node).lo, 6), Membership::Unresolved);

  NodeId first = tree.children(tree.seed_root(0)).front();
  Rational outside = tree.alice(first).hi + (tree.omega(first).hi - tree.alice(first).hi) / 2;
  ASSERT_TRUE(tree.omega(first).contains(outside));
  EXPECT_EQ(membership(tree, outside, 1), Membership::Out);
}

TEST(TargetTree, RandomSmallTreesAgreeWithBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> an(1, 80), bn(1, 99), pos(-20, 20), len(1, 30);
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Rational a(an(rng), 1000), b(bn(rng), 100);
    if (!(a < b)) continue;
    GameParams p(a, b);
    const Rational start(pos(rng), 3);
    Interval seed(start, start + Rational(len(rng), 4));
    auto tree = TargetTree::build({seed}, p, 3, TreeMode::Single);
    if (tree.level(tree.seed_root(0), 3).size() > 400) continue;
    ++built;
    auto cert = check_partial_vitali(tree);
    auto brute = brute_force_violation(tree);
    EXPECT_EQ(cert.pass, !brute) << a << " " << b << " " << seed;
  }
  EXPECT_GT(built, 20);
}
