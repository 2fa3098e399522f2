#include <gtest/gtest.h>

#include <random>

#include "schmidt/adversary.hpp"

using namespace schmidt;

namespace {

const GameParams kLosing(Rational(1, 2), Rational(1, 4));

}  // namespace

TEST(Foil, LeftmostExample) {
  FoilController c(kLosing, Interval(0, 1));
  EXPECT_EQ(c.history(1).bob(0), Interval(2, Rational(5, 2)));
  auto tau = oracles::leftmost();
  c.play_alice(0, tau(0, c.history(0)));
  EXPECT_FALSE(c.q());
  c.play_alice(1, tau(1, c.history(1)));
  EXPECT_EQ(c.history(0).alice(0), Interval(0, Rational(1, 2)));
  EXPECT_EQ(c.history(1).alice(0), Interval(2, Rational(9, 4)));
  ASSERT_TRUE(c.q());
  EXPECT_EQ(*c.q(), Rational(2));
  EXPECT_EQ(c.history(0).bob(1), Interval(0, Rational(1, 8)));

  auto cert = foil(kLosing, oracles::leftmost(), 10, Interval(0, 1));
  EXPECT_EQ(cert.q, Rational(2));
  EXPECT_EQ(cert.rounds.size(), 10U);
  EXPECT_TRUE(cert.valid());
}

TEST(Foil, EveryOracleKeepsTheShiftContainment) {
  for (const char* name : {"leftmost", "rightmost", "centered", "alternating", "pseudo-random"}) {
    auto cert = foil(kLosing, oracles::by_name(name), 12, Interval(0, 1));
    ASSERT_TRUE(cert.valid()) << name;
    EXPECT_FALSE(cert.q.is_zero());
    const Rational rho = 1, ab = kLosing.alpha_beta();
    for (std::size_t n = 0; n < cert.rounds.size(); ++n) {
      EXPECT_TRUE(shift(cert.rounds[n].a, cert.q).contains(cert.rounds[n].a_prime));
      EXPECT_EQ(cert.rounds[n].a.length(), kLosing.alpha() * ab.pow(static_cast<int>(n)) * rho);
    }
    // both histories are legal games
    for (const auto& h : cert.histories) {
      GameHistory replay(kLosing);
      for (const auto& m : h.moves()) {
        ASSERT_FALSE(validate_move(replay, m.role, m.interval)) << name;
        replay.push(m.role, m.interval);
      }
    }
  }
}

TEST(Foil, QComesFromTheFirstReplies) {
  auto cert = foil(kLosing, oracles::centered(), 4, Interval(0, 1));
  const Interval& a = cert.rounds[0].a;
  const Interval& ap = cert.rounds[0].a_prime;
  EXPECT_LE(ap.hi - a.hi, cert.q);
  EXPECT_LE(cert.q, ap.lo - a.lo);
}

TEST(Foil, Errors) {
  try {
    foil(GameParams(Rational(1, 3), Rational(1, 3)), oracles::leftmost(), 3, Interval(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
  }
  PairGameOracle cheat = [](int, const GameHistory& h) { return h.back().interval; };
  try {
    foil(kLosing, cheat, 3, Interval(0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OracleIllegalMove);
  }
}

TEST(Cantor, StageOneWindows) {
  auto stages = cantor_windows(Interval(0, 1), kLosing, 2);
  ASSERT_EQ(stages[1].size(), 6U);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(stages[1][k], Interval(Rational(k, 6), Rational(k, 6) + Rational(1, 8)));
  // total length N_n (ab)^n rho, strictly shrinking fraction
  Rational prev = 1;
  for (std::size_t n = 1; n < stages.size(); ++n) {
    Rational total = 0;
    for (const auto& w : stages[n]) total += w.length();
    Rational frac = Rational(static_cast<std::int64_t>(stages[n].size())) * kLosing.alpha_beta().pow(static_cast<int>(n));
    EXPECT_EQ(total, frac);
    EXPECT_LT(frac, prev);
    prev = frac;
  }
  EXPECT_THROW(cantor_windows(Interval(0, 1), GameParams(Rational(1, 2), Rational(1, 3)), 1), Error);
}

TEST(Cantor, AvoidExample) {
  Strategy bob = bob_avoid_strategy({Rational(1, 20), Rational(1, 5)}, Interval(0, 1), kLosing);
  GameHistory h(kLosing);
  h.push(Role::Bob, bob(h));
  h.push(Role::Alice, Interval(0, Rational(1, 2)));
  EXPECT_EQ(bob(h), Interval(Rational(4, 24), Rational(7, 24)));

  Strategy plain = bob_avoid_strategy({Rational(7, 8)}, Interval(0, 1), kLosing);
  EXPECT_EQ(plain(h), Interval(0, Rational(1, 8)));
}

TEST(Cantor, RunsExcludeTheAvoidPoints) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> t(0, 64);
  std::vector<Rational> avoid;
  for (int i = 0; i < 8; ++i) avoid.emplace_back(static_cast<std::int64_t>(rng() % 997), 997);
  Strategy bob = bob_avoid_strategy(avoid, Interval(0, 1), kLosing);
  Strategy alice = [&](const GameHistory& h) { return reply_at(h, Rational(t(rng), 64)); };
  GameHistory h = run_game(kLosing, bob, alice, 9);
  for (std::size_t n = 1; n < 9; ++n)
    for (std::size_t i = 0; i < n; ++i) EXPECT_FALSE(h.alice(n).contains(avoid[i])) << n << " " << i;
}
