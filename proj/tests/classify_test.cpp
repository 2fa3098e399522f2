#include <gtest/gtest.h>

#include "schmidt/classify.hpp"

using namespace schmidt;

namespace {

// alpha = a/n, beta = b/n, every inequality cleared of denominators.
std::vector<RegionLabel> oracle(long long a, long long b, long long n) {
  std::vector<RegionLabel> out;
  if (a * b < 2 * n * b - n * n) out.push_back(RegionLabel::TrivialDenseWinning);  // a/n < 2 - n/b
  if (a * b < 2 * n * a - n * n) out.push_back(RegionLabel::TrivialOnlyFullSpace);
  if (b < a) out.push_back(RegionLabel::VitaliAllLosing);
  // a/n < 1/12 and b/n > (a/n) / (1 - 5a/n)^2 = a n / (n - 5a)^2
  if (12 * a < n && b * (n - 5 * a) * (n - 5 * a) > a * n * n) out.push_back(RegionLabel::VitaliSomeWinning);
  if (out.empty()) out.push_back(RegionLabel::Unknown);
  return out;
}

}  // namespace

TEST(Classify, KnownPoints) {
  EXPECT_EQ(join_labels(classify_region(GameParams(Rational(1, 2), Rational(1, 4)))), "VitaliAllLosing");
  EXPECT_EQ(join_labels(classify_region(GameParams(Rational(1, 20), Rational(1, 2)))), "VitaliSomeWinning");
  EXPECT_EQ(join_labels(classify_region(GameParams(Rational(1, 4), Rational(3, 4)))), "TrivialDenseWinning");
  EXPECT_EQ(join_labels(classify_region(GameParams(Rational(3, 4), Rational(1, 4)))),
            "TrivialOnlyFullSpace;VitaliAllLosing");
  EXPECT_EQ(join_labels(classify_region(GameParams(Rational(1, 2), Rational(1, 2)))), "Unknown");
}

TEST(Classify, BoundaryIsUnknownUnderStrictInequalities) {
  // beta = alpha exactly, away from the trivial wedges
  EXPECT_EQ(classify_region(GameParams(Rational(1, 3), Rational(1, 3))), std::vector{RegionLabel::Unknown});
  // alpha = 1/12 sits outside the winning sliver
  auto labels = classify_region(GameParams(Rational(1, 12), Rational(1, 2)));
  EXPECT_EQ(std::count(labels.begin(), labels.end(), RegionLabel::VitaliSomeWinning), 0);
}

TEST(Classify, GridMatchesClearedInequalities) {
  const long long n = 61;
  for (long long a = 1; a < n; ++a)
    for (long long b = 1; b < n; ++b)
      ASSERT_EQ(classify_region(GameParams(Rational(a, n), Rational(b, n))), oracle(a, b, n)) << a << "," << b;
}

TEST(Classify, Floors) {
  EXPECT_EQ(winning_beta_floor(Rational(1, 20)), Rational(4, 45));
  EXPECT_EQ(unequal_pair_beta_floor(Rational(1, 20)), Rational(5, 36));
}
