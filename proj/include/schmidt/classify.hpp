#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schmidt/game.hpp"

namespace schmidt {

enum class RegionLabel { TrivialDenseWinning, TrivialOnlyFullSpace, VitaliAllLosing, VitaliSomeWinning, Unknown };

inline std::string_view to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::TrivialDenseWinning: return "TrivialDenseWinning";
    case RegionLabel::TrivialOnlyFullSpace: return "TrivialOnlyFullSpace";
    case RegionLabel::VitaliAllLosing: return "VitaliAllLosing";
    case RegionLabel::VitaliSomeWinning: return "VitaliSomeWinning";
    case RegionLabel::Unknown: return "Unknown";
  }
  return "?";
}

/// Thresholds used by the classifier; exposed for the construction preconditions.
inline Rational winning_beta_floor(const Rational& alpha) {
  Rational s = Rational(1) - 5 * alpha;
  return alpha / (s * s);
}

inline Rational unequal_pair_beta_floor(const Rational& alpha) {
  Rational s = Rational(1) - 8 * alpha;
  return alpha / (s * s);
}

/// Every applicable label, in enum order. Boundary points satisfy none of
/// the strict inequalities and land in Unknown.
inline std::vector<RegionLabel> classify_region(const GameParams& p) {
  const Rational& a = p.alpha();
  const Rational& b = p.beta();
  std::vector<RegionLabel> out;
  if (a < 2 - b.reciprocal()) out.push_back(RegionLabel::TrivialDenseWinning);
  if (b < 2 - a.reciprocal()) out.push_back(RegionLabel::TrivialOnlyFullSpace);
  if (b < a) out.push_back(RegionLabel::VitaliAllLosing);
  if (a < Rational(1, 12) && b > winning_beta_floor(a)) out.push_back(RegionLabel::VitaliSomeWinning);
  if (out.empty()) out.push_back(RegionLabel::Unknown);
  return out;
}

inline std::string join_labels(const std::vector<RegionLabel>& labels, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += sep;
    s += to_string(labels[i]);
  }
  return s;
}

}  // namespace schmidt
