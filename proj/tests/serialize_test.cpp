#include <gtest/gtest.h>

#include <random>

#include "schmidt/serialize.hpp"

using namespace schmidt;

namespace {

const GameParams kRunning(Rational(1, 20), Rational(1, 2));

}  // namespace

TEST(Serialize, IntervalWireFormat) {
  Interval i(Rational(-3, 40), Rational(1, 2));
  EXPECT_EQ(interval_json(i).dump(), R"({"lo":"-3/40","hi":"1/2"})");
  EXPECT_EQ(interval_from_json(Json::parse(R"({"lo":"-6/80","hi":"1/2"})")), i);
  EXPECT_THROW(interval_from_json(Json::parse(R"({"lo":1,"hi":"2"})")), Error);
  EXPECT_THROW(interval_from_json(Json::parse(R"({"lo":"2","hi":"1"})")), Error);
}

TEST(Serialize, TraceLines) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 2, TreeMode::Single);
  GameHistory h = run_game(kRunning, opening_then(Interval(0, 1), leftmost_reply), alice_strategy(tree), 2);
  std::string text = trace_jsonl(h);
  auto first = text.substr(0, text.find('\n'));
  EXPECT_EQ(first, R"({"k":0,"role":"B","lo":"0/1","hi":"1/1"})");
  GameHistory back = parse_trace(text, kRunning);
  EXPECT_EQ(back, h);
  EXPECT_EQ(trace_jsonl(back), text);
}

TEST(Serialize, TraceRejectsBrokenOrder) {
  EXPECT_THROW(parse_trace(R"({"k":0,"role":"A","lo":"0","hi":"1"})", kRunning), Error);
  EXPECT_THROW(parse_trace("{not json}", kRunning), Error);
  EXPECT_THROW(parse_trace(R"({"k":3,"role":"B","lo":"0","hi":"1"})", kRunning), Error);
}

TEST(Serialize, FoilCertificateRoundTrip) {
  GameParams p(Rational(1, 2), Rational(1, 4));
  auto cert = foil(p, oracles::centered(), 5, Interval(0, 1));
  Json j = to_json(cert);
  EXPECT_EQ(j.begin().key(), "q");
  EXPECT_EQ(j["rounds"][0].begin().key(), "A");
  auto back = foil_certificate_from_json(Json::parse(j.dump()), p);
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(Serialize, TreeDumpShape) {
  auto tree = TargetTree::build({Interval(0, 1)}, kRunning, 2, TreeMode::Single);
  Json d = dump_tree(tree);
  ASSERT_EQ(d["stages"].size(), 2U);
  const Json& s1 = d["stages"][0];
  EXPECT_EQ(s1["n"], 1);
  EXPECT_EQ(s1["q_index"], 0);
  ASSERT_EQ(s1["omegas"].size(), 3U);
  // q = 1 is far wider than the stage: every window heads its own chain
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s1["omegas"][i]["chain"], i);
  EXPECT_EQ(s1["omegas"][0]["alice"]["lo"], s1["omegas"][0]["lo"]);
  EXPECT_FALSE(d["truncated"].get<bool>());
  Json small = dump_tree(TargetTree::build({Interval(0, 1)}, kRunning, 6, TreeMode::Single), 50);
  EXPECT_TRUE(small["truncated"].get<bool>());
}

TEST(Serialize, RandomRoundTrips) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::int64_t> num(-1000000000LL, 1000000000LL), den(1, 1000000000LL);
  for (int i = 0; i < 2000; ++i) {
    Rational r(num(rng), den(rng));
    ASSERT_EQ(Rational::parse(r.str()), r);
    ASSERT_EQ(Rational::parse(r.str()).str(), r.str());
  }
}
