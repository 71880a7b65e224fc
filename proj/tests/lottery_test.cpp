#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace geu;

namespace {

LotteryDecisionSituation standard_situation(std::vector<Lottery> ls, std::vector<std::string> cs) {
  return LotteryDecisionSituation(std::move(ls), std::move(cs), unit_interval_domain());
}

/// Every lottery is recovered exactly, subset by subset.
void expect_round_trip(const LotteryDecisionSituation& ls, const PlausibilisticSituation& ps) {
  EXPECT_NO_THROW(ps.measure.validate());
  for (const auto& l : ls.lotteries()) {
    auto induced = induce_lottery(ps, l.name);
    ASSERT_EQ(induced.support, l.support) << l.name;
    for (Subset y = 0; y < (Subset{1} << l.support.size()); ++y)
      EXPECT_EQ(induced.measure(y), l.measure(y)) << l.name << " at " << y;
  }
}

}  // namespace

TEST(Lotteries, SupportIsSortedAndTableRekeyed) {
  auto l = make_standard_lottery("l", {{"b", Rational(1, 3)}, {"a", Rational(2, 3)}});
  EXPECT_EQ(l.support, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(l.atom(0), Value::rational(2, 3));
  EXPECT_EQ(*l.position("b"), 1u);
  EXPECT_FALSE(l.position("z"));
}

TEST(Lotteries, RejectsBadInput) {
  EXPECT_THROW(make_standard_lottery("l", {{"a", Rational(1, 2)}}), Error);
  EXPECT_THROW(make_standard_lottery("l", {}), Error);
  auto l = make_standard_lottery("l", {{"a", Rational(1)}});
  EXPECT_THROW(standard_situation({l}, {"b"}), Error);
}

TEST(LotteryGeu, DegenerateLotteryGivesUtility) {
  auto l = degenerate_lottery("c2", unit_interval_domain());
  LotteryDecisionProblem lp(standard_situation({l}, {"c1", "c2"}), standard_expectation(), {Value(1), Value(9)});
  EXPECT_EQ(lottery_geu(lp, l), Value(9));
}

TEST(LotteryGeu, UniformStandardLottery) {
  auto l = make_standard_lottery("l", {{"1", Rational(1, 3)}, {"2", Rational(1, 3)}, {"3", Rational(1, 3)}});
  LotteryDecisionProblem lp(standard_situation({l}, {"1", "2", "3"}), standard_expectation(), fixture::identity_utility());
  EXPECT_EQ(lottery_geu(lp, "l"), Value(oracle::dot(fixture::uniform3(), oracle::rationals({1, 2, 3}))));
  EXPECT_THROW(lottery_geu(lp, "missing"), Error);
}

TEST(LotteryGeu, MaxDomainDegenerate) {
  auto e = max_expectation();
  auto l = degenerate_lottery("c", e->p);
  LotteryDecisionProblem lp(LotteryDecisionSituation({l}, {"c"}, e->p), e, {Value(4)});
  EXPECT_EQ(lottery_geu(lp, l), Value(4));
}

TEST(LotteryGeu, RuleOrdersByValue) {
  auto safe = degenerate_lottery("mid", unit_interval_domain());
  safe.name = "safe";
  auto coin = make_standard_lottery("coin", {{"low", Rational(1, 2)}, {"high", Rational(1, 2)}});
  LotteryDecisionProblem lp(standard_situation({safe, coin}, {"low", "mid", "high"}), standard_expectation(),
                            {Value(0), Value(3), Value(10)});
  auto r = rule_lottery_geu(lp);
  EXPECT_TRUE(r.strictly(0, 1));
}

TEST(InducedLotteries, UniformProbabilityGivesUniformLottery) {
  auto d = fixture::beldr_with(fixture::uniform3());
  auto l = induce_lottery(plausibilistic_situation(d), "a1");
  EXPECT_EQ(l.support, (std::vector<std::string>{"1", "2", "3"}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(l.atom(i), Value::rational(1, 3));
}

TEST(InducedLotteries, ConstantActIsDegenerate) {
  auto sit = std::make_shared<DecisionSituation>(fixture::s3(), std::vector<std::string>{"c", "d"},
                                                 std::vector<Act>{{"k", {1, 1, 1}}});
  PlausibilisticSituation ps{sit, fixture::beldr_belief()};
  auto l = induce_lottery(ps, "k");
  EXPECT_TRUE(same_lottery(l, degenerate_lottery("d", unit_interval_domain())));
}

TEST(InducedLotteries, BeliefPreimages) {
  auto l = induce_lottery(plausibilistic_situation(fixture::beldr()), "a1");
  // Bit i stands for consequence i + 1; {1,2} is the preimage {s1,s2}.
  EXPECT_EQ(l.measure(0b011), Value(1));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(l.atom(i), Value(0));
  EXPECT_EQ(l.measure(0b101), Value(0));
}

TEST(InducedLotteries, EqualLotteriesCollapse) {
  auto induced = induce_situation(plausibilistic_situation(fixture::beldr_with(fixture::uniform3())));
  EXPECT_EQ(induced.situation.lotteries().size(), 1u);
  EXPECT_EQ(induced.act_lottery, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(induced.situation.lotteries()[0].name, "a1");
}

TEST(ConstructSituation, SingleDegenerateLottery) {
  auto l = degenerate_lottery("c", unit_interval_domain());
  auto ls = standard_situation({l}, {"c"});
  auto ps = construct_situation(ls);
  EXPECT_EQ(ps.situation->states().size(), 1u);
  expect_round_trip(ls, ps);
}

TEST(ConstructSituation, UniformOnTwoConsequences) {
  auto l = make_standard_lottery("l", {{"c1", Rational(1, 2)}, {"c2", Rational(1, 2)}});
  auto ls = standard_situation({l}, {"c1", "c2"});
  auto ps = construct_situation(ls);
  ASSERT_EQ(ps.situation->states(), (std::vector<std::string>{"f(c1)", "f(c2)"}));
  EXPECT_EQ(ps.measure(0b01), Value::rational(1, 2));
  EXPECT_EQ(ps.measure(0b10), Value::rational(1, 2));
  expect_round_trip(ls, ps);
}

TEST(ConstructSituation, OverlappingLotteries) {
  auto a = make_standard_lottery("a", {{"c1", Rational(1, 4)}, {"c2", Rational(3, 4)}});
  auto b = make_standard_lottery("b", {{"c2", Rational(1, 3)}, {"c3", Rational(1, 3)}, {"c1", Rational(1, 3)}});
  auto ls = standard_situation({a, b}, {"c1", "c2", "c3"});
  auto ps = construct_situation(ls);
  EXPECT_EQ(ps.situation->states().size(), 6u);
  expect_round_trip(ls, ps);
}

TEST(ConstructSituation, NonadditiveLottery) {
  // 1/2 on each singleton and 1 on every pair is not additive.
  std::vector<Value> t{Value(0), Value::rational(1, 2), Value::rational(1, 2), Value(1), Value::rational(1, 2),
                       Value(1), Value(1), Value(1)};
  auto l = make_lottery("l", {"x", "y", "z"}, unit_interval_domain(), t);
  auto ls = standard_situation({l}, {"x", "y", "z"});
  expect_round_trip(ls, construct_situation(ls));
}

TEST(ConstructSituation, TooManyStates) {
  std::vector<Lottery> ls;
  for (int i = 0; i < 3; ++i) {
    // Structurally distinct lotteries with support 3 each: 27 states.
    auto li = make_standard_lottery("l" + std::to_string(i),
                                    {{"a", Rational(1, 3 + i)}, {"b", Rational(1, 3)}, {"c", Rational(1) - Rational(1, 3) - Rational(1, 3 + i)}});
    ls.push_back(li);
  }
  EXPECT_THROW(construct_situation(standard_situation(ls, {"a", "b", "c"})), Error);
}

TEST(ConstructStandard, SingleFairCoin) {
  auto l = make_standard_lottery("l", {{"h", Rational(1, 2)}, {"t", Rational(1, 2)}});
  auto ls = standard_situation({l}, {"h", "t"});
  auto ps = construct_situation_standard(ls);
  EXPECT_EQ(ps.situation->states(), (std::vector<std::string>{"[0,1/2)", "[1/2,1)"}));
  expect_round_trip(ls, ps);
}

TEST(ConstructStandard, DegenerateLottery) {
  auto l = degenerate_lottery("c", unit_interval_domain());
  auto ls = standard_situation({l}, {"c"});
  auto ps = construct_situation_standard(ls);
  EXPECT_EQ(ps.situation->states(), (std::vector<std::string>{"[0,1)"}));
  expect_round_trip(ls, ps);
}

TEST(ConstructStandard, TwoLotteriesShareBreakpoints) {
  auto a = make_standard_lottery("a", {{"x", Rational(1, 2)}, {"y", Rational(1, 2)}});
  auto b = make_standard_lottery("b", {{"x", Rational(1, 3)}, {"y", Rational(2, 3)}});
  auto ls = standard_situation({a, b}, {"x", "y"});
  auto ps = construct_situation_standard(ls);
  EXPECT_EQ(ps.situation->states(), (std::vector<std::string>{"[0,1/3)", "[1/3,1/2)", "[1/2,1)"}));
  // Interval lengths as atoms.
  EXPECT_EQ(*probability_atoms(ps.measure),
            (std::vector<Rational>{Rational(1, 3), Rational(1, 2) - Rational(1, 3), Rational(1, 2)}));
  expect_round_trip(ls, ps);
}

TEST(ConstructStandard, RejectsNonadditive) {
  std::vector<Value> t{Value(0), Value::rational(1, 2), Value::rational(1, 2), Value(1)};
  auto l = make_lottery("l", {"x", "y"}, unit_interval_domain(), t);
  // 1/2 + 1/2 = 1 makes this additive; lower one side.
  std::vector<Value> u{Value(0), Value::rational(1, 4), Value::rational(1, 2), Value(1)};
  auto m = make_lottery("m", {"x", "y"}, unit_interval_domain(), u);
  EXPECT_NO_THROW(construct_situation_standard(standard_situation({l}, {"x", "y"})));
  EXPECT_THROW(construct_situation_standard(standard_situation({m}, {"x", "y"})), Error);
}

TEST(LotteryUniformity, LiftedRelationsAreUniform) {
  auto d = fixture::beldr_with(fixture::uniform3());
  auto lifted = lift_lottery_rule(rule_lottery_geu)(d);
  EXPECT_TRUE(is_lottery_uniform(plausibilistic_situation(d), lifted));
  EXPECT_TRUE(lifted.tied(0, 1));
}

TEST(LotteryUniformity, SeparatingEqualLotteriesFails) {
  auto d = fixture::beldr_with(fixture::uniform3());
  PreferenceRelation r(d.situation().act_names());
  r.set(0, 0);
  r.set(1, 1);
  r.set(0, 1);
  auto w = lottery_uniformity_witness(plausibilistic_situation(d), r);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 3u);
}

TEST(LotteryUniformity, VacuousWhenLotteriesDiffer) {
  auto d = fixture::beldr_with({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  PreferenceRelation r(d.situation().act_names());
  r.set(1, 0);
  EXPECT_TRUE(is_lottery_uniform(plausibilistic_situation(d), r));
}

TEST(LiftedRules, LotteryGeuMatchesGeuForInjectiveUtility) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    auto d = random_problem(rng, Caps{});
    std::set<Value> us(d.utility().begin(), d.utility().end());
    if (us.size() != d.utility().size()) continue;
    d = rng.coin() ? with_probability(d, random_atoms(rng, d.situation().states().size())) : with_belief(d, rng);
    EXPECT_TRUE(relation_equal(lift_lottery_rule(rule_lottery_geu)(d), rule_geu(d))) << seed;
  }
}

TEST(LiftedRules, SingleAct) {
  auto d = with_probability(fixture::from_utilities({oracle::rationals({1, 2})}), {Rational(1, 2), Rational(1, 2)});
  auto r = lift_lottery_rule(rule_lottery_geu)(d);
  EXPECT_EQ(r.pairs().size(), 1u);
  EXPECT_THROW(lift_lottery_rule(rule_lottery_geu)(fixture::beldr_plain()), Error);
}
