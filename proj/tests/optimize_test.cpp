//  Copyright 2026 The fixtrans Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "fixtrans/optimize.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace fixtrans {
namespace {

Universe abc() { return Universe({"a", "b", "c"}); }

Operator three_stage_chain() {
  return Operator::from_named_rules(abc(), {{{"a"}, {"b"}}, {{"b"}, {"c"}}, {{}, {"a"}}});
}

// Direct recomputation of the risk sum from its parts.
double risk_oracle(const ItemSet& x, const RiskModel::Weights& w, const RiskModel::Scores& s,
                   const std::map<RiskModel::NamedPair, double>& inter, const Universe& u) {
  auto component = [&](const std::map<std::string, double>& m) {
    double t = 0;
    for (const auto& [n, v] : m)
      if (x.contains(u.index_of(n))) t += v;
    return t;
  };
  double g = component(s.gaming);
  for (const auto& [p, v] : inter)
    if (x.contains(u.index_of(p.first)) && x.contains(u.index_of(p.second))) g += v;
  return w.alpha * component(s.privacy) + w.beta * component(s.leakage) + w.gamma * component(s.fragility) +
         w.delta * g;
}

TEST(Risk, EmptyStateIsZero) {
  auto u = abc();
  auto m = RiskModel::uniform(u, 2.0);
  EXPECT_EQ(risk(u.empty_set(), m), 0.0);
}

TEST(Risk, SingleWeightedItem) {
  auto u = abc();
  RiskModel::Scores s;
  s.privacy["a"] = 1.0;
  RiskModel m(u, {2.0, 0.0, 0.0, 0.0}, s);
  EXPECT_DOUBLE_EQ(risk(u.set_of({"a"}), m), 2.0);
  EXPECT_DOUBLE_EQ(risk(u.set_of({"b", "c"}), m), 0.0);
}

TEST(Risk, RejectsBadInput) {
  auto u = abc();
  RiskModel::Scores s;
  s.privacy["z"] = 1.0;
  EXPECT_THROW(RiskModel(u, {}, s), DomainError);
  s = {};
  s.leakage["a"] = -1.0;
  EXPECT_THROW(RiskModel(u, {}, s), DomainError);
  EXPECT_THROW(RiskModel(u, {-1, 0, 0, 0}, {}), DomainError);
  EXPECT_THROW(RiskModel(u, {}, {}, {{{"a", "a"}, 1.0}}), DomainError);
  EXPECT_THROW(risk(ItemSet(4), RiskModel::uniform(u)), DomainError);
}

TEST(Risk, MatchesComponentOracle) {
  std::mt19937_64 rng(5);
  auto u = Universe::numbered(7);
  RiskModel::Scores s;
  std::uniform_real_distribution<double> d(0, 2);
  for (auto& n : u.items()) {
    s.privacy[n] = d(rng);
    s.leakage[n] = d(rng);
    s.fragility[n] = d(rng);
    s.gaming[n] = d(rng);
  }
  std::map<RiskModel::NamedPair, double> inter{{{"i0", "i3"}, 1.5}, {{"i5", "i1"}, 0.25}};
  RiskModel::Weights w{0.5, 1.5, 2.0, 0.75};
  RiskModel m(u, w, s, inter);
  for (std::uint64_t mask = 0; mask < 128; ++mask) {
    auto x = ItemSet::from_mask(7, mask);
    EXPECT_NEAR(m(x), risk_oracle(x, w, s, inter, u), 1e-12);
  }
}

TEST(Risk, MonotoneOnSampledPairs) {
  std::mt19937_64 rng(10000);
  auto u = Universe::numbered(12);
  auto m = testing::random_risk_model(rng, u);
  for (int k = 0; k < 10000; ++k) {
    auto x = testing::random_subset(rng, 12);
    auto y = x | testing::random_subset(rng, 12, 0.3);
    ASSERT_LE(m(x), m(y) + 1e-12);
  }
}

TEST(LeastRiskFixedpoint, IdentityUniform) {
  auto u = Universe::numbered(4);
  auto r = least_risk_fixedpoint_check(Operator::identity(u), RiskModel::uniform(u));
  EXPECT_TRUE(r.lfp.empty());
  EXPECT_EQ(r.lfp_risk, 0.0);
  EXPECT_EQ(r.fixpoints.size(), 16u);
  EXPECT_TRUE(r.holds());
}

TEST(LeastRiskFixedpoint, ConstantPolicy) {
  auto u = abc();
  auto c = u.set_of({"b"});
  auto r = least_risk_fixedpoint_check(Operator::constant(u, c), RiskModel::uniform(u));
  ASSERT_EQ(r.fixpoints.size(), 1u);
  EXPECT_EQ(r.fixpoints[0].state, c);
  EXPECT_TRUE(r.holds());
}

TEST(LeastRiskFixedpoint, SeededRulePolicyOnEightItems) {
  std::mt19937_64 rng(88);
  auto op = testing::random_rule_policy(rng, 8);
  auto m = testing::random_risk_model(rng, op.universe());
  auto r = least_risk_fixedpoint_check(op, m);
  EXPECT_TRUE(r.holds());
  EXPECT_FALSE(r.fixpoints.empty());
}

TEST(LeastRiskFixedpoint, CapacityAndFuel) {
  auto big = Universe::numbered(13);
  EXPECT_THROW(least_risk_fixedpoint_check(Operator::identity(big), RiskModel::uniform(big)), CapacityError);
  EXPECT_THROW(least_risk_fixedpoint_check(three_stage_chain(), RiskModel::uniform(abc()), 2), FuelExhaustedError);
}

TEST(LeastRiskFixedpoint, FeasibleLfpIsOptimal) {
  auto u = abc();
  AccountabilityModel acc(u, {{"a", 1}, {"b", 1}, {"c", 1}});
  auto r = least_risk_fixedpoint_check(three_stage_chain(), RiskModel::uniform(u), 100, &acc, 2.0);
  EXPECT_EQ(r.optimal_among_feasible, std::optional<bool>(true));
  auto none = least_risk_fixedpoint_check(Operator::identity(u), RiskModel::uniform(u), 100, &acc, 2.0);
  EXPECT_FALSE(none.optimal_among_feasible.has_value());
}

TEST(LeastRiskFixedpoint, RandomPolicySuite) {
  std::mt19937_64 rng(4300);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = 3 + k % 8;
    auto op = testing::random_rule_policy(rng, n, k % 3 != 0);
    auto m = testing::random_risk_model(rng, op.universe());
    auto r = least_risk_fixedpoint_check(op, m);
    // independent scan for fixed points
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      auto x = ItemSet::from_mask(n, mask);
      if (op(x) != x) continue;
      ++count;
      EXPECT_TRUE(r.lfp.is_subset_of(x));
      EXPECT_LE(m(r.lfp), m(x) + 1e-12);
    }
    EXPECT_EQ(count, r.fixpoints.size());
    EXPECT_TRUE(r.holds());
  }
}

Universe ab() { return Universe({"a", "b"}); }

TEST(Greedy, ZeroThresholdReturnsLfp) {
  auto op = three_stage_chain();
  auto g = greedy_min_transparency(op, AccountabilityModel(abc(), {}), 0.0, RiskModel::uniform(abc()));
  EXPECT_EQ(g.status, GreedyStatus::Feasible);
  EXPECT_EQ(g.state, lfp(op, 100).value);
}

TEST(Greedy, PicksBestRatio) {
  auto u = ab();
  AccountabilityModel acc(u, {{"a", 2}, {"b", 1}});
  auto g = greedy_min_transparency(Operator::from_rules(u, {}), acc, 2.0, RiskModel::uniform(u));
  EXPECT_EQ(g.status, GreedyStatus::Feasible);
  EXPECT_EQ(g.state, u.set_of({"a"}));
  ASSERT_FALSE(g.trace.empty());
  EXPECT_EQ(g.trace[0].added, std::optional<std::size_t>(0));
}

TEST(Greedy, InfeasibleThreshold) {
  auto u = ab();
  AccountabilityModel acc(u, {{"a", 2}, {"b", 1}});
  auto g = greedy_min_transparency(Operator::from_rules(u, {}), acc, 3.5, RiskModel::uniform(u));
  EXPECT_EQ(g.status, GreedyStatus::Infeasible);
  AccountabilityModel capped(u, {{"a", 2}, {"b", 1}}, 2.5);
  EXPECT_EQ(greedy_min_transparency(Operator::from_rules(u, {}), capped, 3.0, RiskModel::uniform(u)).status,
            GreedyStatus::Infeasible);
}

TEST(Greedy, ZeroRiskItemsRankFirst) {
  auto u = abc();
  AccountabilityModel acc(u, {{"a", 5}, {"b", 1}, {"c", 2}});
  RiskModel::Scores s;
  s.privacy = {{"a", 1.0}, {"b", 0.0}, {"c", 0.0}};
  RiskModel m(u, {1, 0, 0, 0}, s);
  auto g = greedy_min_transparency(Operator::from_rules(u, {}), acc, 1.5, m);
  // b and c are free; c has the larger accountability gain.
  EXPECT_EQ(g.state, u.set_of({"c"}));
}

TEST(Greedy, TiesBrokenByIdentifier) {
  Universe u({"z", "m", "b"});
  AccountabilityModel acc(u, {{"z", 1}, {"m", 1}, {"b", 1}});
  auto g = greedy_min_transparency(Operator::from_rules(u, {}), acc, 1.0, RiskModel::uniform(u));
  EXPECT_EQ(g.state, u.set_of({"b"}));
}

TEST(Greedy, FuelExhaustion) {
  auto u = Universe::numbered(6);
  AccountabilityModel acc(u, {{"i0", 1}, {"i1", 1}, {"i2", 1}, {"i3", 1}, {"i4", 1}, {"i5", 1}});
  auto g = greedy_min_transparency(Operator::from_rules(u, {}), acc, 6.0, RiskModel::uniform(u), 2);
  EXPECT_EQ(g.status, GreedyStatus::FuelExhausted);
  EXPECT_THROW(greedy_min_transparency(Operator::from_rules(u, {}), acc, -1.0, RiskModel::uniform(u)), DomainError);
}

TEST(Greedy, SeededFeasibleSuiteWithKkt) {
  std::mt19937_64 rng(5050);
  int feasible = 0;
  for (int k = 0; k < 80 && feasible < 50; ++k) {
    std::size_t n = 4 + k % 6;
    auto op = testing::random_rule_policy(rng, n, k % 2 == 0);
    auto m = testing::random_risk_model(rng, op.universe());
    auto acc = testing::random_accountability(rng, op.universe());
    double top = acc(op.universe().full_set());
    double a0 = std::uniform_real_distribution<double>(0.0, top)(rng);
    if (k % 5 == 0) a0 = std::floor(a0);
    auto g = greedy_min_transparency(op, acc, a0, m);
    ASSERT_EQ(g.status, GreedyStatus::Feasible);
    ++feasible;
    EXPECT_GE(g.accountability, a0 - 1e-9);
    EXPECT_TRUE(is_post_fixed(op, g.state));
    auto dual = kkt_report(g.state, acc, a0, m, GainModel::none(op.universe()), &op);
    EXPECT_LE(std::abs(dual.slackness_product), 1e-9);
    EXPECT_GE(dual.eta, 0.0);
    // with a zero floor the greedy reproduces the least fixed point
    EXPECT_EQ(greedy_min_transparency(op, acc, 0.0, m).state, lfp(op, 1000).value);
  }
  EXPECT_EQ(feasible, 50);
}

TEST(Kkt, SlackConstraintHasZeroPrice) {
  auto u = ab();
  AccountabilityModel acc(u, {{"a", 2}, {"b", 1}});
  auto r = kkt_report(u.set_of({"a", "b"}), acc, 2.0, RiskModel::uniform(u), GainModel::none(u));
  EXPECT_FALSE(r.binding);
  EXPECT_EQ(r.eta, 0.0);
  EXPECT_EQ(r.slackness_product, 0.0);
  EXPECT_DOUBLE_EQ(r.slack, -1.0);
  // dropping b keeps A ≥ A0 and lowers risk
  EXPECT_FALSE(r.stationary);
}

TEST(Kkt, BindingTwoItemExample) {
  auto u = ab();
  AccountabilityModel acc(u, {{"a", 2}, {"b", 1}});
  auto r = kkt_report(u.set_of({"a"}), acc, 2.0, RiskModel::uniform(u), GainModel::none(u));
  EXPECT_TRUE(r.binding);
  EXPECT_LE(std::abs(r.slackness_product), 1e-9);
  // removing a saves risk 1 at accountability cost 2; adding b costs 1 and
  // gains 1. So η ∈ [0.5, inf) and the minimum is 0.5.
  EXPECT_DOUBLE_EQ(r.eta, 0.5);
  EXPECT_TRUE(r.stationary);
  EXPECT_TRUE(r.passes());
}

TEST(Kkt, EmptyStateZeroThreshold) {
  auto u = ab();
  auto r = kkt_report(u.empty_set(), AccountabilityModel(u, {{"a", 1}}), 0.0, RiskModel::uniform(u), GainModel::none(u));
  EXPECT_EQ(r.eta, 0.0);
  EXPECT_TRUE(r.passes());
}

TEST(Garble, IdenticalOperators) {
  auto op = three_stage_chain();
  auto r = garble_compare(op, op, RiskModel::uniform(abc()));
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.lfp1, r.lfp2);
  EXPECT_EQ(r.risk1, r.risk2);
}

TEST(Garble, CoarserDisclosureLowersRisk) {
  auto u = ab();
  auto t1 = Operator::from_named_rules(u, {{{}, {"a", "b"}}});
  auto t2 = Operator::from_named_rules(u, {{{}, {"a"}}});
  auto r = garble_compare(t1, t2, RiskModel::uniform(u));
  EXPECT_TRUE(r.holds());
  EXPECT_LT(r.risk2, r.risk1);
  AccountabilityModel acc(u, {{"a", 1}, {"b", 1}});
  auto f = garble_compare(t1, t2, RiskModel::uniform(u), &acc, 2.0);
  EXPECT_TRUE(f.feasible1);
  EXPECT_FALSE(f.feasible2);
}

TEST(Garble, ExtraRuleIsWitnessed) {
  auto u = ab();
  auto t1 = Operator::from_named_rules(u, {{{}, {"a"}}});
  auto t2 = Operator::from_named_rules(u, {{{}, {"a"}}, {{"a"}, {"b"}}});
  auto r = garble_compare(t1, t2, RiskModel::uniform(u));
  EXPECT_FALSE(r.hypothesis_holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_FALSE(t2(*r.witness).is_subset_of(t1(*r.witness)));
  EXPECT_FALSE(r.holds());
}

TEST(Garble, SeededGarblingSuite) {
  std::mt19937_64 rng(6100);
  for (int k = 0; k < 100; ++k) {
    std::size_t n = 3 + k % 8;
    auto t1 = testing::random_rule_policy(rng, n, k % 4 != 0);
    auto t2 = testing::random_garbling(rng, t1);
    auto m = testing::random_risk_model(rng, t1.universe());
    auto r = garble_compare(t1, t2, m);
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_TRUE(r.lfp_ordered);
    EXPECT_LE(r.risk2, r.risk1 + 1e-12);
  }
}

TEST(ProcessOutcome, Cases) {
  auto u = abc();
  auto proc = Operator::from_named_rules(u, {{{}, {"a"}}, {{"a"}, {"b", "c"}}});
  auto out = Operator::from_named_rules(u, {{{}, {"a"}}, {{"a"}, {"c"}}});
  auto r = process_outcome_compare(proc, out, RiskModel::uniform(u));
  EXPECT_EQ(r.label, "process-vs-outcome");
  EXPECT_TRUE(r.holds());
  EXPECT_LE(r.risk2, r.risk1);
  auto same = process_outcome_compare(proc, proc, RiskModel::uniform(u));
  EXPECT_EQ(same.risk1, same.risk2);
  EXPECT_FALSE(process_outcome_compare(out, proc, RiskModel::uniform(u)).hypothesis_holds);
}

TEST(Equilibrium, IdentityResponsesGiveFixpoints) {
  std::mt19937_64 rng(3);
  auto op = testing::random_rule_policy(rng, 6, false);
  auto eq = equilibrium_enumerate(op, BestResponseTable::identity(op.universe()));
  EXPECT_EQ(eq, enumerate_fixpoints(op));
}

TEST(Equilibrium, ConstantEmptyResponse) {
  auto u = abc();
  auto empty = BestResponseTable::constant(u, {u.empty_set()});
  auto op1 = Operator::from_named_rules(u, {{{"a"}, {"b"}}});
  EXPECT_EQ(equilibrium_enumerate(op1, empty), std::vector<ItemSet>{u.empty_set()});
  auto op2 = Operator::constant(u, u.set_of({"c"}));
  EXPECT_EQ(equilibrium_enumerate(op2, empty), std::vector<ItemSet>{u.empty_set()});
}

TEST(Equilibrium, PartialTableIsDomainError) {
  auto u = ab();
  using Table = std::map<ItemSet, std::set<ItemSet>>;
  BestResponseTable partial(Table{{u.empty_set(), {u.empty_set()}}});
  EXPECT_THROW(equilibrium_enumerate(Operator::identity(u), partial), DomainError);
  EXPECT_THROW(BestResponseTable(Table{{u.empty_set(), std::set<ItemSet>{}}}), DomainError);
}

TEST(Equilibrium, RandomTableMatchesSecondScan) {
  std::mt19937_64 rng(66);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 6;
    auto op = testing::random_rule_policy(rng, n, k % 2 == 0);
    std::map<ItemSet, std::set<ItemSet>> table;
    for (std::uint64_t m = 0; m < 64; ++m) {
      std::set<ItemSet> resp{testing::random_subset(rng, n)};
      if (m % 3 == 0) resp.insert(ItemSet::from_mask(n, m));
      table[ItemSet::from_mask(n, m)] = resp;
    }
    auto got = equilibrium_enumerate(op, BestResponseTable(table));
    // second scan: walk the table entries and pull back through T
    std::set<std::uint64_t> want;
    for (const auto& [y, responses] : table)
      for (const auto& x : responses)
        if (op(x) == y) want.insert(x.to_mask());
    std::set<std::uint64_t> got_masks;
    for (auto& x : got) got_masks.insert(x.to_mask());
    EXPECT_EQ(got_masks, want);
  }
}

TEST(Lawvere, SingletonIsSurjective) {
  auto r = lawvere_check(1, {{0}});
  EXPECT_TRUE(r.surjective);
  EXPECT_TRUE(r.every_endomap_has_fixed_point);
  EXPECT_FALSE(r.diagonal.has_value());
}

SelfMap apply_code(std::size_t code, std::size_t n) {
  SelfMap f(n);
  for (std::size_t i = 0; i < n; ++i, code /= n) f[i] = code % n;
  return f;
}

TEST(Lawvere, EveryEncodingOnTwoAndThreePoints) {
  for (std::size_t n : {2u, 3u}) {
    std::size_t maps = 1;
    for (std::size_t i = 0; i < n; ++i) maps *= n;
    std::size_t encodings = 1;
    for (std::size_t i = 0; i < n; ++i) encodings *= maps;
    for (std::size_t code = 0; code < encodings; ++code) {
      std::vector<SelfMap> e;
      std::size_t c = code;
      for (std::size_t x = 0; x < n; ++x, c /= maps) e.push_back(apply_code(c % maps, n));
      auto r = lawvere_check(n, e);
      ASSERT_FALSE(r.surjective);
      ASSERT_TRUE(r.diagonal.has_value());
      for (std::size_t x = 0; x < n; ++x) {
        ASSERT_NE((*r.diagonal)[x], e[x][x]);
        ASSERT_NE(e[x], *r.diagonal);
      }
      ASSERT_TRUE(r.diagonal_outside_image);
      ASSERT_TRUE(r.fixed_point_free.has_value());
      for (std::size_t x = 0; x < n; ++x) ASSERT_NE((*r.fixed_point_free)[x], x);
    }
  }
}

TEST(Lawvere, ConstantEncodingOnThree) {
  SelfMap f{0, 0, 0};
  auto r = lawvere_check(3, {f, f, f});
  EXPECT_EQ(r.image_size, 1u);
  EXPECT_EQ(r.self_maps, 27u);
  EXPECT_EQ(r.diagonal, (SelfMap{1, 1, 1}));
  EXPECT_TRUE(r.diagonal_outside_image);
}

TEST(Lawvere, Bounds) {
  EXPECT_THROW(lawvere_check(5, {}), CapacityError);
  EXPECT_THROW(lawvere_check(2, {{0, 1}}), DomainError);
  EXPECT_THROW(lawvere_check(2, {{0, 2}, {0, 1}}), DomainError);
}

TEST(BreachBound, Values) {
  EXPECT_DOUBLE_EQ(breach_bound(1.0), 0.0);
  EXPECT_DOUBLE_EQ(breach_bound(0.0), 1.0);
  EXPECT_DOUBLE_EQ(breach_bound(0.75), 0.25);
  EXPECT_THROW(breach_bound(1.5), DomainError);
  EXPECT_THROW(breach_bound(-0.1), DomainError);
}

TEST(Convergence, IdentityPolicy) {
  auto u = abc();
  EXPECT_EQ(iterative_risk_convergence(Operator::identity(u), RiskModel::uniform(u), 0.1).n, 0u);
}

TEST(Convergence, ThreeStageChain) {
  auto r = iterative_risk_convergence(three_stage_chain(), RiskModel::uniform(abc()), 0.5);
  EXPECT_EQ(r.n, 3u);
  EXPECT_EQ(r.risks, (std::vector<double>{0, 1, 2, 3}));
  EXPECT_TRUE(r.non_decreasing);
}

TEST(Convergence, LargeEpsilon) {
  EXPECT_EQ(iterative_risk_convergence(three_stage_chain(), RiskModel::uniform(abc()), 10.0).n, 0u);
  EXPECT_THROW(iterative_risk_convergence(three_stage_chain(), RiskModel::uniform(abc()), 0.5, 2), FuelExhaustedError);
}

TEST(Convergence, RandomPoliciesNonDecreasing) {
  std::mt19937_64 rng(550);
  for (int k = 0; k < 100; ++k) {
    auto op = testing::random_rule_policy(rng, 3 + k % 8, k % 2 == 0);
    auto m = testing::random_risk_model(rng, op.universe());
    auto r = iterative_risk_convergence(op, m, 0.25);
    EXPECT_TRUE(r.non_decreasing);
    // hand check of the definition
    for (std::size_t j = r.n; j < r.risks.size(); ++j) EXPECT_GE(r.risks[j], r.risks.back() - 0.25 - 1e-9);
    if (r.n > 0) EXPECT_LT(r.risks[r.n - 1], r.risks.back() - 0.25);
  }
}

TEST(Stratify, Cases) {
  auto u = abc();
  RiskModel plain = RiskModel::uniform(u);
  auto r = stratify_compare(u.set_of({"a"}), u.set_of({"b"}), plain);
  EXPECT_DOUBLE_EQ(r.gap, 0.0);
  EXPECT_FALSE(r.superadditive);

  RiskModel::Scores s;
  s.privacy = {{"a", 1}, {"b", 1}};
  RiskModel inter(u, {1, 1, 1, 2.0}, s, {{{"a", "b"}, 1.5}});
  auto g = stratify_compare(u.set_of({"a"}), u.set_of({"b"}), inter);
  EXPECT_DOUBLE_EQ(g.gap, 3.0);
  EXPECT_TRUE(g.superadditive);
  EXPECT_DOUBLE_EQ(stratify_compare(u.set_of({"a"}), u.empty_set(), inter).gap, 0.0);
  EXPECT_THROW(stratify_compare(u.set_of({"a"}), u.set_of({"a", "b"}), inter), DomainError);
}

TEST(Mixture, LinearScoresHaveNoGap) {
  auto r = mixture_gaming_eval({{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}}, 0.3);
  EXPECT_NEAR(r.jensen_gap, 0.0, 1e-12);
  EXPECT_TRUE(r.scores_convex);
}

TEST(Mixture, SquareOnUnitLevels) {
  auto closed = mixture_gaming_eval([](double l) { return l * l; }, 0.0, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(closed.expected_g, 0.5);
  EXPECT_DOUBLE_EQ(closed.g_at_mixed_level, 0.25);
  EXPECT_DOUBLE_EQ(closed.jensen_gap, 0.25);
  // the table form interpolates between the two listed points
  auto table = mixture_gaming_eval({{0.0, 0.0}, {1.0, 1.0}}, 0.5);
  EXPECT_DOUBLE_EQ(table.jensen_gap, 0.0);
  auto fine = mixture_gaming_eval({{0.0, 0.0}, {0.5, 0.25}, {1.0, 1.0}}, 0.5);
  EXPECT_DOUBLE_EQ(fine.jensen_gap, 0.25);
  EXPECT_TRUE(fine.scores_convex);
}

TEST(Mixture, DegenerateProbabilities) {
  std::vector<std::pair<double, double>> g{{0.0, 0.0}, {0.5, 0.25}, {1.0, 1.0}};
  EXPECT_DOUBLE_EQ(mixture_gaming_eval(g, 0.0).jensen_gap, 0.0);
  EXPECT_DOUBLE_EQ(mixture_gaming_eval(g, 1.0).jensen_gap, 0.0);
}

TEST(Mixture, Errors) {
  EXPECT_THROW(mixture_gaming_eval({{0.0, 1.0}}, 0.5), DomainError);
  EXPECT_THROW(mixture_gaming_eval({{0.0, 1.0}, {1.0, 2.0}}, 1.5), DomainError);
  EXPECT_FALSE(mixture_gaming_eval({{0.0, 0.0}, {0.5, 1.0}, {1.0, 1.0}}, 0.5).scores_convex);
}

}  // namespace
}  // namespace fixtrans
