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

#pragma once

// Seeded generators for property batteries: random policies, sentence
// systems, μ-calculus formulas, frames and risk models.

#include <cstdint>
#include <random>
#include <vector>

#include "fixtrans/lattice.hpp"
#include "fixtrans/truth.hpp"
#include "fixtrans/mucalc.hpp"
#include "fixtrans/optimize.hpp"

namespace fixtrans::gen {

inline ItemSet random_subset(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  ItemSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (coin(rng)) s.insert(i);
  return s;
}

inline ItemSet random_small_subset(std::mt19937_64& rng, std::size_t n, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size_d(0, max_size), item_d(0, n - 1);
  ItemSet s(n);
  auto k = size_d(rng);
  for (std::size_t j = 0; j < k; ++j) s.insert(item_d(rng));
  return s;
}

/// Random Horn-rule policy: premises of at most two items, one or two conclusions.
inline Operator random_rule_policy(std::mt19937_64& rng, std::size_t n, bool inflationary = true,
                                   std::size_t max_rules = 0) {
  if (max_rules == 0) max_rules = n + 2;
  std::uniform_int_distribution<std::size_t> rules_d(0, max_rules);
  std::vector<Rule> rules;
  auto k = rules_d(rng);
  for (std::size_t j = 0; j < k; ++j) {
    ItemSet concl = random_small_subset(rng, n, 2);
    if (concl.empty()) concl.insert(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    rules.push_back({random_small_subset(rng, n, 2), concl});
  }
  return Operator::from_rules(Universe::numbered(n), std::move(rules), inflationary);
}

/// Random nonnegative risk model, with a few pair interactions.
inline RiskModel random_risk_model(std::mt19937_64& rng, const Universe& u) {
  std::uniform_real_distribution<double> score(0.0, 3.0);
  std::uniform_int_distribution<int> whole(0, 4);
  RiskModel::Scores s;
  for (const auto& n : u.items()) {
    s.privacy[n] = score(rng);
    s.leakage[n] = whole(rng);
    s.fragility[n] = score(rng);
    s.gaming[n] = whole(rng) * 0.5;
  }
  std::map<RiskModel::NamedPair, double> inter;
  if (u.size() >= 2) {
    std::uniform_int_distribution<std::size_t> item(0, u.size() - 1);
    for (int k = 0; k < 3; ++k) {
      auto a = item(rng), b = item(rng);
      if (a != b) inter[{u.name(a), u.name(b)}] = score(rng);
    }
  }
  return RiskModel(u, {score(rng), score(rng), score(rng), score(rng)}, s, inter);
}

/// Random integer-valued accountability gains, so sums are exact.
inline AccountabilityModel random_accountability(std::mt19937_64& rng, const Universe& u) {
  std::uniform_int_distribution<int> g(0, 5);
  std::map<std::string, double> gains;
  for (const auto& n : u.items()) gains[n] = g(rng);
  return AccountabilityModel(u, gains);
}

/// Deletes rules and conclusions from a rule policy at random.
inline Operator random_garbling(std::mt19937_64& rng, const Operator& op) {
  std::bernoulli_distribution drop(0.3);
  std::vector<Rule> kept;
  for (auto r : op.rules()->rules) {
    if (drop(rng)) continue;
    for (auto i : r.conclusions.indices())
      if (drop(rng)) r.conclusions.erase(i);
    kept.push_back(std::move(r));
  }
  return Operator::from_rules(op.universe(), std::move(kept), op.inflationary_flag());
}

inline truth::Sentence random_sentence(std::mt19937_64& rng, const std::vector<std::string>& names, int depth) {
  using truth::Sentence;
  std::uniform_int_distribution<int> leaf_d(0, 9), node_d(0, 5);
  std::uniform_int_distribution<std::size_t> name_d(0, names.size() - 1);
  if (depth == 0 || leaf_d(rng) < 4) {
    int k = leaf_d(rng);
    if (k == 0) return Sentence::atom("c", leaf_d(rng) % 2 == 0);
    if (k < 5) return Sentence::trans(names[name_d(rng)]);
    return Sentence::ref(names[name_d(rng)]);
  }
  switch (node_d(rng)) {
    case 0:
    case 1: return Sentence::negate(random_sentence(rng, names, depth - 1));
    case 2: return Sentence::conj(random_sentence(rng, names, depth - 1), random_sentence(rng, names, depth - 1));
    case 3: return Sentence::disj(random_sentence(rng, names, depth - 1), random_sentence(rng, names, depth - 1));
    case 4:
      return Sentence::implies(random_sentence(rng, names, depth - 1), random_sentence(rng, names, depth - 1));
    default: return Sentence::iff(random_sentence(rng, names, depth - 1), random_sentence(rng, names, depth - 1));
  }
}

/// Random system with `defined` sentences s0.. and `ground` atoms g0.. .
inline truth::SentenceSystem random_system(std::mt19937_64& rng, std::size_t defined, std::size_t ground,
                                           int depth = 3) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < defined; ++i) names.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < ground; ++i) names.push_back("g" + std::to_string(i));
  std::map<std::string, truth::Sentence> defs;
  std::map<std::string, bool> atoms;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < defined; ++i) defs.emplace(names[i], random_sentence(rng, names, depth));
  for (std::size_t i = 0; i < ground; ++i) atoms[names[defined + i]] = coin(rng);
  return truth::SentenceSystem(std::move(defs), std::move(atoms));
}

/// Random system plus the transparency liar L := not trans(L). Other
/// sentences may mention L.
inline truth::SentenceSystem random_liar_system(std::mt19937_64& rng, std::size_t defined, std::size_t ground) {
  std::vector<std::string> names{"L"};
  for (std::size_t i = 0; i < defined; ++i) names.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < ground; ++i) names.push_back("g" + std::to_string(i));
  std::map<std::string, truth::Sentence> defs;
  std::map<std::string, bool> atoms;
  std::bernoulli_distribution coin(0.5);
  defs.emplace("L", truth::Sentence::negate(truth::Sentence::trans("L")));
  for (std::size_t i = 0; i < defined; ++i) defs.emplace(names[1 + i], random_sentence(rng, names, 3));
  for (std::size_t i = 0; i < ground; ++i) atoms[names[1 + defined + i]] = coin(rng);
  return truth::SentenceSystem(std::move(defs), std::move(atoms));
}

/// Random positive μ-calculus formula over propositions p, q. At most two
/// nested binders (variables X then Y); negation only on propositions and
/// closed subformulas, plus an occasional double negation.
inline mucalc::MuFormula random_mu_formula(std::mt19937_64& rng, int depth, std::vector<std::string> scope = {}) {
  using mucalc::MuFormula;
  std::uniform_int_distribution<int> pick(0, 9);
  auto leaf = [&]() -> MuFormula {
    int k = pick(rng);
    if (!scope.empty() && k < 4) return MuFormula::var(scope[static_cast<std::size_t>(k) % scope.size()]);
    if (k == 4) return MuFormula::negate(MuFormula::prop("p"));
    if (k == 5) return MuFormula::truth();
    if (k == 6) return MuFormula::negate(MuFormula::prop("q"));
    return MuFormula::prop(k % 2 ? "p" : "q");
  };
  if (depth <= 0) return leaf();
  switch (pick(rng)) {
    case 0: return leaf();
    case 1: return MuFormula::conj(random_mu_formula(rng, depth - 1, scope), random_mu_formula(rng, depth - 1, scope));
    case 2: return MuFormula::disj(random_mu_formula(rng, depth - 1, scope), random_mu_formula(rng, depth - 1, scope));
    case 3: return MuFormula::box(random_mu_formula(rng, depth - 1, scope));
    case 4: return MuFormula::diamond(random_mu_formula(rng, depth - 1, scope));
    case 5: return MuFormula::negate(random_mu_formula(rng, depth - 1, {}));
    case 6: return MuFormula::negate(MuFormula::negate(random_mu_formula(rng, depth - 1, scope)));
    default: {
      if (scope.size() >= 2) return MuFormula::diamond(random_mu_formula(rng, depth - 1, scope));
      std::string v = scope.empty() ? "X" : "Y";
      auto inner = scope;
      inner.push_back(v);
      auto body = random_mu_formula(rng, depth - 1, inner);
      return pick(rng) % 2 ? MuFormula::mu(v, std::move(body)) : MuFormula::nu(v, std::move(body));
    }
  }
}

inline mucalc::KripkeFrame random_frame(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution edge(0.35), lab(0.4);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<std::string, std::vector<std::size_t>> labels{{"p", {}}, {"q", {}}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (edge(rng)) edges.emplace_back(i, j);
    if (lab(rng)) labels["p"].push_back(i);
    if (lab(rng)) labels["q"].push_back(i);
  }
  return mucalc::KripkeFrame::indexed(n, edges, labels);
}

}  // namespace fixtrans::gen
