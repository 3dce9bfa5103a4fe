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

// Seeded property batteries. Each one runs a family of cases against a
// brute-force check and returns counts plus the first few failure notes.
// The CLI suite scenarios and the acceptance binary both call these.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fixtrans/gaming.hpp"
#include "fixtrans/generators.hpp"
#include "fixtrans/gl.hpp"
#include "fixtrans/lattice.hpp"
#include "fixtrans/mucalc.hpp"
#include "fixtrans/optimize.hpp"
#include "fixtrans/truth.hpp"

namespace fixtrans::properties {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;
  /// Named integer facts worth reporting (frame counts, certificates...).
  std::vector<std::pair<std::string, std::int64_t>> facts;

  bool passed() const noexcept { return failures == 0 && cases > 0; }

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what);
  }
  void fact(std::string key, std::int64_t value) { facts.emplace_back(std::move(key), value); }
};

inline constexpr std::uint64_t kDefaultSeed = 20260101;

// ---------------------------------------------------------------------------

inline PropertyResult liar_impossibility(std::uint64_t seed = kDefaultSeed, std::size_t systems = 20) {
  PropertyResult r{"liar-impossibility"};
  std::mt19937_64 rng(seed);
  auto run = [&](const truth::SentenceSystem& sys, const std::string& label) {
    r.check(!truth::total_classical_search(sys).has_value(), label + ": classical model found");
    r.check(truth::classify(sys).at("L") == truth::Grounding::Ungrounded, label + ": liar grounded");
  };
  run(truth::make_transparency_liar(), "bare liar");
  for (std::size_t k = 0; k < systems; ++k) run(gen::random_liar_system(rng, k % 6, k % 3), "system " + std::to_string(k));
  r.fact("systems", static_cast<std::int64_t>(systems + 1));
  return r;
}

inline PropertyResult kripke_soundness(std::uint64_t seed = kDefaultSeed, std::size_t systems = 100,
                                       std::size_t pairs = 1000) {
  using truth::ThreeVal;
  PropertyResult r{"kripke-soundness"};
  std::mt19937_64 rng(seed);
  std::size_t models_seen = 0;
  for (std::size_t k = 0; k < systems; ++k) {
    auto sys = gen::random_system(rng, 1 + k % 6, k % 3);
    const auto cls = truth::classify(sys);
    const auto names = sys.defined_names();
    truth::ClassicalAssignment w(sys.ground_atoms().begin(), sys.ground_atoms().end());
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << names.size()); ++m) {
      for (std::size_t i = 0; i < names.size(); ++i) w[names[i]] = (m >> i) & 1U;
      bool model = true;
      for (const auto& [n, body] : sys.definitions()) model = model && truth::classical_eval(body, w) == w.at(n);
      if (!model) continue;
      ++models_seen;
      for (const auto& [n, g] : cls) {
        if (g == truth::Grounding::GroundedTrue) r.check(w.at(n), "system " + std::to_string(k) + ": " + n);
        if (g == truth::Grounding::GroundedFalse) r.check(!w.at(n), "system " + std::to_string(k) + ": " + n);
      }
    }
    // jump monotonicity on pairs u ≤ v in the information order
    const std::size_t per = pairs / systems + (k < pairs % systems ? 1 : 0);
    std::uniform_int_distribution<int> pick(0, 2);
    for (std::size_t j = 0; j < per; ++j) {
      auto u = truth::initial_valuation(sys);
      for (const auto& n : names) u[n] = static_cast<ThreeVal>(pick(rng));
      auto v = u;
      for (const auto& n : names)
        if (v[n] == ThreeVal::None && pick(rng) != 1) v[n] = pick(rng) == 0 ? ThreeVal::False : ThreeVal::True;
      r.check(truth::info_leq(truth::jump(sys, u), truth::jump(sys, v)), "jump not monotone");
    }
  }
  r.fact("classical_models", static_cast<std::int64_t>(models_seen));
  return r;
}

inline PropertyResult mucalc_oracle(std::uint64_t seed = kDefaultSeed, std::size_t pairs = 200) {
  PropertyResult r{"mucalc-oracle"};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < pairs; ++k) {
    auto frame = gen::random_frame(rng, 1 + k % 5);
    auto f = gen::random_mu_formula(rng, 4);
    r.check(mucalc::mc_eval(f, frame) == mucalc::naive_eval(f, frame), mucalc::to_string(f));
  }
  return r;
}

inline PropertyResult lob_exhaustion() {
  PropertyResult r{"lob-exhaustion"};
  using gl::ModalFormula;
  const std::vector<ModalFormula> phis = {
      gl::parse_modal("p"),         gl::parse_modal("q"),       gl::parse_modal("p & q"),
      gl::parse_modal("p | !q"),    gl::parse_modal("p -> q"),  gl::parse_modal("[]p"),
      gl::parse_modal("<>q -> p"),  gl::parse_modal("!p"),      gl::parse_modal("[](p | q)"),
  };
  std::size_t frames = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto fs = gl::enumerate_gl_frames(n);
    // independent filter over all irreflexive relations
    std::vector<gl::Pair> slots;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b) slots.emplace_back(a, b);
    std::size_t filtered = 0;
    for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
      std::vector<gl::Pair> rel;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((mask >> i) & 1U) rel.push_back(slots[i]);
      if (gl::ModalFrame::raw(n, rel).is_transitive()) ++filtered;
    }
    r.check(filtered == fs.size(), "frame count mismatch at n=" + std::to_string(n));
    for (const auto& f : fs)
      for (const auto& phi : phis) r.check(gl::valid_in_frame(gl::lob_instance(phi), f), gl::to_string(phi));
    frames += fs.size();
    r.fact("frames_n" + std::to_string(n), static_cast<std::int64_t>(fs.size()));
  }
  r.check(!gl::valid_in_frame(gl::lob_instance(ModalFormula::prop("p")), gl::ModalFrame::raw(1, {{0, 0}})),
          "reflexive point validates Löb");
  r.fact("frames", static_cast<std::int64_t>(frames));
  return r;
}

/// Outputs-only audits that a (harm, [5]) / ([5]) pair satisfies.
inline std::vector<gaming::AuditPredicate> blind_audit_suite() {
  using namespace gaming::audits;
  auto suite = standard_suite();
  suite.push_back(some_output_le(5));
  suite.push_back(all_outputs_le(100));
  suite.push_back({"exactly one output", gaming::Observability::OutputsOnly,
                   [](const gaming::Observation& o) { return o.outputs.size() == 1; }});
  suite.push_back({"outputs in [0, 10]", gaming::Observability::OutputsOnly, [](const gaming::Observation& o) {
                     for (auto v : o.outputs)
                       if (v < 0 || v > 10) return false;
                     return true;
                   }});
  suite.push_back({"output sum <= 50", gaming::Observability::OutputsOnly, [](const gaming::Observation& o) {
                     std::int64_t s = 0;
                     for (auto v : o.outputs) s += v;
                     return s <= 50;
                   }});
  suite.push_back({"halts", gaming::Observability::OutputsOnly, [](const gaming::Observation& o) { return o.halted; }});
  return suite;
}

inline std::vector<gaming::AuditPredicate> harm_aware_audit_suite() {
  using namespace gaming::audits;
  return {harm_clear(), harm_aware(some_output_le(10)), harm_aware(nonempty_output()), harm_aware(constant(true))};
}

inline PropertyResult gaming_certificates() {
  PropertyResult r{"gaming-certificates"};
  const gaming::ActionSpec bad{true, {5}}, good{false, {5}};
  std::int64_t certs = 0, classified = 0;
  for (const auto& m : blind_audit_suite()) {
    auto rep = gaming::verify_gaming(m, bad, good);
    r.check(rep.certificate() && rep.audit_pass && rep.harm && rep.self_consistent(), m.name);
    certs += rep.certificate();
  }
  for (const auto& m : harm_aware_audit_suite()) {
    auto rep = gaming::verify_gaming(m, bad, good);
    r.check(rep.outcome == gaming::GamingOutcome::AuditCompleteNoStableExploit, m.name);
    classified += rep.outcome == gaming::GamingOutcome::AuditCompleteNoStableExploit;
  }
  r.fact("certificates", certs);
  r.fact("hypothesis_failures", classified);
  return r;
}

inline PropertyResult lfp_and_garbling(std::uint64_t seed = kDefaultSeed, std::size_t policies = 100,
                                       std::size_t garblings = 100) {
  PropertyResult r{"lfp-minimality-and-garbling"};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < policies; ++k) {
    auto op = gen::random_rule_policy(rng, 3 + k % 8, k % 3 != 0);
    auto model = gen::random_risk_model(rng, op.universe());
    auto rep = least_risk_fixedpoint_check(op, model);
    r.check(rep.subset_least && rep.risk_minimal, "policy " + std::to_string(k));
  }
  for (std::size_t k = 0; k < garblings; ++k) {
    auto t1 = gen::random_rule_policy(rng, 3 + k % 8, k % 4 != 0);
    auto t2 = gen::random_garbling(rng, t1);
    auto model = gen::random_risk_model(rng, t1.universe());
    auto rep = garble_compare(t1, t2, model);
    r.check(rep.hypothesis_holds && rep.risk2 <= rep.risk1 + kTolerance, "garbling " + std::to_string(k));
  }
  return r;
}

inline PropertyResult greedy_kkt(std::uint64_t seed = kDefaultSeed, std::size_t instances = 50) {
  PropertyResult r{"greedy-kkt"};
  std::mt19937_64 rng(seed);
  std::size_t done = 0, binding = 0;
  while (done < instances) {
    auto op = gen::random_rule_policy(rng, 4 + done % 6, done % 2 == 0);
    auto model = gen::random_risk_model(rng, op.universe());
    auto acc = gen::random_accountability(rng, op.universe());
    const double top = acc(op.universe().full_set());
    double a0 = std::uniform_real_distribution<double>(0.0, top)(rng);
    if (done % 3 == 0) a0 = std::floor(a0);
    auto g = greedy_min_transparency(op, acc, a0, model);
    const std::string id = "instance " + std::to_string(done);
    r.check(g.status == GreedyStatus::Feasible, id + ": not feasible");
    r.check(g.accountability >= a0 - kTolerance, id + ": below threshold");
    r.check(is_post_fixed(op, g.state), id + ": not post-fixed");
    auto dual = kkt_report(g.state, acc, a0, model, GainModel::none(op.universe()), &op);
    r.check(std::abs(dual.slackness_product) <= kTolerance, id + ": slackness");
    binding += dual.binding;
    auto zero = greedy_min_transparency(op, acc, 0.0, model);
    r.check(zero.state == lfp(op, kDefaultFuel).value, id + ": zero threshold differs from lfp");
    ++done;
  }
  r.fact("binding", static_cast<std::int64_t>(binding));
  return r;
}

inline PropertyResult risk_convergence(std::uint64_t seed = kDefaultSeed, std::size_t policies = 100) {
  PropertyResult r{"risk-convergence"};
  Universe u({"a", "b", "c"});
  auto chain = Operator::from_named_rules(u, {{{"a"}, {"b"}}, {{"b"}, {"c"}}, {{}, {"a"}}});
  auto rep = iterative_risk_convergence(chain, RiskModel::uniform(u), 0.5);
  r.check(rep.n == 3, "three-stage chain gives n=" + std::to_string(rep.n));
  r.fact("chain_n", static_cast<std::int64_t>(rep.n));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < policies; ++k) {
    auto op = gen::random_rule_policy(rng, 3 + k % 8, k % 2 == 0);
    auto model = gen::random_risk_model(rng, op.universe());
    r.check(iterative_risk_convergence(op, model, 0.25).non_decreasing, "policy " + std::to_string(k));
  }
  return r;
}

inline PropertyResult lp_non_explosion() {
  PropertyResult r{"lp-non-explosion"};
  truth::SentenceSystem sys({{"L", truth::Sentence::negate(truth::Sentence::trans("L"))}}, {{"rho", false}});
  auto m = truth::lp_model(sys);
  r.check(m.valuation.designated_true.count("L") == 1, "liar not designated true");
  r.check(m.valuation.designated_false.count("L") == 1, "liar not designated false");
  r.check(m.valuation.designated_true.count("rho") == 0, "rho designated true");
  r.check(m.witness.has_value() && m.witness->name == "rho" && !m.witness->negated, "witness");
  return r;
}

}  // namespace fixtrans::properties
