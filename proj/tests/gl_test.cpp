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

#include "fixtrans/gl.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace fixtrans::gl {
namespace {

using F = ModalFormula;

// Brute force: every irreflexive relation on n states, kept when transitive.
std::set<std::vector<Pair>> filtered_gl_relations(std::size_t n) {
  std::vector<Pair> slots;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) slots.emplace_back(a, b);
  std::set<std::vector<Pair>> out;
  for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
    std::set<Pair> rel;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1U) rel.insert(slots[i]);
    bool transitive = true;
    for (auto [a, b] : rel)
      for (auto [c, d] : rel)
        if (b == c && !rel.count({a, d})) transitive = false;
    if (transitive) out.insert({rel.begin(), rel.end()});
  }
  return out;
}

F random_modal(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 7);
  static const char* names[] = {"p", "q"};
  if (depth == 0) return F::prop(names[pick(rng) % 2]);
  switch (pick(rng)) {
    case 0: return F::prop(names[pick(rng) % 2]);
    case 1: return F::negate(random_modal(rng, depth - 1));
    case 2: return F::conj(random_modal(rng, depth - 1), random_modal(rng, depth - 1));
    case 3: return F::disj(random_modal(rng, depth - 1), random_modal(rng, depth - 1));
    case 4: return F::implies(random_modal(rng, depth - 1), random_modal(rng, depth - 1));
    case 5: return F::box(random_modal(rng, depth - 1));
    case 6: return F::diamond(random_modal(rng, depth - 1));
    default: return F::truth();
  }
}

std::vector<ModalFrame> gl_frames_up_to(std::size_t n) {
  std::vector<ModalFrame> out;
  for (std::size_t k = 1; k <= n; ++k)
    for (auto& f : enumerate_gl_frames(k)) out.push_back(f);
  return out;
}

TEST(ParseModal, Grammar) {
  EXPECT_EQ(parse_modal("[](p -> q) -> []p -> []q"),
            F::implies(F::box(F::implies(F::prop("p"), F::prop("q"))), F::implies(F::box(F::prop("p")), F::box(F::prop("q")))));
  EXPECT_EQ(parse_modal("<>!P"), F::diamond(F::negate(F::prop("P"))));
  EXPECT_THROW(parse_modal("mu X. X"), ParseError);
  EXPECT_THROW(parse_modal("[] -> p"), ParseError);
}

TEST(EnumerateGlFrames, SingleState) {
  auto frames = enumerate_gl_frames(1);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_TRUE(frames[0].pairs().empty());
}

TEST(EnumerateGlFrames, TwoStates) {
  std::set<std::vector<Pair>> got;
  for (auto& f : enumerate_gl_frames(2)) got.insert(f.pairs());
  EXPECT_EQ(got, (std::set<std::vector<Pair>>{{}, {{0, 1}}, {{1, 0}}}));
}

TEST(EnumerateGlFrames, MatchesBruteForceFilter) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto frames = enumerate_gl_frames(n);
    std::set<std::vector<Pair>> got;
    for (auto& f : frames) {
      EXPECT_TRUE(f.is_gl());
      got.insert(f.pairs());
    }
    EXPECT_EQ(got.size(), frames.size()) << "duplicate frame for n=" << n;
    EXPECT_EQ(got, filtered_gl_relations(n)) << "n=" << n;
  }
  EXPECT_EQ(enumerate_gl_frames(3).size(), 19u);
  EXPECT_EQ(enumerate_gl_frames(4).size(), 219u);
}

TEST(EnumerateGlFrames, CapacityBound) { EXPECT_THROW(enumerate_gl_frames(5), CapacityError); }

TEST(ModalFrame, GlConstructorValidates) {
  EXPECT_THROW(ModalFrame::gl(1, {{0, 0}}), DomainError);
  EXPECT_THROW(ModalFrame::gl(3, {{0, 1}, {1, 2}}), DomainError);
  EXPECT_THROW(ModalFrame::gl(2, {{0, 2}}), DomainError);
  EXPECT_NO_THROW(ModalFrame::raw(1, {{0, 0}}));
  EXPECT_THROW(ModalFrame::raw(17, {}), CapacityError);
}

TEST(ValidInFrame, KAxiomEverywhere) {
  auto k = parse_modal("[](p -> q) -> ([]p -> []q)");
  for (auto& f : gl_frames_up_to(3)) EXPECT_TRUE(valid_in_frame(k, f));
  // K holds on arbitrary frames too, including reflexive and cyclic ones.
  EXPECT_TRUE(valid_in_frame(k, ModalFrame::raw(2, {{0, 0}, {0, 1}, {1, 0}})));
}

TEST(ValidInFrame, LobOnGlFrames) {
  auto lob = parse_modal("[]([]p -> p) -> []p");
  EXPECT_EQ(lob, lob_instance(F::prop("p")));
  for (auto& f : gl_frames_up_to(3)) EXPECT_TRUE(valid_in_frame(lob, f));
}

TEST(ValidInFrame, LobFailsOnReflexivePoint) {
  auto frame = ModalFrame::raw(1, {{0, 0}});
  auto cm = find_countermodel(lob_instance(F::prop("p")), frame);
  ASSERT_TRUE(cm.has_value());
  EXPECT_EQ(cm->labelling, (std::vector<std::pair<std::string, std::uint32_t>>{{"p", 0}}));
  EXPECT_TRUE(lob_failure_explained(frame));
}

TEST(ValidInFrame, PropositionCapacity) {
  EXPECT_THROW(valid_in_frame(parse_modal("p & q & r & s"), ModalFrame::raw(1, {})), CapacityError);
  EXPECT_NO_THROW(valid_in_frame(parse_modal("p & q & r"), ModalFrame::raw(4, {})));
}

TEST(GlProperties, LobSchemaOverFormulaSample) {
  std::mt19937_64 rng(2024);
  auto frames = gl_frames_up_to(3);
  for (int i = 0; i < 60; ++i) {
    auto phi = random_modal(rng, 2);
    auto schema = lob_instance(phi);
    for (auto& f : frames) ASSERT_TRUE(valid_in_frame(schema, f)) << to_string(schema);
  }
}

TEST(GlProperties, FourAxiomOnAllFrames) {
  auto four = parse_modal("[]p -> [][]p");
  for (auto& f : gl_frames_up_to(4)) EXPECT_TRUE(valid_in_frame(four, f));
}

TEST(GlProperties, EveryLobFailureIsStructurallyExplained) {
  auto lob = lob_instance(F::prop("p"));
  int failures = 0;
  // All 2^9 relations on three states.
  for (std::uint32_t mask = 0; mask < 512; ++mask) {
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < 9; ++i)
      if ((mask >> i) & 1U) pairs.emplace_back(i / 3, i % 3);
    auto frame = ModalFrame::raw(3, pairs);
    if (!valid_in_frame(lob, frame)) {
      ++failures;
      EXPECT_TRUE(lob_failure_explained(frame));
    } else if (frame.is_transitive()) {
      EXPECT_FALSE(frame.has_cycle());
    }
  }
  EXPECT_GT(failures, 0);
}

TEST(LobReplay, SixCheckedLines) {
  auto t = lob_hazard_replay("safe");
  ASSERT_EQ(t.steps.size(), 6u);
  EXPECT_EQ(t.conclusion(), F::prop("safe"));
  EXPECT_EQ(t.steps[5].rule, Rule::D1);
  EXPECT_EQ(t.steps[5].refs, std::vector<std::size_t>{5});
  EXPECT_EQ(t.steps[0].rule, Rule::Premise);
  EXPECT_EQ(t.steps[0].formula, parse_modal("[]([]safe -> safe)"));
  EXPECT_EQ(first_invalid_step(t), 6u);
}

TEST(LobReplay, LineTwoIsD2FromLineOne) {
  auto t = lob_hazard_replay("safe");
  EXPECT_EQ(t.steps[1].rule, Rule::D2);
  EXPECT_EQ(t.steps[1].refs, std::vector<std::size_t>{1});
  EXPECT_EQ(t.steps[1].formula, parse_modal("[][]safe -> []safe"));
  EXPECT_EQ(t.steps[2].rule, Rule::D3);
  EXPECT_EQ(t.steps[3].formula, parse_modal("[]safe -> []safe"));
  EXPECT_EQ(t.steps[4].formula, parse_modal("[]safe"));
}

TEST(LobReplay, Deterministic) { EXPECT_EQ(lob_hazard_replay("safe"), lob_hazard_replay("safe")); }

TEST(LobReplay, ComplexPropositionAndTamperDetection) {
  auto phi = parse_modal("p & <>q");
  auto t = lob_hazard_replay(phi);
  EXPECT_EQ(t.conclusion(), phi);
  auto tampered = t;
  tampered.steps[1].formula = parse_modal("[]([]p) -> []q");
  EXPECT_EQ(first_invalid_step(tampered), 1u);
  tampered = t;
  tampered.steps[3].refs = {2, 3};
  EXPECT_EQ(first_invalid_step(tampered), 3u);
  tampered = t;
  tampered.steps[5].refs = {6};
  EXPECT_EQ(first_invalid_step(tampered), 5u);
}

TEST(LobReplay, ModalLinesAreGlValid) {
  // Lines 2 and 3 cite a K instance and the 4-axiom. Both hold on GL frames.
  auto t = lob_hazard_replay("p");
  auto k_instance = F::implies(t.steps[0].formula, t.steps[1].formula);
  for (auto& f : gl_frames_up_to(3)) {
    EXPECT_TRUE(valid_in_frame(k_instance, f));
    EXPECT_TRUE(valid_in_frame(t.steps[2].formula, f));
  }
}

}  // namespace
}  // namespace fixtrans::gl
