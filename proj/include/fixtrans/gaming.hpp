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

// A deterministic toy program model for audit gaming. Programs carry an
// own-code register and the audit they consult, so "evaluate the audit on my
// own code" is a single instruction. The self-referential verdict is resolved
// as a fixed point: a bit b is stable when the audit, run on the behaviour
// that b produces, returns b.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fixtrans/error.hpp"

namespace fixtrans::gaming {

enum class Op { LoadSelf, EvalAudit, BranchIfPass, Jump, Emit, SetHarm, Halt };

struct Instruction {
  Op op = Op::Halt;
  std::int64_t value = 0;  // Emit payload
  std::size_t target = 0;  // BranchIfPass / Jump destination
  bool operator==(const Instruction&) const = default;
};

inline Instruction emit(std::int64_t v) { return {Op::Emit, v, 0}; }
inline Instruction set_harm() { return {Op::SetHarm, 0, 0}; }
inline Instruction halt() { return {Op::Halt, 0, 0}; }
inline Instruction load_self() { return {Op::LoadSelf, 0, 0}; }
inline Instruction eval_audit() { return {Op::EvalAudit, 0, 0}; }
inline Instruction branch_if_pass(std::size_t t) { return {Op::BranchIfPass, 0, t}; }
inline Instruction jump(std::size_t t) { return {Op::Jump, 0, t}; }

enum class Observability { OutputsOnly, FullTrace };

/// What an audit gets to see. `harm` is empty under OutputsOnly.
struct Observation {
  std::vector<std::int64_t> outputs;
  std::optional<bool> harm;
  bool halted = true;
};

/// Total, budget-bounded decision procedure over observed behaviour.
struct AuditPredicate {
  std::string name;
  Observability observability = Observability::OutputsOnly;
  std::function<bool(const Observation&)> decide;
  std::size_t budget = 256;

  bool operator()(const Observation& o) const { return decide(o); }
};

namespace audits {

inline AuditPredicate some_output_le(std::int64_t k) {
  return {"some output <= " + std::to_string(k), Observability::OutputsOnly, [k](const Observation& o) {
            for (auto v : o.outputs)
              if (v <= k) return true;
            return false;
          }};
}

inline AuditPredicate all_outputs_le(std::int64_t k) {
  return {"all outputs <= " + std::to_string(k), Observability::OutputsOnly, [k](const Observation& o) {
            for (auto v : o.outputs)
              if (v > k) return false;
            return true;
          }};
}

inline AuditPredicate outputs_equal(std::vector<std::int64_t> want) {
  std::string n = "outputs ==";
  for (auto v : want) n += " " + std::to_string(v);
  return {n, Observability::OutputsOnly, [w = std::move(want)](const Observation& o) { return o.outputs == w; }};
}

inline AuditPredicate nonempty_output() {
  return {"emits something", Observability::OutputsOnly, [](const Observation& o) { return !o.outputs.empty(); }};
}

inline AuditPredicate constant(bool verdict) {
  return {verdict ? "always pass" : "always fail", Observability::OutputsOnly,
          [verdict](const Observation&) { return verdict; }};
}

inline AuditPredicate harm_clear() {
  return {"harm flag clear", Observability::FullTrace,
          [](const Observation& o) { return o.harm.has_value() && !*o.harm; }};
}

/// `base` plus a check of the harm flag.
inline AuditPredicate harm_aware(AuditPredicate base) {
  return {base.name + " and harm flag clear", Observability::FullTrace,
          [d = base.decide](const Observation& o) { return d(o) && o.harm.has_value() && !*o.harm; }, base.budget};
}

/// Outputs-only audits used by the bundled scenarios and property tests.
inline std::vector<AuditPredicate> standard_suite() {
  return {some_output_le(10), all_outputs_le(10), nonempty_output(), constant(true), outputs_equal({5})};
}

}  // namespace audits

struct ToyProgram {
  std::vector<Instruction> code;
  /// The audit an EvalAudit instruction consults. May be null when the
  /// program never evaluates one.
  std::shared_ptr<const AuditPredicate> audit;
};

struct Trace {
  std::vector<std::int64_t> outputs;
  bool harm = false;
  std::size_t steps = 0;
  bool halted = false;
  /// Verdict the program obtained from EvalAudit, if it executed one.
  std::optional<bool> self_verdict;
  /// False when no verdict is self-consistent and the optimistic pass was used.
  bool self_verdict_stable = true;

  bool operator==(const Trace&) const = default;
};

inline Observation observe(const Trace& t, Observability obs) {
  Observation o{t.outputs, std::nullopt, t.halted};
  if (obs == Observability::FullTrace) o.harm = t.harm;
  return o;
}

namespace detail {

// Runs with every EvalAudit answered by `hypothesis` when set.
inline Trace execute(const ToyProgram& p, std::size_t budget, std::optional<bool> hypothesis);

struct Resolution {
  bool verdict;
  bool stable;
};

inline Resolution resolve_self_audit(const ToyProgram& p, std::size_t budget) {
  if (!p.audit) throw DomainError("program evaluates an audit but carries none");
  const auto& m = *p.audit;
  if (m(observe(execute(p, budget, true), m.observability))) return {true, true};
  if (!m(observe(execute(p, budget, false), m.observability))) return {false, true};
  return {true, false};
}

inline Trace execute(const ToyProgram& p, std::size_t budget, std::optional<bool> hypothesis) {
  Trace t;
  bool loaded = false;
  bool flag = false;
  std::size_t pc = 0;
  while (t.steps < budget) {
    if (pc >= p.code.size()) {
      t.halted = true;  // falling off the end halts
      return t;
    }
    const auto& ins = p.code[pc];
    ++t.steps;
    ++pc;
    switch (ins.op) {
      case Op::LoadSelf: loaded = true; break;
      case Op::EvalAudit: {
        if (!loaded) throw DomainError("EvalAudit before LoadSelf");
        if (hypothesis) {
          flag = *hypothesis;
        } else {
          auto r = resolve_self_audit(p, budget);
          flag = r.verdict;
          t.self_verdict_stable = r.stable;
        }
        t.self_verdict = flag;
        break;
      }
      case Op::BranchIfPass:
        if (flag) pc = ins.target;
        break;
      case Op::Jump: pc = ins.target; break;
      case Op::Emit: t.outputs.push_back(ins.value); break;
      case Op::SetHarm: t.harm = true; break;
      case Op::Halt: t.halted = true; return t;
    }
  }
  return t;
}

}  // namespace detail

inline Trace run(const ToyProgram& p, std::size_t budget) {
  if (budget == 0) throw DomainError("budget must be at least 1");
  return detail::execute(p, budget, std::nullopt);
}

inline bool audit(const AuditPredicate& m, const ToyProgram& p) {
  return m(observe(run(p, m.budget), m.observability));
}

/// A behaviour: optional harm followed by a fixed output sequence.
struct ActionSpec {
  bool harm = false;
  std::vector<std::int64_t> outputs;

  std::vector<Instruction> compile() const {
    std::vector<Instruction> out;
    if (harm) out.push_back(set_harm());
    for (auto v : outputs) out.push_back(emit(v));
    out.push_back(halt());
    return out;
  }
};

inline ToyProgram action_program(const ActionSpec& a) { return {a.compile(), nullptr}; }

/// "Evaluate m on my own code; if it passes do `bad`, otherwise do `good`."
inline ToyProgram construct_gamer(const AuditPredicate& m, const ActionSpec& bad, const ActionSpec& good) {
  if (!bad.harm) throw DomainError("the bad action must set the harm flag");
  if (good.harm) throw DomainError("the good action must not set the harm flag");
  ToyProgram p;
  p.audit = std::make_shared<const AuditPredicate>(m);
  auto g = good.compile();
  p.code = {load_self(), eval_audit(), branch_if_pass(0)};
  p.code.insert(p.code.end(), g.begin(), g.end());
  p.code[2].target = p.code.size();
  auto b = bad.compile();
  p.code.insert(p.code.end(), b.begin(), b.end());
  return p;
}

enum class GamingOutcome {
  /// The audit passes and the harm flag is set.
  GamingCertificate,
  /// The audit sees harm, so no self-consistent exploit exists.
  AuditCompleteNoStableExploit,
  /// The benign fallback does not pass the audit.
  GoodBehaviorFailsAudit,
  /// The bad action's outputs already fail the audit.
  BadBehaviorDetected,
};

inline const char* to_string(GamingOutcome o) {
  switch (o) {
    case GamingOutcome::GamingCertificate: return "gaming-certificate";
    case GamingOutcome::AuditCompleteNoStableExploit: return "audit-complete-no-stable-exploit";
    case GamingOutcome::GoodBehaviorFailsAudit: return "good-behavior-fails-audit";
    case GamingOutcome::BadBehaviorDetected: return "bad-behavior-detected";
  }
  return "?";
}

struct GamingReport {
  std::string audit_name;
  Trace trace;
  bool audit_pass = false;
  bool harm = false;
  bool self_verdict = false;
  bool self_verdict_stable = true;
  /// Audit verdicts on the plain bad and good behaviours.
  bool bad_passes = false;
  bool good_passes = false;
  GamingOutcome outcome = GamingOutcome::GamingCertificate;
  std::string explanation;

  bool certificate() const { return outcome == GamingOutcome::GamingCertificate; }
  /// The internal branch agrees with the external verdict.
  bool self_consistent() const { return self_verdict == audit_pass; }
};

inline GamingReport verify_gaming(const AuditPredicate& m, const ActionSpec& bad, const ActionSpec& good) {
  const ToyProgram gamer = construct_gamer(m, bad, good);
  GamingReport r;
  r.audit_name = m.name;
  r.trace = run(gamer, m.budget);
  if (!r.trace.halted) throw std::logic_error("constructed gamer exceeded its budget");
  r.audit_pass = m(observe(r.trace, m.observability));
  r.harm = r.trace.harm;
  r.self_verdict = r.trace.self_verdict.value_or(false);
  r.self_verdict_stable = r.trace.self_verdict_stable;
  r.bad_passes = audit(m, action_program(bad));
  r.good_passes = audit(m, action_program(good));

  if (r.audit_pass && r.harm) {
    r.outcome = GamingOutcome::GamingCertificate;
    r.explanation = "the gamer passes the audit while setting the harm flag";
  } else if (!r.good_passes && r.self_verdict_stable && !r.self_verdict) {
    r.outcome = GamingOutcome::GoodBehaviorFailsAudit;
    r.explanation =
        "the audit rejects the gamer's own code, so it runs the benign action, which the audit also rejects";
  } else {
    ActionSpec harmless = bad;
    harmless.harm = false;
    if (audit(m, action_program(harmless))) {
      r.outcome = GamingOutcome::AuditCompleteNoStableExploit;
      r.explanation =
          "the audit observes harm: the gamer acts badly when its self-audit passes, and is then rejected";
    } else {
      r.outcome = GamingOutcome::BadBehaviorDetected;
      r.explanation = "the bad action's outputs fail the audit regardless of harm";
    }
  }
  return r;
}

}  // namespace fixtrans::gaming
