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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fixtrans/error.hpp"

namespace fixtrans::truth {

/// Sentence over a finite name space with a transparency predicate Trans.
/// Trans(n) and Ref(n) both point at the sentence named n; they differ only
/// under the exclusion reading of Trans (see TransReading).
class Sentence {
 public:
  enum class Kind { Atom, Ref, Trans, Not, And, Or, Implies, Iff };

  static Sentence atom(std::string name, bool value) {
    Sentence s(Kind::Atom);
    s.name_ = std::move(name);
    s.value_ = value;
    return s;
  }
  static Sentence ref(std::string name) { return named(Kind::Ref, std::move(name)); }
  static Sentence trans(std::string name) { return named(Kind::Trans, std::move(name)); }
  static Sentence negate(Sentence a) { return compound(Kind::Not, {std::move(a)}); }
  static Sentence conj(Sentence a, Sentence b) { return compound(Kind::And, {std::move(a), std::move(b)}); }
  static Sentence disj(Sentence a, Sentence b) { return compound(Kind::Or, {std::move(a), std::move(b)}); }
  static Sentence implies(Sentence a, Sentence b) { return compound(Kind::Implies, {std::move(a), std::move(b)}); }
  static Sentence iff(Sentence a, Sentence b) { return compound(Kind::Iff, {std::move(a), std::move(b)}); }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  bool atom_value() const noexcept { return value_; }
  const std::vector<Sentence>& children() const noexcept { return children_; }
  const Sentence& child(std::size_t i) const { return children_.at(i); }

  /// Names reached through Ref or Trans.
  void collect_references(std::set<std::string>& out) const {
    if (kind_ == Kind::Ref || kind_ == Kind::Trans) out.insert(name_);
    for (const auto& c : children_) c.collect_references(out);
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  explicit Sentence(Kind k) : kind_(k) {}
  static Sentence named(Kind k, std::string name) {
    Sentence s(k);
    s.name_ = std::move(name);
    return s;
  }
  static Sentence compound(Kind k, std::vector<Sentence> children) {
    Sentence s(k);
    s.children_ = std::move(children);
    return s;
  }

  Kind kind_;
  std::string name_;
  bool value_ = false;
  std::vector<Sentence> children_;
};

/// Prints a sentence in the prefix grammar accepted by parse_sentence.
inline std::string to_string(const Sentence& s) {
  using K = Sentence::Kind;
  switch (s.kind()) {
    case K::Atom: return "atom(" + s.name() + "," + (s.atom_value() ? "true" : "false") + ")";
    case K::Ref: return "ref(" + s.name() + ")";
    case K::Trans: return "trans(" + s.name() + ")";
    case K::Not: return "not(" + to_string(s.child(0)) + ")";
    default: break;
  }
  const char* op = s.kind() == K::And ? "and" : s.kind() == K::Or ? "or" : s.kind() == K::Implies ? "implies" : "iff";
  return std::string(op) + "(" + to_string(s.child(0)) + ", " + to_string(s.child(1)) + ")";
}

/// Named, possibly self-referential sentences plus classical ground facts.
class SentenceSystem {
 public:
  SentenceSystem() = default;
  SentenceSystem(std::map<std::string, Sentence> definitions, std::map<std::string, bool> ground_atoms)
      : definitions_(std::move(definitions)), ground_(std::move(ground_atoms)) {
    for (const auto& [name, _] : definitions_)
      if (ground_.count(name)) throw DomainError("name '" + name + "' is both ground and defined");
    for (const auto& [name, body] : definitions_) {
      std::set<std::string> refs;
      body.collect_references(refs);
      for (const auto& r : refs)
        if (!has_name(r)) throw DomainError("sentence '" + name + "' references unknown name '" + r + "'");
    }
  }

  const std::map<std::string, Sentence>& definitions() const noexcept { return definitions_; }
  const std::map<std::string, bool>& ground_atoms() const noexcept { return ground_; }

  bool has_name(const std::string& n) const { return definitions_.count(n) || ground_.count(n); }

  /// Every name, ground or defined, in lexicographic order.
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : definitions_) out.push_back(n);
    for (const auto& [n, _] : ground_) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<std::string> defined_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : definitions_) out.push_back(n);
    return out;
  }
  bool empty() const noexcept { return definitions_.empty() && ground_.empty(); }

 private:
  std::map<std::string, Sentence> definitions_;
  std::map<std::string, bool> ground_;
};

/// σ̂ := ¬Trans(σ̂), under the given name.
inline SentenceSystem make_transparency_liar(const std::string& name = "L") {
  return SentenceSystem({{name, Sentence::negate(Sentence::trans(name))}}, {});
}

// ---------------------------------------------------------------------------
// Strong Kleene evaluation

enum class ThreeVal : std::uint8_t { False = 0, None = 1, True = 2 };

inline const char* to_string(ThreeVal v) {
  switch (v) {
    case ThreeVal::False: return "F";
    case ThreeVal::True: return "T";
    default: return "N";
  }
}
inline ThreeVal from_bool(bool b) { return b ? ThreeVal::True : ThreeVal::False; }
inline bool is_definite(ThreeVal v) { return v != ThreeVal::None; }

/// Information order: None below both classical values, which are incomparable.
inline bool info_leq(ThreeVal a, ThreeVal b) { return a == ThreeVal::None || a == b; }

inline ThreeVal k3_not(ThreeVal a) { return static_cast<ThreeVal>(2 - static_cast<int>(a)); }
inline ThreeVal k3_and(ThreeVal a, ThreeVal b) { return std::min(a, b); }
inline ThreeVal k3_or(ThreeVal a, ThreeVal b) { return std::max(a, b); }
inline ThreeVal k3_implies(ThreeVal a, ThreeVal b) { return k3_or(k3_not(a), b); }
inline ThreeVal k3_iff(ThreeVal a, ThreeVal b) { return k3_and(k3_implies(a, b), k3_implies(b, a)); }

using ThreeValuation = std::map<std::string, ThreeVal>;

inline bool info_leq(const ThreeValuation& u, const ThreeValuation& v) {
  for (const auto& [n, a] : u) {
    auto it = v.find(n);
    if (it == v.end() || !info_leq(a, it->second)) return false;
  }
  return true;
}

/// How Trans(n) reads the current value of n.
///
/// StrongKleene passes the value through, gaps included; this is the
/// monotone reading used for the least fixed point. Exclusion makes Trans
/// bivalent (false unless n is true); it is provided for experiments only and
/// breaks monotonicity of the jump.
enum class TransReading { StrongKleene, Exclusion };

inline ThreeVal kleene_eval(const Sentence& s, const ThreeValuation& v,
                            TransReading reading = TransReading::StrongKleene) {
  using K = Sentence::Kind;
  auto lookup = [&](const std::string& n) {
    auto it = v.find(n);
    if (it == v.end()) throw DomainError("unresolved name '" + n + "'");
    return it->second;
  };
  switch (s.kind()) {
    case K::Atom: return from_bool(s.atom_value());
    case K::Ref: return lookup(s.name());
    case K::Trans: {
      auto val = lookup(s.name());
      if (reading == TransReading::Exclusion) return from_bool(val == ThreeVal::True);
      return val;
    }
    case K::Not: return k3_not(kleene_eval(s.child(0), v, reading));
    case K::And: return k3_and(kleene_eval(s.child(0), v, reading), kleene_eval(s.child(1), v, reading));
    case K::Or: return k3_or(kleene_eval(s.child(0), v, reading), kleene_eval(s.child(1), v, reading));
    case K::Implies:
      return k3_implies(kleene_eval(s.child(0), v, reading), kleene_eval(s.child(1), v, reading));
    case K::Iff: return k3_iff(kleene_eval(s.child(0), v, reading), kleene_eval(s.child(1), v, reading));
  }
  return ThreeVal::None;
}

/// Ground atoms at their classical value, every defined name at None.
inline ThreeValuation initial_valuation(const SentenceSystem& sys) {
  ThreeValuation v;
  for (const auto& [n, b] : sys.ground_atoms()) v[n] = from_bool(b);
  for (const auto& [n, _] : sys.definitions()) v[n] = ThreeVal::None;
  return v;
}

/// One application of the Kripke jump: every definition re-evaluated under v.
inline ThreeValuation jump(const SentenceSystem& sys, const ThreeValuation& v,
                           TransReading reading = TransReading::StrongKleene) {
  ThreeValuation out = v;
  for (const auto& [n, b] : sys.ground_atoms()) out[n] = from_bool(b);
  for (const auto& [n, body] : sys.definitions()) out[n] = kleene_eval(body, v, reading);
  return out;
}

struct KripkeResult {
  ThreeValuation valuation;
  /// stages[0] is the initial valuation; the final stage is not repeated.
  std::vector<ThreeValuation> stages;
  /// First stage at which each name became definite (absent when ungrounded).
  std::map<std::string, std::size_t> decided_at;
};

/// Least fixed point of the jump, reached from the all-None valuation.
/// Names are only ever promoted from None to a classical value.
inline KripkeResult kripke_lfp(const SentenceSystem& sys, std::size_t fuel = 1000,
                               TransReading reading = TransReading::StrongKleene) {
  if (fuel == 0) throw DomainError("fuel must be at least 1");
  KripkeResult r;
  ThreeValuation v = initial_valuation(sys);
  for (const auto& [n, val] : v)
    if (is_definite(val)) r.decided_at[n] = 0;
  r.stages.push_back(v);
  for (std::size_t stage = 1; stage <= fuel; ++stage) {
    ThreeValuation next = v;
    bool changed = false;
    for (const auto& [n, body] : sys.definitions()) {
      if (is_definite(v.at(n))) continue;
      auto val = kleene_eval(body, v, reading);
      if (is_definite(val)) {
        next[n] = val;
        r.decided_at[n] = stage;
        changed = true;
      }
    }
    if (!changed) {
      if (r.stages.size() > 2 * sys.names().size() + 1)
        throw std::logic_error("kripke_lfp: stage bound 2n+1 exceeded");
      r.valuation = std::move(v);
      return r;
    }
    v = std::move(next);
    r.stages.push_back(v);
  }
  throw FuelExhaustedError("kripke_lfp: fuel exhausted after " + std::to_string(fuel) + " stages");
}

enum class Grounding { GroundedTrue, GroundedFalse, Ungrounded };

inline const char* to_string(Grounding g) {
  switch (g) {
    case Grounding::GroundedTrue: return "grounded_true";
    case Grounding::GroundedFalse: return "grounded_false";
    default: return "ungrounded";
  }
}

inline std::map<std::string, Grounding> classify(const SentenceSystem& sys) {
  std::map<std::string, Grounding> out;
  for (const auto& [n, v] : kripke_lfp(sys).valuation)
    out[n] = v == ThreeVal::True    ? Grounding::GroundedTrue
             : v == ThreeVal::False ? Grounding::GroundedFalse
                                    : Grounding::Ungrounded;
  return out;
}

// ---------------------------------------------------------------------------
// Classical search

inline constexpr std::size_t kClassicalSearchBound = 20;

using ClassicalAssignment = std::map<std::string, bool>;

/// Classical value of s where Ref and Trans both read the assignment.
inline bool classical_eval(const Sentence& s, const ClassicalAssignment& w) {
  using K = Sentence::Kind;
  switch (s.kind()) {
    case K::Atom: return s.atom_value();
    case K::Ref:
    case K::Trans: {
      auto it = w.find(s.name());
      if (it == w.end()) throw DomainError("unresolved name '" + s.name() + "'");
      return it->second;
    }
    case K::Not: return !classical_eval(s.child(0), w);
    case K::And: return classical_eval(s.child(0), w) && classical_eval(s.child(1), w);
    case K::Or: return classical_eval(s.child(0), w) || classical_eval(s.child(1), w);
    case K::Implies: return !classical_eval(s.child(0), w) || classical_eval(s.child(1), w);
    case K::Iff: return classical_eval(s.child(0), w) == classical_eval(s.child(1), w);
  }
  return false;
}

/// Searches for a two-valued model in which every definition holds as a
/// biconditional and Trans is total and sound. The only Trans extension
/// satisfying the latter is the assignment itself, so the scan ranges over
/// the 2^n assignments to defined names. Assignments are visited in
/// lexicographic order (names sorted, false before true) and the first model
/// is returned.
inline std::optional<ClassicalAssignment> total_classical_search(const SentenceSystem& sys) {
  const auto names = sys.defined_names();
  const std::size_t n = names.size();
  if (n > kClassicalSearchBound)
    throw CapacityError("classical search over " + std::to_string(n) + " names exceeds bound " +
                        std::to_string(kClassicalSearchBound));
  ClassicalAssignment w(sys.ground_atoms().begin(), sys.ground_atoms().end());
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    for (std::size_t i = 0; i < n; ++i) w[names[i]] = (k >> (n - 1 - i)) & 1u;
    bool ok = true;
    for (const auto& [name, body] : sys.definitions()) {
      if (classical_eval(body, w) != w.at(name)) {
        ok = false;
        break;
      }
    }
    if (ok) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LP (logic of paradox)

inline constexpr std::size_t kLpBound = 12;

/// LP truth values. Both is a glut: designated true and designated false.
enum class LpVal : std::uint8_t { False = 0, True = 1, Both = 2 };

inline const char* to_string(LpVal v) {
  switch (v) {
    case LpVal::False: return "F";
    case LpVal::True: return "T";
    default: return "B";
  }
}

struct LPValuation {
  std::set<std::string> designated_true;
  std::set<std::string> designated_false;

  std::set<std::string> gluts() const {
    std::set<std::string> out;
    std::set_intersection(designated_true.begin(), designated_true.end(), designated_false.begin(),
                          designated_false.end(), std::inserter(out, out.end()));
    return out;
  }
};

/// An undesignated sentence: either the name itself or its negation.
struct NonExplosionWitness {
  std::string name;
  bool negated = false;
};

struct LpModel {
  LPValuation valuation;
  std::map<std::string, LpVal> values;
  std::optional<NonExplosionWitness> witness;
};

namespace detail {

// LP shares the strong Kleene tables, with the glut in the middle position:
// F < B < T for conjunction and disjunction, ¬B = B.
inline int lp_rank(LpVal v) { return v == LpVal::False ? 0 : v == LpVal::Both ? 1 : 2; }
inline LpVal lp_from_rank(int r) { return r == 0 ? LpVal::False : r == 1 ? LpVal::Both : LpVal::True; }

inline LpVal lp_eval(const Sentence& s, const std::map<std::string, LpVal>& v) {
  using K = Sentence::Kind;
  auto bin = [&](auto f) {
    return lp_from_rank(f(lp_rank(lp_eval(s.child(0), v)), lp_rank(lp_eval(s.child(1), v))));
  };
  auto neg = [](int r) { return 2 - r; };
  switch (s.kind()) {
    case K::Atom: return s.atom_value() ? LpVal::True : LpVal::False;
    case K::Ref:
    case K::Trans: return v.at(s.name());
    case K::Not: return lp_from_rank(neg(lp_rank(lp_eval(s.child(0), v))));
    case K::And: return bin([](int a, int b) { return std::min(a, b); });
    case K::Or: return bin([](int a, int b) { return std::max(a, b); });
    case K::Implies: return bin([&](int a, int b) { return std::max(neg(a), b); });
    case K::Iff:
      return bin([&](int a, int b) { return std::min(std::max(neg(a), b), std::max(neg(b), a)); });
  }
  return LpVal::Both;
}

}  // namespace detail

/// Finite counterpart of the LP construction for total transparency: among
/// all LP models of the system (every definition's value equals the value of
/// its body, Trans transparent), pick one with the fewest gluts, breaking
/// ties lexicographically (names sorted, F < T < B). Glut-free systems thus
/// get exactly the classical search witness; paradoxical names are forced to
/// Both. The witness is the first name (lexicographically) whose plain
/// sentence is undesignated, else the first whose negation is.
inline LpModel lp_model(const SentenceSystem& sys) {
  const auto names = sys.defined_names();
  const std::size_t n = names.size();
  if (n > kLpBound)
    throw CapacityError("lp_model over " + std::to_string(n) + " names exceeds bound " + std::to_string(kLpBound));

  std::map<std::string, LpVal> v;
  for (const auto& [g, b] : sys.ground_atoms()) v[g] = b ? LpVal::True : LpVal::False;

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::optional<std::map<std::string, LpVal>> best;
  std::size_t best_gluts = n + 1;
  std::vector<int> digits(n, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t rest = k;
    std::size_t gluts = 0;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    for (std::size_t i = 0; i < n; ++i) {
      v[names[i]] = static_cast<LpVal>(digits[i]);
      gluts += digits[i] == 2;
    }
    if (gluts >= best_gluts) continue;
    bool ok = true;
    for (const auto& [name, body] : sys.definitions()) {
      if (detail::lp_eval(body, v) != v.at(name)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      best = v;
      best_gluts = gluts;
      if (gluts == 0) break;
    }
  }
  if (!best) throw std::logic_error("lp_model: no LP model found; the Kripke fixed point read in LP is always one");

  LpModel m;
  m.values = *best;
  for (const auto& [name, val] : m.values) {
    if (val != LpVal::False) m.valuation.designated_true.insert(name);
    if (val != LpVal::True) m.valuation.designated_false.insert(name);
  }
  for (const auto& [name, val] : m.values)
    if (val == LpVal::False) {
      m.witness = NonExplosionWitness{name, false};
      break;
    }
  if (!m.witness)
    for (const auto& [name, val] : m.values)
      if (val == LpVal::True) {
        m.witness = NonExplosionWitness{name, true};
        break;
      }
  return m;
}

}  // namespace fixtrans::truth
