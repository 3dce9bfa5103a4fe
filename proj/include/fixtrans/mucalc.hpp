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

#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fixtrans/error.hpp"
#include "fixtrans/item_set.hpp"
#include "fixtrans/modal_syntax.hpp"

namespace fixtrans::mucalc {

using StateSet = ItemSet;

/// Modal μ-calculus formula. Identifiers starting with an upper-case letter
/// are fixpoint variables, all others are propositions.
class MuFormula {
 public:
  enum class Kind { True, False, Prop, Var, Not, And, Or, Box, Diamond, Mu, Nu };

  static MuFormula truth() { return MuFormula(Kind::True); }
  static MuFormula falsity() { return MuFormula(Kind::False); }
  static MuFormula prop(std::string n) { return named(Kind::Prop, std::move(n), {}); }
  static MuFormula var(std::string n) { return named(Kind::Var, std::move(n), {}); }
  static MuFormula negate(MuFormula a) { return node(Kind::Not, {std::move(a)}); }
  static MuFormula conj(MuFormula a, MuFormula b) { return node(Kind::And, {std::move(a), std::move(b)}); }
  static MuFormula disj(MuFormula a, MuFormula b) { return node(Kind::Or, {std::move(a), std::move(b)}); }
  static MuFormula box(MuFormula a) { return node(Kind::Box, {std::move(a)}); }
  static MuFormula diamond(MuFormula a) { return node(Kind::Diamond, {std::move(a)}); }
  static MuFormula mu(std::string v, MuFormula body) { return named(Kind::Mu, std::move(v), {std::move(body)}); }
  static MuFormula nu(std::string v, MuFormula body) { return named(Kind::Nu, std::move(v), {std::move(body)}); }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<MuFormula>& children() const noexcept { return children_; }
  const MuFormula& child(std::size_t i = 0) const { return children_.at(i); }
  const MuFormula& body() const { return children_.at(0); }
  bool is_binder() const noexcept { return kind_ == Kind::Mu || kind_ == Kind::Nu; }

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  MuFormula& at(int line, int column) {
    line_ = line;
    column_ = column;
    return *this;
  }

  /// Structural equality; source positions are ignored.
  friend bool operator==(const MuFormula& a, const MuFormula& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_ && a.children_ == b.children_;
  }

 private:
  explicit MuFormula(Kind k) : kind_(k) {}
  static MuFormula named(Kind k, std::string n, std::vector<MuFormula> ch) {
    MuFormula f(k);
    f.name_ = std::move(n);
    f.children_ = std::move(ch);
    return f;
  }
  static MuFormula node(Kind k, std::vector<MuFormula> ch) { return named(k, {}, std::move(ch)); }

  Kind kind_;
  std::string name_;
  std::vector<MuFormula> children_;
  int line_ = 0;
  int column_ = 0;
};

inline std::string to_string(const MuFormula& f) {
  using K = MuFormula::Kind;
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Prop:
    case K::Var: return f.name();
    case K::Not: return "!" + to_string(f.child());
    case K::And: return "(" + to_string(f.child(0)) + " & " + to_string(f.child(1)) + ")";
    case K::Or: return "(" + to_string(f.child(0)) + " | " + to_string(f.child(1)) + ")";
    case K::Box: return "[]" + to_string(f.child());
    case K::Diamond: return "<>" + to_string(f.child());
    case K::Mu: return "(mu " + f.name() + ". " + to_string(f.body()) + ")";
    case K::Nu: return "(nu " + f.name() + ". " + to_string(f.body()) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Positivity

struct PositivityViolation {
  std::string variable;
  /// Constructors from the binding site down to the offending occurrence.
  std::vector<std::string> path;
  int line = 0;
  int column = 0;
};

class PositivityError : public ParseError {
 public:
  explicit PositivityError(std::vector<PositivityViolation> v)
      : ParseError("variable '" + v.front().variable + "' occurs under an odd number of negations", v.front().line,
                   v.front().column),
        violations_(std::move(v)) {}
  const std::vector<PositivityViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<PositivityViolation> violations_;
};

namespace detail {

inline std::string label(const MuFormula& f) {
  using K = MuFormula::Kind;
  switch (f.kind()) {
    case K::Not: return "!";
    case K::And: return "&";
    case K::Or: return "|";
    case K::Box: return "[]";
    case K::Diamond: return "<>";
    case K::Mu: return "mu " + f.name();
    case K::Nu: return "nu " + f.name();
    default: return to_string(f);
  }
}

struct Binding {
  std::vector<std::string> path;  // from the binder
  int negations = 0;              // since the binder
};

inline void positivity_walk(const MuFormula& f, std::map<std::string, Binding> scope,
                            std::vector<PositivityViolation>& out) {
  using K = MuFormula::Kind;
  for (auto& [_, b] : scope) b.path.push_back(label(f));
  if (f.kind() == K::Var) {
    auto it = scope.find(f.name());
    if (it != scope.end() && it->second.negations % 2 != 0)
      out.push_back({f.name(), it->second.path, f.line(), f.column()});
    return;
  }
  if (f.kind() == K::Not)
    for (auto& [_, b] : scope) ++b.negations;
  if (f.is_binder()) scope[f.name()] = Binding{{label(f)}, 0};
  for (const auto& c : f.children()) positivity_walk(c, scope, out);
}

}  // namespace detail

/// Every bound variable must sit under an even number of negations, counted
/// from its binder. Free variables are not checked.
inline std::vector<PositivityViolation> check_positivity(const MuFormula& f) {
  std::vector<PositivityViolation> out;
  detail::positivity_walk(f, {}, out);
  return out;
}

namespace detail {

inline MuFormula nnf(const MuFormula& f, bool negate, std::set<std::string> flipped) {
  using K = MuFormula::Kind;
  auto keep_pos = [&](MuFormula g) { return g.at(f.line(), f.column()); };
  switch (f.kind()) {
    case K::True: return keep_pos(negate ? MuFormula::falsity() : MuFormula::truth());
    case K::False: return keep_pos(negate ? MuFormula::truth() : MuFormula::falsity());
    case K::Prop: return keep_pos(negate ? MuFormula::negate(MuFormula::prop(f.name())) : MuFormula::prop(f.name()));
    case K::Var: {
      bool neg = negate != (flipped.count(f.name()) != 0);
      return keep_pos(neg ? MuFormula::negate(MuFormula::var(f.name())) : MuFormula::var(f.name()));
    }
    case K::Not: return nnf(f.child(), !negate, std::move(flipped));
    case K::And:
    case K::Or: {
      auto a = nnf(f.child(0), negate, flipped);
      auto b = nnf(f.child(1), negate, flipped);
      bool conj = (f.kind() == K::And) != negate;
      return keep_pos(conj ? MuFormula::conj(std::move(a), std::move(b)) : MuFormula::disj(std::move(a), std::move(b)));
    }
    case K::Box:
    case K::Diamond: {
      auto a = nnf(f.child(), negate, std::move(flipped));
      bool box = (f.kind() == K::Box) != negate;
      return keep_pos(box ? MuFormula::box(std::move(a)) : MuFormula::diamond(std::move(a)));
    }
    case K::Mu:
    case K::Nu: {
      // ¬μX.φ = νX.¬φ[¬X/X]
      if (negate)
        flipped.insert(f.name());
      else
        flipped.erase(f.name());
      auto body = nnf(f.body(), negate, std::move(flipped));
      bool least = (f.kind() == K::Mu) != negate;
      return keep_pos(least ? MuFormula::mu(f.name(), std::move(body)) : MuFormula::nu(f.name(), std::move(body)));
    }
  }
  return f;
}

}  // namespace detail

/// Negation normal form: negation only on propositions (and on free
/// variables, which are complemented through the environment).
inline MuFormula to_nnf(const MuFormula& f) { return detail::nnf(f, false, {}); }

// ---------------------------------------------------------------------------
// Parsing

class UnboundVariableError : public ParseError {
 public:
  UnboundVariableError(const std::string& var, int line, int column)
      : ParseError("unbound variable '" + var + "'", line, column), variable_(var) {}
  const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

namespace detail {

inline bool is_variable_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

inline MuFormula from_syntax(const syntax::Node& n, std::set<std::string>& bound) {
  using NK = syntax::NodeKind;
  MuFormula out = MuFormula::truth();
  switch (n.kind) {
    case NK::True: break;
    case NK::False: out = MuFormula::falsity(); break;
    case NK::Ident:
      if (is_variable_name(n.name)) {
        if (!bound.count(n.name)) throw UnboundVariableError(n.name, n.line, n.column);
        out = MuFormula::var(n.name);
      } else {
        out = MuFormula::prop(n.name);
      }
      break;
    case NK::Not: out = MuFormula::negate(from_syntax(n.children[0], bound)); break;
    case NK::And: out = MuFormula::conj(from_syntax(n.children[0], bound), from_syntax(n.children[1], bound)); break;
    case NK::Or: out = MuFormula::disj(from_syntax(n.children[0], bound), from_syntax(n.children[1], bound)); break;
    case NK::Implies:
      out = MuFormula::disj(MuFormula::negate(from_syntax(n.children[0], bound)), from_syntax(n.children[1], bound));
      break;
    case NK::Box: out = MuFormula::box(from_syntax(n.children[0], bound)); break;
    case NK::Diamond: out = MuFormula::diamond(from_syntax(n.children[0], bound)); break;
    case NK::Mu:
    case NK::Nu: {
      if (!is_variable_name(n.name))
        throw ParseError("bound variable '" + n.name + "' must start with an upper-case letter", n.line, n.column);
      bool shadowing = bound.count(n.name) != 0;
      bound.insert(n.name);
      auto body = from_syntax(n.children[0], bound);
      if (!shadowing) bound.erase(n.name);
      out = n.kind == NK::Mu ? MuFormula::mu(n.name, std::move(body)) : MuFormula::nu(n.name, std::move(body));
      break;
    }
  }
  out.at(n.line, n.column);
  return out;
}

}  // namespace detail

/// Parses, rejects unbound variables and positivity violations, and returns
/// the formula in negation normal form.
inline MuFormula parse_mu(std::string_view text) {
  auto tree = syntax::parse(text, {.allow_binders = true, .allow_implies = true});
  std::set<std::string> bound;
  auto f = detail::from_syntax(tree, bound);
  auto violations = check_positivity(f);
  if (!violations.empty()) throw PositivityError(std::move(violations));
  return to_nnf(f);
}

// ---------------------------------------------------------------------------
// Kripke frames

class KripkeFrame {
 public:
  KripkeFrame() = default;
  KripkeFrame(std::vector<std::string> states, const std::vector<std::pair<std::string, std::string>>& edges,
              const std::map<std::string, std::vector<std::string>>& labels)
      : states_(std::move(states)) {
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (!index_.emplace(states_[i], i).second) throw DomainError("duplicate state '" + states_[i] + "'");
    succ_.assign(states_.size(), ItemSet(states_.size()));
    for (const auto& [from, to] : edges) succ_[index_of(from)].insert(index_of(to));
    for (const auto& [prop, where] : labels) {
      ItemSet s(states_.size());
      for (const auto& st : where) s.insert(index_of(st));
      labels_.emplace(prop, std::move(s));
    }
  }

  /// States s0..s{n-1} with edges and labels given by index.
  static KripkeFrame indexed(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                             const std::map<std::string, std::vector<std::size_t>>& labels) {
    std::vector<std::string> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> e;
    for (auto [a, b] : edges) e.emplace_back(states.at(a), states.at(b));
    std::map<std::string, std::vector<std::string>> l;
    for (const auto& [p, idx] : labels) {
      auto& where = l[p];
      for (auto i : idx) where.push_back(states.at(i));
    }
    return KripkeFrame(std::move(states), e, l);
  }

  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::string& state(std::size_t i) const { return states_.at(i); }
  std::size_t index_of(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw DomainError("unknown state '" + s + "'");
    return it->second;
  }
  const ItemSet& successors(std::size_t i) const { return succ_.at(i); }
  bool has_label(const std::string& p) const { return labels_.count(p) != 0; }
  /// States labelled p; the empty set for unknown propositions.
  StateSet label(const std::string& p) const {
    auto it = labels_.find(p);
    return it == labels_.end() ? StateSet(size()) : it->second;
  }
  const std::map<std::string, ItemSet>& labels() const noexcept { return labels_; }

  StateSet all() const { return StateSet::full(size()); }
  StateSet none() const { return StateSet(size()); }

  /// {s | every successor of s is in target}
  StateSet pre_box(const StateSet& target) const {
    StateSet out(size());
    for (std::size_t i = 0; i < size(); ++i)
      if (succ_[i].is_subset_of(target)) out.insert(i);
    return out;
  }
  /// {s | some successor of s is in target}
  StateSet pre_diamond(const StateSet& target) const {
    StateSet out(size());
    for (std::size_t i = 0; i < size(); ++i)
      if (!(succ_[i] & target).empty()) out.insert(i);
    return out;
  }

  std::vector<std::string> names_of(const StateSet& s) const {
    std::vector<std::string> out;
    for (auto i : s.indices()) out.push_back(states_[i]);
    return out;
  }

 private:
  std::vector<std::string> states_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<ItemSet> succ_;
  std::map<std::string, ItemSet> labels_;
};

using Environment = std::map<std::string, StateSet>;

// ---------------------------------------------------------------------------
// Model checking

struct EvalStats {
  /// Largest number of body evaluations spent on a single fixpoint
  /// computation (the confirming evaluation included).
  std::size_t max_iterations = 0;
  std::size_t fixpoints = 0;
};

namespace detail {

inline StateSet lookup_var(const std::string& v, const Environment& env) {
  auto it = env.find(v);
  if (it == env.end()) throw DomainError("free variable '" + v + "' has no value in the environment");
  return it->second;
}

inline StateSet mc(const MuFormula& f, const KripkeFrame& k, Environment& env, EvalStats* stats) {
  using K = MuFormula::Kind;
  switch (f.kind()) {
    case K::True: return k.all();
    case K::False: return k.none();
    case K::Prop: return k.label(f.name());
    case K::Var: return lookup_var(f.name(), env);
    case K::Not: return mc(f.child(), k, env, stats).complement();
    case K::And: return mc(f.child(0), k, env, stats) & mc(f.child(1), k, env, stats);
    case K::Or: return mc(f.child(0), k, env, stats) | mc(f.child(1), k, env, stats);
    case K::Box: return k.pre_box(mc(f.child(), k, env, stats));
    case K::Diamond: return k.pre_diamond(mc(f.child(), k, env, stats));
    case K::Mu:
    case K::Nu: {
      auto saved = env.find(f.name()) != env.end() ? std::optional<StateSet>(env.at(f.name())) : std::nullopt;
      StateSet current = f.kind() == K::Mu ? k.none() : k.all();
      std::size_t iterations = 0;
      for (;;) {
        env[f.name()] = current;
        StateSet next = mc(f.body(), k, env, stats);
        ++iterations;
        if (next == current) break;
        current = std::move(next);
      }
      if (saved)
        env[f.name()] = *saved;
      else
        env.erase(f.name());
      if (stats) {
        ++stats->fixpoints;
        stats->max_iterations = std::max(stats->max_iterations, iterations);
      }
      return current;
    }
  }
  return k.none();
}

}  // namespace detail

/// Denotation of f: μ by ascending iteration from ∅, ν by descending
/// iteration from all states, inner fixpoints recomputed from scratch on
/// every outer iteration.
inline StateSet mc_eval(const MuFormula& f, const KripkeFrame& frame, const Environment& env = {},
                        EvalStats* stats = nullptr) {
  if (auto v = check_positivity(f); !v.empty()) throw PositivityError(std::move(v));
  for (const auto& [_, s] : env) {
    if (s.width() != frame.size()) throw DomainError("environment set does not match the frame");
  }
  Environment e = env;
  return detail::mc(to_nnf(f), frame, e, stats);
}

/// The body operator of a binder: S ↦ ⟦body⟧ with the bound variable set to S.
inline StateSet apply_body(const MuFormula& binder, const KripkeFrame& frame, const StateSet& s,
                           const Environment& env = {}) {
  if (!binder.is_binder()) throw DomainError("apply_body expects a mu or nu formula");
  Environment e = env;
  e[binder.name()] = s;
  return mc_eval(binder.body(), frame, e);
}

inline constexpr std::size_t kNaiveBound = 6;

namespace detail {

inline StateSet naive(const MuFormula& f, const KripkeFrame& k, Environment& env) {
  using K = MuFormula::Kind;
  switch (f.kind()) {
    case K::True: return k.all();
    case K::False: return k.none();
    case K::Prop: return k.label(f.name());
    case K::Var: return lookup_var(f.name(), env);
    case K::Not: return naive(f.child(), k, env).complement();
    case K::And: return naive(f.child(0), k, env) & naive(f.child(1), k, env);
    case K::Or: return naive(f.child(0), k, env) | naive(f.child(1), k, env);
    case K::Box: return k.pre_box(naive(f.child(), k, env));
    case K::Diamond: return k.pre_diamond(naive(f.child(), k, env));
    case K::Mu:
    case K::Nu: {
      const bool least = f.kind() == K::Mu;
      auto saved = env.find(f.name()) != env.end() ? std::optional<StateSet>(env.at(f.name())) : std::nullopt;
      // μ: ⋂{S | ⟦φ⟧[X:=S] ⊆ S}; ν: ⋃{S | S ⊆ ⟦φ⟧[X:=S]}
      StateSet acc = least ? k.all() : k.none();
      const std::uint64_t subsets = std::uint64_t{1} << k.size();
      for (std::uint64_t m = 0; m < subsets; ++m) {
        StateSet s = StateSet::from_mask(k.size(), m);
        env[f.name()] = s;
        StateSet image = naive(f.body(), k, env);
        if (least && image.is_subset_of(s)) acc &= s;
        if (!least && s.is_subset_of(image)) acc |= s;
      }
      if (saved)
        env[f.name()] = *saved;
      else
        env.erase(f.name());
      return acc;
    }
  }
  return k.none();
}

}  // namespace detail

/// Literal set-theoretic semantics: intersection of pre-fixed points for μ,
/// union of post-fixed points for ν, by scanning every subset of states.
inline StateSet naive_eval(const MuFormula& f, const KripkeFrame& frame, const Environment& env = {}) {
  if (frame.size() > kNaiveBound)
    throw CapacityError("naive_eval supports at most " + std::to_string(kNaiveBound) + " states");
  if (auto v = check_positivity(f); !v.empty()) throw PositivityError(std::move(v));
  Environment e = env;
  return detail::naive(to_nnf(f), frame, e);
}

// ---------------------------------------------------------------------------
// Safety preservation through disclosure rounds

struct SafetyReport {
  /// ⟦νX. I ∧ □X⟧ and ⟦μY. E ∨ ◇Y⟧
  StateSet invariant_states;
  StateSet eventual_states;
  /// Step preservation: every edge from an I-state into an E-state lands in I.
  bool hypothesis_holds = true;
  std::vector<std::pair<std::string, std::string>> hypothesis_counterexamples;
  /// Every E-state reached from an I-state in Q, along a path whose earlier
  /// states satisfy I and not E, satisfies I.
  bool conclusion_holds = true;
  std::vector<std::vector<std::string>> witness_paths;
  std::vector<std::vector<std::string>> counterexample_paths;
  /// From every state of P ∩ Q, every reachable E-state satisfies I.
  bool invariant_conclusion_holds = true;
  /// The hypothesis implies the conclusion on this frame.
  bool consistent() const noexcept { return !hypothesis_holds || conclusion_holds; }
};

/// Checks that an eventual disclosure event does not break an invariant.
///
/// For each start state w satisfying I and Q, a breadth-first search follows
/// edges through I ∧ ¬E states until it meets E; each E-state met yields a
/// witness path (if it satisfies I) or a counterexample path (if not).
inline SafetyReport safety_preservation_check(const KripkeFrame& frame, const std::string& invariant,
                                              const std::string& event) {
  if (!frame.has_label(invariant)) throw DomainError("invariant proposition '" + invariant + "' is not labelled");
  if (!frame.has_label(event)) throw DomainError("event proposition '" + event + "' is not labelled");
  SafetyReport r;
  const auto i_set = frame.label(invariant);
  const auto e_set = frame.label(event);
  r.invariant_states = mc_eval(MuFormula::nu("X", MuFormula::conj(MuFormula::prop(invariant),
                                                                   MuFormula::box(MuFormula::var("X")))),
                               frame);
  r.eventual_states = mc_eval(
      MuFormula::mu("Y", MuFormula::disj(MuFormula::prop(event), MuFormula::diamond(MuFormula::var("Y")))), frame);

  for (std::size_t s = 0; s < frame.size(); ++s) {
    if (!i_set.contains(s)) continue;
    for (auto t : frame.successors(s).indices())
      if (e_set.contains(t) && !i_set.contains(t)) {
        r.hypothesis_holds = false;
        r.hypothesis_counterexamples.emplace_back(frame.state(s), frame.state(t));
      }
  }

  auto path_to = [&](const std::vector<std::optional<std::size_t>>& parent, std::size_t target) {
    std::vector<std::string> path;
    for (std::optional<std::size_t> cur = target; cur; cur = parent[*cur]) path.push_back(frame.state(*cur));
    return std::vector<std::string>(path.rbegin(), path.rend());
  };

  const auto starts = i_set & r.eventual_states;
  for (auto w : starts.indices()) {
    std::vector<std::optional<std::size_t>> parent(frame.size());
    std::vector<bool> seen(frame.size(), false);
    std::deque<std::size_t> queue{w};
    seen[w] = true;
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      if (e_set.contains(s)) {
        if (i_set.contains(s)) {
          r.witness_paths.push_back(path_to(parent, s));
        } else {
          r.conclusion_holds = false;
          r.counterexample_paths.push_back(path_to(parent, s));
        }
        continue;
      }
      if (!i_set.contains(s)) continue;
      for (auto t : frame.successors(s).indices()) {
        if (seen[t]) continue;
        seen[t] = true;
        parent[t] = s;
        queue.push_back(t);
      }
    }
  }

  const auto pq = r.invariant_states & r.eventual_states;
  for (auto w : pq.indices()) {
    StateSet reach(frame.size());
    std::deque<std::size_t> queue{w};
    reach.insert(w);
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      for (auto t : frame.successors(s).indices())
        if (!reach.contains(t)) {
          reach.insert(t);
          queue.push_back(t);
        }
    }
    if (!(reach & e_set).is_subset_of(i_set)) r.invariant_conclusion_holds = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fixpoint commutation experiment

struct CommutationReport {
  StateSet nu_mu;  // νX.μY.ψ
  StateSet mu_nu;  // μY.νX.ψ
  bool equal() const { return nu_mu == mu_nu; }
};

/// Evaluates both nestings of a body positive in X and Y. Reports, asserts nothing.
inline CommutationReport commutation_experiment(std::string_view body, const KripkeFrame& frame) {
  const std::string text(body);
  CommutationReport r;
  r.nu_mu = mc_eval(parse_mu("nu X. mu Y. (" + text + ")"), frame);
  r.mu_nu = mc_eval(parse_mu("mu Y. nu X. (" + text + ")"), frame);
  return r;
}

}  // namespace fixtrans::mucalc
