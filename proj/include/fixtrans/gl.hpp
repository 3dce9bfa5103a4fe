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

// Finite-frame semantics for the provability logic GL, plus a checked replay
// of the six-line self-endorsement derivation.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixtrans/error.hpp"
#include "fixtrans/modal_syntax.hpp"

namespace fixtrans::gl {

class ModalFormula {
 public:
  enum class Kind { True, False, Prop, Not, And, Or, Implies, Box, Diamond };

  static ModalFormula truth() { return ModalFormula(Kind::True); }
  static ModalFormula falsity() { return ModalFormula(Kind::False); }
  static ModalFormula prop(std::string n) {
    ModalFormula f(Kind::Prop);
    f.name_ = std::move(n);
    return f;
  }
  static ModalFormula negate(ModalFormula a) { return node(Kind::Not, {std::move(a)}); }
  static ModalFormula conj(ModalFormula a, ModalFormula b) { return node(Kind::And, {std::move(a), std::move(b)}); }
  static ModalFormula disj(ModalFormula a, ModalFormula b) { return node(Kind::Or, {std::move(a), std::move(b)}); }
  static ModalFormula implies(ModalFormula a, ModalFormula b) {
    return node(Kind::Implies, {std::move(a), std::move(b)});
  }
  static ModalFormula box(ModalFormula a) { return node(Kind::Box, {std::move(a)}); }
  static ModalFormula diamond(ModalFormula a) { return node(Kind::Diamond, {std::move(a)}); }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const ModalFormula& child(std::size_t i = 0) const { return children_.at(i); }
  const std::vector<ModalFormula>& children() const noexcept { return children_; }

  friend bool operator==(const ModalFormula&, const ModalFormula&) = default;

 private:
  explicit ModalFormula(Kind k) : kind_(k) {}
  static ModalFormula node(Kind k, std::vector<ModalFormula> ch) {
    ModalFormula f(k);
    f.children_ = std::move(ch);
    return f;
  }

  Kind kind_;
  std::string name_;
  std::vector<ModalFormula> children_;
};

inline std::string to_string(const ModalFormula& f) {
  using K = ModalFormula::Kind;
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Prop: return f.name();
    case K::Not: return "!" + to_string(f.child());
    case K::And: return "(" + to_string(f.child(0)) + " & " + to_string(f.child(1)) + ")";
    case K::Or: return "(" + to_string(f.child(0)) + " | " + to_string(f.child(1)) + ")";
    case K::Implies: return "(" + to_string(f.child(0)) + " -> " + to_string(f.child(1)) + ")";
    case K::Box: return "[]" + to_string(f.child());
    case K::Diamond: return "<>" + to_string(f.child());
  }
  return {};
}

inline void collect_props(const ModalFormula& f, std::set<std::string>& out) {
  if (f.kind() == ModalFormula::Kind::Prop) out.insert(f.name());
  for (const auto& c : f.children()) collect_props(c, out);
}

inline std::vector<std::string> props_of(const ModalFormula& f) {
  std::set<std::string> s;
  collect_props(f, s);
  return {s.begin(), s.end()};
}

namespace detail {

inline ModalFormula from_node(const syntax::Node& n) {
  using NK = syntax::NodeKind;
  using F = ModalFormula;
  switch (n.kind) {
    case NK::True: return F::truth();
    case NK::False: return F::falsity();
    case NK::Ident: return F::prop(n.name);
    case NK::Not: return F::negate(from_node(n.children[0]));
    case NK::And: return F::conj(from_node(n.children[0]), from_node(n.children[1]));
    case NK::Or: return F::disj(from_node(n.children[0]), from_node(n.children[1]));
    case NK::Implies: return F::implies(from_node(n.children[0]), from_node(n.children[1]));
    case NK::Box: return F::box(from_node(n.children[0]));
    case NK::Diamond: return F::diamond(from_node(n.children[0]));
    case NK::Mu:
    case NK::Nu: break;
  }
  throw ParseError("fixpoint binders are not part of the modal language", n.line, n.column);
}

}  // namespace detail

inline ModalFormula parse_modal(std::string_view text) {
  return detail::from_node(syntax::parse(text, {.allow_binders = false, .allow_implies = true}));
}

// ---------------------------------------------------------------------------
// Frames

inline constexpr std::size_t kMaxFrameStates = 16;
inline constexpr std::size_t kMaxEnumerationStates = 4;
inline constexpr std::size_t kMaxValidityProps = 3;
inline constexpr std::size_t kMaxLabelingBits = 24;

using Pair = std::pair<std::size_t, std::size_t>;

/// Finite Kripke frame over states 0..n-1. `gl` enforces a strict partial
/// order; `raw` accepts any relation and exists for counterexamples.
class ModalFrame {
 public:
  static ModalFrame gl(std::size_t n, const std::vector<Pair>& pairs) {
    ModalFrame f = raw(n, pairs);
    if (!f.is_irreflexive()) throw DomainError("GL frame relation must be irreflexive");
    if (!f.is_transitive()) throw DomainError("GL frame relation must be transitive");
    return f;
  }

  static ModalFrame raw(std::size_t n, const std::vector<Pair>& pairs) {
    if (n == 0) throw DomainError("frame needs at least one state");
    if (n > kMaxFrameStates) throw CapacityError("frame exceeds " + std::to_string(kMaxFrameStates) + " states");
    ModalFrame f;
    f.succ_.assign(n, 0);
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) throw DomainError("edge endpoint out of range");
      f.succ_[a] |= std::uint32_t{1} << b;
    }
    return f;
  }

  std::size_t size() const noexcept { return succ_.size(); }
  std::uint32_t successors(std::size_t s) const { return succ_.at(s); }
  bool related(std::size_t a, std::size_t b) const { return (succ_.at(a) >> b) & 1U; }

  std::vector<Pair> pairs() const {
    std::vector<Pair> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (related(a, b)) out.emplace_back(a, b);
    return out;
  }

  bool is_irreflexive() const {
    for (std::size_t s = 0; s < size(); ++s)
      if (related(s, s)) return false;
    return true;
  }

  bool is_transitive() const {
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (related(a, b) && (succ_[b] & ~succ_[a]) != 0) return false;
    return true;
  }

  bool is_gl() const { return is_irreflexive() && is_transitive(); }

  /// True when some state reaches itself, a self-loop included.
  bool has_cycle() const {
    for (std::size_t s = 0; s < size(); ++s) {
      std::uint32_t seen = 0, frontier = succ_[s];
      while (frontier & ~seen) {
        seen |= frontier;
        std::uint32_t next = 0;
        for (std::size_t t = 0; t < size(); ++t)
          if ((frontier >> t) & 1U) next |= succ_[t];
        frontier = next;
      }
      if ((seen >> s) & 1U) return true;
    }
    return false;
  }

  friend bool operator==(const ModalFrame&, const ModalFrame&) = default;

 private:
  std::vector<std::uint32_t> succ_;
};

/// Every transitive irreflexive relation on n labelled states, each once.
/// States are added one at a time: the newcomer gets a down-closed set D of
/// predecessors and an up-closed set U of successors with D < U throughout.
inline std::vector<ModalFrame> enumerate_gl_frames(std::size_t n) {
  if (n == 0) throw DomainError("frame needs at least one state");
  if (n > kMaxEnumerationStates)
    throw CapacityError("GL frame enumeration is bounded at " + std::to_string(kMaxEnumerationStates) + " states");
  using Rel = std::vector<std::uint32_t>;  // successor masks
  std::vector<Rel> layer{Rel(1, 0)};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Rel> next;
    const std::uint32_t all = (std::uint32_t{1} << k) - 1;
    for (const auto& rel : layer) {
      auto preds = [&](std::size_t s) {
        std::uint32_t m = 0;
        for (std::size_t t = 0; t < k; ++t)
          if ((rel[t] >> s) & 1U) m |= std::uint32_t{1} << t;
        return m;
      };
      for (std::uint32_t down = 0; down <= all; ++down) {
        bool closed = true;
        for (std::size_t s = 0; s < k && closed; ++s)
          if (((down >> s) & 1U) && (preds(s) & ~down)) closed = false;
        if (!closed) continue;
        for (std::uint32_t up = 0; up <= all; ++up) {
          if (up & down) continue;
          bool ok = true;
          for (std::size_t s = 0; s < k && ok; ++s) {
            if (((up >> s) & 1U) && (rel[s] & ~up)) ok = false;
            if (((down >> s) & 1U) && (up & ~rel[s])) ok = false;
          }
          if (!ok) continue;
          Rel ext = rel;
          for (std::size_t s = 0; s < k; ++s)
            if ((down >> s) & 1U) ext[s] |= std::uint32_t{1} << k;
          ext.push_back(up);
          next.push_back(std::move(ext));
        }
      }
    }
    layer = std::move(next);
  }
  std::vector<ModalFrame> out;
  out.reserve(layer.size());
  for (const auto& rel : layer) {
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if ((rel[a] >> b) & 1U) pairs.emplace_back(a, b);
    out.push_back(ModalFrame::gl(n, pairs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validity

namespace detail {

inline std::uint32_t eval(const ModalFormula& f, const ModalFrame& fr, const std::vector<std::string>& props,
                          const std::vector<std::uint32_t>& val) {
  using K = ModalFormula::Kind;
  const std::uint32_t all = (std::uint32_t{1} << fr.size()) - 1;
  switch (f.kind()) {
    case K::True: return all;
    case K::False: return 0;
    case K::Prop: {
      auto it = std::lower_bound(props.begin(), props.end(), f.name());
      return val[static_cast<std::size_t>(it - props.begin())];
    }
    case K::Not: return all & ~eval(f.child(), fr, props, val);
    case K::And: return eval(f.child(0), fr, props, val) & eval(f.child(1), fr, props, val);
    case K::Or: return eval(f.child(0), fr, props, val) | eval(f.child(1), fr, props, val);
    case K::Implies: return all & (~eval(f.child(0), fr, props, val) | eval(f.child(1), fr, props, val));
    case K::Box:
    case K::Diamond: {
      const std::uint32_t inner = eval(f.child(), fr, props, val);
      std::uint32_t out = 0;
      for (std::size_t s = 0; s < fr.size(); ++s) {
        const std::uint32_t succ = fr.successors(s);
        const bool holds = f.kind() == K::Box ? (succ & ~inner) == 0 : (succ & inner) != 0;
        if (holds) out |= std::uint32_t{1} << s;
      }
      return out;
    }
  }
  return 0;
}

}  // namespace detail

/// A labelling under which `phi` fails somewhere, if one exists.
struct Countermodel {
  std::size_t state = 0;
  std::vector<std::pair<std::string, std::uint32_t>> labelling;  // prop -> state mask
};

inline std::optional<Countermodel> find_countermodel(const ModalFormula& phi, const ModalFrame& frame) {
  const auto props = props_of(phi);
  if (props.size() > kMaxValidityProps)
    throw CapacityError("validity check supports at most " + std::to_string(kMaxValidityProps) + " propositions");
  const std::size_t bits = props.size() * frame.size();
  if (bits > kMaxLabelingBits) throw CapacityError("labelling scan too large");
  const std::uint32_t all = (std::uint32_t{1} << frame.size()) - 1;
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::vector<std::uint32_t> val(props.size());
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t i = 0; i < props.size(); ++i)
      val[i] = static_cast<std::uint32_t>(code >> (i * frame.size())) & all;
    const std::uint32_t holds = detail::eval(phi, frame, props, val);
    if (holds != all) {
      Countermodel cm;
      for (std::size_t s = 0; s < frame.size(); ++s)
        if (!((holds >> s) & 1U)) {
          cm.state = s;
          break;
        }
      for (std::size_t i = 0; i < props.size(); ++i) cm.labelling.emplace_back(props[i], val[i]);
      return cm;
    }
  }
  return std::nullopt;
}

inline bool valid_in_frame(const ModalFormula& phi, const ModalFrame& frame) {
  return !find_countermodel(phi, frame).has_value();
}

/// □(□φ→φ)→□φ
inline ModalFormula lob_instance(const ModalFormula& phi) {
  using F = ModalFormula;
  return F::implies(F::box(F::implies(F::box(phi), phi)), F::box(phi));
}

/// Structural reason a frame can refute Löb: it is not transitive or it
/// admits a cycle (the finite shadow of an ascending chain).
inline bool lob_failure_explained(const ModalFrame& frame) { return !frame.is_transitive() || frame.has_cycle(); }

// ---------------------------------------------------------------------------
// Derivation replay

enum class Rule { Premise, D1, D2, D3, Taut, MP };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::Premise: return "Premise";
    case Rule::D1: return "D1";
    case Rule::D2: return "D2";
    case Rule::D3: return "D3";
    case Rule::Taut: return "Taut";
    case Rule::MP: return "MP";
  }
  return "?";
}

struct DerivationStep {
  ModalFormula formula;
  Rule rule;
  std::vector<std::size_t> refs;  // 1-based line numbers
  bool operator==(const DerivationStep&) const = default;
};

struct DerivationTrace {
  std::vector<DerivationStep> steps;
  /// Final line, the statement that ends up endorsed.
  const ModalFormula& conclusion() const { return steps.back().formula; }
  bool operator==(const DerivationTrace&) const = default;
};

namespace detail {

using K = ModalFormula::Kind;

inline bool is(const ModalFormula& f, K k) { return f.kind() == k; }

inline const ModalFormula& line(const DerivationTrace& t, std::size_t ref) {
  if (ref == 0 || ref > t.steps.size()) throw std::logic_error("derivation references a later line");
  return t.steps[ref - 1].formula;
}

// Checks one step against the lines it cites. The rules are the ones the
// replay uses, read exactly as the derivation applies them.
inline bool step_ok(const DerivationTrace& t, std::size_t index) {
  const auto& st = t.steps[index];
  for (auto r : st.refs)
    if (r == 0 || r > index) return false;
  const auto& f = st.formula;
  switch (st.rule) {
    case Rule::Premise: return st.refs.empty();
    case Rule::D2: {
      // from □(A→B) infer □A→□B
      if (st.refs.size() != 1) return false;
      const auto& src = line(t, st.refs[0]);
      if (!is(src, K::Box) || !is(src.child(), K::Implies)) return false;
      const auto& a = src.child().child(0);
      const auto& b = src.child().child(1);
      return f == ModalFormula::implies(ModalFormula::box(a), ModalFormula::box(b));
    }
    case Rule::D3:
      // axiom □A→□□A
      return st.refs.empty() && is(f, K::Implies) && is(f.child(0), K::Box) &&
             f.child(1) == ModalFormula::box(f.child(0));
    case Rule::MP: {
      // chaining A→B and B→C into A→C
      if (st.refs.size() != 2) return false;
      const auto& ab = line(t, st.refs[0]);
      const auto& bc = line(t, st.refs[1]);
      return is(ab, K::Implies) && is(bc, K::Implies) && is(f, K::Implies) && ab.child(1) == bc.child(0) &&
             f.child(0) == ab.child(0) && f.child(1) == bc.child(1);
    }
    case Rule::Taut: {
      // discharge of A→A into A
      if (st.refs.size() != 1) return false;
      const auto& src = line(t, st.refs[0]);
      return is(src, K::Implies) && src.child(0) == src.child(1) && f == src.child(0);
    }
    case Rule::D1: {
      // from □A read off A
      if (st.refs.size() != 1) return false;
      return line(t, st.refs[0]) == ModalFormula::box(f);
    }
  }
  return false;
}

}  // namespace detail

/// Index of the first step whose rule check fails, or steps.size().
inline std::size_t first_invalid_step(const DerivationTrace& t) {
  for (std::size_t i = 0; i < t.steps.size(); ++i)
    if (!detail::step_ok(t, i)) return i;
  return t.steps.size();
}

inline DerivationTrace lob_hazard_replay(const ModalFormula& phi) {
  using F = ModalFormula;
  const F bphi = F::box(phi);
  const F bbphi = F::box(bphi);
  DerivationTrace t;
  t.steps = {
      {F::box(F::implies(bphi, phi)), Rule::Premise, {}},
      {F::implies(bbphi, bphi), Rule::D2, {1}},
      {F::implies(bphi, bbphi), Rule::D3, {}},
      {F::implies(bphi, bphi), Rule::MP, {3, 2}},
      {bphi, Rule::Taut, {4}},
      {phi, Rule::D1, {5}},
  };
  const auto bad = first_invalid_step(t);
  if (bad != t.steps.size())
    throw std::logic_error("derivation replay failed at line " + std::to_string(bad + 1));
  return t;
}

inline DerivationTrace lob_hazard_replay(std::string_view proposition) {
  return lob_hazard_replay(ModalFormula::prop(std::string(proposition)));
}

}  // namespace fixtrans::gl
