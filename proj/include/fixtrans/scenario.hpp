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

// Scenario files and reports for the command-line front end.
//
// A scenario is a JSON object with a `kind` and kind-specific fields (see the
// README for the schema). Running one yields a Report: a list of named checks,
// each pass, fail, infeasible or capacity, with structured data. Input that
// does not parse or validate raises InputError, which carries a location.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fixtrans/error.hpp"
#include "fixtrans/gaming.hpp"
#include "fixtrans/gl.hpp"
#include "fixtrans/lattice.hpp"
#include "fixtrans/mucalc.hpp"
#include "fixtrans/optimize.hpp"
#include "fixtrans/properties.hpp"
#include "fixtrans/truth.hpp"
#include "fixtrans/truth_parse.hpp"
#include "json.hpp"

namespace fixtrans::scenario {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or invalid scenario input. `where` is a file position or a
/// JSON pointer into the document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> fuel;
  std::optional<std::size_t> bound;
  bool raw_relation = false;
};

enum class Status { Pass, Fail, Infeasible, Capacity };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Infeasible: return "infeasible";
    case Status::Capacity: return "capacity";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::Pass;
  json data = json::object();
};

struct Report {
  std::string id;
  std::string kind;
  std::uint64_t seed = properties::kDefaultSeed;
  std::vector<Check> checks;
  double timing_ms = 0.0;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::Pass; });
  }
  int exit_code() const { return all_pass() ? 0 : 1; }

  json to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"data", c.data}});
    return {{"schema_version", kSchemaVersion}, {"scenario", id},   {"kind", kind},
            {"seed", seed},                     {"checks", cs},     {"status", all_pass() ? "pass" : "fail"},
            {"timing_ms", timing_ms}};
  }
};

/// Removes every "timing_ms" member, for comparisons across runs.
inline json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("timing_ms");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Validating reader

/// A JSON value together with its pointer path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const noexcept { return *j_; }
  const std::string& path() const noexcept { return path_; }

  [[noreturn]] void fail(const std::string& msg) const { throw InputError(path_.empty() ? "/" : path_, msg); }

  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }
  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
  Node at(const std::string& key) const {
    require_object();
    if (!j_->contains(key)) fail("missing required field '" + key + "'");
    return Node((*j_)[key], path_ + "/" + key);
  }
  std::optional<Node> get(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Node((*j_)[key], path_ + "/" + key);
  }
  /// Rejects members outside `allowed`, so typos do not pass silently.
  void only(std::initializer_list<const char*> allowed) const {
    require_object();
    for (const auto& [k, v] : j_->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) fail("unknown field '" + k + "'");
    }
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "/" + std::to_string(i));
    return out;
  }
  std::vector<std::pair<std::string, Node>> members() const {
    require_object();
    std::vector<std::pair<std::string, Node>> out;
    for (const auto& [k, v] : j_->items()) out.emplace_back(k, Node(v, path_ + "/" + k));
    return out;
  }

  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }
  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }
  std::uint64_t count() const {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0))
      fail("expected a nonnegative integer");
    return j_->get<std::uint64_t>();
  }
  std::int64_t integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<std::int64_t>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }

 private:
  const json* j_;
  std::string path_;
};

namespace detail {

// Runs `fn`, turning domain errors from library constructors into input
// errors located at `at`.
template <class Fn>
auto located(const Node& at, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    at.fail(e.what());
  } catch (const DomainError& e) {
    at.fail(e.what());
  }
}

inline json names_json(const Universe& u, const ItemSet& s) { return u.names_of(s); }

inline ItemSet item_set(const Universe& u, const Node& n) {
  return located(n, [&] { return u.set_of(n.strings()); });
}

inline Universe universe(const Node& n) {
  return located(n, [&] { return Universe(n.strings()); });
}

inline Operator operator_spec(const Universe& u, const Node& n) {
  n.require_object();
  if (auto rules = n.get("rules")) {
    n.only({"rules", "inflationary"});
    std::vector<Rule> rs;
    for (const auto& r : rules->items()) {
      r.only({"if", "then"});
      rs.push_back({r.has("if") ? item_set(u, r.at("if")) : u.empty_set(), item_set(u, r.at("then"))});
    }
    bool infl = n.has("inflationary") ? n.at("inflationary").boolean() : true;
    return Operator::from_rules(u, std::move(rs), infl);
  }
  if (auto table = n.get("table")) {
    n.only({"table", "fallback"});
    std::map<ItemSet, ItemSet> entries;
    for (const auto& e : table->items()) {
      e.only({"state", "image"});
      auto k = item_set(u, e.at("state"));
      if (!entries.emplace(k, item_set(u, e.at("image"))).second) e.fail("state listed twice");
    }
    std::optional<ItemSet> fb;
    if (n.has("fallback")) fb = item_set(u, n.at("fallback"));
    return Operator::from_table(u, std::move(entries), fb);
  }
  if (auto c = n.get("constant")) {
    n.only({"constant"});
    return Operator::constant(u, item_set(u, *c));
  }
  if (auto id = n.get("identity")) {
    n.only({"identity"});
    if (!id->boolean()) id->fail("identity must be true when present");
    return Operator::identity(u);
  }
  n.fail("operator needs one of 'rules', 'table', 'constant' or 'identity'");
}

inline std::map<std::string, double> score_map(const Node& n) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : n.members()) out[k] = v.number();
  return out;
}

inline RiskModel risk_model(const Universe& u, const Node& n) {
  n.only({"weights", "privacy", "leakage", "fragility", "gaming", "interactions"});
  RiskModel::Weights w;
  if (auto wn = n.get("weights")) {
    wn->only({"alpha", "beta", "gamma", "delta"});
    if (wn->has("alpha")) w.alpha = wn->at("alpha").number();
    if (wn->has("beta")) w.beta = wn->at("beta").number();
    if (wn->has("gamma")) w.gamma = wn->at("gamma").number();
    if (wn->has("delta")) w.delta = wn->at("delta").number();
  }
  RiskModel::Scores s;
  if (n.has("privacy")) s.privacy = score_map(n.at("privacy"));
  if (n.has("leakage")) s.leakage = score_map(n.at("leakage"));
  if (n.has("fragility")) s.fragility = score_map(n.at("fragility"));
  if (n.has("gaming")) s.gaming = score_map(n.at("gaming"));
  std::map<RiskModel::NamedPair, double> inter;
  if (auto in = n.get("interactions")) {
    for (const auto& p : in->items()) {
      auto parts = p.items();
      if (parts.size() != 3) p.fail("interaction is [item, item, weight]");
      inter[{parts[0].str(), parts[1].str()}] += parts[2].number();
    }
  }
  return located(n, [&] { return RiskModel(u, w, s, inter); });
}

inline std::vector<std::string> state_names(const mucalc::KripkeFrame& f, const mucalc::StateSet& s) {
  return f.names_of(s);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kind runners

struct Context {
  Options opts;
  std::uint64_t seed = properties::kDefaultSeed;
  std::size_t fuel = kDefaultFuel;
  std::size_t bound = kEnumerationBound;
};

namespace detail {

inline Check expect_match(std::string name, bool ok, json data) {
  return {std::move(name), ok ? Status::Pass : Status::Fail, std::move(data)};
}

inline std::vector<Check> run_lattice(const Node& root, const Context& ctx) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "universe", "operator",
             "enumerate", "expect"});
  const Universe u = universe(root.at("universe"));
  const Operator op = operator_spec(u, root.at("operator"));
  std::optional<Node> expect = root.get("expect");
  if (expect)
    expect->only({"lfp", "lfp_status", "gfp", "gfp_status", "monotone", "fixpoints"});
  std::vector<Check> out;

  {
    MonotoneCheckOptions mo;
    mo.seed = ctx.seed;
    mo.exhaustive_bound = ctx.bound;
    auto rep = check_monotone(op, mo);
    const bool want = expect && expect->has("monotone") ? expect->at("monotone").boolean() : true;
    json d = {{"exhaustive", rep.exhaustive}, {"pairs_checked", rep.pairs_checked}, {"violations", rep.violations.size()}};
    if (rep.seed) d["seed"] = *rep.seed;
    if (!rep.ok())
      d["witness"] = {names_json(u, rep.violations.front().first), names_json(u, rep.violations.front().second)};
    out.push_back(expect_match("monotonicity", rep.ok() == want, d));
  }

  auto fixpoint = [&](const char* name, bool least, const char* want_value, const char* want_status) {
    json d;
    bool ok = true;
    try {
      auto r = least ? lfp(op, ctx.fuel) : gfp(op, ctx.fuel);
      d = {{"value", names_json(u, r.value)}, {"status", to_string(r.status)}, {"steps", r.steps}};
      json trace = json::array();
      for (const auto& x : r.trace) trace.push_back(names_json(u, x));
      if (r.trace.size() <= 64) d["trace"] = trace;
      const std::string status = expect && expect->has(want_status) ? expect->at(want_status).str() : "converged";
      ok = status == to_string(r.status);
      if (expect && expect->has(want_value)) ok = ok && item_set(u, expect->at(want_value)) == r.value;
    } catch (const MonotonicityError& e) {
      d = {{"error", e.what()}};
      ok = false;
    }
    out.push_back(expect_match(name, ok, d));
  };
  fixpoint("lfp", true, "lfp", "lfp_status");
  fixpoint("gfp", false, "gfp", "gfp_status");

  const bool enumerate = (root.has("enumerate") && root.at("enumerate").boolean()) || (expect && expect->has("fixpoints"));
  if (enumerate) {
    try {
      auto fps = enumerate_fixpoints(op, ctx.bound);
      json list = json::array();
      for (std::size_t i = 0; i < fps.size() && i < 64; ++i) list.push_back(names_json(u, fps[i]));
      bool ok = !(expect && expect->has("fixpoints")) || expect->at("fixpoints").count() == fps.size();
      out.push_back(expect_match("fixpoints", ok, {{"count", fps.size()}, {"listed", list}}));
    } catch (const CapacityError& e) {
      out.push_back({"fixpoints", Status::Capacity, {{"error", e.what()}}});
    }
  }
  return out;
}

inline truth::Grounding grounding_from(const Node& n) {
  const auto s = n.str();
  if (s == "grounded_true") return truth::Grounding::GroundedTrue;
  if (s == "grounded_false") return truth::Grounding::GroundedFalse;
  if (s == "ungrounded") return truth::Grounding::Ungrounded;
  n.fail("expected grounded_true, grounded_false or ungrounded");
}

inline std::vector<Check> run_truth(const Node& root, const Context& ctx) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "sentences", "ground", "reading",
             "expect"});
  std::map<std::string, truth::Sentence> defs;
  for (const auto& [name, text] : root.at("sentences").members())
    defs.emplace(name, located(text, [&] { return truth::parse_sentence(text.str()); }));
  std::map<std::string, bool> ground;
  if (auto g = root.get("ground"))
    for (const auto& [name, v] : g->members()) ground[name] = v.boolean();
  const auto sys = located(root, [&] { return truth::SentenceSystem(defs, ground); });
  auto reading = truth::TransReading::StrongKleene;
  if (auto r = root.get("reading")) {
    const auto s = r->str();
    if (s == "exclusion")
      reading = truth::TransReading::Exclusion;
    else if (s != "strong-kleene")
      r->fail("reading is 'strong-kleene' or 'exclusion'");
  }
  std::optional<Node> expect = root.get("expect");
  if (expect) expect->only({"classify", "classical_search", "lp_gluts", "lp_witness"});
  std::vector<Check> out;

  const auto k = truth::kripke_lfp(sys, ctx.fuel, reading);
  json val = json::object();
  for (const auto& [n, v] : k.valuation) val[n] = truth::to_string(v);
  out.push_back({"kripke_lfp", Status::Pass, {{"valuation", val}, {"stages", k.stages.size()}}});

  {
    json cls = json::object();
    bool ok = true;
    std::map<std::string, truth::Grounding> got;
    for (const auto& [n, v] : k.valuation)
      got[n] = v == truth::ThreeVal::True    ? truth::Grounding::GroundedTrue
               : v == truth::ThreeVal::False ? truth::Grounding::GroundedFalse
                                             : truth::Grounding::Ungrounded;
    for (const auto& [n, g] : got) cls[n] = truth::to_string(g);
    if (expect && expect->has("classify"))
      for (const auto& [n, want] : expect->at("classify").members()) {
        auto it = got.find(n);
        if (it == got.end()) want.fail("unknown sentence name");
        ok = ok && it->second == grounding_from(want);
      }
    out.push_back(expect_match("classify", ok, {{"classes", cls}}));
  }

  try {
    auto w = truth::total_classical_search(sys);
    json d = {{"result", w ? json(*w) : json(nullptr)}};
    bool ok = true;
    if (expect && expect->has("classical_search")) {
      const auto want = expect->at("classical_search").str();
      if (want != "none" && want != "found") expect->at("classical_search").fail("expected 'none' or 'found'");
      ok = (want == "found") == w.has_value();
    }
    out.push_back(expect_match("classical_search", ok, d));
  } catch (const CapacityError& e) {
    out.push_back({"classical_search", Status::Capacity, {{"error", e.what()}}});
  }

  if (sys.defined_names().size() <= truth::kLpBound || (expect && (expect->has("lp_gluts") || expect->has("lp_witness")))) {
    try {
      auto m = truth::lp_model(sys);
      json values = json::object();
      for (const auto& [n, v] : m.values) values[n] = truth::to_string(v);
      json d = {{"values", values},
                {"designated_true", m.valuation.designated_true},
                {"designated_false", m.valuation.designated_false},
                {"gluts", m.valuation.gluts()}};
      if (m.witness) d["witness"] = {{"name", m.witness->name}, {"negated", m.witness->negated}};
      bool ok = true;
      if (expect && expect->has("lp_gluts")) {
        auto want = expect->at("lp_gluts").strings();
        ok = ok && std::set<std::string>(want.begin(), want.end()) == m.valuation.gluts();
      }
      if (expect && expect->has("lp_witness"))
        ok = ok && m.witness && !m.witness->negated && m.witness->name == expect->at("lp_witness").str();
      out.push_back(expect_match("lp_model", ok, d));
    } catch (const CapacityError& e) {
      out.push_back({"lp_model", Status::Capacity, {{"error", e.what()}}});
    }
  }
  return out;
}

inline mucalc::KripkeFrame kripke_frame(const Node& n) {
  n.only({"states", "edges", "labels"});
  auto states = n.at("states").strings();
  std::vector<std::pair<std::string, std::string>> edges;
  if (auto e = n.get("edges"))
    for (const auto& pair : e->items()) {
      auto ends = pair.strings();
      if (ends.size() != 2) pair.fail("edge is [from, to]");
      edges.emplace_back(ends[0], ends[1]);
    }
  std::map<std::string, std::vector<std::string>> labels;
  if (auto l = n.get("labels"))
    for (const auto& [p, where] : l->members()) labels[p] = where.strings();
  return located(n, [&] { return mucalc::KripkeFrame(states, edges, labels); });
}

inline std::vector<Check> run_mucalc(const Node& root, const Context&) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "frame", "formulas", "safety",
             "commutation"});
  const auto frame = kripke_frame(root.at("frame"));
  std::vector<Check> out;
  if (auto fs = root.get("formulas")) {
    for (const auto& fn : fs->items()) {
      fn.only({"formula", "expect"});
      const auto text = fn.at("formula").str();
      const auto f = located(fn.at("formula"), [&] { return mucalc::parse_mu(text); });
      const auto got = mucalc::mc_eval(f, frame);
      json d = {{"states", state_names(frame, got)}};
      bool ok = true;
      if (frame.size() <= mucalc::kNaiveBound) {
        const bool agree = mucalc::naive_eval(f, frame) == got;
        d["oracle_agrees"] = agree;
        ok = agree;
      }
      if (auto e = fn.get("expect")) {
        auto want = located(*e, [&] {
          mucalc::StateSet w(frame.size());
          for (const auto& name : e->strings()) w.insert(frame.index_of(name));
          return w;
        });
        ok = ok && want == got;
      }
      out.push_back(expect_match("formula: " + text, ok, d));
    }
  }
  if (auto s = root.get("safety")) {
    s->only({"invariant", "event", "expect"});
    auto rep = located(*s, [&] { return mucalc::safety_preservation_check(frame, s->at("invariant").str(), s->at("event").str()); });
    json d = {{"hypothesis", rep.hypothesis_holds},
              {"conclusion", rep.conclusion_holds},
              {"invariant_conclusion", rep.invariant_conclusion_holds},
              {"witness_paths", rep.witness_paths},
              {"counterexample_paths", rep.counterexample_paths},
              {"hypothesis_counterexamples", rep.hypothesis_counterexamples}};
    bool ok = rep.consistent();
    if (auto e = s->get("expect")) {
      e->only({"hypothesis", "conclusion"});
      if (e->has("hypothesis")) ok = ok && e->at("hypothesis").boolean() == rep.hypothesis_holds;
      if (e->has("conclusion")) ok = ok && e->at("conclusion").boolean() == rep.conclusion_holds;
    }
    out.push_back(expect_match("safety", ok, d));
  }
  if (auto c = root.get("commutation")) {
    c->only({"body", "expect_equal"});
    auto rep = located(c->at("body"), [&] { return mucalc::commutation_experiment(c->at("body").str(), frame); });
    bool ok = !c->has("expect_equal") || c->at("expect_equal").boolean() == rep.equal();
    out.push_back(expect_match("commutation", ok,
                               {{"nu_mu", state_names(frame, rep.nu_mu)},
                                {"mu_nu", state_names(frame, rep.mu_nu)},
                                {"equal", rep.equal()}}));
  }
  if (out.empty()) root.fail("mucalc scenario declares no formulas, safety or commutation checks");
  return out;
}

inline std::vector<Check> run_gl(const Node& root, const Context& ctx) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "frames", "formulas",
             "enumerate", "replay"});
  std::vector<Check> out;
  std::vector<std::pair<gl::ModalFrame, json>> frames;
  if (auto fs = root.get("frames")) {
    for (const auto& fn : fs->items()) {
      fn.only({"states", "relation", "raw"});
      const bool raw = fn.has("raw") && fn.at("raw").boolean();
      if (raw && !ctx.opts.raw_relation) fn.fail("raw frames need the --raw-relation flag");
      const auto n = static_cast<std::size_t>(fn.at("states").count());
      std::vector<gl::Pair> rel;
      if (auto r = fn.get("relation"))
        for (const auto& p : r->items()) {
          auto e = p.items();
          if (e.size() != 2) p.fail("relation pair is [from, to]");
          rel.emplace_back(e[0].count(), e[1].count());
        }
      auto frame = located(fn, [&]() -> gl::ModalFrame {
        try {
          return raw ? gl::ModalFrame::raw(n, rel) : gl::ModalFrame::gl(n, rel);
        } catch (const CapacityError& e) {
          throw DomainError(e.what());
        }
      });
      frames.emplace_back(frame, json{{"states", n}, {"relation", rel}, {"raw", raw}});
    }
  }
  std::vector<std::pair<std::string, gl::ModalFormula>> formulas;
  std::vector<std::optional<bool>> expected;
  if (auto fs = root.get("formulas")) {
    for (const auto& fn : fs->items()) {
      fn.only({"formula", "expect_valid"});
      const auto text = fn.at("formula").str();
      formulas.emplace_back(text, located(fn.at("formula"), [&] { return gl::parse_modal(text); }));
      expected.push_back(fn.has("expect_valid") ? std::optional<bool>(fn.at("expect_valid").boolean()) : std::nullopt);
    }
  }
  for (std::size_t i = 0; i < formulas.size() && !frames.empty(); ++i) {
    const auto& [text, phi] = formulas[i];
    json per = json::array();
    bool valid_everywhere = true;
    try {
      for (const auto& [frame, desc] : frames) {
        auto cm = gl::find_countermodel(phi, frame);
        json d = desc;
        d["valid"] = !cm.has_value();
        if (cm) {
          d["countermodel_state"] = cm->state;
          d["failure_explained"] = gl::lob_failure_explained(frame);
        }
        valid_everywhere = valid_everywhere && !cm;
        per.push_back(d);
      }
      const bool want = expected[i].value_or(true);
      out.push_back(expect_match("valid: " + text, want == valid_everywhere, {{"frames", per}}));
    } catch (const CapacityError& e) {
      out.push_back({"valid: " + text, Status::Capacity, {{"error", e.what()}}});
    }
  }
  if (auto en = root.get("enumerate")) {
    en->only({"max_states"});
    const auto max_n = static_cast<std::size_t>(en->at("max_states").count());
    try {
      std::vector<gl::ModalFrame> all;
      json counts = json::array();
      for (std::size_t n = 1; n <= max_n; ++n) {
        auto fs = gl::enumerate_gl_frames(n);
        counts.push_back(fs.size());
        all.insert(all.end(), fs.begin(), fs.end());
      }
      out.push_back({"gl_frames", Status::Pass, {{"counts", counts}}});
      for (std::size_t i = 0; i < formulas.size(); ++i) {
        const auto& [text, phi] = formulas[i];
        std::size_t failures = 0;
        for (const auto& f : all) failures += !gl::valid_in_frame(phi, f);
        const bool want = expected[i].value_or(true);
        out.push_back(expect_match("exhaustive: " + text, want == (failures == 0),
                                   {{"frames", all.size()}, {"refuting_frames", failures}}));
      }
    } catch (const CapacityError& e) {
      out.push_back({"gl_frames", Status::Capacity, {{"error", e.what()}}});
    }
  }
  if (auto rp = root.get("replay")) {
    const auto phi = located(*rp, [&] { return gl::parse_modal(rp->str()); });
    auto t = gl::lob_hazard_replay(phi);
    json steps = json::array();
    for (const auto& s : t.steps)
      steps.push_back({{"formula", gl::to_string(s.formula)}, {"rule", gl::to_string(s.rule)}, {"refs", s.refs}});
    out.push_back({"lob_replay", Status::Pass, {{"steps", steps}, {"conclusion", gl::to_string(t.conclusion())}}});
  }
  if (out.empty()) root.fail("gl scenario declares no checks");
  return out;
}

inline gaming::AuditPredicate audit_spec(const Node& n) {
  using namespace gaming::audits;
  n.require_object();
  const auto type = n.at("type").str();
  gaming::AuditPredicate m;
  if (type == "some_output_le") {
    n.only({"type", "k", "budget"});
    m = some_output_le(n.at("k").integer());
  } else if (type == "all_outputs_le") {
    n.only({"type", "k", "budget"});
    m = all_outputs_le(n.at("k").integer());
  } else if (type == "outputs_equal") {
    n.only({"type", "values", "budget"});
    std::vector<std::int64_t> vs;
    for (const auto& v : n.at("values").items()) vs.push_back(v.integer());
    m = outputs_equal(vs);
  } else if (type == "nonempty_output") {
    n.only({"type", "budget"});
    m = nonempty_output();
  } else if (type == "constant") {
    n.only({"type", "verdict", "budget"});
    m = constant(n.at("verdict").boolean());
  } else if (type == "harm_clear") {
    n.only({"type", "budget"});
    m = harm_clear();
  } else if (type == "harm_aware") {
    n.only({"type", "base", "budget"});
    m = harm_aware(audit_spec(n.at("base")));
  } else {
    n.at("type").fail("unknown audit type '" + type + "'");
  }
  if (auto b = n.get("budget")) {
    m.budget = static_cast<std::size_t>(b->count());
    if (m.budget == 0) b->fail("budget must be at least 1");
  }
  return m;
}

inline gaming::ActionSpec action_spec(const Node& n) {
  n.only({"harm", "outputs"});
  gaming::ActionSpec a;
  a.harm = n.has("harm") && n.at("harm").boolean();
  if (auto o = n.get("outputs"))
    for (const auto& v : o->items()) a.outputs.push_back(v.integer());
  return a;
}

inline std::vector<Check> run_gaming(const Node& root, const Context&) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "cases"});
  std::vector<Check> out;
  for (const auto& c : root.at("cases").items()) {
    c.only({"audit", "bad", "good", "expect"});
    const auto m = audit_spec(c.at("audit"));
    const auto bad = action_spec(c.at("bad"));
    const auto good = action_spec(c.at("good"));
    auto rep = located(c, [&] { return gaming::verify_gaming(m, bad, good); });
    json d = {{"audit_pass", rep.audit_pass},
              {"harm", rep.harm},
              {"self_verdict", rep.self_verdict},
              {"self_verdict_stable", rep.self_verdict_stable},
              {"bad_passes", rep.bad_passes},
              {"good_passes", rep.good_passes},
              {"outcome", gaming::to_string(rep.outcome)},
              {"explanation", rep.explanation},
              {"outputs", rep.trace.outputs},
              {"steps", rep.trace.steps}};
    bool ok;
    if (auto e = c.get("expect")) {
      ok = e->str() == gaming::to_string(rep.outcome);
    } else {
      // Without an expectation, check the theorem: an outputs-only audit
      // passing both behaviours must be gamed.
      const bool hypotheses = m.observability == gaming::Observability::OutputsOnly && rep.bad_passes && rep.good_passes;
      ok = !hypotheses || rep.certificate();
    }
    out.push_back(expect_match("gaming: " + m.name, ok, d));
  }
  return out;
}

inline json state_json(const Universe& u, const ItemSet& s) { return names_json(u, s); }

inline std::vector<Check> run_optimize(const Node& root, const Context& ctx) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "universe", "policy", "risk",
             "accountability", "threshold", "gain", "least_risk", "greedy", "kkt", "convergence", "garble",
             "process_outcome", "stratify", "mixture", "lawvere", "breach", "equilibria"});
  const Universe u = universe(root.at("universe"));
  const Operator policy = operator_spec(u, root.at("policy"));
  const RiskModel model = root.has("risk") ? risk_model(u, root.at("risk")) : RiskModel::uniform(u);
  std::optional<AccountabilityModel> acc;
  if (auto a = root.get("accountability")) {
    a->only({"gains", "cap"});
    std::optional<double> cap;
    if (a->has("cap")) cap = a->at("cap").number();
    acc = located(*a, [&] { return AccountabilityModel(u, score_map(a->at("gains")), cap); });
  }
  const double a0 = root.has("threshold") ? root.at("threshold").number() : 0.0;
  if (a0 < 0) root.at("threshold").fail("threshold must be nonnegative");
  GainModel gain = GainModel::none(u);
  if (auto g = root.get("gain")) {
    g->only({"utilities", "lambda"});
    gain = located(*g, [&] { return GainModel(u, score_map(g->at("utilities")), g->at("lambda").number()); });
  }
  auto need_acc = [&](const Node& at) -> const AccountabilityModel& {
    if (!acc) at.fail("this check needs an 'accountability' model");
    return *acc;
  };
  std::vector<Check> out;

  if (auto lr = root.get("least_risk"); lr && lr->boolean()) {
    try {
      auto rep = least_risk_fixedpoint_check(policy, model, ctx.fuel, acc ? &*acc : nullptr, a0);
      json fps = json::array();
      for (std::size_t i = 0; i < rep.fixpoints.size() && i < 64; ++i)
        fps.push_back({{"state", state_json(u, rep.fixpoints[i].state)}, {"risk", rep.fixpoints[i].risk}});
      json d = {{"lfp", state_json(u, rep.lfp)},          {"lfp_risk", rep.lfp_risk},
                {"fixpoint_count", rep.fixpoints.size()}, {"fixpoints", fps},
                {"subset_least", rep.subset_least},       {"risk_minimal", rep.risk_minimal}};
      if (rep.optimal_among_feasible) d["optimal_among_feasible"] = *rep.optimal_among_feasible;
      out.push_back(expect_match("least_risk_fixedpoint", rep.holds(), d));
    } catch (const CapacityError& e) {
      out.push_back({"least_risk_fixedpoint", Status::Capacity, {{"error", e.what()}}});
    } catch (const FuelExhaustedError& e) {
      out.push_back({"least_risk_fixedpoint", Status::Fail, {{"error", e.what()}}});
    }
  }

  if (auto gn = root.get("greedy")) {
    const auto& A = need_acc(*gn);
    std::optional<ItemSet> want;
    if (gn->raw().is_object()) {
      gn->only({"expect"});
      if (gn->has("expect")) want = item_set(u, gn->at("expect"));
    } else if (!gn->boolean()) {
      gn->fail("greedy is true or an object");
    }
    auto g = greedy_min_transparency(policy, A, a0, model, ctx.fuel);
    json steps = json::array();
    for (const auto& s : g.trace) {
      json st = {{"state", state_json(u, s.state)}, {"accountability", s.accountability}};
      if (s.added) st["added"] = u.name(*s.added);
      steps.push_back(st);
    }
    json d = {{"state", state_json(u, g.state)},
              {"status", to_string(g.status)},
              {"accountability", g.accountability},
              {"threshold", a0},
              {"risk", g.risk},
              {"iterations", g.iterations},
              {"trace", steps}};
    Status st = Status::Pass;
    if (g.status == GreedyStatus::Infeasible)
      st = Status::Infeasible;
    else if (g.status == GreedyStatus::FuelExhausted || (want && *want != g.state))
      st = Status::Fail;
    out.push_back({"greedy", st, d});
    if (g.status == GreedyStatus::Feasible) {
      auto dual = kkt_report(g.state, A, a0, model, gain, &policy);
      out.push_back(expect_match("kkt", dual.passes(),
                                 {{"eta", dual.eta},
                                  {"slack", dual.slack},
                                  {"slackness_product", dual.slackness_product},
                                  {"binding", dual.binding},
                                  {"stationary", dual.stationary}}));
    }
  }

  if (auto kn = root.get("kkt")) {
    kn->only({"state"});
    const auto x = item_set(u, kn->at("state"));
    auto dual = kkt_report(x, need_acc(*kn), a0, model, gain, &policy);
    out.push_back(expect_match("kkt_supplied",
                               dual.passes(),
                               {{"eta", dual.eta},
                                {"slack", dual.slack},
                                {"slackness_product", dual.slackness_product},
                                {"binding", dual.binding},
                                {"feasible", dual.feasible},
                                {"stationary", dual.stationary}}));
  }

  if (auto cn = root.get("convergence")) {
    cn->only({"epsilon", "expect_n"});
    const double eps = cn->at("epsilon").number();
    if (eps < 0) cn->at("epsilon").fail("epsilon must be nonnegative");
    try {
      auto rep = iterative_risk_convergence(policy, model, eps, ctx.fuel);
      bool ok = rep.non_decreasing;
      if (auto e = cn->get("expect_n")) ok = ok && e->count() == rep.n;
      out.push_back(expect_match("risk_convergence", ok,
                                 {{"n", rep.n}, {"risks", rep.risks}, {"non_decreasing", rep.non_decreasing}}));
    } catch (const FuelExhaustedError& e) {
      out.push_back({"risk_convergence", Status::Fail, {{"error", e.what()}}});
    }
  }

  auto garble_check = [&](const char* name, const GarbleReport& rep) {
    json d = {{"hypothesis", rep.hypothesis_holds}, {"lfp1", state_json(u, rep.lfp1)}, {"lfp2", state_json(u, rep.lfp2)},
              {"risk1", rep.risk1},                 {"risk2", rep.risk2},              {"label", rep.label}};
    if (rep.witness) d["witness"] = state_json(u, *rep.witness);
    if (acc) {
      d["feasible1"] = rep.feasible1;
      d["feasible2"] = rep.feasible2;
    }
    out.push_back(expect_match(name, rep.holds(), d));
  };
  if (auto gn = root.get("garble")) {
    gn->only({"coarser"});
    const auto t2 = operator_spec(u, gn->at("coarser"));
    try {
      garble_check("garbling", garble_compare(policy, t2, model, acc ? &*acc : nullptr, a0, ctx.fuel));
    } catch (const CapacityError& e) {
      out.push_back({"garbling", Status::Capacity, {{"error", e.what()}}});
    }
  }
  if (auto pn = root.get("process_outcome")) {
    pn->only({"outcome"});
    const auto t_out = operator_spec(u, pn->at("outcome"));
    try {
      garble_check("process_vs_outcome", process_outcome_compare(policy, t_out, model, ctx.fuel));
    } catch (const CapacityError& e) {
      out.push_back({"process_vs_outcome", Status::Capacity, {{"error", e.what()}}});
    }
  }

  if (auto sn = root.get("stratify")) {
    sn->only({"first", "second", "expect_gap"});
    const auto i1 = item_set(u, sn->at("first"));
    const auto i2 = item_set(u, sn->at("second"));
    auto rep = located(*sn, [&] { return stratify_compare(i1, i2, model); });
    bool ok = true;
    if (auto e = sn->get("expect_gap")) ok = std::abs(e->number() - rep.gap) <= kTolerance;
    out.push_back(expect_match("stratify", ok,
                               {{"risk_first", rep.risk_first},
                                {"risk_second", rep.risk_second},
                                {"risk_combined", rep.risk_combined},
                                {"marginal_second", rep.marginal_second},
                                {"gap", rep.gap},
                                {"superadditive", rep.superadditive}}));
  }

  if (auto mn = root.get("mixture")) {
    mn->only({"levels", "p", "expect_gap"});
    std::vector<std::pair<double, double>> levels;
    for (const auto& l : mn->at("levels").items()) {
      auto parts = l.items();
      if (parts.size() != 2) l.fail("level is [precision, G]");
      levels.emplace_back(parts[0].number(), parts[1].number());
    }
    auto rep = located(*mn, [&] { return mixture_gaming_eval(levels, mn->at("p").number()); });
    bool ok = !rep.scores_convex || rep.jensen_gap >= -kTolerance;
    if (auto e = mn->get("expect_gap")) ok = ok && std::abs(e->number() - rep.jensen_gap) <= kTolerance;
    out.push_back(expect_match("mixture", ok,
                               {{"expected_g", rep.expected_g},
                                {"mixed_level", rep.mixed_level},
                                {"g_at_mixed_level", rep.g_at_mixed_level},
                                {"jensen_gap", rep.jensen_gap},
                                {"scores_convex", rep.scores_convex}}));
  }

  if (auto ln = root.get("lawvere")) {
    ln->only({"n", "e"});
    const auto n = static_cast<std::size_t>(ln->at("n").count());
    std::vector<SelfMap> e;
    for (const auto& m : ln->at("e").items()) {
      SelfMap f;
      for (const auto& v : m.items()) f.push_back(static_cast<std::size_t>(v.count()));
      e.push_back(std::move(f));
    }
    try {
      auto rep = located(*ln, [&] { return lawvere_check(n, e); });
      json d = {{"surjective", rep.surjective},
                {"image_size", rep.image_size},
                {"self_maps", rep.self_maps},
                {"every_endomap_has_fixed_point", rep.every_endomap_has_fixed_point}};
      if (rep.diagonal) d["diagonal"] = *rep.diagonal;
      if (rep.fixed_point_free) d["fixed_point_free"] = *rep.fixed_point_free;
      d["diagonal_outside_image"] = rep.diagonal_outside_image;
      const bool ok = rep.surjective ? rep.every_endomap_has_fixed_point : rep.diagonal_outside_image;
      out.push_back(expect_match("lawvere", ok, d));
    } catch (const CapacityError& ex) {
      out.push_back({"lawvere", Status::Capacity, {{"error", ex.what()}}});
    }
  }

  if (auto bn = root.get("breach")) {
    bn->only({"coverage", "expect"});
    const double b = located(*bn, [&] { return breach_bound(bn->at("coverage").number()); });
    bool ok = !bn->has("expect") || std::abs(bn->at("expect").number() - b) <= kTolerance;
    out.push_back(expect_match("breach_bound", ok, {{"bound", b}}));
  }

  if (auto en = root.get("equilibria")) {
    en->only({"responses", "expect"});
    try {
      BestResponseTable table;
      const auto rn = en->at("responses");
      if (rn.raw().is_string()) {
        if (rn.str() != "identity") rn.fail("responses is \"identity\" or a table");
        table = BestResponseTable::identity(u);
      } else {
        std::map<ItemSet, std::set<ItemSet>> t;
        for (const auto& row : rn.items()) {
          row.only({"state", "responses"});
          std::set<ItemSet> rs;
          for (const auto& r : row.at("responses").items()) rs.insert(item_set(u, r));
          t[item_set(u, row.at("state"))] = rs;
        }
        table = located(rn, [&] { return BestResponseTable(t); });
      }
      auto eq = located(*en, [&] { return equilibrium_enumerate(policy, table); });
      json list = json::array();
      for (const auto& x : eq) list.push_back(state_json(u, x));
      bool ok = true;
      if (auto e = en->get("expect")) {
        std::set<ItemSet> want;
        for (const auto& s : e->items()) want.insert(item_set(u, s));
        ok = want == std::set<ItemSet>(eq.begin(), eq.end());
      }
      out.push_back(expect_match("equilibria", ok, {{"equilibria", list}}));
    } catch (const CapacityError& ex) {
      out.push_back({"equilibria", Status::Capacity, {{"error", ex.what()}}});
    }
  }

  if (out.empty()) root.fail("optimize scenario requests no checks");
  return out;
}

inline std::vector<Check> run_suite_kind(const Node& root, const Context& ctx) {
  root.only({"schema_version", "id", "kind", "description", "seed", "fuel", "bound", "properties"});
  std::vector<Check> out;
  for (const auto& p : root.at("properties").items()) {
    const auto name = p.str();
    properties::PropertyResult r;
    if (name == "liar-impossibility")
      r = properties::liar_impossibility(ctx.seed);
    else if (name == "kripke-soundness")
      r = properties::kripke_soundness(ctx.seed);
    else if (name == "mucalc-oracle")
      r = properties::mucalc_oracle(ctx.seed);
    else if (name == "lob-exhaustion")
      r = properties::lob_exhaustion();
    else if (name == "gaming-certificates")
      r = properties::gaming_certificates();
    else if (name == "lfp-minimality-and-garbling")
      r = properties::lfp_and_garbling(ctx.seed);
    else if (name == "greedy-kkt")
      r = properties::greedy_kkt(ctx.seed);
    else if (name == "risk-convergence")
      r = properties::risk_convergence(ctx.seed);
    else if (name == "lp-non-explosion")
      r = properties::lp_non_explosion();
    else
      p.fail("unknown property battery '" + name + "'");
    json facts = json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    out.push_back(expect_match("property: " + name, r.passed(),
                               {{"cases", r.cases}, {"failures", r.failures}, {"notes", r.notes}, {"facts", facts}}));
  }
  return out;
}

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Parses scenario text. `source` names the input in diagnostics.
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
}

inline const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"lattice", "truth", "mucalc", "gl", "gaming", "optimize", "suite"};
  return k;
}

/// Runs one parsed scenario. Throws InputError on invalid content.
inline Report run_document(const json& doc, const std::string& default_id, const Options& opts) {
  const auto start = std::chrono::steady_clock::now();
  Node root(doc, "");
  root.require_object();
  if (auto v = root.get("schema_version"); v && v->count() != kSchemaVersion)
    v->fail("unsupported schema version");
  Report rep;
  rep.kind = root.at("kind").str();
  rep.id = root.has("id") ? root.at("id").str() : default_id;
  if (root.has("description")) root.at("description").str();
  Context ctx;
  ctx.opts = opts;
  ctx.seed = opts.seed ? *opts.seed : root.has("seed") ? root.at("seed").count() : properties::kDefaultSeed;
  ctx.fuel = opts.fuel ? *opts.fuel : root.has("fuel") ? root.at("fuel").count() : kDefaultFuel;
  ctx.bound = opts.bound ? *opts.bound : root.has("bound") ? root.at("bound").count() : kEnumerationBound;
  if (ctx.fuel == 0) throw InputError("/fuel", "fuel must be at least 1");
  ctx.bound = std::min(ctx.bound, kEnumerationBound);
  rep.seed = ctx.seed;

  if (rep.kind == "lattice")
    rep.checks = detail::run_lattice(root, ctx);
  else if (rep.kind == "truth")
    rep.checks = detail::run_truth(root, ctx);
  else if (rep.kind == "mucalc")
    rep.checks = detail::run_mucalc(root, ctx);
  else if (rep.kind == "gl")
    rep.checks = detail::run_gl(root, ctx);
  else if (rep.kind == "gaming")
    rep.checks = detail::run_gaming(root, ctx);
  else if (rep.kind == "optimize")
    rep.checks = detail::run_optimize(root, ctx);
  else if (rep.kind == "suite")
    rep.checks = detail::run_suite_kind(root, ctx);
  else
    root.at("kind").fail("unknown scenario kind '" + rep.kind + "'");

  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Report run_scenario(const std::filesystem::path& path, const Options& opts = {}) {
  const auto doc = parse_text(read_file(path), path.string());
  try {
    return run_document(doc, path.stem().string(), opts);
  } catch (const InputError& e) {
    throw InputError(path.string() + ":" + e.where(), e.what() + e.where().size() + 2);
  }
}

struct SuiteReport {
  std::string directory;
  std::vector<Report> reports;
  /// (file, message) for scenarios rejected as input errors.
  std::vector<std::pair<std::string, std::string>> input_errors;
  double timing_ms = 0.0;

  bool all_pass() const {
    return input_errors.empty() &&
           std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.all_pass(); });
  }
  int exit_code() const { return !input_errors.empty() ? 2 : all_pass() ? 0 : 1; }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        if (c.status != Status::Pass) out.push_back(r.id + ": " + c.name + " (" + to_string(c.status) + ")");
    return out;
  }

  json to_json() const {
    json rs = json::array();
    for (const auto& r : reports) rs.push_back(r.to_json());
    json errs = json::array();
    for (const auto& [f, m] : input_errors) errs.push_back({{"file", f}, {"error", m}});
    return {{"schema_version", kSchemaVersion},
            {"suite", directory},
            {"status", all_pass() ? "pass" : "fail"},
            {"scenarios", rs},
            {"failures", failures()},
            {"input_errors", errs},
            {"timing_ms", timing_ms}};
  }
};

/// Runs every *.json file of a directory in filename order.
inline SuiteReport run_suite(const std::filesystem::path& dir, const Options& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (!std::filesystem::is_directory(dir)) throw InputError(dir.string(), "not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  if (files.empty()) throw InputError(dir.string(), "no scenario files");
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  SuiteReport s;
  s.directory = dir.filename().string();
  for (const auto& f : files) {
    try {
      s.reports.push_back(run_scenario(f, opts));
    } catch (const InputError& e) {
      s.input_errors.emplace_back(f.filename().string(), e.what());
    }
  }
  s.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

/// Human-readable rendering of a report.
inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.id << " (" << r.kind << ", seed " << r.seed << "): " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks) os << "  " << to_string(c.status) << "  " << c.name << "\n";
  return os.str();
}

inline std::string render_text(const SuiteReport& s) {
  std::ostringstream os;
  for (const auto& r : s.reports) os << render_text(r);
  for (const auto& [f, m] : s.input_errors) os << f << ": input error: " << m << "\n";
  os << "suite " << s.directory << ": " << (s.all_pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace fixtrans::scenario
