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

// Design calculus over disclosure states: additive risk with pairwise
// interactions, an accountability-constrained greedy search, and finite
// checks of the extremality, garbling and duality statements.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fixtrans/error.hpp"
#include "fixtrans/item_set.hpp"
#include "fixtrans/lattice.hpp"

namespace fixtrans {

inline constexpr double kTolerance = 1e-9;
inline constexpr std::size_t kDefaultFuel = 1000;

namespace detail {

inline void require_nonnegative(double v, const std::string& what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(what + " must be a finite nonnegative number");
}

inline std::vector<double> scores_from(const Universe& u, const std::map<std::string, double>& named,
                                       const std::string& what) {
  std::vector<double> out(u.size(), 0.0);
  for (const auto& [name, v] : named) {
    require_nonnegative(v, what + " of '" + name + "'");
    out[u.index_of(name)] = v;
  }
  return out;
}

inline void require_oracle_size(const Universe& u, const char* op) {
  if (u.size() > kOracleBound)
    throw CapacityError(std::string(op) + " scans every state and is limited to " + std::to_string(kOracleBound) +
                        " items");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Models

/// Risk(x) = α·ΣΠ + β·ΣΛ + γ·ΣΦ + δ·(ΣG + Σ interactions inside x).
/// All inputs are nonnegative, so Risk is monotone in x.
class RiskModel {
 public:
  struct Weights {
    double alpha = 1.0, beta = 1.0, gamma = 1.0, delta = 1.0;
  };
  struct Scores {
    std::map<std::string, double> privacy, leakage, fragility, gaming;
  };
  using NamedPair = std::pair<std::string, std::string>;

  RiskModel() = default;
  RiskModel(Universe u, Weights w, const Scores& s, const std::map<NamedPair, double>& interactions = {})
      : universe_(std::move(u)), weights_(w) {
    for (double v : {w.alpha, w.beta, w.gamma, w.delta}) detail::require_nonnegative(v, "risk weight");
    const auto pi = detail::scores_from(universe_, s.privacy, "privacy score");
    const auto la = detail::scores_from(universe_, s.leakage, "leakage score");
    const auto ph = detail::scores_from(universe_, s.fragility, "fragility score");
    gaming_ = detail::scores_from(universe_, s.gaming, "gaming score");
    per_item_.resize(universe_.size());
    for (std::size_t i = 0; i < universe_.size(); ++i)
      per_item_[i] = w.alpha * pi[i] + w.beta * la[i] + w.gamma * ph[i] + w.delta * gaming_[i];
    for (const auto& [pair, v] : interactions) {
      detail::require_nonnegative(v, "interaction weight");
      auto a = universe_.index_of(pair.first), b = universe_.index_of(pair.second);
      if (a == b) throw DomainError("interaction pair needs two distinct items");
      interactions_[{std::min(a, b), std::max(a, b)}] += v;
    }
  }

  /// Every item carries the same score `each` in every component.
  static RiskModel uniform(Universe u, double each = 1.0) {
    Scores s;
    for (const auto& n : u.items()) s.privacy[n] = each;
    return RiskModel(std::move(u), {1.0, 0.0, 0.0, 0.0}, s);
  }

  const Universe& universe() const noexcept { return universe_; }
  const Weights& weights() const noexcept { return weights_; }
  const std::map<std::pair<std::size_t, std::size_t>, double>& interactions() const noexcept { return interactions_; }

  /// Weighted contribution of item i on its own.
  double item_risk(std::size_t i) const { return per_item_.at(i); }

  double operator()(const ItemSet& x) const {
    universe_.check(x);
    double r = 0.0;
    for (auto i : x.indices()) r += per_item_[i];
    for (const auto& [pair, v] : interactions_)
      if (x.contains(pair.first) && x.contains(pair.second)) r += weights_.delta * v;
    return r;
  }

 private:
  Universe universe_;
  Weights weights_;
  std::vector<double> per_item_;
  std::vector<double> gaming_;
  std::map<std::pair<std::size_t, std::size_t>, double> interactions_;
};

inline double risk(const ItemSet& x, const RiskModel& model) { return model(x); }

/// A(x) = min(cap, Σ gains).
class AccountabilityModel {
 public:
  AccountabilityModel() = default;
  AccountabilityModel(const Universe& u, const std::map<std::string, double>& gains,
                      std::optional<double> cap = std::nullopt)
      : gains_(detail::scores_from(u, gains, "accountability gain")), cap_(cap) {
    if (cap_) detail::require_nonnegative(*cap_, "accountability cap");
  }

  std::optional<double> cap() const noexcept { return cap_; }
  double gain(std::size_t i) const { return gains_.at(i); }

  double operator()(const ItemSet& x) const {
    if (x.width() != gains_.size()) throw DomainError("state does not match the accountability model");
    double a = 0.0;
    for (auto i : x.indices()) a += gains_[i];
    return cap_ ? std::min(*cap_, a) : a;
  }

 private:
  std::vector<double> gains_;
  std::optional<double> cap_;
};

/// λ·Σ utilities.
class GainModel {
 public:
  GainModel() = default;
  GainModel(const Universe& u, const std::map<std::string, double>& utilities, double lambda)
      : utilities_(detail::scores_from(u, utilities, "utility")), lambda_(lambda) {
    detail::require_nonnegative(lambda, "gain weight");
  }
  /// No gains at all, for callers that only minimise risk.
  static GainModel none(const Universe& u) { return GainModel(u, {}, 0.0); }

  double lambda() const noexcept { return lambda_; }
  double operator()(const ItemSet& x) const {
    if (x.width() != utilities_.size()) throw DomainError("state does not match the gain model");
    double g = 0.0;
    for (auto i : x.indices()) g += utilities_[i];
    return g;
  }

 private:
  std::vector<double> utilities_;
  double lambda_ = 0.0;
};

/// Risk(x) − λ·Gain(x).
inline double lagrangian_objective(const ItemSet& x, const RiskModel& risk, const GainModel& gain) {
  return risk(x) - gain.lambda() * gain(x);
}

// ---------------------------------------------------------------------------
// Least fixed point minimises risk

struct ScoredState {
  ItemSet state;
  double risk = 0.0;
};

struct LfpMinimalityReport {
  ItemSet lfp;
  double lfp_risk = 0.0;
  std::vector<ScoredState> fixpoints;
  bool subset_least = true;
  bool risk_minimal = true;
  /// Present when an accountability floor was supplied and μT meets it.
  std::optional<bool> optimal_among_feasible;

  bool holds() const { return subset_least && risk_minimal && optimal_among_feasible.value_or(true); }
};

inline LfpMinimalityReport least_risk_fixedpoint_check(const Operator& policy, const RiskModel& model,
                                                       std::size_t fuel = kDefaultFuel,
                                                       const AccountabilityModel* accountability = nullptr,
                                                       double a0 = 0.0) {
  detail::require_oracle_size(policy.universe(), "least_risk_fixedpoint_check");
  auto least = lfp(policy, fuel);
  if (!least.converged()) throw FuelExhaustedError("least fixed point did not converge within the fuel");
  LfpMinimalityReport r;
  r.lfp = least.value;
  r.lfp_risk = model(r.lfp);
  for (auto& f : enumerate_fixpoints(policy, kOracleBound)) {
    double rf = model(f);
    if (!r.lfp.is_subset_of(f)) r.subset_least = false;
    if (r.lfp_risk > rf + kTolerance) r.risk_minimal = false;
    r.fixpoints.push_back({std::move(f), rf});
  }
  if (accountability && (*accountability)(r.lfp) >= a0 - kTolerance) {
    bool best = true;
    for (const auto& f : r.fixpoints)
      if ((*accountability)(f.state) >= a0 - kTolerance && f.risk + kTolerance < r.lfp_risk) best = false;
    r.optimal_among_feasible = best;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Greedy minimal transparency

enum class GreedyStatus { Feasible, Infeasible, FuelExhausted };

inline const char* to_string(GreedyStatus s) {
  switch (s) {
    case GreedyStatus::Feasible: return "feasible";
    case GreedyStatus::Infeasible: return "infeasible";
    case GreedyStatus::FuelExhausted: return "fuel_exhausted";
  }
  return "?";
}

struct GreedyStep {
  ItemSet after_policy;             // X_old ∪ T(X_old)
  std::optional<std::size_t> added;  // item forced in to raise accountability
  ItemSet state;
  double accountability = 0.0;
};

struct GreedyResult {
  ItemSet state;
  std::vector<GreedyStep> trace;
  GreedyStatus status = GreedyStatus::Feasible;
  double accountability = 0.0;
  double risk = 0.0;
  std::size_t iterations = 0;
};

namespace detail {

// Marginal efficiency key. A zero risk increase ranks above any finite ratio
// and is ordered among its peers by accountability gain.
struct Efficiency {
  bool free = false;
  double value = 0.0;
  bool better_than(const Efficiency& o) const {
    if (free != o.free) return free;
    return value > o.value + kTolerance;
  }
  bool ties(const Efficiency& o) const { return free == o.free && std::abs(value - o.value) <= kTolerance; }
};

}  // namespace detail

inline GreedyResult greedy_min_transparency(const Operator& policy, const AccountabilityModel& accountability,
                                            double a0, const RiskModel& model, std::size_t fuel = kDefaultFuel) {
  if (!(a0 >= 0.0)) throw DomainError("accountability threshold must be nonnegative");
  if (fuel == 0) throw DomainError("fuel must be at least 1");
  const auto& u = policy.universe();
  GreedyResult r;
  r.state = u.empty_set();
  if (accountability(u.full_set()) < a0 - kTolerance) {
    r.status = GreedyStatus::Infeasible;
    r.accountability = accountability(r.state);
    return r;
  }
  ItemSet x = u.empty_set();
  for (std::size_t it = 1; it <= fuel; ++it) {
    r.iterations = it;
    const ItemSet old = x;
    GreedyStep step;
    x = old | policy(old);
    step.after_policy = x;
    if (accountability(x) < a0 - kTolerance) {
      const double ax = accountability(x), rx = model(x);
      std::optional<std::size_t> best;
      detail::Efficiency best_key;
      for (std::size_t s = 0; s < u.size(); ++s) {
        if (x.contains(s)) continue;
        ItemSet y = x;
        y.insert(s);
        const double da = accountability(y) - ax, dr = model(y) - rx;
        detail::Efficiency key = dr <= kTolerance ? detail::Efficiency{true, da} : detail::Efficiency{false, da / dr};
        if (!best || key.better_than(best_key) || (key.ties(best_key) && u.name(s) < u.name(*best))) {
          best = s;
          best_key = key;
        }
      }
      if (!best) {
        r.status = GreedyStatus::Infeasible;
        break;
      }
      x.insert(*best);
      step.added = best;
    }
    step.state = x;
    step.accountability = accountability(x);
    r.trace.push_back(std::move(step));
    if (accountability(x) >= a0 - kTolerance && x == old) {
      r.status = GreedyStatus::Feasible;
      r.state = x;
      r.accountability = accountability(x);
      r.risk = model(x);
      return r;
    }
    if (it == fuel) r.status = GreedyStatus::FuelExhausted;
  }
  r.state = x;
  r.accountability = accountability(x);
  r.risk = model(x);
  return r;
}

// ---------------------------------------------------------------------------
// KKT report

struct DualReport {
  double eta = 0.0;
  double accountability = 0.0;
  /// A0 − A(x*); snapped to zero when the constraint binds.
  double slack = 0.0;
  double slackness_product = 0.0;
  bool binding = false;
  bool feasible = true;
  /// No single-item swap lowers the penalised objective at the reported η.
  bool stationary = true;
  std::vector<ItemSet> improving_swaps;

  bool slackness_ok() const { return std::abs(slackness_product) <= kTolerance; }
  bool passes() const { return feasible && slackness_ok(); }
};

/// Swap neighbours are all states one item away from x*. When `policy` is
/// given, only neighbours that are post-fixed under it are considered.
inline DualReport kkt_report(const ItemSet& x_star, const AccountabilityModel& accountability, double a0,
                             const RiskModel& model, const GainModel& gain, const Operator* policy = nullptr) {
  const auto& u = model.universe();
  u.check(x_star);
  DualReport r;
  const double ax = accountability(x_star);
  const double lx = lagrangian_objective(x_star, model, gain);
  r.accountability = ax;
  r.binding = std::abs(ax - a0) <= kTolerance;
  r.feasible = ax >= a0 - kTolerance;
  r.slack = r.binding ? 0.0 : a0 - ax;

  std::vector<ItemSet> neighbours;
  for (std::size_t i = 0; i < u.size(); ++i) {
    ItemSet y = x_star;
    if (y.contains(i))
      y.erase(i);
    else
      y.insert(i);
    if (!policy || is_post_fixed(*policy, y)) neighbours.push_back(std::move(y));
  }

  // Each neighbour y needs L(x) − L(y) ≤ η·(A(x) − A(y)). Neighbours with
  // lower accountability bound η from below, those with higher from above.
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (const auto& y : neighbours) {
    const double dl = lx - lagrangian_objective(y, model, gain);
    const double da = ax - accountability(y);
    if (da > kTolerance)
      lo = std::max(lo, dl / da);
    else if (da < -kTolerance)
      hi = std::min(hi, dl / da);
    else if (dl > kTolerance && accountability(y) >= a0 - kTolerance)
      r.improving_swaps.push_back(y);
  }
  // A slack constraint carries no price, so only swaps that keep A ≥ A0
  // are held against x*.
  r.eta = r.binding ? lo : 0.0;
  for (const auto& y : neighbours) {
    const double ay = accountability(y);
    const double dl = lx - lagrangian_objective(y, model, gain);
    const double da = ax - ay;
    if (!r.binding && ay < a0 - kTolerance) continue;
    if (std::abs(da) > kTolerance && dl > r.eta * da + kTolerance) r.improving_swaps.push_back(y);
  }
  r.stationary = r.improving_swaps.empty() && (!r.binding || lo <= hi + kTolerance);
  r.slackness_product = r.eta * r.slack;
  return r;
}

// ---------------------------------------------------------------------------
// Garbling

struct GarbleReport {
  std::string label = "garbling";
  bool hypothesis_holds = true;
  /// A state where T2(x) ⊄ T1(x).
  std::optional<ItemSet> witness;
  ItemSet lfp1, lfp2;
  double risk1 = 0.0, risk2 = 0.0;
  bool lfp_ordered = true;
  bool risk_ordered = true;
  bool feasible1 = true, feasible2 = true;

  bool holds() const { return hypothesis_holds && lfp_ordered && risk_ordered; }
};

inline GarbleReport garble_compare(const Operator& t1, const Operator& t2, const RiskModel& model,
                                   const AccountabilityModel* accountability = nullptr, double a0 = 0.0,
                                   std::size_t fuel = kDefaultFuel) {
  const auto& u = t1.universe();
  if (t2.universe().items() != u.items()) throw DomainError("garbling compares operators on one universe");
  detail::require_oracle_size(u, "garble_compare");
  GarbleReport r;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << u.size()); ++m) {
    auto x = ItemSet::from_mask(u.size(), m);
    if (!t2(x).is_subset_of(t1(x))) {
      r.hypothesis_holds = false;
      r.witness = x;
      break;
    }
  }
  auto l1 = lfp(t1, fuel), l2 = lfp(t2, fuel);
  if (!l1.converged() || !l2.converged()) throw FuelExhaustedError("least fixed point did not converge");
  r.lfp1 = l1.value;
  r.lfp2 = l2.value;
  r.risk1 = model(r.lfp1);
  r.risk2 = model(r.lfp2);
  r.lfp_ordered = r.lfp2.is_subset_of(r.lfp1);
  r.risk_ordered = r.risk2 <= r.risk1 + kTolerance;
  if (accountability) {
    r.feasible1 = (*accountability)(r.lfp1) >= a0 - kTolerance;
    r.feasible2 = (*accountability)(r.lfp2) >= a0 - kTolerance;
  }
  return r;
}

/// Outcome disclosure as a garbling of process disclosure.
inline GarbleReport process_outcome_compare(const Operator& t_proc, const Operator& t_out, const RiskModel& model,
                                            std::size_t fuel = kDefaultFuel) {
  auto r = garble_compare(t_proc, t_out, model, nullptr, 0.0, fuel);
  r.label = "process-vs-outcome";
  return r;
}

// ---------------------------------------------------------------------------
// Equilibria

/// Best-response correspondence B: state → nonempty set of states.
class BestResponseTable {
 public:
  BestResponseTable() = default;
  explicit BestResponseTable(std::map<ItemSet, std::set<ItemSet>> table) : table_(std::move(table)) {
    for (const auto& [k, v] : table_)
      if (v.empty()) throw DomainError("best response must be nonempty");
  }

  /// B(x) = {x} on every state.
  static BestResponseTable identity(const Universe& u) {
    detail::require_oracle_size(u, "BestResponseTable::identity");
    std::map<ItemSet, std::set<ItemSet>> t;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << u.size()); ++m) {
      auto x = ItemSet::from_mask(u.size(), m);
      t[x] = {x};
    }
    return BestResponseTable(std::move(t));
  }

  /// B(x) = responses on every state.
  static BestResponseTable constant(const Universe& u, std::set<ItemSet> responses) {
    detail::require_oracle_size(u, "BestResponseTable::constant");
    std::map<ItemSet, std::set<ItemSet>> t;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << u.size()); ++m) t[ItemSet::from_mask(u.size(), m)] = responses;
    return BestResponseTable(std::move(t));
  }

  const std::set<ItemSet>& at(const ItemSet& x) const {
    auto it = table_.find(x);
    if (it == table_.end()) throw DomainError("best response undefined at a scanned state");
    return it->second;
  }
  const std::map<ItemSet, std::set<ItemSet>>& entries() const noexcept { return table_; }

 private:
  std::map<ItemSet, std::set<ItemSet>> table_;
};

/// {x : x ∈ B(T(x))}, sorted by mask.
inline std::vector<ItemSet> equilibrium_enumerate(const Operator& policy, const BestResponseTable& b) {
  const auto& u = policy.universe();
  detail::require_oracle_size(u, "equilibrium_enumerate");
  std::vector<ItemSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << u.size()); ++m) {
    auto x = ItemSet::from_mask(u.size(), m);
    if (b.at(policy(x)).count(x)) out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lawvere at finite scale

inline constexpr std::size_t kLawvereBound = 4;

using SelfMap = std::vector<std::size_t>;

struct LawvereReport {
  std::size_t n = 0;
  std::size_t image_size = 0;
  std::size_t self_maps = 0;
  bool surjective = false;
  /// d(x) = e(x)(x) + 1 mod n. Absent when n = 1.
  std::optional<SelfMap> diagonal;
  bool diagonal_outside_image = false;
  bool every_endomap_has_fixed_point = false;
  std::optional<SelfMap> fixed_point_free;
};

/// `e` assigns to each point x a self-map e(x) of {0..n-1}.
inline LawvereReport lawvere_check(std::size_t n, const std::vector<SelfMap>& e) {
  if (n == 0) throw DomainError("Lawvere check needs a nonempty set");
  if (n > kLawvereBound) throw CapacityError("Lawvere check is bounded at " + std::to_string(kLawvereBound));
  if (e.size() != n) throw DomainError("e must assign a self-map to every point");
  for (const auto& f : e) {
    if (f.size() != n) throw DomainError("self-map has the wrong arity");
    for (auto v : f)
      if (v >= n) throw DomainError("self-map leaves the set");
  }
  LawvereReport r;
  r.n = n;
  r.self_maps = 1;
  for (std::size_t i = 0; i < n; ++i) r.self_maps *= n;
  std::set<SelfMap> image(e.begin(), e.end());
  r.image_size = image.size();
  r.surjective = image.size() == r.self_maps;

  r.every_endomap_has_fixed_point = true;
  SelfMap f(n, 0);
  for (std::size_t code = 0; code < r.self_maps; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= n) f[i] = c % n;
    bool fixed = false;
    for (std::size_t i = 0; i < n; ++i) fixed = fixed || f[i] == i;
    if (!fixed) {
      r.every_endomap_has_fixed_point = false;
      break;
    }
  }
  if (n >= 2) {
    SelfMap d(n);
    for (std::size_t x = 0; x < n; ++x) d[x] = (e[x][x] + 1) % n;
    r.diagonal_outside_image = !image.count(d);
    r.diagonal = std::move(d);
    SelfMap shift(n);
    for (std::size_t x = 0; x < n; ++x) shift[x] = (x + 1) % n;
    r.fixed_point_free = std::move(shift);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Smaller quantitative statements

/// Lower bound on breach risk left by a cover of measure `coverage`.
inline double breach_bound(double coverage) {
  if (!(coverage >= 0.0 && coverage <= 1.0)) throw DomainError("coverage must lie in [0, 1]");
  return 1.0 - coverage;
}

struct ConvergenceReport {
  /// Least n with Risk(T^k(⊥)) ≥ Risk(μT) − ε for all k ≥ n.
  std::size_t n = 0;
  std::vector<double> risks;
  bool non_decreasing = true;
};

inline ConvergenceReport iterative_risk_convergence(const Operator& policy, const RiskModel& model, double epsilon,
                                                    std::size_t fuel = kDefaultFuel) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  auto chain = lfp(policy, fuel);
  if (!chain.converged()) throw FuelExhaustedError("least fixed point did not converge within the fuel");
  ConvergenceReport r;
  for (const auto& x : chain.trace) r.risks.push_back(model(x));
  const double target = r.risks.back() - epsilon;
  for (std::size_t k = 1; k < r.risks.size(); ++k)
    if (r.risks[k] + kTolerance < r.risks[k - 1]) r.non_decreasing = false;
  r.n = r.risks.size() - 1;
  while (r.n > 0 && r.risks[r.n - 1] >= target - kTolerance) --r.n;
  return r;
}

struct StratifyReport {
  double risk_first = 0.0, risk_second = 0.0, risk_combined = 0.0;
  /// Risk(I1 ∪ I2) − Risk(I1).
  double marginal_second = 0.0;
  /// Risk(I1 ∪ I2) − Risk(I1) − Risk(I2).
  double gap = 0.0;
  bool superadditive = false;
};

inline StratifyReport stratify_compare(const ItemSet& first, const ItemSet& second, const RiskModel& model) {
  if (!(first & second).empty()) throw DomainError("phases must disclose disjoint item sets");
  StratifyReport r;
  r.risk_first = model(first);
  r.risk_second = model(second);
  r.risk_combined = model(first | second);
  r.marginal_second = r.risk_combined - r.risk_first;
  r.gap = r.risk_combined - r.risk_first - r.risk_second;
  r.superadditive = r.gap > kTolerance;
  return r;
}

struct MixtureReport {
  double expected_g = 0.0;
  double mixed_level = 0.0;
  double g_at_mixed_level = 0.0;
  /// E[G] − G(E[level]).
  double jensen_gap = 0.0;
  bool scores_convex = true;
};

/// Mixes the first listed level (probability p) with the last (1 − p).
/// G between levels is read off by linear interpolation.
inline MixtureReport mixture_gaming_eval(const std::vector<std::pair<double, double>>& g_values, double p) {
  if (g_values.size() < 2) throw DomainError("mixture needs at least two precision levels");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixture probability must lie in [0, 1]");
  auto sorted = g_values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first == sorted[i - 1].first) throw DomainError("precision levels must be distinct");
  auto interpolate = [&](double level) {
    auto hi = std::lower_bound(sorted.begin(), sorted.end(), std::make_pair(level, -std::numeric_limits<double>::infinity()));
    if (hi == sorted.end()) return sorted.back().second;
    if (hi->first == level || hi == sorted.begin()) return hi->second;
    auto lo = hi - 1;
    const double t = (level - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  };
  MixtureReport r;
  const auto& a = g_values.front();
  const auto& b = g_values.back();
  r.expected_g = p * a.second + (1.0 - p) * b.second;
  r.mixed_level = p * a.first + (1.0 - p) * b.first;
  r.g_at_mixed_level = interpolate(r.mixed_level);
  r.jensen_gap = r.expected_g - r.g_at_mixed_level;
  for (std::size_t i = 2; i < sorted.size(); ++i) {
    const double s1 = (sorted[i - 1].second - sorted[i - 2].second) / (sorted[i - 1].first - sorted[i - 2].first);
    const double s2 = (sorted[i].second - sorted[i - 1].second) / (sorted[i].first - sorted[i - 1].first);
    if (s2 + kTolerance < s1) r.scores_convex = false;
  }
  return r;
}

/// Same comparison against a closed-form G evaluated exactly at the mixed level.
inline MixtureReport mixture_gaming_eval(const std::function<double(double)>& g, double level_a, double level_b,
                                         double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixture probability must lie in [0, 1]");
  MixtureReport r;
  r.expected_g = p * g(level_a) + (1.0 - p) * g(level_b);
  r.mixed_level = p * level_a + (1.0 - p) * level_b;
  r.g_at_mixed_level = g(r.mixed_level);
  r.jensen_gap = r.expected_g - r.g_at_mixed_level;
  const double mid = 0.5 * (level_a + level_b);
  r.scores_convex = g(mid) <= 0.5 * (g(level_a) + g(level_b)) + kTolerance;
  return r;
}

}  // namespace fixtrans
