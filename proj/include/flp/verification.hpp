#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "flp/instance_gen.hpp"
#include "flp/mechanisms.hpp"
#include "flp/opt_solver.hpp"

namespace flp {

// ---------------------------------------------------------------------------------------------
// Strategyproofness refutation
// ---------------------------------------------------------------------------------------------

struct SpViolation {
  std::size_t agent = 0;
  Coord true_location;
  Coord misreport;
  Coord honest_cost;
  Coord deviated_cost;
};

struct DeviationCheck {
  Coord honest_cost;
  Coord deviated_cost;

  bool profitable() const { return deviated_cost < honest_cost; }
};

struct SpRefutation {
  std::optional<SpViolation> violation;
  std::size_t deviations_checked = 0;
  // Deviations on which the mechanism's preconditions failed.
  std::size_t skipped = 0;
};

inline constexpr std::size_t kDefaultGridPoints = 200;

/// Finite witness set of misreports for `agent`: the other agents' coordinates, midpoints of
/// consecutive distinct coordinates, the outer points min - span and max + span, and
/// `grid_points` evenly spaced values starting at min - span with step 3*span/grid_points.
/// A zero span is replaced by 1. Duplicates are removed, first occurrence kept.
inline std::vector<Coord> candidate_misreports(const Instance& inst, std::size_t agent,
                                               std::size_t grid_points = kDefaultGridPoints) {
  inst.check_agent(agent);
  const auto& loc = inst.locations();
  std::vector<Coord> sorted(loc.begin(), loc.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const Coord& lo = sorted.front();
  const Coord& hi = sorted.back();
  Coord span = hi - lo;
  if (sgn(span) == 0) span = 1;

  std::vector<Coord> out;
  std::set<Coord> seen;
  auto add = [&](Coord c) {
    if (seen.insert(c).second) out.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < loc.size(); ++i) {
    if (i != agent) add(loc[i]);
  }
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) add((sorted[i] + sorted[i + 1]) / 2);
  const Coord outer_lo = lo - span;
  const Coord outer_hi = hi + span;
  add(outer_lo);
  add(outer_hi);
  if (grid_points > 0) {
    const Coord step = (outer_hi - outer_lo) / static_cast<long>(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) add(outer_lo + static_cast<long>(i) * step);
  }
  return out;
}

// Expected cost of `agent` (measured from its reported location in `inst`) when it reports
// truthfully versus when it reports `misreport`.
template <Mechanism M>
DeviationCheck evaluate_deviation(const M& mech, const Instance& inst, std::size_t agent,
                                  const Coord& misreport) {
  const Coord& truth = inst.location(agent);
  Coord honest = expected_agent_cost(inst, mech(inst), agent, truth);
  const Instance deviated = inst.with_location(agent, misreport);
  Coord dev = expected_agent_cost(deviated, mech(deviated), agent, truth);
  return {std::move(honest), std::move(dev)};
}

inline DeviationCheck evaluate_deviation(MechanismId id, const Instance& inst, std::size_t agent,
                                         const Coord& misreport) {
  return evaluate_deviation(ById{id}, inst, agent, misreport);
}

/// Searches single-agent misreports for a strict decrease in expected cost and returns the first
/// one found (agents in reported order, misreports in candidate order). An empty result is
/// evidence of strategyproofness, not a proof.
template <Mechanism M>
SpRefutation sp_refute(const M& mech, const Instance& inst,
                       std::size_t grid_points = kDefaultGridPoints) {
  SpRefutation result;
  const Lottery honest_lottery = mech(inst);
  for (std::size_t agent = 0; agent < inst.n(); ++agent) {
    const Coord& truth = inst.location(agent);
    const Coord honest = expected_agent_cost(inst, honest_lottery, agent, truth);
    for (const Coord& report : candidate_misreports(inst, agent, grid_points)) {
      if (report == truth) continue;
      const Instance deviated = inst.with_location(agent, report);
      std::optional<Lottery> lot;
      try {
        lot.emplace(mech(deviated));
      } catch (const PreconditionError&) {
        ++result.skipped;
        continue;
      }
      ++result.deviations_checked;
      Coord cost = expected_agent_cost(deviated, *lot, agent, truth);
      if (cost < honest) {
        result.violation = SpViolation{agent, truth, report, honest, std::move(cost)};
        return result;
      }
    }
  }
  return result;
}

inline SpRefutation sp_refute(MechanismId id, const Instance& inst,
                              std::size_t grid_points = kDefaultGridPoints) {
  return sp_refute(ById{id}, inst, grid_points);
}

// Recomputes both costs of a reported violation from scratch.
template <Mechanism M>
bool recheck_violation(const M& mech, const Instance& inst, const SpViolation& v) {
  if (inst.location(v.agent) != v.true_location) return false;
  const DeviationCheck check = evaluate_deviation(mech, inst, v.agent, v.misreport);
  return check.honest_cost == v.honest_cost && check.deviated_cost == v.deviated_cost &&
         check.profitable();
}

// ---------------------------------------------------------------------------------------------
// Approximation ratio
// ---------------------------------------------------------------------------------------------

struct RatioMeasurement {
  Lottery lottery;
  Coord mech_cost;
  Coord opt_cost;
  Coord ratio;
};

struct RatioReport {
  MechanismId mechanism;
  Instance instance;
  Lottery lottery;
  Coord mech_cost;
  Coord opt_cost;
  Coord ratio;
};

template <Mechanism M>
RatioMeasurement measure_ratio(const M& mech, const Instance& inst,
                               std::uint64_t budget = enumeration_budget()) {
  Lottery lot = mech(inst);
  Coord mech_cost = expected_social_cost(inst, lot);
  Coord opt_cost = brute_force_optimal(inst, budget).cost;
  Coord ratio = 1;
  if (sgn(opt_cost) == 0) {
    // Zero optimum means every agent coincides, so every feasible solution costs zero.
    if (sgn(mech_cost) != 0) {
      throw InvariantError("mechanism cost " + to_string(mech_cost) + " with zero optimum");
    }
  } else {
    ratio = mech_cost / opt_cost;
  }
  return {std::move(lot), std::move(mech_cost), std::move(opt_cost), std::move(ratio)};
}

inline RatioReport approx_ratio(MechanismId id, const Instance& inst,
                                std::uint64_t budget = enumeration_budget()) {
  RatioMeasurement m = measure_ratio(ById{id}, inst, budget);
  return {id, inst, std::move(m.lottery), std::move(m.mech_cost), std::move(m.opt_cost),
          std::move(m.ratio)};
}

// ---------------------------------------------------------------------------------------------
// Worst-case search
// ---------------------------------------------------------------------------------------------

struct SearchConfig {
  MechanismId mechanism = MechanismId::MedianRight;
  Variant variant = Variant::Sum;
  std::size_t n = 3;
  std::size_t k = 2;
  std::size_t trials = 200;
  std::size_t perturb_rounds = 20;
  std::uint64_t seed = 0;
  // How many of the best sampled instances get hill-climbed.
  std::size_t climbers = 4;
};

/// Random sampling followed by coordinate hill-climbing with halving step sizes. Heuristic: the
/// result is a lower bound on the worst-case ratio. Deterministic for a given seed.
inline RatioReport worst_ratio_search(const SearchConfig& cfg) {
  const std::uint64_t budget = enumeration_budget();
  const std::size_t trials = std::max<std::size_t>(cfg.trials, 1);
  constexpr Family kFamilies[] = {Family::UniformGrid, Family::Clustered, Family::Coincident};

  struct Scored {
    Instance inst;
    Coord ratio;
  };
  auto score = [&](const Instance& inst) -> std::optional<Coord> {
    try {
      return approx_ratio(cfg.mechanism, inst, budget).ratio;
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
  };

  std::vector<Scored> samples;
  samples.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    GenSpec spec;
    spec.family = kFamilies[t % std::size(kFamilies)];
    spec.n = cfg.n;
    spec.k = cfg.k;
    spec.variant = cfg.variant;
    spec.seed = cfg.seed;
    spec.params.denominator = 4;
    Instance inst = generate_one(spec, t);
    if (auto r = score(inst)) samples.push_back({std::move(inst), std::move(*r)});
  }
  if (samples.empty()) {
    throw PreconditionError(std::string(cli_name(cfg.mechanism)) +
                            " is not applicable to any sampled instance");
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Scored& a, const Scored& b) { return a.ratio > b.ratio; });
  const std::size_t keep = std::min(samples.size(), std::max<std::size_t>(cfg.climbers, 1));
  samples.erase(samples.begin() + static_cast<std::ptrdiff_t>(keep), samples.end());

  std::optional<Scored> best;
  for (Scored current : samples) {
    const auto [lo, hi] =
        std::minmax_element(current.inst.locations().begin(), current.inst.locations().end());
    Coord step = (*hi - *lo) / 4;
    if (sgn(step) == 0) step = 1;
    for (std::size_t round = 0; round < cfg.perturb_rounds; ++round, step /= 2) {
      bool improved = true;
      for (std::size_t pass = 0; improved && pass < 16; ++pass) {
        improved = false;
        for (std::size_t agent = 0; agent < cfg.n; ++agent) {
          for (int dir : {-1, 1}) {
            Instance next = perturb(current.inst, agent, dir * step);
            auto r = score(next);
            if (r && *r > current.ratio) {
              current = {std::move(next), std::move(*r)};
              improved = true;
            }
          }
        }
      }
    }
    if (!best || current.ratio > best->ratio) best = std::move(current);
  }
  return approx_ratio(cfg.mechanism, best->inst, budget);
}

}  // namespace flp
