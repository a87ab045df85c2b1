#pragma once

#include <array>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "flp/model.hpp"
#include "flp/opt_solver.hpp"

namespace flp {

enum class MechanismId {
  TwoMedians,
  MedianRight,
  MedianLeft,
  UniformLR,
  ReverseProportional,
  MedianBall,
  AutoSum,
  OptSumBaseline,
};

inline constexpr std::array<MechanismId, 8> kAllMechanisms = {
    MechanismId::TwoMedians,          MechanismId::MedianRight, MechanismId::MedianLeft,
    MechanismId::UniformLR,           MechanismId::ReverseProportional,
    MechanismId::MedianBall,          MechanismId::AutoSum,     MechanismId::OptSumBaseline,
};

// Stable command-line identifiers.
inline std::string_view cli_name(MechanismId id) {
  switch (id) {
    case MechanismId::TwoMedians: return "two-medians";
    case MechanismId::MedianRight: return "median-right";
    case MechanismId::MedianLeft: return "median-left";
    case MechanismId::UniformLR: return "uniform";
    case MechanismId::ReverseProportional: return "reverse-proportional";
    case MechanismId::MedianBall: return "median-ball";
    case MechanismId::AutoSum: return "auto-sum";
    case MechanismId::OptSumBaseline: return "opt-sum-baseline";
  }
  return "?";
}

inline std::optional<MechanismId> parse_mechanism(std::string_view name) {
  for (MechanismId id : kAllMechanisms) {
    if (cli_name(id) == name) return id;
  }
  return std::nullopt;
}

// The optimal sum baseline is the negative control: it is known to be manipulable.
inline bool claims_strategyproof(MechanismId id) { return id != MechanismId::OptSumBaseline; }

// Anything mapping an instance to a lottery over its feasible solutions.
template <typename M>
concept Mechanism = std::invocable<const M&, const Instance&> &&
                    std::convertible_to<std::invoke_result_t<const M&, const Instance&>, Lottery>;

namespace detail {

inline void require_two_facilities(const Instance& inst, std::string_view mech) {
  if (inst.k() != 2) {
    throw PreconditionError(std::string(mech) + " requires k = 2");
  }
}

inline void require_odd_n(const Instance& inst, std::string_view mech) {
  if (inst.n() % 2 == 0 || inst.n() < 3) {
    throw PreconditionError(std::string(mech) + " requires odd n >= 3");
  }
}

}  // namespace detail

inline Lottery two_medians(const Instance& inst) {
  detail::require_two_facilities(inst, "two-medians");
  if (inst.n() % 2 != 0) throw PreconditionError("two-medians requires even n");
  const OrderStats stats = order_stats(inst);
  return Lottery::point_mass(Solution{stats.median_lo(), stats.median_hi()});
}

// Facilities at the leftmost median m and the agent directly to its right.
inline Lottery median_right(const Instance& inst) {
  detail::require_two_facilities(inst, "median-right");
  const OrderStats stats = order_stats(inst);
  const auto r = stats.right();
  if (!r) throw PreconditionError("median-right requires an agent right of the median");
  return Lottery::point_mass(Solution{stats.median_lo(), *r});
}

inline Lottery median_left(const Instance& inst) {
  detail::require_two_facilities(inst, "median-left");
  const OrderStats stats = order_stats(inst);
  const auto l = stats.left();
  if (!l) throw PreconditionError("median-left requires an agent left of the median");
  return Lottery::point_mass(Solution{*l, stats.median_lo()});
}

inline Lottery uniform_lr(const Instance& inst) {
  detail::require_two_facilities(inst, "uniform");
  detail::require_odd_n(inst, "uniform");
  const OrderStats stats = order_stats(inst);
  const std::size_t m = stats.median_lo();
  const Rational half(1, 2);
  return Lottery({{Solution{*stats.left(), m}, half}, {Solution{m, *stats.right()}, half}});
}

/// (l, m) with probability d(m,r)/d(l,r) and (m, r) with probability d(l,m)/d(l,r).
/// When l, m and r coincide both solutions get probability 1/2.
inline Lottery reverse_proportional(const Instance& inst) {
  detail::require_two_facilities(inst, "reverse-proportional");
  detail::require_odd_n(inst, "reverse-proportional");
  const OrderStats stats = order_stats(inst);
  const std::size_t l = *stats.left();
  const std::size_t m = stats.median_lo();
  const std::size_t r = *stats.right();
  const auto& loc = inst.locations();
  const Coord span = distance(loc[l], loc[r]);
  Rational p_left(1, 2);
  Rational p_right(1, 2);
  if (sgn(span) != 0) {
    p_left = distance(loc[m], loc[r]) / span;
    p_right = distance(loc[l], loc[m]) / span;
  }
  return Lottery({{Solution{l, m}, p_left}, {Solution{m, r}, p_right}});
}

/// k consecutive sorted agents around the leftmost median: (k-1)/2 on each side for odd k,
/// k/2-1 on the left and k/2 on the right for even k. A window running off either end is
/// shifted inward.
inline Lottery median_ball(const Instance& inst) {
  const std::size_t n = inst.n();
  const std::size_t k = inst.k();
  if (k > n) throw InfeasibleError("infeasible: k exceeds n");
  const OrderStats stats = order_stats(inst);
  const std::size_t left_count = k % 2 == 1 ? (k - 1) / 2 : k / 2 - 1;
  std::size_t start = stats.median_lo_pos >= left_count ? stats.median_lo_pos - left_count : 0;
  start = std::min(start, n - k);
  std::vector<std::size_t> hosts(stats.sorted.begin() + static_cast<std::ptrdiff_t>(start),
                                 stats.sorted.begin() + static_cast<std::ptrdiff_t>(start + k));
  return Lottery::point_mass(Solution(std::move(hosts)));
}

// Two medians for even n, reverse-proportional for odd n.
inline Lottery auto_sum(const Instance& inst) {
  detail::require_two_facilities(inst, "auto-sum");
  if (inst.variant() != Variant::Sum) throw PreconditionError("auto-sum requires the sum variant");
  return inst.n() % 2 == 0 ? two_medians(inst) : reverse_proportional(inst);
}

inline Lottery opt_sum_baseline(const Instance& inst) {
  if (inst.variant() != Variant::Sum) {
    throw PreconditionError("opt-sum-baseline requires the sum variant");
  }
  return Lottery::point_mass(fast_optimal_sum(inst).solution);
}

inline Lottery apply(MechanismId id, const Instance& inst) {
  switch (id) {
    case MechanismId::TwoMedians: return two_medians(inst);
    case MechanismId::MedianRight: return median_right(inst);
    case MechanismId::MedianLeft: return median_left(inst);
    case MechanismId::UniformLR: return uniform_lr(inst);
    case MechanismId::ReverseProportional: return reverse_proportional(inst);
    case MechanismId::MedianBall: return median_ball(inst);
    case MechanismId::AutoSum: return auto_sum(inst);
    case MechanismId::OptSumBaseline: return opt_sum_baseline(inst);
  }
  throw InputError("unknown mechanism");
}

// Function object wrapper so ids satisfy the Mechanism concept.
struct ById {
  MechanismId id;
  Lottery operator()(const Instance& inst) const { return apply(id, inst); }
};

}  // namespace flp
