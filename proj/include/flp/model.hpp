#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flp/errors.hpp"
#include "flp/rational.hpp"

namespace flp {

// Individual cost model: total distance to all facilities, or distance to the farthest one.
enum class Variant { Sum, Max };

inline std::string_view to_string(Variant v) { return v == Variant::Sum ? "sum" : "max"; }

inline Variant parse_variant(std::string_view text) {
  if (text == "sum") return Variant::Sum;
  if (text == "max") return Variant::Max;
  throw InputError("unknown variant '" + std::string(text) + "' (expected sum or max)");
}

/// Reported agent locations together with the number of facilities to place.
///
/// Locations keep their reported order; agent `i` is the i-th reported location (0-based).
/// Duplicate coordinates are allowed. Requires n >= 2, k >= 2 and k <= n.
class Instance {
 public:
  Instance(std::vector<Coord> locations, std::size_t k, Variant variant)
      : locations_(std::move(locations)), k_(k), variant_(variant) {
    if (locations_.size() < 2) throw InputError("an instance needs at least 2 agents");
    if (k_ < 2) throw InputError("an instance needs at least 2 facilities");
    if (k_ > locations_.size()) throw InfeasibleError("infeasible: k exceeds n");
  }

  std::size_t n() const noexcept { return locations_.size(); }
  std::size_t k() const noexcept { return k_; }
  Variant variant() const noexcept { return variant_; }
  const std::vector<Coord>& locations() const noexcept { return locations_; }

  const Coord& location(std::size_t agent) const {
    check_agent(agent);
    return locations_[agent];
  }

  void check_agent(std::size_t agent) const {
    if (agent >= locations_.size()) {
      throw InputError("agent index " + std::to_string(agent) + " out of range for n = " +
                       std::to_string(locations_.size()));
    }
  }

  // Copy with one reported location replaced.
  Instance with_location(std::size_t agent, Coord value) const {
    check_agent(agent);
    Instance copy = *this;
    copy.locations_[agent] = std::move(value);
    return copy;
  }

  Instance with_variant(Variant v) const {
    Instance copy = *this;
    copy.variant_ = v;
    return copy;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Coord> locations_;
  std::size_t k_;
  Variant variant_;
};

/// The agents hosting the facilities, as a set of distinct agent indices (kept ascending).
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<std::size_t> hosts) : hosts_(std::move(hosts)) {
    std::sort(hosts_.begin(), hosts_.end());
    if (std::adjacent_find(hosts_.begin(), hosts_.end()) != hosts_.end()) {
      throw InputError("solution host agents must be distinct");
    }
  }
  Solution(std::initializer_list<std::size_t> hosts) : Solution(std::vector<std::size_t>(hosts)) {}

  std::span<const std::size_t> hosts() const noexcept { return hosts_; }
  std::size_t size() const noexcept { return hosts_.size(); }

  friend auto operator<=>(const Solution&, const Solution&) = default;
  friend bool operator==(const Solution&, const Solution&) = default;

 private:
  std::vector<std::size_t> hosts_;
};

inline void check_feasible(const Instance& inst, const Solution& sol) {
  if (sol.size() != inst.k()) {
    throw InputError("solution has " + std::to_string(sol.size()) + " facilities, instance needs " +
                     std::to_string(inst.k()));
  }
  for (std::size_t h : sol.hosts()) inst.check_agent(h);
}

// Facility coordinates in ascending order.
inline std::vector<Coord> facility_coordinates(const Instance& inst, const Solution& sol) {
  std::vector<Coord> coords;
  coords.reserve(sol.size());
  for (std::size_t h : sol.hosts()) coords.push_back(inst.location(h));
  std::sort(coords.begin(), coords.end());
  return coords;
}

struct Outcome {
  Solution solution;
  Rational probability;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Probability distribution over feasible solutions.
///
/// Construction merges repeated solutions and drops zero-probability entries; the remaining
/// probabilities are nonnegative and sum to exactly one, otherwise InvariantError.
class Lottery {
 public:
  explicit Lottery(std::vector<Outcome> outcomes) {
    std::sort(outcomes.begin(), outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.solution < b.solution; });
    Rational total = 0;
    for (auto& o : outcomes) {
      if (sgn(o.probability) < 0) throw InvariantError("negative probability in lottery");
      total += o.probability;
      if (!support_.empty() && support_.back().solution == o.solution) {
        support_.back().probability += o.probability;
      } else {
        support_.push_back(std::move(o));
      }
    }
    if (total != 1) {
      throw InvariantError("lottery probabilities sum to " + to_string(total) + ", not 1");
    }
    std::erase_if(support_, [](const Outcome& o) { return sgn(o.probability) == 0; });
  }

  static Lottery point_mass(Solution sol) { return Lottery({Outcome{std::move(sol), Rational(1)}}); }

  std::span<const Outcome> support() const noexcept { return support_; }
  bool is_deterministic() const noexcept { return support_.size() == 1; }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<Outcome> support_;
};

/// Sorted order of the agents plus median bookkeeping. Positions are 0-based indices into
/// `sorted`; ties in coordinate are broken by reported index.
struct OrderStats {
  std::vector<std::size_t> sorted;
  std::size_t median_lo_pos = 0;
  std::size_t median_hi_pos = 0;

  std::size_t median_lo() const { return sorted[median_lo_pos]; }
  std::size_t median_hi() const { return sorted[median_hi_pos]; }

  // Agent directly left / right of the leftmost median.
  std::optional<std::size_t> left() const {
    if (median_lo_pos == 0) return std::nullopt;
    return sorted[median_lo_pos - 1];
  }
  std::optional<std::size_t> right() const {
    if (median_lo_pos + 1 >= sorted.size()) return std::nullopt;
    return sorted[median_lo_pos + 1];
  }
};

inline OrderStats order_stats(const Instance& inst) {
  OrderStats stats;
  const auto& loc = inst.locations();
  stats.sorted.resize(loc.size());
  std::iota(stats.sorted.begin(), stats.sorted.end(), std::size_t{0});
  std::stable_sort(stats.sorted.begin(), stats.sorted.end(),
                   [&](std::size_t a, std::size_t b) { return loc[a] < loc[b]; });
  const std::size_t n = loc.size();
  stats.median_lo_pos = (n - 1) / 2;
  stats.median_hi_pos = n / 2;
  return stats;
}

inline Coord distance(const Coord& a, const Coord& b) { return abs_diff(a, b); }

namespace detail {

// Individual cost of a point at `from` against the facilities in `sol`; no validation.
inline Coord cost_from(const Instance& inst, const Solution& sol, const Coord& from) {
  const auto& loc = inst.locations();
  Coord total = 0;
  Coord d;
  if (inst.variant() == Variant::Sum) {
    for (std::size_t h : sol.hosts()) {
      d = from - loc[h];
      if (sgn(d) < 0) total -= d;
      else total += d;
    }
  } else {
    for (std::size_t h : sol.hosts()) {
      d = from - loc[h];
      if (sgn(d) < 0) d = -d;
      if (d > total) total = d;
    }
  }
  return total;
}

inline Coord social_cost_unchecked(const Instance& inst, const Solution& sol) {
  Coord total = 0;
  for (const Coord& x : inst.locations()) total += cost_from(inst, sol, x);
  return total;
}

}  // namespace detail

inline Coord agent_cost(const Instance& inst, const Solution& sol, std::size_t agent) {
  check_feasible(inst, sol);
  return detail::cost_from(inst, sol, inst.location(agent));
}

inline Coord social_cost(const Instance& inst, const Solution& sol) {
  check_feasible(inst, sol);
  return detail::social_cost_unchecked(inst, sol);
}

inline Coord expected_social_cost(const Instance& inst, const Lottery& lot) {
  Coord total = 0;
  for (const auto& [sol, p] : lot.support()) total += p * social_cost(inst, sol);
  return total;
}

// Expected individual cost of `agent` when its genuine position is `true_location`, which may
// differ from what the agent reported inside `inst`.
inline Coord expected_agent_cost(const Instance& inst, const Lottery& lot, std::size_t agent,
                                 const Coord& true_location) {
  inst.check_agent(agent);
  Coord total = 0;
  for (const auto& [sol, p] : lot.support()) {
    check_feasible(inst, sol);
    total += p * detail::cost_from(inst, sol, true_location);
  }
  return total;
}

enum class Side { Left, Right };

// Closed form for the sum-variant cost of (l, m) or (m, r) with odd n:
// twice the total distance to the median plus the median-to-neighbour gap.
inline Coord lemma_pair_cost(const Instance& inst, Side side) {
  if (inst.k() != 2) throw PreconditionError("pair cost formula requires k = 2");
  if (inst.variant() != Variant::Sum) throw PreconditionError("pair cost formula requires sum variant");
  if (inst.n() % 2 == 0 || inst.n() < 3) {
    throw PreconditionError("pair cost formula requires odd n >= 3");
  }
  const OrderStats stats = order_stats(inst);
  const Coord& m = inst.location(stats.median_lo());
  const Coord& x = inst.location(side == Side::Left ? *stats.left() : *stats.right());
  Coord to_median = 0;
  for (const Coord& loc : inst.locations()) to_median += distance(loc, m);
  return 2 * to_median + distance(m, x);
}

}  // namespace flp
