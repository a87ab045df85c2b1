#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "flp/model.hpp"

namespace flp {

struct OptResult {
  Solution solution;
  Coord cost;
};

// C(20, 6): the largest enumeration allowed by default.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 38760;

// Number of k-subsets, saturating at uint64 max.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * num / i;
  }
  return result;
}

// The FLP_BUDGET environment variable overrides the default budget.
inline std::uint64_t enumeration_budget() {
  if (const char* env = std::getenv("FLP_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0') return value;
    throw InputError("FLP_BUDGET must be a non-negative integer, got '" + std::string(env) + "'");
  }
  return kDefaultEnumerationBudget;
}

/// Visits every k-subset of agents exactly once, lexicographically over sorted positions.
template <typename Visitor>
void for_each_solution(const Instance& inst, Visitor&& visit) {
  const std::size_t n = inst.n();
  const std::size_t k = inst.k();
  if (k > n) throw InfeasibleError("infeasible: k exceeds n");
  const OrderStats stats = order_stats(inst);
  std::vector<std::size_t> pos(k);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::vector<std::size_t> hosts(k);
  while (true) {
    for (std::size_t j = 0; j < k; ++j) hosts[j] = stats.sorted[pos[j]];
    visit(Solution(hosts));
    std::size_t j = k;
    while (j > 0 && pos[j - 1] == n - k + (j - 1)) --j;
    if (j == 0) return;
    ++pos[j - 1];
    for (std::size_t t = j; t < k; ++t) pos[t] = pos[t - 1] + 1;
  }
}

inline std::vector<Solution> enumerate_solutions(const Instance& inst) {
  std::vector<Solution> all;
  for_each_solution(inst, [&](Solution s) { all.push_back(std::move(s)); });
  return all;
}

/// Exhaustive minimum of the social cost. Ties keep the first solution in enumeration order.
inline OptResult brute_force_optimal(const Instance& inst,
                                     std::uint64_t budget = enumeration_budget()) {
  const std::uint64_t count = binomial(inst.n(), inst.k());
  if (count > budget) {
    std::string msg = "enumeration of " + std::to_string(count) + " solutions exceeds budget " +
                      std::to_string(budget);
    if (inst.variant() == Variant::Sum) msg += "; use fast_optimal_sum for the sum variant";
    throw BudgetError(msg);
  }
  std::optional<OptResult> best;
  for_each_solution(inst, [&](Solution s) {
    Coord cost = detail::social_cost_unchecked(inst, s);
    if (!best || cost < best->cost) best = OptResult{std::move(s), std::move(cost)};
  });
  return std::move(*best);
}

/// Sum-variant optimum from the structure of optimal solutions: the two medians (even n), the
/// median and its nearer neighbour (odd n, ties to the left), or for k > 2 the cheapest window of
/// k consecutive sorted agents containing a median (ties to the leftmost window).
inline OptResult fast_optimal_sum(const Instance& inst) {
  if (inst.variant() != Variant::Sum) {
    throw UnsupportedVariantError("fast optimal solver supports the sum variant only");
  }
  const OrderStats stats = order_stats(inst);
  const std::size_t n = inst.n();
  const std::size_t k = inst.k();
  if (k == 2) {
    Solution sol;
    if (n % 2 == 0) {
      sol = Solution{stats.median_lo(), stats.median_hi()};
    } else {
      const std::size_t m = stats.median_lo();
      const std::size_t l = *stats.left();
      const std::size_t r = *stats.right();
      const auto& loc = inst.locations();
      sol = distance(loc[l], loc[m]) <= distance(loc[m], loc[r]) ? Solution{l, m} : Solution{m, r};
    }
    Coord cost = detail::social_cost_unchecked(inst, sol);
    return {std::move(sol), std::move(cost)};
  }

  const std::size_t first = stats.median_lo_pos + 1 >= k ? stats.median_lo_pos + 1 - k : 0;
  const std::size_t last = std::min(stats.median_hi_pos, n - k);
  std::optional<OptResult> best;
  for (std::size_t start = first; start <= last; ++start) {
    std::vector<std::size_t> hosts(stats.sorted.begin() + static_cast<std::ptrdiff_t>(start),
                                   stats.sorted.begin() + static_cast<std::ptrdiff_t>(start + k));
    Solution sol(std::move(hosts));
    Coord cost = detail::social_cost_unchecked(inst, sol);
    if (!best || cost < best->cost) best = OptResult{std::move(sol), std::move(cost)};
  }
  return std::move(*best);
}

}  // namespace flp
