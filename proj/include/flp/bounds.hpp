#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "flp/mechanisms.hpp"

namespace flp {

// 10 - 4*sqrt(5) = 1.05572809000084..., rounded up at the 12th decimal.
inline const Rational& reverse_proportional_bound() {
  static const Rational bound = make_rational(1055728090001L, 1000000000000L);
  return bound;
}

enum class Parity { Any, Odd, Even };

// One row of the declared worst-case ratio table.
struct BoundRule {
  MechanismId mechanism;
  Variant variant;
  Parity parity;
  Rational (*value)(std::size_t n, std::size_t k);
  std::string_view claim;
};

namespace detail {

inline Rational one(std::size_t, std::size_t) { return 1; }
inline Rational two(std::size_t, std::size_t) { return 2; }
inline Rational n_over_n_minus_1(std::size_t n, std::size_t) {
  return make_rational(static_cast<long>(n), static_cast<long>(n - 1));
}
inline Rational two_n_over_n_minus_1(std::size_t n, std::size_t) {
  return make_rational(2 * static_cast<long>(n), static_cast<long>(n - 1));
}
inline Rational uniform_max(std::size_t n, std::size_t) {
  return make_rational(3 * static_cast<long>(n) - 1, 2 * static_cast<long>(n) - 2);
}
inline Rational rp_bound(std::size_t, std::size_t) { return reverse_proportional_bound(); }
inline Rational k_plus_1(std::size_t, std::size_t k) { return static_cast<long>(k) + 1; }

}  // namespace detail

inline std::span<const BoundRule> bound_table() {
  using M = MechanismId;
  using V = Variant;
  static const BoundRule rules[] = {
      {M::TwoMedians, V::Sum, Parity::Even, detail::one, "two medians are optimal for even n"},
      {M::TwoMedians, V::Max, Parity::Even, detail::two, "median-right bound 2 for even n"},
      {M::MedianRight, V::Sum, Parity::Odd, detail::n_over_n_minus_1, "n/(n-1) for odd n"},
      {M::MedianRight, V::Sum, Parity::Even, detail::one, "coincides with two medians"},
      {M::MedianRight, V::Max, Parity::Even, detail::two, "2 for even n"},
      {M::MedianRight, V::Max, Parity::Odd, detail::two_n_over_n_minus_1, "2n/(n-1) for odd n"},
      {M::MedianLeft, V::Sum, Parity::Odd, detail::n_over_n_minus_1, "mirror of median-right"},
      {M::MedianLeft, V::Max, Parity::Odd, detail::two_n_over_n_minus_1, "mirror of median-right"},
      {M::UniformLR, V::Max, Parity::Odd, detail::uniform_max, "(3n-1)/(2n-2) for odd n"},
      {M::ReverseProportional, V::Sum, Parity::Odd, detail::rp_bound, "10-4sqrt(5)"},
      {M::MedianBall, V::Sum, Parity::Any, detail::two, "2"},
      {M::MedianBall, V::Max, Parity::Any, detail::k_plus_1, "k+1"},
      {M::AutoSum, V::Sum, Parity::Even, detail::one, "two medians are optimal for even n"},
      {M::AutoSum, V::Sum, Parity::Odd, detail::rp_bound, "10-4sqrt(5)"},
      {M::OptSumBaseline, V::Sum, Parity::Any, detail::one, "optimal"},
  };
  return rules;
}

// Declared worst-case ratio for the configuration, when one is known.
inline std::optional<Rational> declared_bound(MechanismId mech, Variant variant, std::size_t n,
                                              std::size_t k) {
  const Parity parity = n % 2 == 0 ? Parity::Even : Parity::Odd;
  for (const BoundRule& rule : bound_table()) {
    if (rule.mechanism != mech || rule.variant != variant) continue;
    if (rule.parity != Parity::Any && rule.parity != parity) continue;
    if (k != 2 && mech != MechanismId::MedianBall && mech != MechanismId::OptSumBaseline) continue;
    return rule.value(n, k);
  }
  return std::nullopt;
}

}  // namespace flp
