#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "flp/model.hpp"

namespace flp {

enum class Family { UniformInt, UniformGrid, Clustered, Coincident };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::UniformInt: return "uniform-int";
    case Family::UniformGrid: return "uniform-grid";
    case Family::Clustered: return "clustered";
    case Family::Coincident: return "coincident";
  }
  return "?";
}

inline Family parse_family(std::string_view text) {
  for (Family f : {Family::UniformInt, Family::UniformGrid, Family::Clustered, Family::Coincident}) {
    if (to_string(f) == text) return f;
  }
  throw InputError("unknown instance family '" + std::string(text) + "'");
}

struct GenParams {
  Rational lo = 0;
  Rational hi = 10;
  // Lattice denominator for uniform-grid and for cluster jitter.
  std::int64_t denominator = 100;
  std::size_t clusters = 2;
  // Maximum jitter of a clustered agent around its centre.
  Rational spread = Rational(1, 2);

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

struct GenSpec {
  Family family = Family::UniformInt;
  std::size_t n = 3;
  std::size_t k = 2;
  Variant variant = Variant::Sum;
  std::uint64_t seed = 0;
  GenParams params;

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw InputError("generator range too large");
  return z.get_si();
}

inline std::int64_t ceil_int(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_int64(r);
}

inline std::int64_t floor_int(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_int64(r);
}

inline void validate(const GenSpec& spec) {
  const GenParams& p = spec.params;
  if (p.lo > p.hi) throw InputError("generator range has lo > hi");
  if (p.denominator <= 0) throw InputError("generator lattice denominator must be positive");
  if (p.clusters == 0) throw InputError("clustered family needs at least one cluster");
  if (sgn(p.spread) < 0) throw InputError("cluster spread must be nonnegative");
  if (spec.family == Family::UniformInt || spec.family == Family::Coincident) {
    if (ceil_int(p.lo) > floor_int(p.hi)) throw InputError("integer range contains no integer");
  }
  if (spec.n < 2) throw InputError("an instance needs at least 2 agents");
  if (spec.k < 2) throw InputError("an instance needs at least 2 facilities");
  if (spec.k > spec.n) throw InfeasibleError("infeasible: k exceeds n");
}

}  // namespace detail

// Per-instance seed: a hash of (master seed, family, index), independent of generation order.
inline std::uint64_t derive_seed(std::uint64_t master, Family family, std::uint64_t index) {
  std::uint64_t h = detail::splitmix64(master);
  h = detail::splitmix64(h ^ (static_cast<std::uint64_t>(family) + 1));
  return detail::splitmix64(h ^ index);
}

/// The `index`-th instance of the family described by `spec`.
inline Instance generate_one(const GenSpec& spec, std::uint64_t index) {
  detail::validate(spec);
  std::mt19937_64 rng(derive_seed(spec.seed, spec.family, index));
  const GenParams& p = spec.params;
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const std::int64_t ilo = detail::ceil_int(p.lo);
  const std::int64_t ihi = detail::floor_int(p.hi);

  std::vector<Coord> loc;
  loc.reserve(spec.n);
  switch (spec.family) {
    case Family::UniformInt:
      for (std::size_t i = 0; i < spec.n; ++i) loc.emplace_back(draw(ilo, ihi));
      break;
    case Family::UniformGrid: {
      const std::int64_t d = p.denominator;
      const std::int64_t lo = detail::ceil_int(p.lo * d);
      const std::int64_t hi = detail::floor_int(p.hi * d);
      if (lo > hi) throw InputError("grid range contains no lattice point");
      for (std::size_t i = 0; i < spec.n; ++i) loc.push_back(make_rational(draw(lo, hi), d));
      break;
    }
    case Family::Clustered: {
      const std::int64_t d = p.denominator;
      const std::int64_t lo = detail::ceil_int(p.lo * d);
      const std::int64_t hi = detail::floor_int(p.hi * d);
      if (lo > hi) throw InputError("grid range contains no lattice point");
      const std::int64_t jitter = detail::floor_int(p.spread * d);
      std::vector<Rational> centres;
      for (std::size_t c = 0; c < p.clusters; ++c) centres.push_back(make_rational(draw(lo, hi), d));
      for (std::size_t i = 0; i < spec.n; ++i) {
        const auto c = static_cast<std::size_t>(draw(0, static_cast<std::int64_t>(p.clusters) - 1));
        loc.push_back(centres[c] + make_rational(draw(-jitter, jitter), d));
      }
      break;
    }
    case Family::Coincident: {
      // At least ceil(n/2) agents share one coordinate; the rest may coincide too.
      const std::size_t shared = std::max<std::size_t>(2, (spec.n + 1) / 2);
      const Rational v(draw(ilo, ihi));
      for (std::size_t i = 0; i < shared; ++i) loc.push_back(v);
      const std::int64_t narrow_hi = std::min(ihi, ilo + 3);
      for (std::size_t i = shared; i < spec.n; ++i) loc.emplace_back(draw(ilo, narrow_hi));
      std::shuffle(loc.begin(), loc.end(), rng);
      break;
    }
  }
  return Instance(std::move(loc), spec.k, spec.variant);
}

inline std::vector<Instance> generate(const GenSpec& spec, std::size_t count) {
  detail::validate(spec);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(generate_one(spec, i));
  return out;
}

// Copy of `inst` with one agent's coordinate shifted by `delta`.
inline Instance perturb(const Instance& inst, std::size_t agent, const Coord& delta) {
  return inst.with_location(agent, inst.location(agent) + delta);
}

}  // namespace flp
