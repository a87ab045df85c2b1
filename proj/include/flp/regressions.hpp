#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flp/bounds.hpp"
#include "flp/verification.hpp"

namespace flp {

using MechanismFn = std::function<Lottery(const Instance&)>;

// Ratio of a mechanism on a fixed instance, checked exactly and/or against a range.
struct RatioFixture {
  std::string name;
  std::string mechanism;  // label only
  MechanismFn apply;
  Instance instance;
  std::optional<Rational> exactly;
  std::optional<Rational> at_least;
  std::optional<Rational> at_most;
};

// Brute-force optimum of a fixed instance, plus a named competing solution that must lose.
struct OptimumFixture {
  std::string name;
  Instance instance;
  std::vector<Coord> optimal_coordinates;
  Rational optimal_cost;
  Solution competitor;
  Rational competitor_cost;
};

using Fixture = std::variant<RatioFixture, OptimumFixture>;

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string details;
};

inline std::string_view fixture_name(const Fixture& f) {
  return std::visit([](const auto& x) -> std::string_view { return x.name; }, f);
}

namespace detail {

inline Instance make_instance(std::initializer_list<Coord> locations, std::size_t k, Variant v) {
  return Instance(std::vector<Coord>(locations), k, v);
}

inline RatioFixture ratio_fixture(std::string name, MechanismId id, Instance inst) {
  return RatioFixture{std::move(name), std::string(cli_name(id)), ById{id}, std::move(inst),
                      std::nullopt, std::nullopt, std::nullopt};
}

inline std::string join_coords(const std::vector<Coord>& coords) {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += to_string(coords[i]);
  }
  return s + ")";
}

inline FixtureResult run(const RatioFixture& f) {
  FixtureResult res{f.name, false, {}};
  std::optional<RatioMeasurement> measured;
  try {
    measured.emplace(measure_ratio(f.apply, f.instance));
  } catch (const PreconditionError& e) {
    res.details = "fixture misconfiguration: " + std::string(e.what());
    return res;
  }
  const RatioMeasurement& m = *measured;
  std::string why;
  if (f.exactly && m.ratio != *f.exactly) why = "expected ratio " + to_string(*f.exactly);
  if (f.at_least && m.ratio < *f.at_least) why = "expected ratio >= " + to_string(*f.at_least);
  if (f.at_most && m.ratio > *f.at_most) why = "expected ratio <= " + to_string(*f.at_most);
  res.passed = why.empty();
  res.details = f.mechanism + " ratio " + to_string(m.ratio) + " (" + to_float_string(m.ratio) +
                ") = " + to_string(m.mech_cost) + " / " + to_string(m.opt_cost);
  if (!res.passed) res.details += "; " + why;
  return res;
}

inline FixtureResult run(const OptimumFixture& f) {
  FixtureResult res{f.name, false, {}};
  const OptResult opt = brute_force_optimal(f.instance);
  const std::vector<Coord> coords = facility_coordinates(f.instance, opt.solution);
  const Coord competitor = social_cost(f.instance, f.competitor);
  const std::vector<Coord> comp_coords = facility_coordinates(f.instance, f.competitor);
  res.details = "optimum " + join_coords(coords) + " cost " + to_string(opt.cost) + ", " +
                join_coords(comp_coords) + " cost " + to_string(competitor);
  std::string why;
  if (coords != f.optimal_coordinates) why += "; expected optimum " + join_coords(f.optimal_coordinates);
  if (opt.cost != f.optimal_cost) why += "; expected optimal cost " + to_string(f.optimal_cost);
  if (competitor != f.competitor_cost) why += "; expected competitor cost " + to_string(f.competitor_cost);
  if (!(opt.cost < competitor)) why += "; competitor is not strictly worse";
  res.passed = why.empty();
  res.details += why;
  return res;
}

}  // namespace detail

/// Lower-bound constructions replayed on the mechanisms that attain them.
inline std::vector<Fixture> standard_fixtures() {
  using detail::make_instance;
  using detail::ratio_fixture;
  using M = MechanismId;
  const Variant S = Variant::Sum;
  const Variant X = Variant::Max;
  std::vector<Fixture> out;

  auto a = ratio_fixture("sum-det-3/2", M::MedianRight, make_instance({0, 0, 1}, 2, S));
  a.exactly = make_rational(3, 2);
  out.emplace_back(std::move(a));

  auto b = ratio_fixture("sum-rand-1.0557", M::ReverseProportional,
                         make_instance({0, make_rational(2361, 10000), 1}, 2, S));
  b.at_least = make_rational(10557, 10000);
  b.at_most = reverse_proportional_bound();
  out.emplace_back(std::move(b));

  auto c = ratio_fixture("max-det-3", M::MedianRight, make_instance({0, 0, 1}, 2, X));
  c.exactly = 3;
  out.emplace_back(std::move(c));

  auto d = ratio_fixture("max-rand-2", M::UniformLR, make_instance({0, 0, 1}, 2, X));
  d.exactly = 2;
  out.emplace_back(std::move(d));

  auto e = ratio_fixture("sum-k-lower", M::MedianBall,
                         make_instance({0, 1, 1, 1 + make_rational(1, 1000)}, 3, S));
  e.at_least = make_rational(5, 3) - make_rational(1, 100);
  out.emplace_back(std::move(e));

  auto f = ratio_fixture("max-k-lower", M::MedianBall, make_instance({0, 1, 1, 1}, 3, X));
  f.exactly = 4;
  out.emplace_back(std::move(f));

  // Agents 0..3 sit at -1/2, 0, 1, 2; the two-medians solution is agents 1 and 2.
  out.emplace_back(OptimumFixture{"max-structure-counterexample",
                                  make_instance({make_rational(-1, 2), 0, 1, 2}, 2, X),
                                  {make_rational(-1, 2), 0},
                                  5,
                                  Solution{1, 2},
                                  make_rational(11, 2)});
  return out;
}

inline FixtureResult run_fixture(const Fixture& f) {
  return std::visit([](const auto& x) { return detail::run(x); }, f);
}

// Runs every standard fixture, or only the one named `only`; an unknown name is an InputError.
inline std::vector<FixtureResult> run_regressions(std::optional<std::string_view> only = {}) {
  std::vector<FixtureResult> results;
  for (const Fixture& f : standard_fixtures()) {
    if (only && fixture_name(f) != *only) continue;
    results.push_back(run_fixture(f));
  }
  if (only && results.empty()) throw InputError("unknown fixture '" + std::string(*only) + "'");
  return results;
}

}  // namespace flp
