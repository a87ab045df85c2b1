#include <gtest/gtest.h>

#include <random>

#include "flp/flp.hpp"
#include "oracle.hpp"

using namespace flp;
using oracle::q;

namespace {

Instance inst(std::vector<Coord> xs, std::size_t k, Variant v) { return Instance(std::move(xs), k, v); }

// Random small instance with rational coordinates on a 1/8 lattice.
Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t k, Variant v) {
  std::uniform_int_distribution<long> coord(-40, 40);
  std::vector<Coord> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(q(coord(rng), 8));
  return Instance(std::move(xs), k, v);
}

}  // namespace

TEST(Instance, ValidatesShape) {
  EXPECT_THROW(inst({0}, 2, Variant::Sum), InputError);
  EXPECT_THROW(inst({0, 1}, 1, Variant::Sum), InputError);
  EXPECT_THROW(inst({0, 1}, 3, Variant::Sum), InfeasibleError);
  EXPECT_NO_THROW(inst({1, 1}, 2, Variant::Max));
}

TEST(Solution, RejectsDuplicateHosts) {
  EXPECT_THROW((Solution{1, 1}), InputError);
  EXPECT_EQ((Solution{2, 0}), (Solution{0, 2}));
}

TEST(Distance, Examples) {
  EXPECT_EQ(distance(0, 1), 1);
  EXPECT_EQ(distance(5, 5), 0);
  EXPECT_EQ(distance(q(-1, 2), 2), q(5, 2));
  EXPECT_EQ(distance(2, q(-1, 2)), q(5, 2));
}

TEST(AgentCost, Examples) {
  const Instance s = inst({0, 1, 2}, 2, Variant::Sum);
  EXPECT_EQ(agent_cost(s, Solution{0, 1}, 2), 3);

  const Instance m = inst({q(-1, 2), 0, 1, 2}, 2, Variant::Max);
  EXPECT_EQ(agent_cost(m, Solution{0, 1}, 3), q(5, 2));

  // Two coinciding agents host both facilities.
  const Instance c = inst({4, 4, 9}, 2, Variant::Sum);
  EXPECT_EQ(agent_cost(c, Solution{0, 1}, 0), 0);
  EXPECT_THROW(agent_cost(s, Solution{0, 1}, 3), InputError);
  EXPECT_THROW(agent_cost(s, Solution{0, 1, 2}, 0), InputError);
}

TEST(SocialCost, Examples) {
  const Instance s = inst({0, 1, 2}, 2, Variant::Sum);
  EXPECT_EQ(social_cost(s, Solution{0, 1}), 5);
  EXPECT_EQ(social_cost(s, Solution{0, 2}), 6);

  const Instance m = inst({q(-1, 2), 0, 1, 2}, 2, Variant::Max);
  EXPECT_EQ(social_cost(m, Solution{0, 1}), 5);
  EXPECT_EQ(social_cost(m, Solution{1, 2}), q(11, 2));
}

TEST(ExpectedSocialCost, Examples) {
  const Instance s = inst({0, 1, 2}, 2, Variant::Sum);
  const Lottery half({{Solution{0, 1}, q(1, 2)}, {Solution{1, 2}, q(1, 2)}});
  EXPECT_EQ(expected_social_cost(s, half), 5);
  EXPECT_EQ(expected_social_cost(s, Lottery::point_mass(Solution{0, 2})),
            social_cost(s, Solution{0, 2}));

  const Instance m = inst({0, 0, 1}, 2, Variant::Max);
  const Lottery mix({{Solution{0, 1}, q(1, 2)}, {Solution{1, 2}, q(1, 2)}});
  EXPECT_EQ(expected_social_cost(m, mix), 2);
  EXPECT_EQ(expected_social_cost(m, mix),
            (oracle::social({0, 0, 1}, {0, 0}, Variant::Max) +
             oracle::social({0, 0, 1}, {0, 1}, Variant::Max)) / 2);
}

TEST(Lottery, EnforcesDistribution) {
  EXPECT_THROW(Lottery({{Solution{0, 1}, q(1, 2)}}), InvariantError);
  EXPECT_THROW(Lottery({{Solution{0, 1}, q(3, 2)}, {Solution{1, 2}, q(-1, 2)}}), InvariantError);
  const Lottery merged({{Solution{0, 1}, q(1, 3)}, {Solution{1, 0}, q(2, 3)}});
  ASSERT_EQ(merged.support().size(), 1u);
  EXPECT_TRUE(merged.is_deterministic());
  const Lottery dropped({{Solution{0, 1}, 1}, {Solution{1, 2}, 0}});
  EXPECT_EQ(dropped.support().size(), 1u);
}

TEST(ExpectedAgentCost, Examples) {
  const Instance s = inst({0, 1, 3}, 2, Variant::Sum);
  const Lottery rp({{Solution{0, 1}, q(2, 3)}, {Solution{1, 2}, q(1, 3)}});
  // (2/3)(3 + 2) + (1/3)(2 + 0)
  EXPECT_EQ(expected_agent_cost(s, rp, 2, 3), q(2, 3) * 5 + q(1, 3) * 2);
  EXPECT_EQ(expected_agent_cost(s, rp, 2, 3), 4);

  const Instance t = inst({0, 1, 2}, 2, Variant::Sum);
  EXPECT_EQ(expected_agent_cost(t, Lottery::point_mass(Solution{0, 1}), 2, 2), 3);

  const Instance c = inst({7, 7, 7}, 2, Variant::Max);
  const Lottery all({{Solution{0, 1}, q(1, 2)}, {Solution{1, 2}, q(1, 2)}});
  EXPECT_EQ(expected_agent_cost(c, all, 1, 7), 0);
  EXPECT_THROW(expected_agent_cost(c, all, 5, 7), InputError);
}

TEST(OrderStats, Examples) {
  const OrderStats a = order_stats(inst({0, 1, 2}, 2, Variant::Sum));
  EXPECT_EQ(a.median_lo(), 1u);
  EXPECT_EQ(a.median_hi(), 1u);
  EXPECT_EQ(a.left(), 0u);
  EXPECT_EQ(a.right(), 2u);

  const Instance even = inst({3, 0, 2, 1}, 2, Variant::Sum);
  const OrderStats b = order_stats(even);
  EXPECT_EQ(even.location(b.median_lo()), 1);
  EXPECT_EQ(even.location(b.median_hi()), 2);

  // Ties broken by reported index: the median is the second agent at 0.
  const OrderStats c = order_stats(inst({0, 0, 1}, 2, Variant::Sum));
  EXPECT_EQ((std::vector<std::size_t>{0, 1, 2}), c.sorted);
  EXPECT_EQ(c.median_lo(), 1u);
  EXPECT_EQ(c.right(), 2u);

  const OrderStats d = order_stats(inst({1, 0, 0}, 2, Variant::Sum));
  EXPECT_EQ((std::vector<std::size_t>{1, 2, 0}), d.sorted);
  EXPECT_EQ(d.median_lo(), 2u);

  const OrderStats two = order_stats(inst({5, 4}, 2, Variant::Sum));
  EXPECT_FALSE(two.left().has_value());
  EXPECT_EQ(two.right(), 0u);
}

TEST(LemmaPairCost, Examples) {
  const Instance s = inst({0, 1, 3}, 2, Variant::Sum);
  EXPECT_EQ(lemma_pair_cost(s, Side::Right), 8);
  EXPECT_EQ(lemma_pair_cost(s, Side::Left), 7);
  EXPECT_EQ(lemma_pair_cost(s, Side::Right), oracle::social({0, 1, 3}, {1, 3}, Variant::Sum));
  EXPECT_EQ(lemma_pair_cost(s, Side::Left), oracle::social({0, 1, 3}, {0, 1}, Variant::Sum));
  const Instance c = inst({q(1, 3), q(1, 3), q(1, 3)}, 2, Variant::Sum);
  EXPECT_EQ(lemma_pair_cost(c, Side::Left), 0);
  EXPECT_EQ(lemma_pair_cost(c, Side::Right), 0);
  EXPECT_THROW(lemma_pair_cost(inst({0, 1, 2, 3}, 2, Variant::Sum), Side::Left), PreconditionError);
}

TEST(ModelProperties, LemmaPairCostMatchesDirectCost) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 3 + 2 * (trial % 4);
    const Instance s = random_instance(rng, n, 2, Variant::Sum);
    const OrderStats st = order_stats(s);
    EXPECT_EQ(lemma_pair_cost(s, Side::Left), social_cost(s, Solution{*st.left(), st.median_lo()}));
    EXPECT_EQ(lemma_pair_cost(s, Side::Right), social_cost(s, Solution{st.median_lo(), *st.right()}));
  }
}

TEST(ModelProperties, PermutationTranslationAndScaling) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t k = 2 + trial % (n - 1);
    const Variant v = trial % 2 ? Variant::Max : Variant::Sum;
    const Instance base = random_instance(rng, n, k, v);
    const Solution sol = enumerate_solutions(base)[static_cast<std::size_t>(trial) % binomial(n, k)];
    const Coord cost = social_cost(base, sol);

    // Reverse the report order and remap the hosts accordingly.
    std::vector<Coord> reversed(base.locations().rbegin(), base.locations().rend());
    std::vector<std::size_t> hosts;
    for (std::size_t h : sol.hosts()) hosts.push_back(n - 1 - h);
    EXPECT_EQ(social_cost(Instance(reversed, k, v), Solution(hosts)), cost);

    const Coord shift = q(-17, 3);
    const Coord scale = q(5, 7);
    std::vector<Coord> shifted;
    std::vector<Coord> scaled;
    for (const Coord& x : base.locations()) {
      shifted.push_back(x + shift);
      scaled.push_back(x * scale);
    }
    EXPECT_EQ(social_cost(Instance(shifted, k, v), sol), cost);
    EXPECT_EQ(social_cost(Instance(scaled, k, v), sol), cost * scale);
  }
}

TEST(ModelProperties, MaxSumSandwich) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t k = 2 + trial % (n - 1);
    const Instance s = random_instance(rng, n, k, Variant::Sum);
    const Instance m = s.with_variant(Variant::Max);
    for (const Solution& sol : enumerate_solutions(s)) {
      for (std::size_t i = 0; i < n; ++i) {
        const Coord cs = agent_cost(s, sol, i);
        const Coord cm = agent_cost(m, sol, i);
        EXPECT_LE(cm, cs);
        EXPECT_LE(cs, static_cast<long>(k) * cm);
      }
    }
  }
}

TEST(ModelProperties, PointMassExpectationMatchesCostAndOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const Variant v = trial % 2 ? Variant::Max : Variant::Sum;
    const Instance s = random_instance(rng, n, 2, v);
    for (const Solution& sol : enumerate_solutions(s)) {
      EXPECT_EQ(expected_social_cost(s, Lottery::point_mass(sol)), social_cost(s, sol));
      EXPECT_EQ(social_cost(s, sol),
                oracle::social(s.locations(), facility_coordinates(s, sol), v));
    }
  }
}
