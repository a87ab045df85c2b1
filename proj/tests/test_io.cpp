#include <gtest/gtest.h>

#include <sstream>

#include "flp/flp.hpp"
#include "oracle.hpp"

using namespace flp;
using oracle::q;

namespace {

io::FileError parse_error_of(const std::string& text) {
  try {
    io::parse_instance(text);
  } catch (const io::FileError& e) {
    return e;
  }
  throw std::logic_error("expected a FileError for: " + text);
}

}  // namespace

TEST(InstanceFile, ParsesExactValues) {
  const Instance i = io::parse_instance(
      R"({"version": 1, "k": 2, "variant": "max", "locations": ["0", "1.5", "-3/2", "0.1"]})");
  EXPECT_EQ(i.k(), 2u);
  EXPECT_EQ(i.variant(), Variant::Max);
  EXPECT_EQ(i.locations(), (std::vector<Coord>{0, q(3, 2), q(-3, 2), q(1, 10)}));
  EXPECT_EQ(io::parse_instance(R"({"k": 3, "variant": "sum", "locations": ["1", "2", "3"]})").n(), 3u);
}

TEST(InstanceFile, BadNumberReportsLineAndColumn) {
  const std::string text = "{\n  \"k\": 2,\n  \"variant\": \"sum\",\n  \"locations\": [\"0\", \"1x\"]\n}\n";
  const io::FileError e = parse_error_of(text);
  EXPECT_EQ(e.line(), 4u);
  // The 'x' in "1x": `  "locations": ["0", "1` is 23 characters.
  EXPECT_EQ(e.column(), 24u);
  EXPECT_NE(std::string(e.what()).find("line 4, column 24"), std::string::npos) << e.what();
}

TEST(InstanceFile, RepeatedBadLiteralPointsAtTheFailingOne) {
  const std::string text = R"({"k": 2, "variant": "sum", "locations": ["5", "1e3"]})";
  const io::FileError e = parse_error_of(text);
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), text.find("1e3") + 2);
}

TEST(InstanceFile, StructuralErrors) {
  EXPECT_EQ(parse_error_of("{\"k\": 2,\n \"variant\": \"sum\", \"locations\": [\"0\", \"1\"]\n").line(), 3u);
  EXPECT_NO_THROW(parse_error_of(R"({"k": -1, "variant": "sum", "locations": ["0", "1"]})"));
  EXPECT_NO_THROW(parse_error_of(R"({"k": 2, "variant": "avg", "locations": ["0", "1"]})"));
  EXPECT_NO_THROW(parse_error_of(R"({"k": 2, "variant": "sum", "locations": [0, 1]})"));
  EXPECT_NO_THROW(parse_error_of(R"({"variant": "sum", "locations": ["0", "1"]})"));
  EXPECT_NO_THROW(parse_error_of("[]"));
  EXPECT_THROW(io::parse_instance(R"({"k": 3, "variant": "sum", "locations": ["0", "1"]})"),
               InfeasibleError);
}

TEST(InstanceFile, RejectsOtherVersions) {
  const io::FileError e =
      parse_error_of(R"({"version": 2, "k": 2, "variant": "sum", "locations": ["0", "1"]})");
  EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
}

TEST(InstanceFile, ExactRoundTrip) {
  const Instance i({q(-7, 3), q(1, 1000000007), 0, q(22, 7)}, 3, Variant::Max);
  const std::string text = io::write_instance(i);
  EXPECT_EQ(io::parse_instance(text), i);
  EXPECT_EQ(io::write_instance(io::parse_instance(text)), text);
  EXPECT_EQ(io::instance_digest(io::parse_instance(text)), io::instance_digest(i));
  EXPECT_NE(io::instance_digest(i.with_variant(Variant::Sum)), io::instance_digest(i));
}

TEST(ReportJson, RationalFieldsReparseLosslessly) {
  const RatioReport r =
      approx_ratio(MechanismId::ReverseProportional, Instance({0, 1, 3}, 2, Variant::Sum));
  const io::json j = io::ratio_report_to_json(r);
  EXPECT_EQ(j["ratio"], "22/21");
  EXPECT_EQ(j["social_cost"], "22/3");
  EXPECT_EQ(j["optimal_cost"], "7");
  EXPECT_EQ(parse_rational(j["ratio"].get<std::string>()), r.ratio);
  EXPECT_NEAR(j["ratio_float"].get<double>(), 22.0 / 21.0, 1e-12);
  EXPECT_EQ(io::parse_instance(j["instance"].dump()), r.instance);
  ASSERT_EQ(j["lottery"].size(), 2u);
  EXPECT_EQ(j["lottery"][0]["probability"], "2/3");
  EXPECT_EQ(j["lottery"][1]["probability"], "1/3");
}

TEST(ReportJson, ViolationRoundTrip) {
  const SpViolation v{2, 3, q(3, 2), 5, q(7, 2)};
  const SpViolation back = io::violation_from_json(io::violation_to_json(v));
  EXPECT_EQ(back.agent, v.agent);
  EXPECT_EQ(back.true_location, v.true_location);
  EXPECT_EQ(back.misreport, v.misreport);
  EXPECT_EQ(back.honest_cost, v.honest_cost);
  EXPECT_EQ(back.deviated_cost, v.deviated_cost);
}

TEST(SweepCsv, RoundTripWithMaxRow) {
  const std::vector<io::SweepRow> rows{{0, 3, 2, Variant::Sum, q(22, 3), 7, q(22, 21)},
                                       {1, 3, 2, Variant::Sum, 3, 2, q(3, 2)},
                                       {2, 4, 2, Variant::Max, 5, 5, 1}};
  std::stringstream ss;
  io::write_sweep_csv(ss, rows);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), io::kSweepHeader);
  EXPECT_NE(text.find("\nmax,,,,,,3/2,1.5\n"), std::string::npos) << text;
  const io::Sweep back = io::read_sweep_csv(ss);
  EXPECT_EQ(back.rows, rows);
  EXPECT_EQ(back.max_ratio, q(3, 2));
}

TEST(SweepCsv, RejectsMalformedRows) {
  std::stringstream no_header("0,3,2,sum,1,1,1,1\n");
  EXPECT_THROW(io::read_sweep_csv(no_header), io::FileError);
  std::stringstream short_row(std::string(io::kSweepHeader) + "\n0,3,2\n");
  try {
    io::read_sweep_csv(short_row);
    FAIL();
  } catch (const io::FileError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::stringstream bad_value(std::string(io::kSweepHeader) + "\n0,3,2,sum,x,1,1,1\n");
  EXPECT_THROW(io::read_sweep_csv(bad_value), io::FileError);
}

TEST(GenSpecJson, RoundTripAndDefaults) {
  GenSpec g;
  g.family = Family::Clustered;
  g.n = 9;
  g.k = 4;
  g.variant = Variant::Max;
  g.seed = 123456789012345ULL;
  g.params.lo = q(-5, 2);
  g.params.hi = 7;
  g.params.denominator = 16;
  g.params.clusters = 3;
  g.params.spread = q(1, 8);
  EXPECT_EQ(io::parse_genspec(io::genspec_to_json(g).dump()), g);
  EXPECT_EQ(io::parse_genspec("{}"), GenSpec{});
  EXPECT_EQ(io::parse_genspec(R"({"n": 6})").n, 6u);
  EXPECT_THROW(io::parse_genspec(R"({"family": "nope"})"), io::FileError);
  EXPECT_THROW(io::parse_genspec(R"({"n": "six"})"), io::FileError);
}
