#include <gtest/gtest.h>

#include "finpart/scans.hpp"

using namespace finpart;

TEST(Rng, PerInstanceStreamsAreStable) {
  auto a = instance_rng(7, 3);
  auto b = instance_rng(7, 3);
  auto c = instance_rng(7, 4);
  auto d = instance_rng(8, 3);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  EXPECT_NE(first, d());
}

TEST(Rng, UniformHelpers) {
  auto rng = instance_rng(1, 1);
  for (int i = 0; i < 1000; ++i) {
    auto v = uniform_int(rng, 3, 5);
    EXPECT_GE(v, 3u);
    EXPECT_LE(v, 5u);
    auto big = uniform_below(rng, pow2(100));
    EXPECT_GE(big, 0);
    EXPECT_LT(big, pow2(100));
  }
  EXPECT_THROW(uniform_below(rng, BigNat(0)), std::invalid_argument);
}

TEST(Registry, SortedAndUnique) {
  const auto& reg = witness_registry();
  ASSERT_FALSE(reg.empty());
  for (std::size_t i = 1; i < reg.size(); ++i) EXPECT_LT(reg[i - 1].name, reg[i].name);
  EXPECT_NE(find_witness("an_to_bfin"), nullptr);
  EXPECT_EQ(find_witness("no_such_witness"), nullptr);
}

class RegistryRun : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RegistryRun, EveryWitnessPasses) {
  for (const auto& entry : witness_registry()) {
    ScanOptions options;
    options.seed = GetParam();
    auto report = entry.run(options);
    EXPECT_TRUE(report.passed()) << entry.name << "\n" << report.to_text();
    EXPECT_FALSE(report.checks.empty()) << entry.name;
    for (const auto& c : report.checks) EXPECT_GT(c.instances, 0u) << entry.name << ": " << c.property;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RegistryRun, ::testing::Values(0u, 20261015u));

TEST(Registry, ReportsAreDeterministic) {
  for (const char* name : {"diagonal_escape", "hs_disjointify", "quotient_surjection"}) {
    ScanOptions options;
    options.seed = 99;
    options.samples = 200;
    const auto* w = find_witness(name);
    ASSERT_NE(w, nullptr);
    EXPECT_EQ(w->run(options).to_json(false).dump(), w->run(options).to_json(false).dump()) << name;
  }
}

TEST(Harness, AnToBfinSmall) {
  auto one = scan_an_to_bfin(1);
  EXPECT_TRUE(one.passed());
  EXPECT_EQ(one.checks.front().instances, 6u);
  auto two = scan_an_to_bfin(2);
  EXPECT_TRUE(two.passed());
  EXPECT_EQ(two.checks.front().instances, 784u);
}

TEST(Harness, ReportJsonShape) {
  auto report = scan_cb_bijection(3);
  auto j = report.to_json(true);
  EXPECT_EQ(j["name"], report.name);
  EXPECT_TRUE(j.contains("params"));
  EXPECT_TRUE(j.contains("elapsed_ms"));
  ASSERT_TRUE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("property"));
    EXPECT_TRUE(c.contains("instances"));
    EXPECT_TRUE(c.contains("passed"));
    EXPECT_TRUE(c.contains("counterexample"));
  }
  EXPECT_FALSE(report.to_json(false).contains("elapsed_ms"));
}
