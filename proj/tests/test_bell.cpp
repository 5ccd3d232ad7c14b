#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "finpart/bell.hpp"
#include "oracles.hpp"

using namespace finpart;

namespace {

// Stirling numbers of the second kind, summed by row.
std::vector<BigNat> stirling_bell(std::size_t max_n) {
  std::vector<std::vector<BigNat>> s(max_n + 1, std::vector<BigNat>(max_n + 1, 0));
  s[0][0] = 1;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (std::size_t k = 1; k <= n; ++k) s[n][k] = BigNat(k) * s[n - 1][k] + s[n - 1][k - 1];
  std::vector<BigNat> out;
  for (const auto& row : s) {
    BigNat sum = 0;
    for (const auto& v : row) sum += v;
    out.push_back(sum);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Bell, KnownValues) {
  EXPECT_EQ(bell(0), 1);
  EXPECT_EQ(bell(2), 2);
  EXPECT_EQ(bell(10), 115975);
  EXPECT_EQ(bell_star(4), 4);
  EXPECT_EQ(bell_star(1), 0);
  EXPECT_EQ(bell_star(0), 1);
  EXPECT_EQ(bell(4), bell_star(4) + bell_star(5));
  EXPECT_EQ(bell(4), 15);
}

TEST(Bell, EnumerationOracle) {
  for (std::size_t n = 0; n <= 9; ++n) {
    std::uint64_t all = 0, star = 0;
    for (const auto& p : oracle::all_partitions(n)) {
      ++all;
      if (!oracle::has_singleton(p)) ++star;
    }
    EXPECT_EQ(bell(n), BigNat(all)) << n;
    EXPECT_EQ(bell_star(n), BigNat(star)) << n;
  }
}

TEST(Bell, StirlingOracleTo200) {
  const auto expected = stirling_bell(200);
  const auto table = bell_table(200);
  ASSERT_EQ(table.values.size(), 201u);
  for (std::size_t n = 0; n <= 200; ++n) EXPECT_EQ(table.values[n], expected[n]) << n;
}

TEST(Bell, StarIdentityTo300) {
  const auto t = bell_table(300);
  for (std::size_t n = 0; n < 300; ++n) EXPECT_EQ(t.values[n], t.star_values[n] + t.star_values[n + 1]) << n;
}

TEST(Bell, SharedTableCoversRequest) {
  auto t = shared_bell_table(50);
  EXPECT_GE(t->max_n, 50u);
  EXPECT_EQ(t->values[50], bell(50));
}

TEST(Bell, CsvMatchesGolden) {
  std::ostringstream out;
  write_bell_csv(out, bell_table(40));
  EXPECT_EQ(out.str(), read_file(FINPART_TEST_DATA "/bell_table.csv"));
}

TEST(BellMod, Examples) {
  std::string golden = read_file(FINPART_TEST_DATA "/bell_mod8.txt");
  std::string got;
  for (unsigned r : bell_mod(23, 8)) got += (got.empty() ? "" : ",") + std::to_string(r);
  EXPECT_EQ(got + "\n", golden);
  EXPECT_EQ(bell_mod(4, 2), (std::vector<unsigned>{1, 1, 0, 1, 1}));
  EXPECT_EQ(bell_mod(0, 8), (std::vector<unsigned>{1}));
  EXPECT_THROW(bell_mod(3, 1), std::invalid_argument);
}

TEST(BellMod, AgreesWithExactValues) {
  const auto t = bell_table(120);
  for (unsigned m : {2u, 3u, 7u, 8u, 10u, 97u}) {
    const auto r = bell_mod(120, m);
    for (std::size_t n = 0; n <= 120; ++n) EXPECT_EQ(BigNat(r[n]), t.values[n] % m);
  }
}

TEST(BellMod, PeriodCheck) {
  EXPECT_TRUE(check_mod8_period(100).passed());
  auto single = check_mod8_period(24);
  EXPECT_TRUE(single.passed());
  EXPECT_EQ(single.checks.front().instances, 1u);
  EXPECT_THROW(check_mod8_period(10), std::invalid_argument);
}

TEST(Dobinski, Examples) {
  auto close = [](std::size_t n, std::size_t k, const BigRat& tol) {
    auto d = dobinski(n, k);
    BigRat diff = d.approximation - BigRat(bell(n));
    if (diff < 0) diff = -diff;
    EXPECT_LE(diff, d.error_bound) << n;
    EXPECT_LT(diff, tol) << n;
  };
  close(5, 30, BigRat(1, 1000000));
  close(0, 30, BigRat(1, 1000000));
  close(10, 60, BigRat(1, 1000));
  EXPECT_THROW(dobinski(3, 0), std::invalid_argument);
}

TEST(Dobinski, BoundIsRigorous) {
  for (std::size_t n = 0; n <= 20; ++n)
    for (std::size_t k : {3u, 8u, 15u, 40u}) {
      auto d = dobinski(n, k);
      BigRat diff = d.approximation - BigRat(bell(n));
      if (diff < 0) diff = -diff;
      EXPECT_LE(diff, d.error_bound) << n << " " << k;
    }
}

TEST(GapScan, HoldsFrom23) {
  auto scan = star_gap_scan(300);
  EXPECT_TRUE(scan.holds_from_23);
  EXPECT_FALSE(scan.first_failure.has_value());
  // minimal n where 2^{2n+2} < B*_n, found by direct search
  std::size_t expected = 0;
  for (std::size_t n = 0;; ++n)
    if (pow2(2 * n + 2) < bell_star(n)) {
      expected = n;
      break;
    }
  EXPECT_EQ(scan.minimal_n, expected);
  EXPECT_LE(scan.minimal_n, 23u);
  EXPECT_THROW(star_gap_scan(22), std::invalid_argument);
}

TEST(PowerOfTwo, Scan) {
  EXPECT_TRUE(not_power_of_two_scan(300).passed());
  EXPECT_THROW(not_power_of_two_scan(2), std::invalid_argument);
  EXPECT_TRUE(is_power_of_two(bell(2)));
  EXPECT_TRUE(is_power_of_two(bell(1)));
  EXPECT_FALSE(is_power_of_two(BigNat(0)));
  EXPECT_FALSE(is_power_of_two(BigNat(6)));
}
