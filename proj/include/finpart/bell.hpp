#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "finpart/bignum.hpp"
#include "finpart/report.hpp"

namespace finpart {

/// Exact B_n and B*_n (partitions without singleton blocks) for n <= max_n.
/// star_values[0] = 1 and star_values[n+1] = values[n] - star_values[n].
struct BellTable {
  std::size_t max_n = 0;
  std::vector<BigNat> values;
  std::vector<BigNat> star_values;
};

/// Bell triangle (Aitken array), one row of memory.
BellTable bell_table(std::size_t max_n);

/// Process-wide immutable table covering at least max_n; safe to share.
std::shared_ptr<const BellTable> shared_bell_table(std::size_t max_n);

BigNat bell(std::size_t n);
BigNat bell_star(std::size_t n);

/// B_0..B_max_n reduced mod `modulus`, computed with the triangle reduced mod
/// `modulus`. Throws std::invalid_argument when modulus < 2.
std::vector<unsigned> bell_mod(std::size_t max_n, unsigned modulus);

/// B_{n+24} == B_n (mod 8) for every n with n + 24 <= max_n.
/// Throws std::invalid_argument when max_n < 24.
WitnessReport check_mod8_period(std::size_t max_n);

struct DobinskiEstimate {
  BigRat approximation;
  BigRat error_bound;  // |approximation - B_n| <= error_bound, rigorously
};

/// Truncated Dobinski sum over k < terms, times the first `terms` terms of
/// the alternating series for 1/e. Throws std::invalid_argument when terms == 0.
DobinskiEstimate dobinski(std::size_t n, std::size_t terms);

struct StarGapScan {
  bool holds_from_23 = true;      // 2^{2n+2} < B*_n for all 23 <= n <= max_n
  std::size_t minimal_n = 0;      // least n <= max_n where the inequality holds
  std::optional<std::size_t> first_failure;
};

/// Throws std::invalid_argument when max_n < 23.
StarGapScan star_gap_scan(std::size_t max_n);

/// Exact test that B_m is not a power of two for 3 <= m <= max_n.
/// Throws std::invalid_argument when max_n < 3.
WitnessReport not_power_of_two_scan(std::size_t max_n);

/// Header `n,B_n,B_n_star`, one decimal row per n.
void write_bell_csv(std::ostream& out, const BellTable& table);

}  // namespace finpart
