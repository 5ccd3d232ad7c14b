#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "finpart/bignum.hpp"
#include "finpart/report.hpp"

namespace finpart {

/// Per-instance random stream derived from (seed, instance index), so that a
/// report does not depend on how instances are batched.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform on [lo, hi].
std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi);
/// Uniform on [0, bound) up to a 2^-64 bias. Throws std::invalid_argument if bound <= 0.
BigNat uniform_below(std::mt19937_64& rng, const BigNat& bound);

/// Knobs shared by the witness harnesses; 0 selects the harness default.
struct ScanOptions {
  std::size_t size = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Harnesses used directly by the acceptance suite.
WitnessReport scan_fin_to_bfin(std::size_t max_ground);
WitnessReport scan_pow_to_partfin(std::size_t max_ground);
/// n <= 2: every tuple is decoded back; all n: images pairwise distinct.
WitnessReport scan_an_to_bfin(std::size_t n);
WitnessReport scan_diagonal_escape_exhaustive(std::size_t max_ground);
WitnessReport scan_diagonal_escape_random(std::size_t samples, std::size_t max_ground, std::uint64_t seed);
WitnessReport scan_hs_disjointify(std::size_t samples, std::size_t max_length, std::size_t element_bound,
                                  std::uint64_t seed);
WitnessReport scan_quotient_surjection(std::size_t samples, std::size_t max_ground, std::uint64_t seed);
WitnessReport scan_cb_bijection(std::size_t max_size);

struct WitnessEntry {
  std::string name;
  std::string summary;
  std::function<WitnessReport(const ScanOptions&)> run;
};

/// Every named construction with its verification oracle, sorted by name.
const std::vector<WitnessEntry>& witness_registry();
/// nullptr when no witness has this name.
const WitnessEntry* find_witness(const std::string& name);

}  // namespace finpart
