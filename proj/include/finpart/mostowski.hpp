#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "finpart/bignum.hpp"
#include "finpart/partition.hpp"
#include "finpart/report.hpp"

namespace finpart {

/// Atoms of the ordered model: exact rationals.
using Rat = BigRat;

/// Accepts "p", "-p" and "p/q" (q > 0). Throws std::invalid_argument.
Rat parse_rat(const std::string& text);
std::string format_rat(const Rat& r);
/// Comma-separated list; the empty string is the empty list.
std::vector<Rat> parse_rat_list(const std::string& text);
std::string format_rat_list(const std::vector<Rat>& atoms);

/// A subset of the rational line supported by a finite set of atoms.
/// mask[2i] is the open region just below support[i], mask[2i+1] is the point
/// support[i] and mask[2n] is the region above the last point.
class SupportedSubset {
 public:
  SupportedSubset() : mask_{false} {}
  /// Throws std::invalid_argument unless the support is strictly increasing
  /// and |mask| = 2|support| + 1. The value is not reduced.
  SupportedSubset(std::vector<Rat> support, std::vector<bool> mask);

  const std::vector<Rat>& support() const { return support_; }
  const std::vector<bool>& mask() const { return mask_; }
  /// No support point has a constant (left, point, right) pattern.
  bool is_reduced() const;
  std::string mask_string() const;
  std::string to_string() const;

  friend auto operator<=>(const SupportedSubset&, const SupportedSubset&) = default;
  friend bool operator==(const SupportedSubset&, const SupportedSubset&) = default;

 private:
  std::vector<Rat> support_;
  std::vector<bool> mask_;
};

/// Parses a 0/1 string into a mask. Throws std::invalid_argument.
std::vector<bool> parse_mask(const std::string& bits);

/// Drops every support point with a constant pattern; the result has the
/// least support. Throws std::invalid_argument on a length mismatch.
SupportedSubset reduce(const std::vector<Rat>& support, const std::vector<bool>& mask);
SupportedSubset reduce(const SupportedSubset& s);

bool membership(const SupportedSubset& s, const Rat& x);

/// Subsets supported by an n-element set: 2^(2n+1).
BigNat count_supported(std::size_t n);
/// Subsets whose least support is a given n-element set.
BigNat count_reduced_masks(std::size_t n);

/// Position of the mask among reduced masks over the same support, in
/// lexicographic order with position 0 most significant and 0 < 1.
/// Throws std::invalid_argument if s is not reduced.
BigNat rank_with_least_support(const SupportedSubset& s);
/// Throws std::out_of_range when k >= count_reduced_masks(|support|).
SupportedSubset unrank_with_least_support(const std::vector<Rat>& support, const BigNat& k);

/// The order automorphism of Q through the given points: linear between
/// consecutive points and a translation outside them.
class OrderAutomorphism {
 public:
  OrderAutomorphism() = default;
  /// Throws std::invalid_argument unless sources and images both strictly increase.
  explicit OrderAutomorphism(std::vector<std::pair<Rat, Rat>> points);

  Rat operator()(const Rat& x) const;
  const std::vector<std::pair<Rat, Rat>>& points() const { return points_; }

 private:
  std::vector<std::pair<Rat, Rat>> points_;
};

/// Throws std::invalid_argument if a support point is not among the map's sources.
SupportedSubset apply_automorphism(const SupportedSubset& s, const OrderAutomorphism& pi);

/// A finitary partition of the line: `inner` partitions `carrier` with no
/// singleton blocks; every other atom is a singleton.
struct SupportedPartition {
  std::vector<Rat> carrier;
  Partition inner;

  /// carrier=...;rgs=...;+singletons
  std::string to_string() const;

  friend auto operator<=>(const SupportedPartition&, const SupportedPartition&) = default;
  friend bool operator==(const SupportedPartition&, const SupportedPartition&) = default;
};

struct MostowskiParams {
  std::vector<Rat> d;
  std::size_t threshold = 23;

  /// D = {0, ..., 45}, threshold 23.
  static MostowskiParams defaults();
  /// Throws std::invalid_argument unless D is strictly increasing with 46
  /// atoms and threshold >= 1.
  void validate() const;
};

class GuardViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MostowskiImage {
  SupportedPartition partition;
  bool large_support = false;  // |E| >= threshold: carrier E, index k
  BigNat subset_rank;          // k
  BigNat partition_index;
};

/// The injection P(A) -> B(A) of the model. The input is reduced first.
/// Throws GuardViolation if an index bound fails.
MostowskiImage mostowski_inject_detailed(const SupportedSubset& c, const MostowskiParams& params);
SupportedPartition mostowski_inject(const SupportedSubset& c, const MostowskiParams& params);

/// Exact bound checks for every |E| <= max_support: 2^(2e+1) < B*_e in the
/// large branch, and B*_n - k - 1 > 2^(2n+1) for every reachable n = |D xor E|
/// and every k < 2^(2e+1) otherwise.
WitnessReport branch_guard_scan(const MostowskiParams& params, std::size_t max_support);

/// Every mask over the whole pool (one per subset the pool supports) is
/// reduced and mapped; the outputs must be pairwise distinct.
WitnessReport injectivity_scan(const std::vector<Rat>& pool, const MostowskiParams& params);

/// For each n <= max_n, classifies all 2^(2n+1) masks over an n-element
/// support by least support and checks the totals against the formula.
WitnessReport support_count_scan(std::size_t max_n);

}  // namespace finpart
