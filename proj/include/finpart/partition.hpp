#pragma once

#include <compare>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "finpart/bignum.hpp"

namespace finpart {

using ElementSet = std::set<std::size_t>;
using SetFamily = std::set<ElementSet>;

/// A set partition of the ground set {0, ..., n-1}, stored as its restricted
/// growth string: rgs[0] == 0 and rgs[i] <= 1 + max(rgs[0..i)).
///
/// Block labels are therefore ordered by least element, and two partitions are
/// equal iff their strings are. The defaulted ordering is RGS-lexicographic for
/// partitions of the same ground set.
class Partition {
 public:
  Partition() = default;

  /// Throws std::invalid_argument unless `rgs` is a valid restricted growth string.
  static Partition from_rgs(std::vector<std::size_t> rgs);

  /// Builds the canonical partition from an arbitrary list of blocks.
  /// Throws std::invalid_argument if the blocks are empty, overlap, leave a
  /// gap or mention an element >= ground_size.
  static Partition from_blocks(std::size_t ground_size, const std::vector<ElementSet>& blocks);

  /// Relabels an arbitrary label sequence into canonical form.
  static Partition from_labels(const std::vector<std::size_t>& labels);

  static Partition discrete(std::size_t ground_size);
  static Partition single_block(std::size_t ground_size);

  std::size_t ground_size() const { return rgs_.size(); }
  const std::vector<std::size_t>& rgs() const { return rgs_; }
  std::size_t block_count() const { return block_count_; }
  std::size_t label(std::size_t x) const { return rgs_.at(x); }

  /// Blocks ordered by least element.
  std::vector<ElementSet> blocks() const;
  /// The non-singleton blocks, ordered by least element.
  std::vector<ElementSet> ns() const;
  /// Union of the non-singleton blocks.
  ElementSet ns_union() const;
  /// The block containing x. Throws std::out_of_range.
  ElementSet block_of(std::size_t x) const;
  std::vector<std::size_t> block_sizes() const;
  bool has_singleton() const;

  /// x ~P y. Throws std::out_of_range for indices outside the ground set.
  bool same_block(std::size_t x, std::size_t y) const;

  /// Compact form: one digit per element when every label is below 10,
  /// comma-separated otherwise.
  std::string to_string() const;
  /// Inverse of to_string. Throws std::invalid_argument.
  static Partition parse(const std::string& text);

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  explicit Partition(std::vector<std::size_t> rgs, std::size_t blocks)
      : rgs_(std::move(rgs)), block_count_(blocks) {}

  std::vector<std::size_t> rgs_;
  std::size_t block_count_ = 0;
};

/// A subset of {0, ..., n-1}.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::vector<bool> bits) : bits_(std::move(bits)) {}
  SubsetMask(std::size_t ground_size, const ElementSet& members);

  /// Bit i of `value` is membership of element i.
  static SubsetMask from_integer(std::size_t ground_size, std::uint64_t value);
  /// Parses a 0/1 string, element 0 first. Throws std::invalid_argument.
  static SubsetMask parse(const std::string& bits);

  std::size_t ground_size() const { return bits_.size(); }
  bool contains(std::size_t x) const { return bits_.at(x); }
  std::size_t count() const;
  ElementSet elements() const;
  std::uint64_t to_integer() const;
  const std::vector<bool>& bits() const { return bits_; }
  std::string to_string() const;

  friend auto operator<=>(const SubsetMask&, const SubsetMask&) = default;
  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  std::vector<bool> bits_;
};

/// A total function on {0, ..., domain_size-1} given by its value table.
template <class Value>
struct FiniteFunction {
  std::vector<Value> table;

  std::size_t domain_size() const { return table.size(); }
  const Value& operator()(std::size_t x) const { return table.at(x); }

  std::set<Value> range() const { return {table.begin(), table.end()}; }

  ElementSet fiber(const Value& z) const {
    ElementSet out;
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x] == z) out.insert(x);
    }
    return out;
  }

  std::map<Value, ElementSet> fibers() const {
    std::map<Value, ElementSet> out;
    for (std::size_t x = 0; x < table.size(); ++x) out[table[x]].insert(x);
    return out;
  }
};

/// For each value z in the range of some map, a partition of the fiber over z
/// given by its blocks (in ground-set labels).
template <class Key>
using AuxiliaryAssignment = std::map<Key, SetFamily>;

struct AuxiliaryCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Checks that every fiber partition covers exactly its fiber and has a
/// block of size at least two.
template <class Key>
AuxiliaryCheck check_auxiliary(const AuxiliaryAssignment<Key>& aux, const FiniteFunction<Key>& map) {
  const auto fibers = map.fibers();
  if (aux.size() != fibers.size()) return {false, "domain of assignment differs from range of map"};
  for (const auto& [value, fiber] : fibers) {
    auto it = aux.find(value);
    if (it == aux.end()) return {false, "range value without a fiber partition"};
    ElementSet covered;
    bool has_pair = false;
    for (const auto& block : it->second) {
      if (block.empty()) return {false, "empty block"};
      if (block.size() >= 2) has_pair = true;
      for (std::size_t x : block) {
        if (!fiber.contains(x)) return {false, "block leaves its fiber"};
        if (!covered.insert(x).second) return {false, "blocks overlap"};
      }
    }
    if (covered.size() != fiber.size()) return {false, "fiber not covered"};
    if (!has_pair) return {false, "fiber partition has no non-singleton block"};
  }
  return {};
}

template <class Key>
bool is_auxiliary_for(const AuxiliaryAssignment<Key>& aux, const FiniteFunction<Key>& map) {
  return check_auxiliary(aux, map).ok;
}

// ---------------------------------------------------------------------------
// Enumeration and ranking. Both classes use RGS-lexicographic order.

/// Calls `visit` on every partition of {0..n-1} (only those without singleton
/// blocks when `no_singletons`), in strictly increasing RGS-lex order.
void for_each_partition(std::size_t n, bool no_singletons,
                        const std::function<void(const Partition&)>& visit);

std::vector<Partition> enumerate_partitions(std::size_t n, bool no_singletons);

/// Number of ways to extend a prefix that has `open_singletons` blocks of size
/// one and `open_large` blocks of size >= 2 by `remaining` further elements so
/// that no block ends as a singleton.
BigNat count_completions(std::size_t remaining, std::size_t open_singletons, std::size_t open_large);

/// Number of RGS extensions of a prefix with `blocks` blocks by `remaining`
/// further elements.
BigNat count_rgs_completions(std::size_t remaining, std::size_t blocks);

BigNat rank_partition(const Partition& p);
/// Throws std::out_of_range when rank >= B_n.
Partition unrank_partition(std::size_t n, const BigNat& rank);

/// Throws std::invalid_argument if p has a singleton block.
BigNat rank_no_singleton(const Partition& p);
/// Throws std::out_of_range when rank >= B*_n.
Partition unrank_no_singleton(std::size_t n, const BigNat& rank);

}  // namespace finpart
