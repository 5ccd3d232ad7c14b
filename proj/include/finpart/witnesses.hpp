#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "finpart/bignum.hpp"
#include "finpart/partition.hpp"

namespace finpart {

/// A finite instance cannot feed a step that needs an infinite supply
/// (a recursion that runs out of partitions, a range that is too small).
class Exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Relation = std::set<std::pair<std::size_t, std::size_t>>;

/// Order of finite sets by sum of 2^x: a < b iff max(a xor b) lies in b.
bool binary_code_less(const ElementSet& a, const ElementSet& b);

// --- Small embeddings -------------------------------------------------------

/// s -> { ran(s|i) : 1 <= i <= |s| }, a chain under inclusion.
/// Throws std::invalid_argument if s repeats a value.
SetFamily seq_inj_to_finfin(const std::vector<std::size_t>& s);
/// Recovers s from its chain. Throws std::invalid_argument for non-chains.
std::vector<std::size_t> finfin_to_seq_inj(const SetFamily& chain);

/// S -> union of S. Finite-to-one: a fiber over B has at most 2^(2^|B|) members.
ElementSet union_f2o(const SetFamily& family);

/// P -> ~P as a set of ordered pairs.
Relation part_to_relation(const Partition& p);

/// P -> ns(P).
SetFamily bfin_to_finfin(const Partition& p);

/// A finitary partition of the naturals with finitely many non-singleton
/// blocks; every element outside them is a singleton. Equality is equality of
/// the non-singleton blocks.
class CofinitePartition {
 public:
  CofinitePartition() = default;
  /// Throws std::invalid_argument unless blocks are disjoint with size >= 2.
  explicit CofinitePartition(SetFamily ns_blocks);
  /// The partition of N that agrees with `prefix` below its ground size.
  static CofinitePartition from_prefix(const Partition& prefix);

  const SetFamily& ns() const { return ns_; }
  /// 1 + the largest element of a non-singleton block (0 if none).
  std::size_t support_bound() const;
  /// Restriction to {0..size-1}; throws std::invalid_argument if size < support_bound().
  Partition prefix(std::size_t size) const;

  friend auto operator<=>(const CofinitePartition&, const CofinitePartition&) = default;
  friend bool operator==(const CofinitePartition&, const CofinitePartition&) = default;

 private:
  SetFamily ns_;
};

/// A finite partition of A. When A = N the only infinite block is represented
/// by its (finite) complement.
struct FinitePartitionImage {
  SetFamily finite_blocks;
  std::optional<ElementSet> cofinite_complement;

  friend auto operator<=>(const FinitePartitionImage&, const FinitePartitionImage&) = default;
  friend bool operator==(const FinitePartitionImage&, const FinitePartitionImage&) = default;
};

/// Infinite ground: P -> ns(P) together with the residual block N \ U ns(P).
FinitePartitionImage bfin_to_partfin(const CofinitePartition& p);
/// Finite ground: the identity embedding (every finite partition is finite).
FinitePartitionImage bfin_to_partfin(const Partition& p);

// --- The five-marked-element injections -------------------------------------

/// Distinct marked elements (a, b, c, d, e) of the ground set.
struct MarkedFive {
  std::array<std::size_t, 5> marks{0, 1, 2, 3, 4};
  std::size_t a() const { return marks[0]; }
  ElementSet as_set() const { return {marks.begin(), marks.end()}; }
};

/// fin(A) -> B_fin(A):
///   B not a singleton:  {B} plus singletons (B omitted when empty)
///   B = {x}, x != a:    {{a, x}, E \ {a, x}} plus singletons
///   B = {a}:            {{a}, {b, c}, {d, e}} plus singletons
/// Throws std::invalid_argument if the ground has < 5 elements or the marks
/// are not distinct elements of it.
Partition fin_to_bfin(const SubsetMask& subset, const MarkedFive& marked);

/// P(A) -> Part_fin(A), by cases on a in C and |C n E|.
Partition pow_to_partfin(const SubsetMask& subset, const MarkedFive& marked);

// --- Diagonal escape ---------------------------------------------------------

/// Given f: A -> B(A) and an auxiliary assignment for f, builds a finitary
/// partition of A outside ran(f): a fiber of P on which ~P identifies two
/// points is split into singletons; any other fiber takes its auxiliary
/// partition. Throws std::invalid_argument if `aux` is not auxiliary for f
/// or some f(x) is not a partition of A.
Partition diagonal_escape(const FiniteFunction<Partition>& f, const AuxiliaryAssignment<Partition>& aux);

// --- A^n into B_fin(A) -------------------------------------------------------

/// Roles for the A^n injection on the first 2n(2^{n+1}-1) naturals. Level i
/// holds a_{i,j} (j < 2n) followed by b_{i,x} for every x in an earlier
/// level, in increasing x; levels are laid out consecutively.
class AtomLayout {
 public:
  explicit AtomLayout(std::size_t n);

  static std::size_t required_size(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return required_size(n_); }
  std::size_t a(std::size_t level, std::size_t j) const;
  /// b_{level, x}; x must lie in a level below `level`.
  std::size_t b(std::size_t level, std::size_t x) const;
  /// The level containing element x, if x is one of the layout's atoms.
  std::optional<std::size_t> level_of(std::size_t x) const;
  std::size_t level_start(std::size_t level) const { return starts_.at(level); }
  std::size_t level_size(std::size_t level) const { return starts_.at(level + 1) - starts_.at(level); }

 private:
  std::size_t n_;
  std::vector<std::size_t> starts_;  // n + 2 offsets
};

/// s in A^n -> the partition whose non-singleton blocks are {a_{i_s,j}, u_s(j)}
/// for j < n. Throws std::invalid_argument if ground_size < layout.size(),
/// |s| != layout.n() or s leaves the ground set.
Partition an_to_bfin(const std::vector<std::size_t>& s, std::size_t ground_size, const AtomLayout& layout);
/// Just the n pairs, with no ground-size check.
SetFamily an_to_bfin_pairs(const std::vector<std::size_t>& s, const AtomLayout& layout);
/// Reads s back from an image of an_to_bfin. Throws std::invalid_argument otherwise.
std::vector<std::size_t> bfin_to_an(const Partition& image, const AtomLayout& layout);

/// seq(N) -> B_fin(N): a sequence of length n goes through an_to_bfin with the
/// canonical layout for n; the image has exactly n non-singleton blocks.
CofinitePartition seq_to_bfin(const std::vector<std::size_t>& s);
std::vector<std::size_t> bfin_to_seq(const CofinitePartition& image);

// --- Kuratowski-like directions ---------------------------------------------

/// u subset of k -> label^{-1}[u] plus singletons, where label maps ns(P)
/// (indexed by least element) onto k. Throws std::invalid_argument if label is
/// not onto u.ground_size() or has the wrong domain.
Partition powerset_to_b(const SubsetMask& u, const Partition& p, const FiniteFunction<std::size_t>& label);

/// One step of the disjoint-witness recursion: a partition Q with ns(Q)
/// non-empty and U ns(Q) disjoint from `avoid`. Case 1 uses the first member
/// of `family` that identifies two points outside `avoid`; Case 2 runs the
/// k_m recursion over the list. Throws Exhausted when the finite list runs out.
Partition disjoint_witness_step(const std::vector<Partition>& family, const SubsetMask& avoid);

// --- Cantor-Bernstein ---------------------------------------------------------

/// A bijection A -> B from injections f: A -> B and g: B -> A by orbit
/// classification: A-stopper and cyclic orbits follow f, B-stopper orbits
/// follow g^{-1}. Throws std::invalid_argument if f or g is not an injection
/// into the other side.
FiniteFunction<std::size_t> cb_bijection(const FiniteFunction<std::size_t>& f, std::size_t b_size,
                                         const FiniteFunction<std::size_t>& g);

// --- Surjections with auxiliary functions -----------------------------------

struct QuotientSurjection {
  std::vector<ElementSet> cover;       // Q = { f[E] : E in P } in binary-code order
  std::vector<std::size_t> least_cover;  // beta -> index of the code-least c in Q with beta in c
  FiniteFunction<std::size_t> g;       // x -> position of f[[x]_P] in Q
  AuxiliaryAssignment<std::size_t> t;  // beta -> { E in P : f[E] is the beta-th member of Q }
};

/// Throws std::invalid_argument if P has a singleton block, the ground sizes
/// differ or f is not onto {0..max f}.
QuotientSurjection quotient_surjection(const Partition& p, const FiniteFunction<std::size_t>& f);

struct HsResult {
  std::map<std::size_t, ElementSet> psi;  // x -> Psi(x), indices into f
  std::vector<ElementSet> classes;        // kernel of Psi, in binary-code order of Psi value
  std::vector<ElementSet> class_codes;    // Psi value of each class
  std::vector<ElementSet> g_partial;      // beta -> { class index of x : x in f(beta) }
  std::vector<ElementSet> h_partial;      // union of classes 2 beta and 2 beta + 1
};

/// Psi(x) = { gamma : x in f(gamma) and the intersection of the earlier sets
/// containing x is not inside f(gamma) }; the empty intersection is never
/// inside. Throws std::invalid_argument if f repeats a set.
HsResult hs_disjointify(const std::vector<ElementSet>& f);

struct SurjectionWithAux {
  FiniteFunction<std::size_t> g;
  AuxiliaryAssignment<std::size_t> t;
};

/// g(x) = the beta with x in h(beta), 0 off U ran(h); t(0) also absorbs the
/// leftover singletons. Throws std::invalid_argument unless h is non-empty and
/// its members are disjoint subsets of the ground with >= 2 elements.
SurjectionWithAux surj_with_aux(const std::vector<ElementSet>& h, std::size_t ground_size);

/// Greedy refinement: g(i) is the i-th distinct value of f in index order.
/// Throws Exhausted when f has fewer distinct values than its domain size.
FiniteFunction<std::size_t> f2o_to_injection(const FiniteFunction<std::size_t>& f);

// --- P(A) vs B_fin(A) recursion step ----------------------------------------

using SubsetFamily = std::set<SubsetMask>;

/// f(0) = {{a}, {b}}.
SubsetFamily bell_gap_seed(std::size_t ground_size, std::size_t a, std::size_t b);

struct BellGapStep {
  SubsetFamily next;          // f(n+1)
  std::size_t classes = 0;    // k = |A / ~|
  std::size_t support = 0;    // m = |D|
  BigNat bell_support;        // B_m
};

/// One recursion body for an injection phi: P(A) -> B_fin(A) given as a table
/// indexed by SubsetMask::to_integer(). Throws std::domain_error when
/// 2^|A| > B_|A| (no injection exists at this scale), std::invalid_argument
/// when phi is not injective or the family is malformed, and Exhausted when
/// phi^{-1}[E \ phi[U]] is empty.
BellGapStep bell_gap_step(const FiniteFunction<Partition>& phi, const std::vector<SubsetFamily>& family);

}  // namespace finpart
