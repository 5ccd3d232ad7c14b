#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finpart/bignum.hpp"
#include "finpart/partition.hpp"

namespace finpart {

struct CnfTerm;

/// An ordinal below epsilon_0 in Cantor normal form:
///   omega^{e_1} c_1 + ... + omega^{e_k} c_k,  e_1 > ... > e_k,  c_i >= 1.
/// Zero has no terms; a natural number n > 0 is the single term omega^0 n.
class CnfOrdinal {
 public:
  CnfOrdinal() = default;
  explicit CnfOrdinal(std::uint64_t n);
  explicit CnfOrdinal(const BigNat& n);

  static CnfOrdinal omega();
  /// omega^exponent * coefficient. Throws std::invalid_argument if coefficient < 1.
  static CnfOrdinal omega_power(const CnfOrdinal& exponent, const BigNat& coefficient = 1);
  /// Throws std::invalid_argument unless exponents strictly decrease and
  /// coefficients are positive.
  static CnfOrdinal from_terms(std::vector<CnfTerm> terms);

  const std::vector<CnfTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Throws std::domain_error for infinite ordinals.
  BigNat finite_value() const;

  /// `w^2*3 + w + 4`; exponents that are neither natural nor w are parenthesized.
  std::string to_string() const;
  /// Accepts sums of `w`, `w^e`, `w^e*c`, `w*c` and naturals, with e a natural,
  /// `w` or a parenthesized ordinal. Non-normal sums are combined with ordinal
  /// addition. Throws std::invalid_argument.
  static CnfOrdinal parse(std::string_view text);

 private:
  std::vector<CnfTerm> terms_;
};

struct CnfTerm {
  CnfOrdinal exponent;
  BigNat coefficient;
};

std::strong_ordering cnf_compare(const CnfOrdinal& a, const CnfOrdinal& b);
inline std::strong_ordering operator<=>(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_compare(a, b); }
inline bool operator==(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_compare(a, b) == 0; }

CnfOrdinal cnf_add(const CnfOrdinal& a, const CnfOrdinal& b);
CnfOrdinal cnf_mul(const CnfOrdinal& a, const CnfOrdinal& b);
inline CnfOrdinal operator+(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_add(a, b); }
inline CnfOrdinal operator*(const CnfOrdinal& a, const CnfOrdinal& b) { return cnf_mul(a, b); }

/// Hessenberg natural sum and product: commutative, strictly monotone.
CnfOrdinal natural_sum(const CnfOrdinal& a, const CnfOrdinal& b);
CnfOrdinal natural_product(const CnfOrdinal& a, const CnfOrdinal& b);

/// True for omega^{omega^k} with k finite (omega itself is k = 0).
bool is_multiplicatively_closed(const CnfOrdinal& alpha);

/// Pairs ordered by (max, b, c): with mu = max(b, c),
///   b < mu:  mu (x) mu (+) b
///   b = mu:  mu (x) mu (+) mu (+) c
/// using natural sum (+) and product (x); on naturals this is mu^2 + b and
/// mu^2 + mu + c. Throws std::invalid_argument if alpha is not multiplicatively
/// closed or an operand is >= alpha.
CnfOrdinal godel_pair(const CnfOrdinal& b, const CnfOrdinal& c, const CnfOrdinal& alpha);

/// Throws std::invalid_argument if v >= alpha or v is not a pair code.
std::pair<CnfOrdinal, CnfOrdinal> godel_unpair(const CnfOrdinal& v, const CnfOrdinal& alpha);

/// Below omega the code is sum 2^k; otherwise pair(|S|, pair(s_1, pair(s_2, ...
/// pair(s_n, 0)))) over the decreasing enumeration s_1 > ... > s_n.
CnfOrdinal finset_code(const std::set<CnfOrdinal>& set, const CnfOrdinal& alpha);
std::set<CnfOrdinal> finset_decode(const CnfOrdinal& code, const CnfOrdinal& alpha);

/// sum_{k in s} 2^k.
BigNat binary_set_code(const ElementSet& s);
ElementSet binary_set_decode(const BigNat& code);

}  // namespace finpart
