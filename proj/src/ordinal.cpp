#include "finpart/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace finpart {

namespace {

// Exponent -> coefficient, largest exponent first. Coefficients may go
// negative while unpairing.
using Poly = std::map<CnfOrdinal, BigNat, std::greater<>>;

Poly to_poly(const CnfOrdinal& a) {
  Poly p;
  for (const auto& t : a.terms()) p.emplace(t.exponent, t.coefficient);
  return p;
}

// Drops zero coefficients; throws if any is negative.
CnfOrdinal from_poly(const Poly& p) {
  std::vector<CnfTerm> terms;
  for (const auto& [e, c] : p) {
    if (c < 0) throw std::invalid_argument("negative coefficient");
    if (c > 0) terms.push_back(CnfTerm{e, c});
  }
  return CnfOrdinal::from_terms(std::move(terms));
}

bool nonnegative(const Poly& p) {
  for (const auto& [e, c] : p) {
    if (c < 0) return false;
  }
  return true;
}

void add_into(Poly& acc, const Poly& p, const BigNat& scale = 1) {
  for (const auto& [e, c] : p) acc[e] += c * scale;
}

Poly poly_product(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) out[natural_sum(ea, eb)] += ca * cb;
  }
  return out;
}

// e with e (+) e == exponent, if every coefficient is even.
std::optional<CnfOrdinal> halve(const CnfOrdinal& exponent) {
  std::vector<CnfTerm> terms;
  for (const auto& t : exponent.terms()) {
    if (t.coefficient % 2 != 0) return std::nullopt;
    terms.push_back(CnfTerm{t.exponent, t.coefficient / 2});
  }
  return CnfOrdinal::from_terms(std::move(terms));
}

// d with d (+) b == a, coefficientwise.
std::optional<CnfOrdinal> natural_difference(const CnfOrdinal& a, const CnfOrdinal& b) {
  Poly p = to_poly(a);
  add_into(p, to_poly(b), -1);
  if (!nonnegative(p)) return std::nullopt;
  return from_poly(p);
}

void check_pair_domain(const CnfOrdinal& alpha) {
  if (!is_multiplicatively_closed(alpha)) {
    throw std::invalid_argument("alpha must have the form w^(w^k)");
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CnfOrdinal parse_all() {
    CnfOrdinal v = sum();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return v;
  }

 private:
  CnfOrdinal sum() {
    CnfOrdinal v = term();
    for (;;) {
      skip();
      if (!eat('+')) return v;
      v = cnf_add(v, term());
    }
  }

  CnfOrdinal term() {
    skip();
    if (eat('w')) {
      CnfOrdinal exponent(1);
      skip();
      if (eat('^')) exponent = atom();
      BigNat coefficient = 1;
      skip();
      if (eat('*')) coefficient = natural();
      if (coefficient == 0) return CnfOrdinal();
      return CnfOrdinal::omega_power(exponent, coefficient);
    }
    return CnfOrdinal(natural());
  }

  CnfOrdinal atom() {
    skip();
    if (eat('(')) {
      CnfOrdinal v = sum();
      skip();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat('w')) return CnfOrdinal::omega();
    return CnfOrdinal(natural());
  }

  BigNat natural() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a natural number or 'w'");
    return BigNat(std::string(text_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("ordinal syntax error at " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CnfOrdinal::CnfOrdinal(std::uint64_t n) : CnfOrdinal(BigNat(n)) {}

CnfOrdinal::CnfOrdinal(const BigNat& n) {
  if (n < 0) throw std::invalid_argument("negative ordinal");
  if (n > 0) terms_.push_back(CnfTerm{CnfOrdinal(), n});
}

CnfOrdinal CnfOrdinal::omega() { return omega_power(CnfOrdinal(1)); }

CnfOrdinal CnfOrdinal::omega_power(const CnfOrdinal& exponent, const BigNat& coefficient) {
  if (coefficient < 1) throw std::invalid_argument("CNF coefficient must be positive");
  CnfOrdinal out;
  out.terms_.push_back(CnfTerm{exponent, coefficient});
  return out;
}

CnfOrdinal CnfOrdinal::from_terms(std::vector<CnfTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient < 1) throw std::invalid_argument("CNF coefficient must be positive");
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw std::invalid_argument("CNF exponents must strictly decrease");
    }
  }
  CnfOrdinal out;
  out.terms_ = std::move(terms);
  return out;
}

bool CnfOrdinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

BigNat CnfOrdinal::finite_value() const {
  if (!is_finite()) throw std::domain_error("ordinal is infinite");
  return terms_.empty() ? BigNat(0) : terms_[0].coefficient;
}

std::string CnfOrdinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += " + ";
    const auto& [e, c] = terms_[i];
    if (e.is_zero()) {
      out += c.str();
      continue;
    }
    out += 'w';
    if (e.is_finite()) {
      if (e.finite_value() != 1) out += "^" + e.finite_value().str();
    } else if (e == omega()) {
      out += "^w";
    } else {
      out += "^(" + e.to_string() + ")";
    }
    if (c != 1) out += "*" + c.str();
  }
  return out;
}

CnfOrdinal CnfOrdinal::parse(std::string_view text) { return Parser(text).parse_all(); }

std::strong_ordering cnf_compare(const CnfOrdinal& a, const CnfOrdinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = cnf_compare(ta[i].exponent, tb[i].exponent); c != 0) return c;
    if (ta[i].coefficient != tb[i].coefficient) {
      return ta[i].coefficient < tb[i].coefficient ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return ta.size() <=> tb.size();
}

CnfOrdinal cnf_add(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (b.is_zero()) return a;
  const CnfOrdinal& lead = b.terms().front().exponent;
  std::vector<CnfTerm> terms;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) terms.push_back(t);
  }
  std::size_t start = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent == lead) {
      terms.push_back(CnfTerm{lead, t.coefficient + b.terms().front().coefficient});
      start = 1;
    }
  }
  for (std::size_t i = start; i < b.terms().size(); ++i) terms.push_back(b.terms()[i]);
  return CnfOrdinal::from_terms(std::move(terms));
}

CnfOrdinal cnf_mul(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (a.is_zero() || b.is_zero()) return CnfOrdinal();
  const CnfTerm& lead = a.terms().front();
  CnfOrdinal out;
  for (const auto& t : b.terms()) {
    CnfOrdinal piece;
    if (t.exponent.is_zero()) {
      // a * c: only the leading coefficient scales
      std::vector<CnfTerm> terms = a.terms();
      terms.front().coefficient *= t.coefficient;
      piece = CnfOrdinal::from_terms(std::move(terms));
    } else {
      piece = CnfOrdinal::omega_power(cnf_add(lead.exponent, t.exponent), t.coefficient);
    }
    out = cnf_add(out, piece);
  }
  return out;
}

CnfOrdinal natural_sum(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (a.is_finite() && b.is_finite()) return CnfOrdinal(a.finite_value() + b.finite_value());
  Poly p = to_poly(a);
  add_into(p, to_poly(b));
  return from_poly(p);
}

CnfOrdinal natural_product(const CnfOrdinal& a, const CnfOrdinal& b) {
  return from_poly(poly_product(to_poly(a), to_poly(b)));
}

bool is_multiplicatively_closed(const CnfOrdinal& alpha) {
  if (alpha.terms().size() != 1 || alpha.terms()[0].coefficient != 1) return false;
  const CnfOrdinal& e = alpha.terms()[0].exponent;
  if (e.terms().size() != 1 || e.terms()[0].coefficient != 1) return false;
  return e.terms()[0].exponent.is_finite();
}

CnfOrdinal godel_pair(const CnfOrdinal& b, const CnfOrdinal& c, const CnfOrdinal& alpha) {
  check_pair_domain(alpha);
  if (!(b < alpha) || !(c < alpha)) throw std::invalid_argument("pair operand not below alpha");
  const CnfOrdinal& mu = b < c ? c : b;
  const CnfOrdinal square = natural_product(mu, mu);
  if (b < mu) return natural_sum(square, b);
  return natural_sum(natural_sum(square, mu), c);
}

namespace {

std::pair<CnfOrdinal, CnfOrdinal> split_remainder(const CnfOrdinal& mu, const CnfOrdinal& rest) {
  if (rest < mu) return {rest, mu};
  auto c = natural_difference(rest, mu);
  if (!c) throw std::invalid_argument("not a pair code");
  return {mu, *c};
}

std::pair<CnfOrdinal, CnfOrdinal> unpair_finite(const BigNat& v) {
  const BigNat mu = boost::multiprecision::sqrt(v);
  const BigNat r = v - mu * mu;
  if (r < mu) return {CnfOrdinal(r), CnfOrdinal(mu)};
  return {CnfOrdinal(mu), CnfOrdinal(BigNat(r - mu))};
}

}  // namespace

std::pair<CnfOrdinal, CnfOrdinal> godel_unpair(const CnfOrdinal& v, const CnfOrdinal& alpha) {
  check_pair_domain(alpha);
  if (!(v < alpha)) throw std::invalid_argument("pair code not below alpha");
  if (v.is_finite()) return unpair_finite(v.finite_value());

  const Poly target = to_poly(v);
  const auto& [lead_exp, lead_coef] = *target.begin();
  auto e0 = halve(lead_exp);
  const BigNat a0 = boost::multiprecision::sqrt(lead_coef);
  if (!e0 || a0 * a0 != lead_coef) throw std::invalid_argument("not a pair code");

  // Terms of mu with non-zero exponent, found from the top: each one shows up
  // as the leading monomial m0 (x) m of the residual, coefficient 2 a0 a.
  Poly mu;
  Poly residual = target;
  auto add_term = [&](const CnfOrdinal& e, const BigNat& a) {
    // residual -= (mu + a w^e)^2 - mu^2
    for (const auto& [em, cm] : mu) residual[natural_sum(em, e)] -= 2 * a * cm;
    residual[natural_sum(e, e)] -= a * a;
    mu.emplace(e, a);
    std::erase_if(residual, [](const auto& kv) { return kv.second == 0; });
  };
  add_term(*e0, a0);
  for (;;) {
    auto lead = residual.begin();
    if (lead == residual.end() || !(lead->first > *e0)) break;
    if (lead->second < 0) throw std::invalid_argument("not a pair code");
    auto exponent = natural_difference(lead->first, *e0);
    if (!exponent || exponent->is_zero() || !(*exponent < mu.rbegin()->first)) {
      throw std::invalid_argument("not a pair code");
    }
    if (lead->second % (2 * a0) != 0) throw std::invalid_argument("not a pair code");
    add_term(*exponent, lead->second / (2 * a0));
  }

  // The finite part a of mu: residual = 2 a mu' + a^2 + r, r <= 2 mu, so the
  // m0 coefficient pins a to one of two values.
  const BigNat at_m0 = residual.contains(*e0) ? residual.at(*e0) : BigNat(0);
  const BigNat q = at_m0 / (2 * a0);
  for (BigNat a = q; a >= 0 && a >= q - 1; --a) {
    Poly full = mu;
    Poly rest = residual;
    if (a > 0) {
      for (const auto& [em, cm] : mu) rest[em] -= 2 * a * cm;
      rest[CnfOrdinal()] -= a * a;
      full[CnfOrdinal()] += a;
    }
    if (!nonnegative(rest)) continue;
    const CnfOrdinal mu_ord = from_poly(full);
    try {
      auto [b, c] = split_remainder(mu_ord, from_poly(rest));
      // target = full^2 + rest exactly, so this is the inverse image
      if (c <= mu_ord) return {b, c};
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::invalid_argument("not a pair code");
}

CnfOrdinal finset_code(const std::set<CnfOrdinal>& set, const CnfOrdinal& alpha) {
  check_pair_domain(alpha);
  for (const auto& x : set) {
    if (!(x < alpha)) throw std::invalid_argument("set element not below alpha");
  }
  if (alpha == CnfOrdinal::omega()) {
    BigNat code = 0;
    for (const auto& x : set) bit_set(code, static_cast<unsigned>(x.finite_value()));
    return CnfOrdinal(code);
  }
  CnfOrdinal folded;
  for (const auto& x : set) folded = godel_pair(x, folded, alpha);  // ascending, so s_1 ends outermost
  return godel_pair(CnfOrdinal(static_cast<std::uint64_t>(set.size())), folded, alpha);
}

std::set<CnfOrdinal> finset_decode(const CnfOrdinal& code, const CnfOrdinal& alpha) {
  check_pair_domain(alpha);
  if (!(code < alpha)) throw std::invalid_argument("code not below alpha");
  std::set<CnfOrdinal> out;
  if (alpha == CnfOrdinal::omega()) {
    for (std::size_t k : binary_set_decode(code.finite_value())) out.insert(CnfOrdinal(k));
    return out;
  }
  auto [length, folded] = godel_unpair(code, alpha);
  if (!length.is_finite()) throw std::invalid_argument("not a finite-set code");
  const BigNat n = length.finite_value();
  std::optional<CnfOrdinal> previous;
  for (BigNat i = 0; i < n; ++i) {
    auto [x, rest] = godel_unpair(folded, alpha);
    if (previous && !(x < *previous)) throw std::invalid_argument("not a finite-set code");
    out.insert(x);
    previous = x;
    folded = rest;
  }
  if (!folded.is_zero()) throw std::invalid_argument("not a finite-set code");
  return out;
}

BigNat binary_set_code(const ElementSet& s) {
  BigNat code = 0;
  for (std::size_t k : s) bit_set(code, static_cast<unsigned>(k));
  return code;
}

ElementSet binary_set_decode(const BigNat& code) {
  if (code < 0) throw std::invalid_argument("negative set code");
  ElementSet out;
  if (code == 0) return out;
  // scan set bits only; codes of sparse sets over large elements are wide
  const mpz_srcptr raw = code.backend().data();
  for (mp_bitcnt_t k = mpz_scan1(raw, 0); k != ~mp_bitcnt_t{0}; k = mpz_scan1(raw, k + 1)) {
    out.insert(static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace finpart
