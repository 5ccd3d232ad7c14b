#include <gtest/gtest.h>

#include "finpart/ordinal.hpp"
#include "oracles.hpp"

using namespace finpart;

namespace {

CnfOrdinal o(const char* text) { return CnfOrdinal::parse(text); }
CnfOrdinal n(std::uint64_t v) { return CnfOrdinal(v); }
const CnfOrdinal w = CnfOrdinal::omega();

CnfOrdinal random_ordinal(oracle::Gen& gen, int depth) {
  std::vector<CnfTerm> terms;
  std::size_t k = gen.below(4);
  std::set<CnfOrdinal> exps;
  while (exps.size() < k) exps.insert(depth == 0 ? n(gen.below(4)) : random_ordinal(gen, depth - 1));
  for (auto it = exps.rbegin(); it != exps.rend(); ++it) terms.push_back({*it, BigNat(1 + gen.below(5))});
  return CnfOrdinal::from_terms(terms);
}

}  // namespace

TEST(Cnf, Examples) {
  EXPECT_NE(w + n(1), n(1) + w);
  EXPECT_EQ(n(1) + w, w);
  EXPECT_EQ(w * n(2), o("w*2"));
  EXPECT_GT(w * n(2), w);
  EXPECT_EQ(n(2) * w, w);
  EXPECT_EQ(cnf_compare(o("w^2"), o("w*5")), std::strong_ordering::greater);
}

TEST(Cnf, ParseAndPrint) {
  for (const char* text : {"0", "7", "w", "w^2*3 + w + 4", "w^w", "w^(w+1)*2 + 5", "w^(w^2)"}) {
    auto v = o(text);
    EXPECT_EQ(CnfOrdinal::parse(v.to_string()), v) << text;
  }
  EXPECT_EQ(o("w^2*3 + w + 4").to_string(), "w^2*3 + w + 4");
  EXPECT_EQ(o("3 + w"), w);
  EXPECT_THROW(o("w^"), std::invalid_argument);
  EXPECT_THROW(o("x"), std::invalid_argument);
  EXPECT_THROW(CnfOrdinal::from_terms({{n(1), 1}, {n(2), 1}}), std::invalid_argument);
}

TEST(Cnf, ArithmeticLaws) {
  oracle::Gen gen(21);
  for (int i = 0; i < 400; ++i) {
    auto a = random_ordinal(gen, 1), b = random_ordinal(gen, 1), c = random_ordinal(gen, 1);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_LE(a, a + b);
    EXPECT_EQ(natural_sum(a, b), natural_sum(b, a));
    EXPECT_EQ(natural_product(a, b), natural_product(b, a));
    if (!b.is_zero()) {
      EXPECT_LT(a, natural_sum(a, b));
    }
  }
  for (std::uint64_t k = 1; k < 50; ++k) EXPECT_LT(w * n(k), o("w^2"));
}

TEST(Cnf, FiniteAgreesWithIntegers) {
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) {
      EXPECT_EQ((n(a) + n(b)).finite_value(), a + b);
      EXPECT_EQ((n(a) * n(b)).finite_value(), a * b);
    }
  EXPECT_THROW(w.finite_value(), std::domain_error);
}

TEST(GodelPair, Examples) {
  EXPECT_EQ(godel_pair(n(0), n(0), w), n(0));
  EXPECT_EQ(godel_pair(n(1), n(2), w), n(5));
  EXPECT_EQ(godel_pair(n(2), n(1), w), n(7));
  EXPECT_EQ(godel_unpair(n(7), w), std::make_pair(n(2), n(1)));
  EXPECT_THROW(godel_pair(w, n(0), w), std::invalid_argument);
  EXPECT_THROW(godel_pair(n(0), n(0), o("w*2")), std::invalid_argument);
}

TEST(GodelPair, MaxLexOrderOnNaturals) {
  // Enumerate omega x omega ordered by (max, b, c) and compare positions.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order;
  for (std::uint64_t m = 0; m < 30; ++m) {
    for (std::uint64_t b = 0; b < m; ++b) order.emplace_back(b, m);
    for (std::uint64_t c = 0; c <= m; ++c) order.emplace_back(m, c);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [b, c] = order[i];
    EXPECT_EQ(godel_pair(n(b), n(c), w), n(i)) << b << "," << c;
  }
}

TEST(GodelPair, TransfiniteRoundTripAndInjectivity) {
  const auto alpha = o("w^w");
  EXPECT_NE(godel_pair(w, n(1), alpha), godel_pair(n(0), w + n(1), alpha));
  oracle::Gen gen(8);
  std::map<CnfOrdinal, std::pair<CnfOrdinal, CnfOrdinal>> seen;
  for (int i = 0; i < 1500; ++i) {
    auto b = random_ordinal(gen, 0), c = random_ordinal(gen, 0);
    auto v = godel_pair(b, c, alpha);
    EXPECT_LT(v, alpha);
    EXPECT_EQ(godel_unpair(v, alpha), std::make_pair(b, c));
    auto [it, fresh] = seen.try_emplace(v, b, c);
    if (!fresh) {
      EXPECT_EQ(it->second, std::make_pair(b, c));
    }
  }
}

TEST(FinsetCode, Examples) {
  EXPECT_EQ(finset_code({n(0), n(2)}, w), n(5));
  EXPECT_EQ(finset_code({}, w), n(0));
  const auto alpha = o("w^w");
  auto code = finset_code({w}, alpha);
  EXPECT_EQ(code, godel_pair(n(1), godel_pair(w, n(0), alpha), alpha));
  EXPECT_EQ(finset_decode(code, alpha), std::set<CnfOrdinal>{w});
  EXPECT_EQ(finset_code({}, alpha), n(0));
}

TEST(FinsetCode, SeededRoundTrip) {
  oracle::Gen gen(4);
  const auto alpha = o("w^w");
  for (int i = 0; i < 300; ++i) {
    std::set<CnfOrdinal> s;
    std::size_t k = gen.below(5);
    while (s.size() < k) s.insert(random_ordinal(gen, 0));
    EXPECT_EQ(finset_decode(finset_code(s, alpha), alpha), s);
    std::set<CnfOrdinal> fin;
    while (fin.size() < k) fin.insert(n(gen.below(64)));
    EXPECT_EQ(finset_decode(finset_code(fin, w), w), fin);
  }
}

TEST(BinarySetCode, RoundTrip) {
  EXPECT_EQ(binary_set_code({0, 2}), 5);
  EXPECT_EQ(binary_set_decode(BigNat(6)), (ElementSet{1, 2}));
  oracle::Gen gen(2);
  for (int i = 0; i < 500; ++i) {
    auto s = gen.set(10, 200);
    EXPECT_EQ(binary_set_decode(binary_set_code(s)), s);
  }
}

TEST(Closure, MultiplicativelyClosed) {
  EXPECT_TRUE(is_multiplicatively_closed(w));
  EXPECT_TRUE(is_multiplicatively_closed(o("w^w")));
  EXPECT_TRUE(is_multiplicatively_closed(o("w^(w^3)")));
  EXPECT_FALSE(is_multiplicatively_closed(o("w^2")));
  EXPECT_FALSE(is_multiplicatively_closed(n(5)));
}
