#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "finpart/bell.hpp"
#include "finpart/ordinal.hpp"
#include "finpart/witnesses.hpp"
#include "oracles.hpp"

using namespace finpart;

namespace {

Partition with_ns(std::size_t ground, std::vector<ElementSet> ns) {
  std::vector<ElementSet> blocks = ns;
  ElementSet used;
  for (const auto& b : ns) used.insert(b.begin(), b.end());
  for (std::size_t x = 0; x < ground; ++x)
    if (!used.contains(x)) blocks.push_back({x});
  return Partition::from_blocks(ground, blocks);
}

SubsetMask mask(std::size_t ground, ElementSet members) { return SubsetMask(ground, members); }

SetFamily family(const std::vector<ElementSet>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(SmallMaps, SeqChains) {
  EXPECT_EQ(seq_inj_to_finfin({2, 0}), (SetFamily{{2}, {0, 2}}));
  EXPECT_TRUE(seq_inj_to_finfin({}).empty());
  EXPECT_EQ(seq_inj_to_finfin({1}), (SetFamily{{1}}));
  EXPECT_THROW(seq_inj_to_finfin({1, 1}), std::invalid_argument);
  EXPECT_EQ(finfin_to_seq_inj({{2}, {0, 2}}), (std::vector<std::size_t>{2, 0}));
  EXPECT_THROW(finfin_to_seq_inj({{1}, {2}}), std::invalid_argument);
}

TEST(SmallMaps, Union) {
  EXPECT_EQ(union_f2o({{0, 1}, {1, 2}}), (ElementSet{0, 1, 2}));
  EXPECT_TRUE(union_f2o({}).empty());
  EXPECT_EQ(union_f2o({{3}}), (ElementSet{3}));
}

TEST(SmallMaps, Relation) {
  EXPECT_EQ(part_to_relation(Partition::from_rgs({0, 0, 1})), (Relation{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(part_to_relation(Partition::discrete(2)), (Relation{{0, 0}, {1, 1}}));
  EXPECT_EQ(part_to_relation(Partition::single_block(2)), (Relation{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(SmallMaps, NonSingletonFamily) {
  EXPECT_EQ(bfin_to_finfin(Partition::from_rgs({0, 0, 1})), (SetFamily{{0, 1}}));
  EXPECT_TRUE(bfin_to_finfin(Partition::from_rgs({0, 1, 2})).empty());
  EXPECT_EQ(bfin_to_finfin(Partition::from_rgs({0, 0, 0})), (SetFamily{{0, 1, 2}}));
}

TEST(PartFin, Examples) {
  auto img = bfin_to_partfin(CofinitePartition(SetFamily{{0, 1}}));
  EXPECT_EQ(img.finite_blocks, (SetFamily{{0, 1}}));
  EXPECT_EQ(img.cofinite_complement, (ElementSet{0, 1}));
  auto discrete = bfin_to_partfin(CofinitePartition());
  EXPECT_TRUE(discrete.finite_blocks.empty());
  EXPECT_EQ(discrete.cofinite_complement, ElementSet{});
  auto p = Partition::from_rgs({0, 1, 0, 2});
  auto finite = bfin_to_partfin(p);
  EXPECT_EQ(finite.finite_blocks, family(p.blocks()));
  EXPECT_FALSE(finite.cofinite_complement.has_value());
  EXPECT_THROW(CofinitePartition(SetFamily{{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(CofinitePartition(SetFamily{{3}}), std::invalid_argument);
}

TEST(Cofinite, PrefixRoundTrip) {
  oracle::Gen gen(6);
  for (int i = 0; i < 300; ++i) {
    auto p = gen.partition(1 + gen.below(12));
    auto c = CofinitePartition::from_prefix(p);
    EXPECT_LE(c.support_bound(), p.ground_size());
    EXPECT_EQ(c.prefix(p.ground_size()), p);
  }
}

TEST(FiveMarked, FinToBfin) {
  MarkedFive e;
  EXPECT_EQ(fin_to_bfin(mask(6, {2, 3}), e), with_ns(6, {{2, 3}}));
  EXPECT_EQ(fin_to_bfin(mask(6, {5}), e), Partition::from_blocks(6, {{0, 5}, {1, 2, 3, 4}}));
  EXPECT_EQ(fin_to_bfin(mask(6, {0}), e), Partition::from_blocks(6, {{0}, {1, 2}, {3, 4}, {5}}));
  EXPECT_THROW(fin_to_bfin(mask(4, {0}), e), std::invalid_argument);
  EXPECT_THROW(fin_to_bfin(mask(6, {0}), MarkedFive{{0, 1, 2, 3, 3}}), std::invalid_argument);
}

TEST(FiveMarked, PowToPartfin) {
  MarkedFive e;
  EXPECT_EQ(pow_to_partfin(mask(6, {5}), e), Partition::from_blocks(6, {{5}, {0, 1, 2, 3, 4}}));
  EXPECT_EQ(pow_to_partfin(mask(6, {0}), e), Partition::discrete(6));
  EXPECT_EQ(pow_to_partfin(mask(6, {}), e), Partition::single_block(6));
}

TEST(FiveMarked, ExhaustiveInjectivityWithMovedMarks) {
  MarkedFive e{{6, 2, 0, 5, 3}};
  for (std::size_t n : {7u, 8u}) {
    std::set<Partition> fin_images, pow_images;
    for (std::uint64_t v = 0; v < (1u << n); ++v) {
      auto m = SubsetMask::from_integer(n, v);
      EXPECT_TRUE(fin_images.insert(fin_to_bfin(m, e)).second) << v;
      EXPECT_TRUE(pow_images.insert(pow_to_partfin(m, e)).second) << v;
    }
  }
}

TEST(Diagonal, ConstantFunction) {
  auto p0 = with_ns(4, {{0, 1}});
  FiniteFunction<Partition> f{{p0, p0, p0, p0}};
  AuxiliaryAssignment<Partition> aux{{p0, {{0, 1}, {2, 3}}}};
  auto q = diagonal_escape(f, aux);
  EXPECT_EQ(q, Partition::discrete(4));
  EXPECT_NE(q, p0);
}

TEST(Diagonal, FiberWithoutIdentifiedPoints) {
  auto d = Partition::discrete(4);
  auto one = Partition::single_block(4);
  // fiber over d is {0,1,2,3}, pairwise inequivalent under d
  FiniteFunction<Partition> f{{d, d, d, d}};
  AuxiliaryAssignment<Partition> aux{{d, {{0, 2}, {1}, {3}}}};
  auto q = diagonal_escape(f, aux);
  EXPECT_EQ(q, with_ns(4, {{0, 2}}));
  // two fibers: over `one` identified points split, over d the aux is used
  FiniteFunction<Partition> g{{one, one, d, d}};
  AuxiliaryAssignment<Partition> aux2{{one, {{0, 1}}}, {d, {{2, 3}}}};
  EXPECT_EQ(diagonal_escape(g, aux2), with_ns(4, {{2, 3}}));
}

TEST(Diagonal, LoneFiberRejected) {
  auto d = Partition::discrete(4);
  auto one = Partition::single_block(4);
  FiniteFunction<Partition> f{{d, d, d, one}};
  AuxiliaryAssignment<Partition> aux{{d, {{0, 1, 2}}}, {one, {{3}}}};
  EXPECT_THROW(diagonal_escape(f, aux), std::invalid_argument);
}

TEST(AnLayout, Examples) {
  AtomLayout layout(1);
  EXPECT_EQ(layout.size(), 6u);
  EXPECT_EQ(layout.a(1, 0), 2u);
  EXPECT_EQ(layout.a(1, 1), 3u);
  EXPECT_EQ(layout.b(1, 0), 4u);
  EXPECT_EQ(layout.b(1, 1), 5u);
  EXPECT_EQ(an_to_bfin({0}, 6, layout), with_ns(6, {{2, 4}}));
  EXPECT_EQ(an_to_bfin({2}, 6, layout), with_ns(6, {{0, 2}}));
  EXPECT_THROW(an_to_bfin({0}, 5, layout), std::invalid_argument);
  EXPECT_THROW(an_to_bfin({0, 1}, 6, layout), std::invalid_argument);
  EXPECT_EQ(AtomLayout::required_size(2), 28u);
  EXPECT_EQ(AtomLayout::required_size(3), 90u);
}

TEST(AnLayout, ExhaustiveSmallRoundTrip) {
  for (std::size_t n : {1u, 2u}) {
    AtomLayout layout(n);
    const std::size_t a = layout.size();
    std::set<Partition> images;
    std::vector<std::size_t> s(n, 0);
    for (;;) {
      auto p = an_to_bfin(s, a, layout);
      EXPECT_EQ(p.ns().size(), n);
      EXPECT_TRUE(images.insert(p).second);
      EXPECT_EQ(bfin_to_an(p, layout), s);
      std::size_t i = 0;
      while (i < n && ++s[i] == a) s[i++] = 0;
      if (i == n) break;
    }
  }
}

TEST(AnLayout, DecoderRejectsNonImages) {
  AtomLayout layout(1);
  EXPECT_THROW(bfin_to_an(Partition::discrete(6), layout), std::invalid_argument);
  EXPECT_THROW(bfin_to_an(with_ns(6, {{0, 1}}), layout), std::invalid_argument);
}

TEST(Seq, Examples) {
  EXPECT_TRUE(seq_to_bfin({}).ns().empty());
  EXPECT_EQ(seq_to_bfin({0}).ns(), (SetFamily{{2, 4}}));
  EXPECT_EQ(seq_to_bfin({0, 0}).ns().size(), 2u);
  oracle::Gen gen(9);
  std::set<CofinitePartition> images;
  std::set<std::vector<std::size_t>> inputs;
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::size_t> s(gen.below(4));
    for (auto& v : s) v = gen.below(40);
    auto img = seq_to_bfin(s);
    EXPECT_EQ(bfin_to_seq(img), s);
    if (inputs.insert(s).second) {
      EXPECT_TRUE(images.insert(img).second);
    }
  }
}

TEST(Powerset, Examples) {
  auto p = Partition::from_blocks(6, {{0, 1}, {2, 3}, {4, 5}});
  FiniteFunction<std::size_t> label{{0, 1, 2}};
  EXPECT_EQ(powerset_to_b(mask(3, {0, 2}), p, label), with_ns(6, {{0, 1}, {4, 5}}));
  EXPECT_EQ(powerset_to_b(mask(3, {}), p, label), Partition::discrete(6));
  EXPECT_EQ(powerset_to_b(mask(3, {0, 1, 2}), p, label), p);
  EXPECT_THROW(powerset_to_b(mask(3, {0}), p, FiniteFunction<std::size_t>{{0, 0, 1}}), std::invalid_argument);
}

TEST(DisjointStep, Examples) {
  auto p01 = with_ns(6, {{0, 1}});
  auto p23 = with_ns(6, {{2, 3}});
  EXPECT_EQ(disjoint_witness_step({p01}, mask(6, {})).ns(), (std::vector<ElementSet>{{0, 1}}));
  EXPECT_EQ(disjoint_witness_step({p01, p23}, mask(6, {0, 1})).ns(), (std::vector<ElementSet>{{2, 3}}));
  EXPECT_THROW(disjoint_witness_step({p01}, mask(6, {0, 1})), Exhausted);
}

TEST(DisjointStep, OutputAvoidsB) {
  oracle::Gen gen(13);
  int produced = 0;
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 4 + gen.below(6);
    std::vector<Partition> fam(1 + gen.below(5));
    for (auto& p : fam) p = gen.partition(n);
    auto b = gen.subset(n);
    try {
      auto q = disjoint_witness_step(fam, b);
      ++produced;
      EXPECT_FALSE(q.ns().empty());
      for (std::size_t x : q.ns_union()) EXPECT_FALSE(b.contains(x));
    } catch (const Exhausted&) {
    }
  }
  EXPECT_GT(produced, 100);
}

TEST(CantorBernstein, Examples) {
  using F = FiniteFunction<std::size_t>;
  EXPECT_EQ(cb_bijection(F{{0, 1}}, 2, F{{0, 1}}).table, (std::vector<std::size_t>{0, 1}));
  auto h = cb_bijection(F{{0, 1}}, 2, F{{1, 0}});
  EXPECT_EQ(h.range().size(), 2u);
  EXPECT_EQ(cb_bijection(F{{0}}, 1, F{{0}}).table, (std::vector<std::size_t>{0}));
  EXPECT_THROW(cb_bijection(F{{0, 0}}, 2, F{{0, 1}}), std::invalid_argument);
}

TEST(CantorBernstein, BijectiveOnAllSmallPairs) {
  using F = FiniteFunction<std::size_t>;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::size_t> f(n), g(n);
    std::iota(f.begin(), f.end(), 0);
    do {
      std::iota(g.begin(), g.end(), 0);
      do {
        auto h = cb_bijection(F{f}, n, F{g});
        EXPECT_EQ(h.range().size(), n);
      } while (std::next_permutation(g.begin(), g.end()));
    } while (std::next_permutation(f.begin(), f.end()));
  }
}

TEST(Quotient, WorkedExample) {
  auto p = Partition::from_blocks(6, {{0, 1}, {2, 3}, {4, 5}});
  auto q = quotient_surjection(p, FiniteFunction<std::size_t>{{0, 1, 2, 0, 1, 2}});
  EXPECT_EQ(q.cover, (std::vector<ElementSet>{{0, 1}, {0, 2}, {1, 2}}));
  std::vector<BigNat> codes;
  for (const auto& c : q.cover) codes.push_back(binary_set_code(c));
  EXPECT_EQ(codes, (std::vector<BigNat>{3, 5, 6}));
  EXPECT_EQ(q.g.table, (std::vector<std::size_t>{0, 0, 1, 1, 2, 2}));
  EXPECT_EQ(q.t.at(0), (SetFamily{{0, 1}}));
  EXPECT_EQ(q.t.at(1), (SetFamily{{2, 3}}));
  EXPECT_EQ(q.t.at(2), (SetFamily{{4, 5}}));
  EXPECT_TRUE(is_auxiliary_for(q.t, q.g));
}

TEST(Quotient, Degenerate) {
  auto q = quotient_surjection(Partition::single_block(4), FiniteFunction<std::size_t>{{0, 0, 0, 0}});
  EXPECT_EQ(q.g.table, (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_EQ(q.t.at(0), (SetFamily{{0, 1, 2, 3}}));
  EXPECT_THROW(quotient_surjection(Partition::from_rgs({0, 0, 1}), FiniteFunction<std::size_t>{{0, 0, 0}}),
               std::invalid_argument);
}

TEST(Hs, WorkedExample) {
  auto r = hs_disjointify({{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(r.psi.at(0), (ElementSet{0}));
  EXPECT_EQ(r.psi.at(1), (ElementSet{0, 1}));
  EXPECT_EQ(r.psi.at(2), (ElementSet{1, 2}));
  EXPECT_EQ(r.psi.at(3), (ElementSet{2}));
  ASSERT_EQ(r.classes.size(), 4u);
  for (const auto& c : r.classes) EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(r.class_codes, (std::vector<ElementSet>{{0}, {0, 1}, {2}, {1, 2}}));
  EXPECT_EQ(r.h_partial, (std::vector<ElementSet>{{0, 1}, {2, 3}}));
  EXPECT_THROW(hs_disjointify({{0}, {0}}), std::invalid_argument);
}

TEST(Hs, KernelIsMembershipPattern) {
  oracle::Gen gen(17);
  for (int i = 0; i < 300; ++i) {
    std::set<ElementSet> distinct;
    std::size_t len = 1 + gen.below(12);
    while (distinct.size() < len) distinct.insert(gen.set(6, 40));
    std::vector<ElementSet> f(distinct.begin(), distinct.end());
    auto r = hs_disjointify(f);
    auto pattern = [&](std::size_t x) {
      std::vector<bool> p;
      for (const auto& s : f) p.push_back(s.contains(x));
      return p;
    };
    for (const auto& [x, px] : r.psi)
      for (const auto& [y, py] : r.psi) EXPECT_EQ(px == py, pattern(x) == pattern(y));
    ElementSet seen;
    for (const auto& h : r.h_partial) {
      EXPECT_GE(h.size(), 2u);
      for (std::size_t x : h) EXPECT_TRUE(seen.insert(x).second);
    }
  }
}

TEST(SurjAux, Examples) {
  auto r = surj_with_aux({{0, 1}, {2, 3}}, 5);
  EXPECT_EQ(r.g.table, (std::vector<std::size_t>{0, 0, 1, 1, 0}));
  EXPECT_EQ(r.t.at(0), (SetFamily{{0, 1}, {4}}));
  EXPECT_EQ(r.t.at(1), (SetFamily{{2, 3}}));
  EXPECT_TRUE(is_auxiliary_for(r.t, r.g));
  auto pair = surj_with_aux({{0, 1}}, 2);
  EXPECT_EQ(pair.g.table, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(pair.t.at(0), (SetFamily{{0, 1}}));
  EXPECT_THROW(surj_with_aux({{0, 1}, {1, 2}}, 4), std::invalid_argument);
  EXPECT_THROW(surj_with_aux({{0}}, 4), std::invalid_argument);
  EXPECT_THROW(surj_with_aux({}, 4), std::invalid_argument);
}

TEST(F2o, Examples) {
  using F = FiniteFunction<std::size_t>;
  EXPECT_THROW(f2o_to_injection(F{{5, 5, 7, 9}}), Exhausted);
  EXPECT_THROW(f2o_to_injection(F{{5, 5, 7}}), Exhausted);
  EXPECT_EQ(f2o_to_injection(F{{4, 9, 1}}).table, (std::vector<std::size_t>{4, 9, 1}));
}

TEST(BellGap, Examples) {
  FiniteFunction<Partition> tiny;
  for (std::uint64_t v = 0; v < 4; ++v) tiny.table.push_back(Partition::discrete(2));
  EXPECT_THROW(bell_gap_step(tiny, {bell_gap_seed(2, 0, 1)}), std::domain_error);

  auto seed = bell_gap_seed(5, 0, 1);
  EXPECT_EQ(seed, (SubsetFamily{SubsetMask(5, {0}), SubsetMask(5, {1})}));

  FiniteFunction<Partition> phi;
  for (std::uint64_t v = 0; v < 32; ++v) phi.table.push_back(unrank_partition(5, v));
  auto step = bell_gap_step(phi, {seed});
  EXPECT_FALSE(step.next.empty());
  for (const auto& c : step.next) EXPECT_FALSE(seed.contains(c));
  EXPECT_EQ(step.bell_support, bell(step.support));
  EXPECT_LE(pow2(step.classes), step.bell_support);

  FiniteFunction<Partition> clash = phi;
  clash.table[1] = clash.table[0];
  EXPECT_THROW(bell_gap_step(clash, {seed}), std::invalid_argument);
}

TEST(BinaryCode, Order) {
  EXPECT_TRUE(binary_code_less({0}, {0, 1}));
  EXPECT_TRUE(binary_code_less({0, 1}, {2}));
  EXPECT_FALSE(binary_code_less({2}, {2}));
  EXPECT_TRUE(binary_code_less({}, {0}));
}
