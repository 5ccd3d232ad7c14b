#include <algorithm>
#include <iterator>

#include "finpart/bell.hpp"
#include "finpart/witnesses.hpp"

namespace finpart {
namespace {

// The given blocks (empty ones dropped) plus singletons for everything else.
Partition with_singletons(std::size_t ground, const std::vector<ElementSet>& blocks) {
  std::vector<ElementSet> all;
  std::vector<bool> used(ground, false);
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    for (std::size_t x : b) {
      if (x >= ground) throw std::invalid_argument("block element outside the ground");
      used[x] = true;
    }
    all.push_back(b);
  }
  for (std::size_t z = 0; z < ground; ++z) {
    if (!used[z]) all.push_back({z});
  }
  return Partition::from_blocks(ground, all);
}

ElementSet set_minus(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ElementSet full_set(std::size_t n) {
  ElementSet out;
  for (std::size_t x = 0; x < n; ++x) out.insert(out.end(), x);
  return out;
}

void check_marks(std::size_t ground, const MarkedFive& marked) {
  if (ground < 5) throw std::invalid_argument("ground needs at least 5 elements");
  if (marked.as_set().size() != 5) throw std::invalid_argument("marked elements are not distinct");
  for (std::size_t m : marked.marks) {
    if (m >= ground) throw std::invalid_argument("marked element outside the ground");
  }
}

}  // namespace

bool binary_code_less(const ElementSet& a, const ElementSet& b) {
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.rend() && ib != b.rend();
}

// --- Small embeddings -------------------------------------------------------

SetFamily seq_inj_to_finfin(const std::vector<std::size_t>& s) {
  SetFamily out;
  ElementSet prefix;
  for (std::size_t v : s) {
    if (!prefix.insert(v).second) throw std::invalid_argument("sequence repeats a value");
    out.insert(prefix);
  }
  return out;
}

std::vector<std::size_t> finfin_to_seq_inj(const SetFamily& chain) {
  std::vector<const ElementSet*> sorted;
  for (const auto& s : chain) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
  std::vector<std::size_t> out;
  ElementSet previous;
  for (const ElementSet* s : sorted) {
    if (s->size() != previous.size() + 1 || !std::includes(s->begin(), s->end(), previous.begin(), previous.end())) {
      throw std::invalid_argument("family is not a chain of prefix ranges");
    }
    out.push_back(*set_minus(*s, previous).begin());
    previous = *s;
  }
  return out;
}

ElementSet union_f2o(const SetFamily& family) {
  ElementSet out;
  for (const auto& s : family) out.insert(s.begin(), s.end());
  return out;
}

Relation part_to_relation(const Partition& p) {
  Relation out;
  for (const auto& block : p.blocks()) {
    for (std::size_t x : block) {
      for (std::size_t y : block) out.emplace(x, y);
    }
  }
  return out;
}

SetFamily bfin_to_finfin(const Partition& p) {
  const auto ns = p.ns();
  return {ns.begin(), ns.end()};
}

CofinitePartition::CofinitePartition(SetFamily ns_blocks) : ns_(std::move(ns_blocks)) {
  ElementSet seen;
  for (const auto& block : ns_) {
    if (block.size() < 2) throw std::invalid_argument("non-singleton block has fewer than 2 elements");
    for (std::size_t x : block) {
      if (!seen.insert(x).second) throw std::invalid_argument("blocks overlap");
    }
  }
}

CofinitePartition CofinitePartition::from_prefix(const Partition& prefix) {
  return CofinitePartition(bfin_to_finfin(prefix));
}

std::size_t CofinitePartition::support_bound() const {
  std::size_t bound = 0;
  for (const auto& block : ns_) bound = std::max(bound, *block.rbegin() + 1);
  return bound;
}

Partition CofinitePartition::prefix(std::size_t size) const {
  if (size < support_bound()) throw std::invalid_argument("prefix cuts a non-singleton block");
  return with_singletons(size, {ns_.begin(), ns_.end()});
}

FinitePartitionImage bfin_to_partfin(const CofinitePartition& p) {
  return {p.ns(), union_f2o(p.ns())};
}

FinitePartitionImage bfin_to_partfin(const Partition& p) {
  const auto blocks = p.blocks();
  return {SetFamily(blocks.begin(), blocks.end()), std::nullopt};
}

// --- The five-marked-element injections -------------------------------------

Partition fin_to_bfin(const SubsetMask& subset, const MarkedFive& marked) {
  const std::size_t n = subset.ground_size();
  check_marks(n, marked);
  const ElementSet b = subset.elements();
  const ElementSet e = marked.as_set();
  const std::size_t a = marked.a();
  if (b.size() != 1) return with_singletons(n, {b});
  const std::size_t x = *b.begin();
  if (x != a) return with_singletons(n, {{a, x}, set_minus(e, {a, x})});
  const auto& m = marked.marks;
  return with_singletons(n, {{a}, {m[1], m[2]}, {m[3], m[4]}});
}

Partition pow_to_partfin(const SubsetMask& subset, const MarkedFive& marked) {
  const std::size_t n = subset.ground_size();
  check_marks(n, marked);
  const ElementSet all = full_set(n);
  const ElementSet c = subset.elements();
  const ElementSet e = marked.as_set();
  const std::size_t a = marked.a();
  const auto& m = marked.marks;
  const std::size_t inside = set_intersection(c, e).size();

  std::vector<ElementSet> blocks;
  if (!c.contains(a)) {
    blocks = {c, set_minus(all, c)};
  } else if (inside <= 3) {
    blocks = {c, set_minus(all, set_union(c, e))};
    for (std::size_t z : set_minus(e, c)) blocks.push_back({z});
  } else if (inside == 4) {
    blocks = {set_minus(c, {a}), {a}, set_minus(e, c), set_minus(all, set_union(c, e))};
  } else {
    blocks = {set_minus(c, {m[1], m[2], m[3], m[4]}), {m[1], m[2]}, {m[3], m[4]}, set_minus(all, c)};
  }
  return with_singletons(n, blocks);
}

// --- Diagonal escape ---------------------------------------------------------

Partition diagonal_escape(const FiniteFunction<Partition>& f, const AuxiliaryAssignment<Partition>& aux) {
  const std::size_t n = f.domain_size();
  for (const auto& p : f.table) {
    if (p.ground_size() != n) throw std::invalid_argument("f(x) is not a partition of the domain");
  }
  if (auto check = check_auxiliary(aux, f); !check) throw std::invalid_argument("not auxiliary: " + check.reason);

  std::vector<ElementSet> blocks;
  for (const auto& [p, fiber] : f.fibers()) {
    bool identifies = false;
    for (auto x = fiber.begin(); x != fiber.end() && !identifies; ++x) {
      for (auto y = std::next(x); y != fiber.end(); ++y) {
        if (p.same_block(*x, *y)) {
          identifies = true;
          break;
        }
      }
    }
    if (identifies) {
      for (std::size_t x : fiber) blocks.push_back({x});
    } else {
      const auto& own = aux.at(p);
      blocks.insert(blocks.end(), own.begin(), own.end());
    }
  }
  return Partition::from_blocks(n, blocks);
}

// --- Kuratowski-like directions ---------------------------------------------

Partition powerset_to_b(const SubsetMask& u, const Partition& p, const FiniteFunction<std::size_t>& label) {
  const auto ns = p.ns();
  if (label.domain_size() != ns.size()) throw std::invalid_argument("label is not defined on ns(P)");
  const std::size_t k = u.ground_size();
  std::vector<bool> hit(k, false);
  for (std::size_t v : label.table) {
    if (v >= k) throw std::invalid_argument("label leaves the index set");
    hit[v] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw std::invalid_argument("label is not surjective");
  std::vector<ElementSet> chosen;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (u.contains(label(i))) chosen.push_back(ns[i]);
  }
  return with_singletons(p.ground_size(), chosen);
}

Partition disjoint_witness_step(const std::vector<Partition>& family, const SubsetMask& avoid) {
  const std::size_t n = avoid.ground_size();
  for (const auto& p : family) {
    if (p.ground_size() != n) throw std::invalid_argument("family member on a different ground");
  }
  const ElementSet b = avoid.elements();

  // Case 1: the first P_k that identifies two points outside B
  for (const auto& p : family) {
    for (const auto& block : p.ns()) {
      const ElementSet outside = set_minus(block, b);
      if (outside.size() < 2) continue;
      std::vector<ElementSet> blocks;
      for (const auto& q : p.blocks()) blocks.push_back(set_minus(q, b));
      return with_singletons(n, blocks);
    }
  }

  // Case 2: every block of every P_k meets B in all but at most one point.
  struct Stage {
    std::size_t k;
    ElementSet fresh;  // f(m)
    SetFamily traces;  // g(m)
  };
  std::vector<Stage> stages;
  ElementSet covered = b;
  for (;;) {
    auto next = std::find_if(family.begin(), family.end(), [&](const Partition& p) {
      const ElementSet u = p.ns_union();
      return !std::includes(covered.begin(), covered.end(), u.begin(), u.end());
    });
    if (next == family.end()) break;
    Stage stage{static_cast<std::size_t>(next - family.begin()), set_minus(next->ns_union(), covered), {}};
    for (std::size_t x : stage.fresh) stage.traces.insert(set_intersection(next->block_of(x), b));
    covered = set_union(covered, next->ns_union());
    stages.push_back(std::move(stage));
  }

  for (std::size_t l0 = 0; l0 < stages.size(); ++l0) {
    for (std::size_t l1 = l0 + 1; l1 < stages.size(); ++l1) {
      if (stages[l0].traces != stages[l1].traces) continue;
      const Partition& p0 = family[stages[l0].k];
      const Partition& p1 = family[stages[l1].k];
      std::vector<ElementSet> pairs;
      for (std::size_t x : stages[l0].fresh) {
        for (std::size_t y : stages[l1].fresh) {
          if (set_intersection(p0.block_of(x), b) == set_intersection(p1.block_of(y), b)) pairs.push_back({x, y});
        }
      }
      return with_singletons(n, pairs);
    }
  }
  throw Exhausted("instance exhausted: the finite family cannot feed the recursion step");
}

// --- Cantor-Bernstein ---------------------------------------------------------

FiniteFunction<std::size_t> cb_bijection(const FiniteFunction<std::size_t>& f, std::size_t b_size,
                                         const FiniteFunction<std::size_t>& g) {
  const std::size_t a_size = f.domain_size();
  if (g.domain_size() != b_size) throw std::invalid_argument("g is not defined on B");
  const std::size_t none = SIZE_MAX;
  std::vector<std::size_t> f_inv(b_size, none);
  std::vector<std::size_t> g_inv(a_size, none);
  for (std::size_t x = 0; x < a_size; ++x) {
    if (f(x) >= b_size || f_inv[f(x)] != none) throw std::invalid_argument("f is not an injection into B");
    f_inv[f(x)] = x;
  }
  for (std::size_t y = 0; y < b_size; ++y) {
    if (g(y) >= a_size || g_inv[g(y)] != none) throw std::invalid_argument("g is not an injection into A");
    g_inv[g(y)] = y;
  }

  FiniteFunction<std::size_t> h;
  h.table.resize(a_size);
  for (std::size_t x = 0; x < a_size; ++x) {
    // Walk backwards x <- g <- f <- g ... until a stopper or a repeat.
    std::size_t a = x;
    bool b_stopper = false;
    for (std::size_t steps = 0; steps <= a_size + b_size; ++steps) {
      const std::size_t y = g_inv[a];
      if (y == none) break;  // A-stopper
      const std::size_t prev = f_inv[y];
      if (prev == none) {
        b_stopper = true;
        break;
      }
      a = prev;
      if (a == x) break;  // cyclic
    }
    h.table[x] = b_stopper ? g_inv[x] : f(x);
  }
  return h;
}

// --- Surjections with auxiliary functions -----------------------------------

QuotientSurjection quotient_surjection(const Partition& p, const FiniteFunction<std::size_t>& f) {
  if (p.has_singleton()) throw std::invalid_argument("partition has a singleton block");
  if (f.domain_size() != p.ground_size()) throw std::invalid_argument("f and P live on different grounds");
  const auto range = f.range();
  if (!range.empty() && *range.rbegin() + 1 != range.size()) throw std::invalid_argument("f is not onto {0..n-1}");

  const auto blocks = p.blocks();
  std::vector<ElementSet> images;
  for (const auto& block : blocks) {
    ElementSet img;
    for (std::size_t x : block) img.insert(f(x));
    images.push_back(std::move(img));
  }

  QuotientSurjection out;
  out.cover = images;
  std::sort(out.cover.begin(), out.cover.end(), binary_code_less);
  out.cover.erase(std::unique(out.cover.begin(), out.cover.end()), out.cover.end());
  auto position = [&](const ElementSet& s) {
    return static_cast<std::size_t>(std::lower_bound(out.cover.begin(), out.cover.end(), s, binary_code_less) -
                                    out.cover.begin());
  };

  out.least_cover.assign(range.size(), 0);
  for (std::size_t beta = 0; beta < range.size(); ++beta) {
    auto it = std::find_if(out.cover.begin(), out.cover.end(), [&](const ElementSet& c) { return c.contains(beta); });
    out.least_cover[beta] = static_cast<std::size_t>(it - out.cover.begin());
  }

  out.g.table.assign(p.ground_size(), 0);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t q = position(images[i]);
    for (std::size_t x : blocks[i]) out.g.table[x] = q;
    out.t[q].insert(blocks[i]);
  }
  return out;
}

SurjectionWithAux surj_with_aux(const std::vector<ElementSet>& h, std::size_t ground_size) {
  if (h.empty()) throw std::invalid_argument("h is empty");
  constexpr std::size_t none = SIZE_MAX;
  std::vector<std::size_t> owner(ground_size, none);
  for (std::size_t beta = 0; beta < h.size(); ++beta) {
    if (h[beta].size() < 2) throw std::invalid_argument("h(beta) has fewer than 2 elements");
    for (std::size_t x : h[beta]) {
      if (x >= ground_size) throw std::invalid_argument("h(beta) leaves the ground");
      if (owner[x] != none) throw std::invalid_argument("h is not pairwise disjoint");
      owner[x] = beta;
    }
  }
  SurjectionWithAux out;
  out.g.table.resize(ground_size);
  for (std::size_t beta = 0; beta < h.size(); ++beta) out.t[beta].insert(h[beta]);
  for (std::size_t x = 0; x < ground_size; ++x) {
    if (owner[x] == none) {
      out.g.table[x] = 0;
      out.t[0].insert({x});
    } else {
      out.g.table[x] = owner[x];
    }
  }
  return out;
}

FiniteFunction<std::size_t> f2o_to_injection(const FiniteFunction<std::size_t>& f) {
  std::vector<std::size_t> distinct;
  std::set<std::size_t> seen;
  for (std::size_t v : f.table) {
    if (seen.insert(v).second) distinct.push_back(v);
  }
  if (distinct.size() < f.domain_size()) {
    throw Exhausted("range exhausted: " + std::to_string(distinct.size()) + " values for " +
                    std::to_string(f.domain_size()) + " indices");
  }
  distinct.resize(f.domain_size());
  return {distinct};
}

// --- P(A) vs B_fin(A) recursion step ----------------------------------------

SubsetFamily bell_gap_seed(std::size_t ground_size, std::size_t a, std::size_t b) {
  if (a == b || a >= ground_size || b >= ground_size) throw std::invalid_argument("need two distinct elements");
  return {SubsetMask(ground_size, {a}), SubsetMask(ground_size, {b})};
}

BellGapStep bell_gap_step(const FiniteFunction<Partition>& phi, const std::vector<SubsetFamily>& family) {
  std::size_t n = 0;
  while (n < 64 && (std::size_t{1} << n) < phi.domain_size()) ++n;
  if (n >= 31 || (std::size_t{1} << n) != phi.domain_size()) throw std::invalid_argument("phi is not defined on P(A)");
  if (pow2(n) > bell(n)) throw std::domain_error("no injection at this scale: 2^|A| > B_|A|");
  std::set<Partition> images;
  for (const auto& p : phi.table) {
    if (p.ground_size() != n) throw std::invalid_argument("phi(C) is not a partition of A");
    if (!images.insert(p).second) throw std::invalid_argument("phi is not injective");
  }

  if (family.empty()) throw std::invalid_argument("family is empty");
  std::set<SubsetMask> seen;
  for (const auto& entry : family) {
    if (entry.empty()) throw std::invalid_argument("family entry is empty");
    for (const auto& c : entry) {
      if (c.ground_size() != n) throw std::invalid_argument("family member on a different ground");
      if (!seen.insert(c).second) throw std::invalid_argument("family entries overlap");
    }
  }

  // x ~ y iff no member of the family separates them; label by membership pattern
  std::map<std::vector<bool>, std::size_t> pattern_class;
  std::vector<std::size_t> cls(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> pattern;
    for (const auto& c : seen) pattern.push_back(c.contains(x));
    cls[x] = pattern_class.try_emplace(pattern, pattern_class.size()).first->second;
  }
  const std::size_t k = pattern_class.size();

  std::vector<bool> in_u(phi.domain_size(), false);
  ElementSet d;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << k); ++w) {
    std::uint64_t mask = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if ((w >> cls[x]) & 1U) mask |= std::uint64_t{1} << x;
    }
    in_u[mask] = true;
    const ElementSet support = phi(mask).ns_union();
    d.insert(support.begin(), support.end());
  }

  BellGapStep out;
  out.classes = k;
  out.support = d.size();
  out.bell_support = bell(d.size());
  const BigNat subsets = pow2(k);
  if (subsets > out.bell_support) throw std::logic_error("guard 2^k <= B_m violated");
  if (subsets == out.bell_support) throw std::logic_error("B_m equals 2^k");

  for (std::uint64_t mask = 0; mask < phi.domain_size(); ++mask) {
    if (in_u[mask]) continue;
    const ElementSet support = phi(mask).ns_union();
    if (std::includes(d.begin(), d.end(), support.begin(), support.end())) {
      out.next.insert(SubsetMask::from_integer(n, mask));
    }
  }
  if (out.next.empty()) throw Exhausted("recursion halts: E \\ phi[U] misses the range of phi");
  return out;
}

}  // namespace finpart
