#include "finpart/scans.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "finpart/bell.hpp"
#include "finpart/witnesses.hpp"

namespace finpart {

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

BigNat uniform_below(std::mt19937_64& rng, const BigNat& bound) {
  if (bound <= 0) throw std::invalid_argument("empty range");
  const std::size_t limbs = msb(bound) / 64 + 2;
  BigNat v = 0;
  for (std::size_t i = 0; i < limbs; ++i) {
    v <<= 64;
    v += rng();
  }
  return v % bound;
}

namespace {

Partition random_partition(std::mt19937_64& rng, std::size_t n) { return unrank_partition(n, uniform_below(rng, bell(n))); }

// n != 1
Partition random_no_singleton(std::mt19937_64& rng, std::size_t n) {
  return unrank_no_singleton(n, uniform_below(rng, bell_star(n)));
}

void fail_once(CheckResult& check, Json counterexample) {
  if (!check.passed) return;
  check.passed = false;
  check.counterexample = std::move(counterexample);
}

Json to_json(const FiniteFunction<std::size_t>& f) { return Json(f.table); }

template <class Key>
Json aux_json(const AuxiliaryAssignment<Key>& aux) {
  Json out = Json::array();
  for (const auto& [key, blocks] : aux) out.push_back(Json::array({finpart::to_json(key), finpart::to_json(blocks)}));
  return out;
}

// Every partition of `fiber` that has a block of size >= 2, as block families.
std::vector<SetFamily> fiber_partitions(const ElementSet& fiber) {
  const std::vector<std::size_t> elems(fiber.begin(), fiber.end());
  std::vector<SetFamily> out;
  for_each_partition(elems.size(), false, [&](const Partition& p) {
    if (p.block_count() == elems.size()) return;
    SetFamily blocks;
    for (const auto& b : p.blocks()) {
      ElementSet mapped;
      for (std::size_t i : b) mapped.insert(elems[i]);
      blocks.insert(std::move(mapped));
    }
    out.push_back(std::move(blocks));
  });
  return out;
}

SetFamily random_fiber_partition(std::mt19937_64& rng, const ElementSet& fiber) {
  const std::vector<std::size_t> elems(fiber.begin(), fiber.end());
  Partition p;
  do {
    p = random_partition(rng, elems.size());
  } while (p.block_count() == elems.size());
  SetFamily blocks;
  for (const auto& b : p.blocks()) {
    ElementSet mapped;
    for (std::size_t i : b) mapped.insert(elems[i]);
    blocks.insert(std::move(mapped));
  }
  return blocks;
}

void check_escape(CheckResult& outside, CheckResult& valid, const FiniteFunction<Partition>& f,
                  const AuxiliaryAssignment<Partition>& aux) {
  const Partition q = diagonal_escape(f, aux);
  ++outside.instances;
  ++valid.instances;
  if (q.ground_size() != f.domain_size()) {
    fail_once(valid, Json{{"f", Json::array()}, {"output", finpart::to_json(q)}});
  }
  if (std::find(f.table.begin(), f.table.end(), q) != f.table.end()) {
    Json fj = Json::array();
    for (const auto& p : f.table) fj.push_back(finpart::to_json(p));
    fail_once(outside, Json{{"f", fj}, {"aux", aux_json(aux)}, {"output", finpart::to_json(q)}});
  }
}

WitnessReport start(const std::string& name) {
  WitnessReport r;
  r.name = name;
  return r;
}

WitnessReport finish(WitnessReport report, const Stopwatch& clock) {
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

template <class Map>
WitnessReport five_marked_scan(const std::string& name, std::size_t max_ground, Map map) {
  Stopwatch clock;
  auto report = start(name);
  report.params["grounds"] = Json::array();
  auto& injective = report.add_check("injective");
  for (std::size_t n = 5; n <= max_ground; ++n) {
    report.params["grounds"].push_back(n);
    CollisionDetector<Partition> detector;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      detector.add(bits, map(SubsetMask::from_integer(n, bits), MarkedFive{}));
    }
    injective.instances += detector.count();
    if (auto c = detector.collision()) {
      fail_once(injective, Json::array({SubsetMask::from_integer(n, c->first).to_string(),
                                        SubsetMask::from_integer(n, c->second).to_string()}));
    }
  }
  return finish(std::move(report), clock);
}

std::size_t option(std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; }

}  // namespace

WitnessReport scan_fin_to_bfin(std::size_t max_ground) {
  return five_marked_scan("fin_to_bfin", max_ground, fin_to_bfin);
}

WitnessReport scan_pow_to_partfin(std::size_t max_ground) {
  return five_marked_scan("pow_to_partfin", max_ground, pow_to_partfin);
}

WitnessReport scan_an_to_bfin(std::size_t n) {
  Stopwatch clock;
  auto report = start("an_to_bfin");
  const AtomLayout layout(n);
  const std::size_t ground = layout.size();
  report.params["n"] = n;
  report.params["ground"] = ground;

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > (std::uint64_t{1} << 40) / std::max<std::size_t>(ground, 1)) {
      throw std::invalid_argument("too many tuples to scan");
    }
    total *= ground;
  }
  report.params["tuples"] = total;

  auto& shape = report.add_check("exactly n pairs as non-singleton blocks");
  auto& decodes = report.add_check("decoder recovers the tuple");
  auto& distinct = report.add_check("pairwise distinct images");

  // canonical encoding: the sorted pair list, packed when it fits
  const bool packed = ground <= 256 && 2 * n <= 8;
  std::vector<std::uint64_t> keys;
  CollisionDetector<SetFamily> wide;
  if (packed) keys.reserve(total);

  std::vector<std::size_t> s(n, 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (std::size_t j = n; j-- > 0;) {
      s[j] = rest % ground;
      rest /= ground;
    }
    const SetFamily pairs = an_to_bfin_pairs(s, layout);
    ++shape.instances;
    bool good = pairs.size() == n;
    for (const auto& p : pairs) good = good && p.size() == 2 && *p.rbegin() < ground;
    if (!good) fail_once(shape, Json(s));

    if (n <= 2 || index % 97 == 0) {
      ++decodes.instances;
      const Partition image = an_to_bfin(s, ground, layout);
      if (bfin_to_an(image, layout) != s) fail_once(decodes, Json(s));
    }

    if (packed) {
      std::uint64_t key = 0;
      for (const auto& p : pairs) {
        for (std::size_t x : p) key = (key << 8) | x;
      }
      keys.push_back(key);
    } else {
      wide.add(index, pairs);
    }
  }

  if (packed) {
    distinct.instances = keys.size();
    std::vector<std::uint64_t> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      Json where = Json::array();
      for (std::size_t i = 0; i < keys.size() && where.size() < 2; ++i) {
        if (keys[i] == *dup) where.push_back(i);
      }
      fail_once(distinct, where);
    }
  } else {
    wide.record(distinct);
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_diagonal_escape_exhaustive(std::size_t max_ground) {
  Stopwatch clock;
  auto report = start("diagonal_escape_exhaustive");
  report.params["max_ground"] = max_ground;
  auto& outside = report.add_check("output outside ran(f)");
  auto& valid = report.add_check("output partitions the domain");
  for (std::size_t n = 0; n <= max_ground; ++n) {
    const auto parts = enumerate_partitions(n, false);
    const std::size_t b = parts.size();
    std::uint64_t tables = 1;
    for (std::size_t i = 0; i < n; ++i) tables *= b;
    FiniteFunction<Partition> f;
    f.table.resize(n);
    for (std::uint64_t code = 0; code < tables; ++code) {
      std::uint64_t rest = code;
      for (std::size_t x = 0; x < n; ++x) {
        f.table[x] = parts[rest % b];
        rest /= b;
      }
      const auto fibers = f.fibers();
      if (std::any_of(fibers.begin(), fibers.end(), [](const auto& kv) { return kv.second.size() < 2; })) continue;

      std::vector<std::pair<Partition, std::vector<SetFamily>>> choices;
      for (const auto& [value, fiber] : fibers) choices.emplace_back(value, fiber_partitions(fiber));
      std::vector<std::size_t> pick(choices.size(), 0);
      for (;;) {
        AuxiliaryAssignment<Partition> aux;
        for (std::size_t i = 0; i < choices.size(); ++i) aux[choices[i].first] = choices[i].second[pick[i]];
        check_escape(outside, valid, f, aux);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].second.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_diagonal_escape_random(std::size_t samples, std::size_t max_ground, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("diagonal_escape_random");
  report.params["samples"] = samples;
  report.params["max_ground"] = max_ground;
  report.params["seed"] = seed;
  if (max_ground < 2) throw std::invalid_argument("random instances need a ground of at least 2");
  auto& outside = report.add_check("output outside ran(f)");
  auto& valid = report.add_check("output partitions the domain");
  std::uint64_t identifying = 0;
  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    const std::size_t n = uniform_int(rng, 2, max_ground);
    const Partition grouping = random_no_singleton(rng, n);
    FiniteFunction<Partition> f;
    f.table.resize(n);
    for (const auto& block : grouping.blocks()) {
      const Partition value = random_partition(rng, n);
      for (std::size_t x : block) f.table[x] = value;
    }
    AuxiliaryAssignment<Partition> aux;
    for (const auto& [value, fiber] : f.fibers()) {
      aux[value] = random_fiber_partition(rng, fiber);
      for (auto x = fiber.begin(); x != fiber.end(); ++x) {
        if (std::any_of(std::next(x), fiber.end(), [&](std::size_t y) { return value.same_block(*x, y); })) {
          ++identifying;
          break;
        }
      }
    }
    check_escape(outside, valid, f, aux);
  }
  report.params["identifying_fibers"] = identifying;
  return finish(std::move(report), clock);
}

WitnessReport scan_hs_disjointify(std::size_t samples, std::size_t max_length, std::size_t element_bound,
                                  std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("hs_disjointify");
  report.params["samples"] = samples;
  report.params["max_length"] = max_length;
  report.params["element_bound"] = element_bound;
  report.params["seed"] = seed;
  if (max_length == 0 || element_bound == 0) throw std::invalid_argument("empty instance space");
  auto& kernel = report.add_check("kernel of psi equals membership-pattern equivalence");
  auto& bound = report.add_check("|psi(x)| <= 2^|f(first index of x)|, first index in psi(x)");
  auto& injective = report.add_check("beta -> psi[f(beta)] injective");
  auto& disjoint = report.add_check("h entries pairwise disjoint with >= 2 elements");

  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    const std::size_t length = uniform_int(rng, 1, max_length);
    std::vector<ElementSet> f;
    std::set<ElementSet> used;
    const std::size_t max_size = std::min<std::size_t>(element_bound, 8);
    while (f.size() < length) {
      ElementSet s;
      const std::size_t size = uniform_int(rng, 0, max_size);
      while (s.size() < size) s.insert(uniform_int(rng, 0, element_bound - 1));
      if (used.insert(s).second) f.push_back(std::move(s));
      if (used.size() >= (std::size_t{1} << std::min<std::size_t>(element_bound, 20))) break;
    }
    const HsResult r = hs_disjointify(f);
    const Json instance = finpart::to_json(SetFamily(f.begin(), f.end()));

    std::map<std::size_t, ElementSet> pattern;
    for (std::size_t g = 0; g < f.size(); ++g) {
      for (std::size_t x : f[g]) pattern[x].insert(g);
    }
    ++kernel.instances;
    for (auto a = r.psi.begin(); a != r.psi.end(); ++a) {
      for (auto b = a; b != r.psi.end(); ++b) {
        if ((a->second == b->second) != (pattern[a->first] == pattern[b->first])) {
          fail_once(kernel, Json{{"f", instance}, {"x", a->first}, {"y", b->first}});
        }
      }
    }

    ++bound.instances;
    for (const auto& [x, value] : r.psi) {
      const std::size_t first = *pattern[x].begin();
      const bool fits = f[first].size() >= 63 || value.size() <= (std::size_t{1} << f[first].size());
      if (!fits || value.empty() || *value.begin() != first) fail_once(bound, Json{{"f", instance}, {"x", x}});
    }

    ++injective.instances;
    std::set<std::set<ElementSet>> images;
    for (const auto& s : f) {
      std::set<ElementSet> img;
      for (std::size_t x : s) img.insert(r.psi.at(x));
      images.insert(std::move(img));
    }
    if (images.size() != f.size()) fail_once(injective, Json{{"f", instance}});

    ++disjoint.instances;
    ElementSet seen;
    bool ok = r.h_partial.size() == r.classes.size() / 2;
    for (const auto& h : r.h_partial) {
      ok = ok && h.size() >= 2;
      for (std::size_t x : h) ok = ok && seen.insert(x).second;
    }
    if (!ok) fail_once(disjoint, Json{{"f", instance}});
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_quotient_surjection(std::size_t samples, std::size_t max_ground, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("quotient_surjection");
  report.params["samples"] = samples;
  report.params["max_ground"] = max_ground;
  report.params["seed"] = seed;
  if (max_ground < 2) throw std::invalid_argument("instances need a ground of at least 2");
  auto& onto = report.add_check("g surjective onto |Q|");
  auto& aux = report.add_check("t auxiliary for g");
  auto& invariant = report.add_check("g constant on blocks of P");
  auto& order = report.add_check("Q strictly increasing in binary-code order");

  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    const std::size_t n = uniform_int(rng, 2, max_ground);
    const Partition p = random_no_singleton(rng, n);
    const std::size_t m = uniform_int(rng, 1, n);
    std::vector<std::size_t> raw(n);
    for (auto& v : raw) v = uniform_int(rng, 0, m - 1);
    const FiniteFunction<std::size_t> f{Partition::from_labels(raw).rgs()};
    const auto q = quotient_surjection(p, f);
    const Json instance{{"P", finpart::to_json(p)}, {"f", to_json(f)}};

    ++onto.instances;
    if (q.g.range().size() != q.cover.size() || *q.g.range().rbegin() + 1 != q.cover.size()) {
      fail_once(onto, instance);
    }
    ++aux.instances;
    if (auto c = check_auxiliary(q.t, q.g); !c) fail_once(aux, Json{{"instance", instance}, {"reason", c.reason}});
    ++invariant.instances;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        if (p.same_block(x, y) && q.g(x) != q.g(y)) fail_once(invariant, instance);
      }
    }
    ++order.instances;
    for (std::size_t i = 1; i < q.cover.size(); ++i) {
      if (!binary_code_less(q.cover[i - 1], q.cover[i])) fail_once(order, instance);
    }
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_cb_bijection(std::size_t max_size) {
  Stopwatch clock;
  auto report = start("cb_bijection");
  report.params["max_size"] = max_size;
  auto& bijective = report.add_check("bijective");
  auto& cyclic = report.add_check("equal finite sizes: all orbits cyclic, h = f");
  auto& rejects = report.add_check("unequal sizes rejected");
  for (std::size_t n = 0; n <= max_size; ++n) {
    std::vector<std::size_t> f(n);
    std::iota(f.begin(), f.end(), 0);
    do {
      std::vector<std::size_t> g(n);
      std::iota(g.begin(), g.end(), 0);
      do {
        const auto h = cb_bijection({f}, n, {g});
        ++bijective.instances;
        ++cyclic.instances;
        if (h.range().size() != n) fail_once(bijective, Json{{"f", f}, {"g", g}});
        if (h.table != f) fail_once(cyclic, Json{{"f", f}, {"g", g}});
      } while (std::next_permutation(g.begin(), g.end()));
    } while (std::next_permutation(f.begin(), f.end()));

    // A of size n into B of size n+1: g: B -> A cannot be injective
    if (n >= 1 && n <= 4) {
      std::vector<std::size_t> into(n);
      std::iota(into.begin(), into.end(), 0);
      std::vector<std::size_t> back(n + 1, 0);
      ++rejects.instances;
      try {
        cb_bijection({into}, n + 1, {back});
        fail_once(rejects, Json{{"n", n}});
      } catch (const std::invalid_argument&) {
      }
    }
  }
  return finish(std::move(report), clock);
}

namespace {

WitnessReport scan_seq_inj_to_finfin(std::size_t max_value) {
  Stopwatch clock;
  auto report = start("seq_inj_to_finfin");
  report.params["values"] = max_value;
  auto& injective = report.add_check("injective");
  auto& round_trip = report.add_check("chain decodes to the sequence");
  CollisionDetector<SetFamily> detector;
  std::vector<std::vector<std::size_t>> all{{}};
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto s = all[i];
    const SetFamily chain = seq_inj_to_finfin(s);
    detector.add(i, chain);
    ++round_trip.instances;
    if (finfin_to_seq_inj(chain) != s) fail_once(round_trip, Json(s));
    for (std::size_t v = 0; v < max_value; ++v) {
      if (std::find(s.begin(), s.end(), v) != s.end()) continue;
      auto next = s;
      next.push_back(v);
      all.push_back(std::move(next));
    }
  }
  detector.record(injective);
  return finish(std::move(report), clock);
}

WitnessReport scan_union_f2o(std::size_t ground) {
  Stopwatch clock;
  auto report = start("union_f2o");
  report.params["ground"] = ground;
  if (ground > 4) throw std::invalid_argument("union_f2o scan supports grounds up to 4");
  auto& bound = report.add_check("fiber over B has at most 2^(2^|B|) families");
  const std::size_t subsets = std::size_t{1} << ground;
  std::map<ElementSet, std::uint64_t> fiber;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << subsets); ++code) {
    SetFamily family;
    for (std::size_t s = 0; s < subsets; ++s) {
      if ((code >> s) & 1U) family.insert(SubsetMask::from_integer(ground, s).elements());
    }
    ++fiber[union_f2o(family)];
    ++bound.instances;
  }
  std::uint64_t largest = 0;
  for (const auto& [b, count] : fiber) {
    largest = std::max(largest, count);
    if (count > (std::uint64_t{1} << (std::uint64_t{1} << b.size()))) fail_once(bound, finpart::to_json(b));
  }
  report.params["max_fiber"] = largest;
  return finish(std::move(report), clock);
}

WitnessReport scan_part_to_relation(std::size_t max_n) {
  Stopwatch clock;
  auto report = start("part_to_relation");
  report.params["max_n"] = max_n;
  auto& injective = report.add_check("injective");
  auto& equivalence = report.add_check("image is an equivalence relation");
  for (std::size_t n = 0; n <= max_n; ++n) {
    CollisionDetector<Relation> detector;
    std::uint64_t i = 0;
    for_each_partition(n, false, [&](const Partition& p) {
      const Relation r = part_to_relation(p);
      detector.add(i++, r);
      ++equivalence.instances;
      bool ok = true;
      for (std::size_t x = 0; x < n; ++x) ok = ok && r.contains({x, x});
      for (const auto& [x, y] : r) {
        ok = ok && r.contains({y, x});
        for (std::size_t z = 0; z < n && ok; ++z) {
          if (r.contains({y, z})) ok = r.contains({x, z});
        }
      }
      if (!ok) fail_once(equivalence, finpart::to_json(p));
    });
    injective.instances += detector.count();
    if (!detector.injective()) fail_once(injective, Json{{"n", n}});
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_bfin_to_finfin(std::size_t max_n) {
  Stopwatch clock;
  auto report = start("bfin_to_finfin");
  report.params["max_n"] = max_n;
  auto& injective = report.add_check("injective on each ground");
  for (std::size_t n = 0; n <= max_n; ++n) {
    CollisionDetector<SetFamily> detector;
    std::uint64_t i = 0;
    for_each_partition(n, false, [&](const Partition& p) { detector.add(i++, bfin_to_finfin(p)); });
    injective.instances += detector.count();
    if (!detector.injective()) fail_once(injective, Json{{"n", n}});
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_bfin_to_partfin(std::size_t max_n) {
  Stopwatch clock;
  auto report = start("bfin_to_partfin");
  report.params["max_n"] = max_n;
  auto& infinite = report.add_check("injective on cofinite partitions of N");
  auto& residual = report.add_check("residual block is N minus U ns(P)");
  auto& finite = report.add_check("identity embedding on finite grounds");
  std::set<CofinitePartition> seen;
  for (std::size_t n = 0; n <= max_n; ++n) {
    CollisionDetector<FinitePartitionImage> detector;
    std::uint64_t i = 0;
    for_each_partition(n, false, [&](const Partition& p) {
      seen.insert(CofinitePartition::from_prefix(p));
      const auto image = bfin_to_partfin(p);
      detector.add(i++, image);
      const auto blocks = p.blocks();
      if (image.cofinite_complement || image.finite_blocks != SetFamily(blocks.begin(), blocks.end())) {
        fail_once(finite, finpart::to_json(p));
      }
    });
    finite.instances += detector.count();
    if (!detector.injective()) fail_once(finite, Json{{"n", n}});
  }
  CollisionDetector<FinitePartitionImage> detector;
  std::uint64_t i = 0;
  for (const auto& p : seen) {
    const auto image = bfin_to_partfin(p);
    detector.add(i++, image);
    ++residual.instances;
    if (!image.cofinite_complement || *image.cofinite_complement != union_f2o(p.ns())) {
      fail_once(residual, finpart::to_json(p.ns()));
    }
  }
  detector.record(infinite);
  return finish(std::move(report), clock);
}

WitnessReport scan_seq_to_bfin(std::size_t samples, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("seq_to_bfin");
  report.params["samples"] = samples;
  report.params["seed"] = seed;
  auto& count = report.add_check("image has exactly |s| non-singleton blocks");
  auto& round_trip = report.add_check("decoder recovers the sequence");
  auto& injective = report.add_check("injective across lengths");
  CollisionDetector<CofinitePartition> detector;
  std::set<std::vector<std::size_t>> inputs;
  auto visit = [&](const std::vector<std::size_t>& s) {
    if (!inputs.insert(s).second) return;
    const auto image = seq_to_bfin(s);
    ++count.instances;
    ++round_trip.instances;
    if (image.ns().size() != s.size()) fail_once(count, Json(s));
    if (bfin_to_seq(image) != s) fail_once(round_trip, Json(s));
    detector.add(inputs.size() - 1, image);
  };
  // every sequence of length <= 2 over values < 30, then random longer ones
  visit({});
  for (std::size_t a = 0; a < 30; ++a) {
    visit({a});
    for (std::size_t b = 0; b < 30; ++b) visit({a, b});
  }
  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    std::vector<std::size_t> s(uniform_int(rng, 0, 4));
    const std::size_t top = uniform_int(rng, 1, 300);
    for (auto& v : s) v = uniform_int(rng, 0, top);
    visit(s);
  }
  detector.record(injective);
  return finish(std::move(report), clock);
}

WitnessReport scan_powerset_to_b(std::size_t max_k, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("powerset_to_b");
  report.params["max_k"] = max_k;
  report.params["seed"] = seed;
  auto& injective = report.add_check("injective in u for bijective labels");
  auto& formula = report.add_check("ns(h(u)) = label^{-1}[u]");
  for (std::size_t k = 0; k <= max_k; ++k) {
    std::vector<std::size_t> rgs;
    for (std::size_t i = 0; i < k; ++i) rgs.insert(rgs.end(), {i, i});
    rgs.push_back(k);  // a trailing singleton
    const Partition p = Partition::from_rgs(rgs);
    std::vector<std::size_t> labels(k);
    std::iota(labels.begin(), labels.end(), 0);
    auto rng = instance_rng(seed, k);
    std::shuffle(labels.begin(), labels.end(), rng);
    const FiniteFunction<std::size_t> label{labels};
    const auto ns = p.ns();
    CollisionDetector<Partition> detector;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
      const SubsetMask u = SubsetMask::from_integer(k, bits);
      const Partition h = powerset_to_b(u, p, label);
      detector.add(bits, h);
      SetFamily expected;
      for (std::size_t i = 0; i < k; ++i) {
        if (u.contains(labels[i])) expected.insert(ns[i]);
      }
      ++formula.instances;
      if (bfin_to_finfin(h) != expected) fail_once(formula, Json{{"k", k}, {"u", u.to_string()}});
    }
    injective.instances += detector.count();
    if (!detector.injective()) fail_once(injective, Json{{"k", k}});
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_disjoint_witness_step(std::size_t samples, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("disjoint_witness_step");
  report.params["samples"] = samples;
  report.params["seed"] = seed;
  auto& avoids = report.add_check("ns(Q) non-empty and disjoint from B");
  std::uint64_t exhausted = 0;
  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    const std::size_t n = uniform_int(rng, 2, 8);
    std::vector<Partition> family(uniform_int(rng, 1, 5));
    for (auto& p : family) p = random_partition(rng, n);
    const SubsetMask b = SubsetMask::from_integer(n, uniform_int(rng, 0, (std::size_t{1} << n) - 1));
    try {
      const Partition q = disjoint_witness_step(family, b);
      ++avoids.instances;
      const ElementSet u = q.ns_union();
      const bool ok = !u.empty() && std::none_of(u.begin(), u.end(), [&](std::size_t x) { return b.contains(x); });
      if (!ok) {
        Json fam = Json::array();
        for (const auto& p : family) fam.push_back(finpart::to_json(p));
        fail_once(avoids, Json{{"family", fam}, {"B", b.to_string()}});
      }
    } catch (const Exhausted&) {
      ++exhausted;
    }
  }
  report.params["exhausted"] = exhausted;
  return finish(std::move(report), clock);
}

WitnessReport scan_surj_with_aux(std::size_t samples, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("surj_with_aux");
  report.params["samples"] = samples;
  report.params["seed"] = seed;
  auto& onto = report.add_check("g surjective onto |h|");
  auto& aux = report.add_check("t auxiliary for g");
  auto& agrees = report.add_check("g(x) = beta for x in h(beta)");
  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    const std::size_t n = uniform_int(rng, 2, 12);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<ElementSet> h;
    std::size_t pos = 0;
    while (n - pos >= 2 && (h.empty() || uniform_int(rng, 0, 3) != 0)) {
      const std::size_t size = uniform_int(rng, 2, n - pos);
      h.emplace_back(order.begin() + pos, order.begin() + pos + size);
      pos += size;
    }
    const auto r = surj_with_aux(h, n);
    const Json instance{{"n", n}, {"h", finpart::to_json(SetFamily(h.begin(), h.end()))}};
    ++onto.instances;
    if (r.g.range().size() != h.size() || *r.g.range().rbegin() + 1 != h.size()) fail_once(onto, instance);
    ++aux.instances;
    if (!is_auxiliary_for(r.t, r.g)) fail_once(aux, instance);
    ++agrees.instances;
    for (std::size_t beta = 0; beta < h.size(); ++beta) {
      for (std::size_t x : h[beta]) {
        if (r.g(x) != beta) fail_once(agrees, instance);
      }
    }
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_f2o_to_injection(std::size_t samples, std::uint64_t seed) {
  Stopwatch clock;
  auto report = start("f2o_to_injection");
  report.params["samples"] = samples;
  report.params["seed"] = seed;
  auto& injective = report.add_check("injective with range inside ran(f)");
  auto& exhausted = report.add_check("range exhausted exactly when |ran(f)| < L");
  for (std::size_t index = 0; index < samples; ++index) {
    auto rng = instance_rng(seed, index);
    FiniteFunction<std::size_t> f;
    f.table.resize(uniform_int(rng, 0, 12));
    const std::size_t top = uniform_int(rng, 1, 20);
    for (auto& v : f.table) v = uniform_int(rng, 0, top);
    const bool enough = f.range().size() >= f.domain_size();
    ++exhausted.instances;
    try {
      const auto g = f2o_to_injection(f);
      if (!enough) fail_once(exhausted, to_json(f));
      ++injective.instances;
      const auto fr = f.range();
      const auto gr = g.range();
      if (gr.size() != g.domain_size() || g.domain_size() != f.domain_size() ||
          !std::includes(fr.begin(), fr.end(), gr.begin(), gr.end())) {
        fail_once(injective, to_json(f));
      }
    } catch (const Exhausted&) {
      if (enough) fail_once(exhausted, to_json(f));
    }
  }
  return finish(std::move(report), clock);
}

WitnessReport scan_bell_gap_step(std::size_t ground, std::size_t max_steps) {
  Stopwatch clock;
  auto report = start("bell_gap_step");
  report.params["ground"] = ground;
  auto& small = report.add_check("grounds with 2^|A| > B_|A| rejected");
  for (std::size_t n = 2; n <= 4; ++n) {
    FiniteFunction<Partition> phi;
    phi.table.assign(std::size_t{1} << n, Partition::discrete(n));
    ++small.instances;
    try {
      bell_gap_step(phi, {bell_gap_seed(n, 0, n - 1)});
      fail_once(small, Json{{"n", n}});
    } catch (const std::domain_error&) {
    }
  }

  auto& fresh = report.add_check("f(n+1) non-empty and disjoint from earlier entries");
  auto& guard = report.add_check("2^k < B_m");
  if (ground < 5 || ground > 16) throw std::invalid_argument("bell_gap_step scan needs 5 <= |A| <= 16");
  FiniteFunction<Partition> phi;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask) {
    phi.table.push_back(unrank_partition(ground, mask));
  }
  std::vector<SubsetFamily> family{bell_gap_seed(ground, 0, 1)};
  Json steps = Json::array();
  std::string stop = "max_steps";
  for (std::size_t step = 0; step < max_steps; ++step) {
    BellGapStep next;
    try {
      next = bell_gap_step(phi, family);
    } catch (const Exhausted&) {
      stop = "recursion halts";
      break;
    }
    ++fresh.instances;
    ++guard.instances;
    if (!(pow2(next.classes) < next.bell_support)) fail_once(guard, Json{{"step", step}});
    bool ok = !next.next.empty();
    for (const auto& entry : family) {
      for (const auto& c : entry) ok = ok && !next.next.contains(c);
    }
    if (!ok) fail_once(fresh, Json{{"step", step}});
    steps.push_back(Json{{"k", next.classes}, {"m", next.support}, {"size", next.next.size()}});
    family.push_back(std::move(next.next));
  }
  report.params["steps"] = steps;
  report.params["stopped_by"] = stop;
  return finish(std::move(report), clock);
}

std::vector<WitnessEntry> build_registry() {
  std::vector<WitnessEntry> r{
      {"an_to_bfin", "A^n into B_fin(A) on the canonical layout (size = n, default 2)",
       [](const ScanOptions& o) { return scan_an_to_bfin(option(o.size, 2)); }},
      {"bell_gap_step", "one recursion step of the P(A) vs B_fin(A) argument (size = |A|, default 5)",
       [](const ScanOptions& o) { return scan_bell_gap_step(option(o.size, 5), option(o.samples, 6)); }},
      {"bfin_to_finfin", "P -> ns(P) (size = max ground, default 7)",
       [](const ScanOptions& o) { return scan_bfin_to_finfin(option(o.size, 7)); }},
      {"bfin_to_partfin", "P -> ns(P) plus the residual block (size = max prefix, default 6)",
       [](const ScanOptions& o) { return scan_bfin_to_partfin(option(o.size, 6)); }},
      {"cb_bijection", "Cantor-Bernstein orbit rule (size = max |A|, default 5)",
       [](const ScanOptions& o) { return scan_cb_bijection(option(o.size, 5)); }},
      {"diagonal_escape", "partition outside ran(f) from an auxiliary assignment (size = max ground, default 8)",
       [](const ScanOptions& o) {
         auto report = scan_diagonal_escape_exhaustive(3);
         auto random = scan_diagonal_escape_random(option(o.samples, 10000), option(o.size, 8), o.seed);
         report.name = "diagonal_escape";
         report.params["random"] = random.params;
         for (auto& c : random.checks) {
           c.property += " (random)";
           report.checks.push_back(std::move(c));
         }
         report.elapsed_ms += random.elapsed_ms;
         return report;
       }},
      {"disjoint_witness_step", "one step of the disjoint non-singleton witness recursion",
       [](const ScanOptions& o) { return scan_disjoint_witness_step(option(o.samples, 2000), o.seed); }},
      {"f2o_to_injection", "greedy injection from a finite-to-one map",
       [](const ScanOptions& o) { return scan_f2o_to_injection(option(o.samples, 2000), o.seed); }},
      {"fin_to_bfin", "fin(A) into B_fin(A) with five marked elements (size = max ground, default 8)",
       [](const ScanOptions& o) { return scan_fin_to_bfin(option(o.size, 8)); }},
      {"hs_disjointify", "psi classes and disjoint pairs from an injective sequence of finite sets",
       [](const ScanOptions& o) { return scan_hs_disjointify(option(o.samples, 1000), option(o.size, 12), 40, o.seed); }},
      {"part_to_relation", "P -> ~P (size = max ground, default 6)",
       [](const ScanOptions& o) { return scan_part_to_relation(option(o.size, 6)); }},
      {"pow_to_partfin", "P(A) into Part_fin(A) with five marked elements (size = max ground, default 8)",
       [](const ScanOptions& o) { return scan_pow_to_partfin(option(o.size, 8)); }},
      {"powerset_to_b", "P(k) into B(A) through a labelling of ns(P) (size = max k, default 6)",
       [](const ScanOptions& o) { return scan_powerset_to_b(option(o.size, 6), o.seed); }},
      {"quotient_surjection", "surjection with auxiliary function from a partition and a map",
       [](const ScanOptions& o) { return scan_quotient_surjection(option(o.samples, 1000), option(o.size, 10), o.seed); }},
      {"seq_inj_to_finfin", "injective sequences as chains of finite sets (size = number of values, default 5)",
       [](const ScanOptions& o) { return scan_seq_inj_to_finfin(option(o.size, 5)); }},
      {"seq_to_bfin", "seq(N) into B_fin(N) by length-indexed layouts",
       [](const ScanOptions& o) { return scan_seq_to_bfin(option(o.samples, 2000), o.seed); }},
      {"surj_with_aux", "surjection with auxiliary function from disjoint sets",
       [](const ScanOptions& o) { return scan_surj_with_aux(option(o.samples, 1000), o.seed); }},
      {"union_f2o", "union as a finite-to-one map (size = ground, default 3)",
       [](const ScanOptions& o) { return scan_union_f2o(option(o.size, 3)); }},
  };
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return r;
}

}  // namespace

const std::vector<WitnessEntry>& witness_registry() {
  static const std::vector<WitnessEntry> registry = build_registry();
  return registry;
}

const WitnessEntry* find_witness(const std::string& name) {
  for (const auto& entry : witness_registry()) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace finpart
