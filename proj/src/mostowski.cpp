#include "finpart/mostowski.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "finpart/bell.hpp"

namespace finpart {

Rat parse_rat(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && body[0] == '-') {
    negative = true;
    body.erase(0, 1);
  }
  const auto slash = body.find('/');
  try {
    BigNat num = parse_bignat(body.substr(0, slash));
    BigNat den = slash == std::string::npos ? BigNat(1) : parse_bignat(body.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (negative) num = -num;
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

std::string format_rat(const Rat& r) { return r.str(); }

std::vector<Rat> parse_rat_list(const std::string& text) {
  std::vector<Rat> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rat(item));
  if (text.back() == ',') throw std::invalid_argument("trailing comma in rational list");
  return out;
}

std::string format_rat_list(const std::vector<Rat>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ',';
    out += format_rat(atoms[i]);
  }
  return out;
}

// --- Supported subsets ---------------------------------------------------------

SupportedSubset::SupportedSubset(std::vector<Rat> support, std::vector<bool> mask)
    : support_(std::move(support)), mask_(std::move(mask)) {
  if (mask_.size() != 2 * support_.size() + 1) throw std::invalid_argument("mask length must be 2|support|+1");
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (!(support_[i - 1] < support_[i])) throw std::invalid_argument("support is not strictly increasing");
  }
}

bool SupportedSubset::is_reduced() const {
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (mask_[2 * i] == mask_[2 * i + 1] && mask_[2 * i + 1] == mask_[2 * i + 2]) return false;
  }
  return true;
}

std::string SupportedSubset::mask_string() const {
  std::string out;
  for (bool b : mask_) out += b ? '1' : '0';
  return out;
}

std::string SupportedSubset::to_string() const {
  return "support=" + format_rat_list(support_) + ";mask=" + mask_string();
}

std::vector<bool> parse_mask(const std::string& bits) {
  if (bits.empty()) throw std::invalid_argument("empty mask");
  std::vector<bool> out;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("mask must be a 0/1 string");
    out.push_back(ch == '1');
  }
  return out;
}

SupportedSubset reduce(const std::vector<Rat>& support, const std::vector<bool>& mask) {
  const SupportedSubset checked(support, mask);
  std::vector<Rat> kept;
  std::vector<bool> out{mask[0]};
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (mask[2 * i] == mask[2 * i + 1] && mask[2 * i + 1] == mask[2 * i + 2]) continue;
    kept.push_back(support[i]);
    out.push_back(mask[2 * i + 1]);
    out.push_back(mask[2 * i + 2]);
  }
  return SupportedSubset(std::move(kept), std::move(out));
}

SupportedSubset reduce(const SupportedSubset& s) { return reduce(s.support(), s.mask()); }

bool membership(const SupportedSubset& s, const Rat& x) {
  const auto& support = s.support();
  auto it = std::lower_bound(support.begin(), support.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - support.begin());
  if (it != support.end() && *it == x) return s.mask()[2 * i + 1];
  return s.mask()[2 * i];
}

BigNat count_supported(std::size_t n) { return pow2(2 * n + 1); }

namespace {

// Completions of reduced masks of a fixed length: ways[pos][a][b] counts the
// fillings of positions pos.. given mask[pos-2] = a and mask[pos-1] = b.
class MaskCounts {
 public:
  explicit MaskCounts(std::size_t length) : length_(length), ways_(length + 1) {
    for (std::size_t pos = length + 1; pos-- > 2;) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          BigNat& w = ways_[pos][2 * a + b];
          if (pos == length) {
            w = 1;
            continue;
          }
          w = 0;
          for (int v = 0; v < 2; ++v) {
            // an even position closes the point at pos-1
            if (pos % 2 == 0 && a == b && b == v) continue;
            w += ways_[pos + 1][2 * b + v];
          }
        }
      }
    }
  }

  BigNat completions(std::vector<bool>& prefix) const {
    const std::size_t len = prefix.size();
    if (len >= 3 && len % 2 == 1 && prefix[len - 3] == prefix[len - 2] && prefix[len - 2] == prefix[len - 1]) return 0;
    if (len == length_) return 1;
    if (len >= 2) return ways_[len][2 * prefix[len - 2] + prefix[len - 1]];
    BigNat total = 0;
    for (bool v : {false, true}) {
      prefix.push_back(v);
      total += completions(prefix);
      prefix.pop_back();
    }
    return total;
  }

 private:
  std::size_t length_;
  std::vector<std::array<BigNat, 4>> ways_;
};

}  // namespace

BigNat count_reduced_masks(std::size_t n) {
  std::vector<bool> empty;
  return MaskCounts(2 * n + 1).completions(empty);
}

BigNat rank_with_least_support(const SupportedSubset& s) {
  if (!s.is_reduced()) throw std::invalid_argument("subset is not reduced");
  const auto& mask = s.mask();
  const MaskCounts counts(mask.size());
  BigNat rank = 0;
  std::vector<bool> prefix;
  for (bool bit : mask) {
    if (bit) {
      prefix.push_back(false);
      rank += counts.completions(prefix);
      prefix.back() = true;
    } else {
      prefix.push_back(false);
    }
  }
  return rank;
}

SupportedSubset unrank_with_least_support(const std::vector<Rat>& support, const BigNat& k) {
  const std::size_t length = 2 * support.size() + 1;
  const MaskCounts counts(length);
  std::vector<bool> prefix;
  if (k < 0 || k >= counts.completions(prefix)) throw std::out_of_range("subset rank out of range");
  BigNat left = k;
  for (std::size_t pos = 0; pos < length; ++pos) {
    prefix.push_back(false);
    const BigNat zeros = counts.completions(prefix);
    if (left >= zeros) {
      left -= zeros;
      prefix.back() = true;
    }
  }
  return SupportedSubset(support, std::move(prefix));
}

// --- Automorphisms -------------------------------------------------------------

OrderAutomorphism::OrderAutomorphism(std::vector<std::pair<Rat, Rat>> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].first < points_[i].first) || !(points_[i - 1].second < points_[i].second)) {
      throw std::invalid_argument("images are not strictly increasing");
    }
  }
}

Rat OrderAutomorphism::operator()(const Rat& x) const {
  if (points_.empty()) return x;
  if (x <= points_.front().first) return points_.front().second + (x - points_.front().first);
  if (x >= points_.back().first) return points_.back().second + (x - points_.back().first);
  auto hi = std::lower_bound(points_.begin(), points_.end(), x, [](const auto& p, const Rat& v) { return p.first < v; });
  auto lo = std::prev(hi);
  return lo->second + (x - lo->first) * (hi->second - lo->second) / (hi->first - lo->first);
}

SupportedSubset apply_automorphism(const SupportedSubset& s, const OrderAutomorphism& pi) {
  std::vector<Rat> image;
  for (const Rat& x : s.support()) {
    auto it = std::find_if(pi.points().begin(), pi.points().end(), [&](const auto& p) { return p.first == x; });
    if (it == pi.points().end()) throw std::invalid_argument("map does not cover the support");
    image.push_back(it->second);
  }
  return SupportedSubset(std::move(image), s.mask());
}

// --- The injection -------------------------------------------------------------

std::string SupportedPartition::to_string() const {
  std::string out = "carrier=" + format_rat_list(carrier) + ";rgs=";
  for (std::size_t i = 0; i < inner.ground_size(); ++i) {
    if (i) out += ',';
    out += std::to_string(inner.rgs()[i]);
  }
  return out + ";+singletons";
}

MostowskiParams MostowskiParams::defaults() {
  MostowskiParams p;
  for (int i = 0; i < 46; ++i) p.d.emplace_back(i);
  return p;
}

void MostowskiParams::validate() const {
  if (d.size() != 46) throw std::invalid_argument("D must have 46 atoms");
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (!(d[i - 1] < d[i])) throw std::invalid_argument("D is not strictly increasing");
  }
  if (threshold < 1) throw std::invalid_argument("threshold must be positive");
}

namespace {

std::vector<Rat> symmetric_difference(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

MostowskiImage mostowski_inject_detailed(const SupportedSubset& c, const MostowskiParams& params) {
  params.validate();
  const SupportedSubset reduced = reduce(c);
  const auto& e = reduced.support();
  MostowskiImage out;
  out.subset_rank = rank_with_least_support(reduced);
  const BigNat& k = out.subset_rank;

  if (e.size() >= params.threshold) {
    out.large_support = true;
    const BigNat bound = count_supported(e.size());
    if (!(k < bound && bound < bell_star(e.size()))) throw GuardViolation("k < 2^(2|E|+1) < B*_|E| fails");
    out.partition_index = k;
    out.partition = {e, unrank_no_singleton(e.size(), k)};
    return out;
  }

  std::vector<Rat> carrier = symmetric_difference(params.d, e);
  const std::size_t n = carrier.size();
  out.partition_index = bell_star(n) - k - 1;
  if (!(out.partition_index > count_supported(n))) throw GuardViolation("B*_n - k - 1 > 2^(2n+1) fails");
  out.partition = {std::move(carrier), unrank_no_singleton(n, out.partition_index)};
  return out;
}

SupportedPartition mostowski_inject(const SupportedSubset& c, const MostowskiParams& params) {
  return mostowski_inject_detailed(c, params).partition;
}

WitnessReport branch_guard_scan(const MostowskiParams& params, std::size_t max_support) {
  Stopwatch clock;
  params.validate();
  WitnessReport report;
  report.name = "mostowski_branch_guards";
  report.params["max_support"] = max_support;
  report.params["threshold"] = params.threshold;
  report.params["d_size"] = params.d.size();

  auto& large = report.add_check("2^(2e+1) < B*_e for threshold <= e");
  auto& small = report.add_check("B*_n - k - 1 > 2^(2n+1) for e < threshold, every k < 2^(2e+1)");
  const std::size_t dsize = params.d.size();
  for (std::size_t e = 0; e <= max_support; ++e) {
    if (e >= params.threshold) {
      ++large.instances;
      if (large.passed && !(count_supported(e) < bell_star(e))) {
        large.passed = false;
        large.counterexample = Json{{"e", e}};
      }
      continue;
    }
    const BigNat worst_k = count_supported(e) - 1;
    for (std::size_t shared = 0; shared <= std::min(e, dsize); ++shared) {
      const std::size_t n = dsize + e - 2 * shared;
      ++small.instances;
      if (small.passed && !(bell_star(n) - worst_k - 1 > count_supported(n))) {
        small.passed = false;
        small.counterexample = Json{{"e", e}, {"n", n}};
      }
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

WitnessReport injectivity_scan(const std::vector<Rat>& pool, const MostowskiParams& params) {
  Stopwatch clock;
  params.validate();
  std::vector<Rat> atoms = pool;
  std::sort(atoms.begin(), atoms.end());
  if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end()) throw std::invalid_argument("pool repeats an atom");
  const std::size_t length = 2 * atoms.size() + 1;
  if (length >= 40) throw std::invalid_argument("pool too large to scan");

  WitnessReport report;
  report.name = "mostowski_injectivity";
  report.params["pool"] = format_rat_list(atoms);
  report.params["masks"] = std::uint64_t{1} << length;

  CollisionDetector<std::string> detector;
  std::uint64_t large = 0;
  std::vector<bool> mask(length);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
    for (std::size_t i = 0; i < length; ++i) mask[i] = (bits >> i) & 1U;
    const auto image = mostowski_inject_detailed(SupportedSubset(atoms, mask), params);
    if (image.large_support) ++large;
    detector.add(bits, image.partition.to_string());
  }
  report.params["large_branch"] = large;
  detector.record(report.add_check("pairwise distinct outputs"));
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

WitnessReport support_count_scan(std::size_t max_n) {
  Stopwatch clock;
  WitnessReport report;
  report.name = "mostowski_support_count";
  report.params["max_n"] = max_n;
  auto& total = report.add_check("2^(2n+1) subsets per n-element support");
  auto& per_support = report.add_check("subsets with least support F number count_reduced_masks(|F|)");
  auto& distinct = report.add_check("distinct masks denote distinct subsets");

  for (std::size_t n = 0; n <= max_n; ++n) {
    std::vector<Rat> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<long>(i));
    const std::size_t length = 2 * n + 1;
    std::map<std::vector<Rat>, std::uint64_t> by_support;
    std::set<SupportedSubset> seen;
    std::vector<bool> mask(length);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
      for (std::size_t i = 0; i < length; ++i) mask[i] = (bits >> i) & 1U;
      SupportedSubset r = reduce(e, mask);
      ++by_support[r.support()];
      seen.insert(std::move(r));
    }
    std::uint64_t sum = 0;
    for (const auto& [support, count] : by_support) sum += count;
    ++total.instances;
    if (total.passed && BigNat(sum) != count_supported(n)) {
      total.passed = false;
      total.counterexample = Json{{"n", n}, {"count", sum}};
    }
    ++distinct.instances;
    if (distinct.passed && seen.size() != sum) {
      distinct.passed = false;
      distinct.counterexample = Json{{"n", n}, {"distinct", seen.size()}};
    }
    // every subset F of E must appear, with the predicted multiplicity
    ++per_support.instances;
    if (per_support.passed && by_support.size() != (std::size_t{1} << n)) {
      per_support.passed = false;
      per_support.counterexample = Json{{"n", n}, {"supports", by_support.size()}};
    }
    for (const auto& [support, count] : by_support) {
      if (per_support.passed && BigNat(count) != count_reduced_masks(support.size())) {
        per_support.passed = false;
        per_support.counterexample = Json{{"n", n}, {"support", format_rat_list(support)}, {"count", count}};
      }
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace finpart
