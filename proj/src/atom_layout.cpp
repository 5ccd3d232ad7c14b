#include <algorithm>

#include "finpart/witnesses.hpp"

namespace finpart {
namespace {

// t_s(j): either an earlier position of s or an element of the ground.
struct Tag {
  bool is_index = false;
  std::size_t value = 0;
};

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > SIZE_MAX / a) throw std::invalid_argument("layout size overflows");
  return a * b;
}

}  // namespace

AtomLayout::AtomLayout(std::size_t n) : n_(n) {
  required_size(n);
  starts_.resize(n + 2);
  starts_[0] = 0;
  // level i holds 2n atoms a_{i,j} and one b_{i,x} per element of levels < i,
  // which are exactly the elements below starts_[i]
  for (std::size_t i = 0; i <= n; ++i) starts_[i + 1] = 2 * starts_[i] + 2 * n;
}

std::size_t AtomLayout::required_size(std::size_t n) {
  if (n + 1 >= 63) throw std::invalid_argument("layout size overflows");
  return checked_mul(2 * n, (std::size_t{1} << (n + 1)) - 1);
}

std::size_t AtomLayout::a(std::size_t level, std::size_t j) const {
  if (level > n_ || j >= 2 * n_) throw std::out_of_range("a_{i,j} outside the layout");
  return starts_[level] + j;
}

std::size_t AtomLayout::b(std::size_t level, std::size_t x) const {
  if (level > n_ || x >= starts_[level]) throw std::out_of_range("b_{i,x} outside the layout");
  return starts_[level] + 2 * n_ + x;
}

std::optional<std::size_t> AtomLayout::level_of(std::size_t x) const {
  if (x >= starts_.back()) return std::nullopt;
  auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

SetFamily an_to_bfin_pairs(const std::vector<std::size_t>& s, const AtomLayout& layout) {
  const std::size_t n = layout.n();
  if (s.size() != n) throw std::invalid_argument("tuple length differs from the layout");
  if (n == 0) return {};

  std::vector<bool> hit(n + 1, false);
  for (std::size_t v : s) {
    if (auto level = layout.level_of(v)) hit[*level] = true;
  }
  const std::size_t level = static_cast<std::size_t>(std::find(hit.begin(), hit.end(), false) - hit.begin());

  std::vector<Tag> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = {false, s[j]};
    for (std::size_t k = j; k-- > 0;) {
      if (s[k] == s[j]) {
        t[j] = {true, k};
        break;
      }
    }
  }

  SetFamily pairs;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t u;
    if (t[j].is_index) {
      u = layout.a(level, n + t[j].value);
    } else if (t[j].value < layout.level_start(level)) {
      u = layout.b(level, t[j].value);
    } else {
      u = t[j].value;
    }
    pairs.insert({layout.a(level, j), u});
  }
  return pairs;
}

Partition an_to_bfin(const std::vector<std::size_t>& s, std::size_t ground_size, const AtomLayout& layout) {
  if (ground_size < layout.size()) throw std::invalid_argument("ground too small for the layout");
  for (std::size_t v : s) {
    if (v >= ground_size) throw std::invalid_argument("tuple entry outside the ground");
  }
  const SetFamily pairs = an_to_bfin_pairs(s, layout);
  std::vector<ElementSet> blocks(pairs.begin(), pairs.end());
  ElementSet used;
  for (const auto& p : pairs) used.insert(p.begin(), p.end());
  for (std::size_t z = 0; z < ground_size; ++z) {
    if (!used.contains(z)) blocks.push_back({z});
  }
  return Partition::from_blocks(ground_size, blocks);
}

namespace {

std::vector<std::size_t> decode_pairs(const SetFamily& ns, const AtomLayout& layout) {
  const std::size_t n = layout.n();
  if (ns.size() != n) throw std::invalid_argument("not an image: wrong number of pairs");
  if (n == 0) return {};

  std::optional<std::size_t> level;
  for (const auto& block : ns) {
    if (block.size() != 2) throw std::invalid_argument("not an image: block is not a pair");
    for (std::size_t x : block) {
      if (auto l = layout.level_of(x); l && (!level || *l < *level)) level = l;
    }
  }
  if (!level) throw std::invalid_argument("not an image: no atom of the layout");

  std::vector<std::size_t> u(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t a = layout.a(*level, j);
    auto it = std::find_if(ns.begin(), ns.end(), [&](const ElementSet& b) { return b.contains(a); });
    if (it == ns.end()) throw std::invalid_argument("not an image: a_{i,j} unpaired");
    u[j] = *it->begin() == a ? *std::next(it->begin()) : *it->begin();
  }

  const std::size_t start = layout.level_start(*level);
  std::vector<std::size_t> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t offset = u[j] - start;
    if (u[j] >= start && offset >= n && offset < 2 * n) {
      const std::size_t k = offset - n;
      if (k >= j) throw std::invalid_argument("not an image: forward reference");
      s[j] = s[k];
    } else if (u[j] >= start && offset >= 2 * n && offset < layout.level_size(*level)) {
      s[j] = offset - 2 * n;
    } else {
      s[j] = u[j];
    }
  }
  if (an_to_bfin_pairs(s, layout) != ns) throw std::invalid_argument("not an image of the A^n map");
  return s;
}

}  // namespace

std::vector<std::size_t> bfin_to_an(const Partition& image, const AtomLayout& layout) {
  const auto blocks = image.ns();
  auto s = decode_pairs(SetFamily(blocks.begin(), blocks.end()), layout);
  if (an_to_bfin(s, image.ground_size(), layout) != image) throw std::invalid_argument("not an image of the A^n map");
  return s;
}

CofinitePartition seq_to_bfin(const std::vector<std::size_t>& s) {
  return CofinitePartition(an_to_bfin_pairs(s, AtomLayout(s.size())));
}

std::vector<std::size_t> bfin_to_seq(const CofinitePartition& image) {
  return decode_pairs(image.ns(), AtomLayout(image.ns().size()));
}

}  // namespace finpart
