#include <memory>
#include <mutex>

#include "finpart/partition.hpp"

namespace finpart {
namespace {

// f(r, s, m): completions of a prefix with s open singletons and m larger
// blocks by r elements such that no singleton survives.
//   f(0, 0, m) = 1, f(0, s > 0, m) = 0,
//   f(r, s, m) = m f(r-1, s, m) + s f(r-1, s-1, m+1) + f(r-1, s+1, m).
// f(r, s, m) = 0 whenever s > r, so level r stores s <= r only. Level r keeps
// m <= 2R - r so the m+1 lookup one level down stays in range.
class NoSingletonCounts {
 public:
  explicit NoSingletonCounts(std::size_t max_r) : max_r_(max_r), levels_(max_r + 1) {
    for (std::size_t r = 0; r <= max_r_; ++r) {
      const std::size_t ms = m_span(r);
      auto& level = levels_[r];
      level.assign((r + 1) * ms, BigNat(0));
      for (std::size_t s = 0; s <= r; ++s) {
        for (std::size_t m = 0; m < ms; ++m) {
          BigNat& v = level[s * ms + m];
          if (r == 0) {
            v = 1;
            continue;
          }
          v = lookup(r - 1, s, m) * m;
          if (s > 0) v += lookup(r - 1, s - 1, m + 1) * s;
          v += lookup(r - 1, s + 1, m);
        }
      }
    }
  }

  std::size_t max_r() const { return max_r_; }
  std::size_t max_m(std::size_t r) const { return m_span(r) - 1; }

  const BigNat& lookup(std::size_t r, std::size_t s, std::size_t m) const {
    static const BigNat zero = 0;
    if (s > r) return zero;
    const std::size_t ms = m_span(r);
    return levels_[r][s * ms + m];
  }

 private:
  std::size_t m_span(std::size_t r) const { return 2 * max_r_ - r + 1; }

  std::size_t max_r_;
  std::vector<std::vector<BigNat>> levels_;
};

// g(r, k) = k g(r-1, k) + g(r-1, k+1), g(0, k) = 1.
class RgsCounts {
 public:
  explicit RgsCounts(std::size_t max_r) : max_r_(max_r), levels_(max_r + 1) {
    for (std::size_t r = 0; r <= max_r_; ++r) {
      const std::size_t ks = 2 * max_r_ - r + 1;
      levels_[r].assign(ks, BigNat(1));
      if (r == 0) continue;
      for (std::size_t k = 0; k < ks; ++k) {
        levels_[r][k] = levels_[r - 1][k] * k + levels_[r - 1][k + 1];
      }
    }
  }

  std::size_t max_r() const { return max_r_; }
  std::size_t max_k(std::size_t r) const { return 2 * max_r_ - r; }
  const BigNat& lookup(std::size_t r, std::size_t k) const { return levels_[r][k]; }

 private:
  std::size_t max_r_;
  std::vector<std::vector<BigNat>> levels_;
};

// Finished tables are immutable; a caller keeps its shared_ptr for the whole
// operation, so growth never invalidates a table in use.
template <class Table>
std::shared_ptr<const Table> acquire(std::size_t needed_r, std::size_t needed_extra) {
  static std::mutex mutex;
  static std::shared_ptr<const Table> current;
  const std::size_t want = std::max<std::size_t>(needed_r, needed_extra);
  std::lock_guard lock(mutex);
  if (!current || current->max_r() < want) {
    const std::size_t grow = current ? 2 * current->max_r() : 32;
    current = std::make_shared<const Table>(std::max(want, grow));
  }
  return current;
}

void enumerate_rec(std::vector<std::size_t>& rgs, std::vector<std::size_t>& sizes, std::size_t singles,
                   std::size_t n, bool no_singletons, const std::function<void(const Partition&)>& visit) {
  const std::size_t i = rgs.size();
  if (i == n) {
    visit(Partition::from_rgs(rgs));
    return;
  }
  const std::size_t remaining_after = n - i - 1;
  const std::size_t k = sizes.size();
  for (std::size_t c = 0; c <= k; ++c) {
    std::size_t next_singles = singles;
    if (c == k) {
      ++next_singles;
    } else if (sizes[c] == 1) {
      --next_singles;
    }
    if (no_singletons && next_singles > remaining_after) continue;
    rgs.push_back(c);
    if (c == k) {
      sizes.push_back(1);
    } else {
      ++sizes[c];
    }
    enumerate_rec(rgs, sizes, next_singles, n, no_singletons, visit);
    if (c == k) {
      sizes.pop_back();
    } else {
      --sizes[c];
    }
    rgs.pop_back();
  }
}

}  // namespace

void for_each_partition(std::size_t n, bool no_singletons, const std::function<void(const Partition&)>& visit) {
  std::vector<std::size_t> rgs;
  std::vector<std::size_t> sizes;
  rgs.reserve(n);
  enumerate_rec(rgs, sizes, 0, n, no_singletons, visit);
}

std::vector<Partition> enumerate_partitions(std::size_t n, bool no_singletons) {
  std::vector<Partition> out;
  for_each_partition(n, no_singletons, [&](const Partition& p) { out.push_back(p); });
  return out;
}

BigNat count_completions(std::size_t remaining, std::size_t open_singletons, std::size_t open_large) {
  if (open_singletons > remaining) return 0;
  auto table = acquire<NoSingletonCounts>(remaining, open_large);
  if (open_large > table->max_m(remaining)) table = acquire<NoSingletonCounts>(remaining, open_large + remaining);
  return table->lookup(remaining, open_singletons, open_large);
}

BigNat count_rgs_completions(std::size_t remaining, std::size_t blocks) {
  auto table = acquire<RgsCounts>(remaining, blocks);
  if (blocks > table->max_k(remaining)) table = acquire<RgsCounts>(remaining, blocks + remaining);
  return table->lookup(remaining, blocks);
}

BigNat rank_partition(const Partition& p) {
  const std::size_t n = p.ground_size();
  auto table = acquire<RgsCounts>(n, 0);
  BigNat rank = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = p.rgs()[i];
    // every smaller label keeps the block count at k
    if (label > 0) rank += table->lookup(n - i - 1, k) * label;
    if (label == k) ++k;
  }
  return rank;
}

Partition unrank_partition(std::size_t n, const BigNat& rank) {
  auto table = acquire<RgsCounts>(n, 0);
  if (rank < 0 || rank >= table->lookup(n, 0)) throw std::out_of_range("partition rank out of range");
  BigNat left = rank;
  std::vector<std::size_t> rgs(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const BigNat& per_label = table->lookup(n - i - 1, k);
    // labels 0..k-1 each own per_label completions; label k is the rest
    BigNat q = left / per_label;
    if (q >= k) {
      rgs[i] = k;
      left -= per_label * k;
      ++k;
    } else {
      rgs[i] = static_cast<std::size_t>(q);
      left -= per_label * q;
    }
  }
  return Partition::from_rgs(std::move(rgs));
}

namespace {

struct NoSingletonState {
  std::vector<std::size_t> sizes;
  std::size_t singles = 0;
  std::size_t large = 0;

  // (s, m) after placing the next element with label c
  std::pair<std::size_t, std::size_t> after(std::size_t c) const {
    if (c == sizes.size()) return {singles + 1, large};
    if (sizes[c] == 1) return {singles - 1, large + 1};
    return {singles, large};
  }

  void place(std::size_t c) {
    auto [s, m] = after(c);
    singles = s;
    large = m;
    if (c == sizes.size()) {
      sizes.push_back(1);
    } else {
      ++sizes[c];
    }
  }
};

}  // namespace

BigNat rank_no_singleton(const Partition& p) {
  if (p.has_singleton()) throw std::invalid_argument("partition has a singleton block");
  const std::size_t n = p.ground_size();
  auto table = acquire<NoSingletonCounts>(n, 0);
  NoSingletonState state;
  BigNat rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t label = p.rgs()[i];
    for (std::size_t c = 0; c < label; ++c) {
      auto [s, m] = state.after(c);
      rank += table->lookup(n - i - 1, s, m);
    }
    state.place(label);
  }
  return rank;
}

Partition unrank_no_singleton(std::size_t n, const BigNat& rank) {
  auto table = acquire<NoSingletonCounts>(n, 0);
  if (rank < 0 || rank >= table->lookup(n, 0, 0)) throw std::out_of_range("no-singleton rank out of range");
  BigNat left = rank;
  NoSingletonState state;
  std::vector<std::size_t> rgs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = state.sizes.size();
    std::size_t chosen = k;
    for (std::size_t c = 0; c <= k; ++c) {
      auto [s, m] = state.after(c);
      const BigNat& count = table->lookup(n - i - 1, s, m);
      if (left < count) {
        chosen = c;
        break;
      }
      left -= count;
    }
    rgs[i] = chosen;
    state.place(chosen);
  }
  return Partition::from_rgs(std::move(rgs));
}

}  // namespace finpart
