#include "finpart/partition.hpp"

#include <algorithm>
#include <sstream>

namespace finpart {

Partition Partition::from_rgs(std::vector<std::size_t> rgs) {
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] > blocks) throw std::invalid_argument("not a restricted growth string");
    if (rgs[i] == blocks) ++blocks;
  }
  return Partition(std::move(rgs), blocks);
}

Partition Partition::from_labels(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> relabel;
  std::vector<std::size_t> rgs;
  rgs.reserve(labels.size());
  for (std::size_t l : labels) {
    auto [it, fresh] = relabel.try_emplace(l, relabel.size());
    rgs.push_back(it->second);
  }
  const std::size_t blocks = relabel.size();
  return Partition(std::move(rgs), blocks);
}

Partition Partition::from_blocks(std::size_t ground_size, const std::vector<ElementSet>& blocks) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(ground_size, unset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty block");
    for (std::size_t x : blocks[b]) {
      if (x >= ground_size) throw std::invalid_argument("block element outside ground set");
      if (labels[x] != unset) throw std::invalid_argument("blocks overlap");
      labels[x] = b;
    }
  }
  if (std::find(labels.begin(), labels.end(), unset) != labels.end()) {
    throw std::invalid_argument("blocks do not cover the ground set");
  }
  return from_labels(labels);
}

Partition Partition::discrete(std::size_t ground_size) {
  std::vector<std::size_t> rgs(ground_size);
  for (std::size_t i = 0; i < ground_size; ++i) rgs[i] = i;
  return Partition(std::move(rgs), ground_size);
}

Partition Partition::single_block(std::size_t ground_size) {
  return Partition(std::vector<std::size_t>(ground_size, 0), ground_size > 0 ? 1 : 0);
}

std::vector<ElementSet> Partition::blocks() const {
  std::vector<ElementSet> out(block_count_);
  for (std::size_t x = 0; x < rgs_.size(); ++x) out[rgs_[x]].insert(x);
  return out;
}

std::vector<ElementSet> Partition::ns() const {
  std::vector<ElementSet> out;
  for (auto& block : blocks()) {
    if (block.size() >= 2) out.push_back(std::move(block));
  }
  return out;
}

ElementSet Partition::ns_union() const {
  ElementSet out;
  const auto sizes = block_sizes();
  for (std::size_t x = 0; x < rgs_.size(); ++x) {
    if (sizes[rgs_[x]] >= 2) out.insert(x);
  }
  return out;
}

ElementSet Partition::block_of(std::size_t x) const {
  const std::size_t l = rgs_.at(x);
  ElementSet out;
  for (std::size_t y = 0; y < rgs_.size(); ++y) {
    if (rgs_[y] == l) out.insert(y);
  }
  return out;
}

std::vector<std::size_t> Partition::block_sizes() const {
  std::vector<std::size_t> sizes(block_count_, 0);
  for (std::size_t l : rgs_) ++sizes[l];
  return sizes;
}

bool Partition::has_singleton() const {
  const auto sizes = block_sizes();
  return std::find(sizes.begin(), sizes.end(), 1) != sizes.end();
}

bool Partition::same_block(std::size_t x, std::size_t y) const {
  if (x >= rgs_.size() || y >= rgs_.size()) throw std::out_of_range("element outside ground set");
  return rgs_[x] == rgs_[y];
}

std::string Partition::to_string() const {
  const bool compact = block_count_ <= 10;
  std::string out;
  for (std::size_t i = 0; i < rgs_.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(rgs_[i]);
  }
  return out;
}

Partition Partition::parse(const std::string& text) {
  std::vector<std::size_t> labels;
  if (text.find(',') == std::string::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad RGS character");
      labels.push_back(static_cast<std::size_t>(c - '0'));
    }
  } else {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("bad RGS entry");
      }
      labels.push_back(std::stoul(item));
    }
  }
  return from_rgs(std::move(labels));
}

SubsetMask::SubsetMask(std::size_t ground_size, const ElementSet& members) : bits_(ground_size, false) {
  for (std::size_t x : members) bits_.at(x) = true;
}

SubsetMask SubsetMask::from_integer(std::size_t ground_size, std::uint64_t value) {
  std::vector<bool> bits(ground_size);
  for (std::size_t i = 0; i < ground_size; ++i) bits[i] = (value >> i) & 1U;
  return SubsetMask(std::move(bits));
}

SubsetMask SubsetMask::parse(const std::string& text) {
  std::vector<bool> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("mask must be a 0/1 string");
    bits.push_back(c == '1');
  }
  return SubsetMask(std::move(bits));
}

std::size_t SubsetMask::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

ElementSet SubsetMask::elements() const {
  ElementSet out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.insert(i);
  }
  return out;
}

std::uint64_t SubsetMask::to_integer() const {
  if (bits_.size() > 64) throw std::overflow_error("mask wider than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) v |= std::uint64_t{1} << i;
  }
  return v;
}

std::string SubsetMask::to_string() const {
  std::string out;
  for (bool b : bits_) out += b ? '1' : '0';
  return out;
}

}  // namespace finpart
