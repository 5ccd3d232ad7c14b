#include <algorithm>
#include <optional>

#include "finpart/witnesses.hpp"

namespace finpart {
HsResult hs_disjointify(const std::vector<ElementSet>& f) {
  if (std::set<ElementSet>(f.begin(), f.end()).size() != f.size()) throw std::invalid_argument("f is not injective");

  HsResult out;
  ElementSet universe;
  for (const auto& s : f) universe.insert(s.begin(), s.end());

  for (std::size_t x : universe) {
    ElementSet psi;
    std::optional<ElementSet> meet;  // intersection of earlier f(beta) containing x
    for (std::size_t gamma = 0; gamma < f.size(); ++gamma) {
      if (!f[gamma].contains(x)) continue;
      if (!meet || !std::includes(f[gamma].begin(), f[gamma].end(), meet->begin(), meet->end())) {
        psi.insert(gamma);
      }
      if (!meet) {
        meet = f[gamma];
      } else {
        ElementSet next;
        std::set_intersection(meet->begin(), meet->end(), f[gamma].begin(), f[gamma].end(),
                              std::inserter(next, next.end()));
        meet = std::move(next);
      }
    }
    out.psi.emplace(x, std::move(psi));
  }

  std::map<ElementSet, ElementSet> by_value;
  for (const auto& [x, value] : out.psi) by_value[value].insert(x);
  std::vector<std::pair<ElementSet, ElementSet>> ordered(by_value.begin(), by_value.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return binary_code_less(a.first, b.first); });

  std::map<std::size_t, std::size_t> class_of;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    out.class_codes.push_back(ordered[i].first);
    out.classes.push_back(ordered[i].second);
    for (std::size_t x : ordered[i].second) class_of[x] = i;
  }

  for (const auto& s : f) {
    ElementSet image;
    for (std::size_t x : s) image.insert(class_of.at(x));
    out.g_partial.push_back(std::move(image));
  }
  for (std::size_t beta = 0; 2 * beta + 1 < out.classes.size(); ++beta) {
    ElementSet joined = out.classes[2 * beta];
    joined.insert(out.classes[2 * beta + 1].begin(), out.classes[2 * beta + 1].end());
    out.h_partial.push_back(std::move(joined));
  }
  return out;
}

}  // namespace finpart
