#pragma once

#include <chrono>
#include <deque>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "finpart/partition.hpp"

namespace finpart {

using Json = nlohmann::ordered_json;

struct CheckResult {
  std::string property;
  std::uint64_t instances = 0;
  bool passed = true;
  Json counterexample;  // null when passed
};

/// Outcome of running a named construction against its verification oracle.
struct WitnessReport {
  std::string name;
  Json params = Json::object();
  std::deque<CheckResult> checks;  // add_check references stay valid
  double elapsed_ms = 0.0;

  bool passed() const;
  CheckResult& add_check(std::string property);

  /// The deterministic part of the report; elapsed_ms is added only on request.
  Json to_json(bool with_timing = true) const;
  std::string to_text() const;
};

/// Wall-clock stopwatch for elapsed_ms.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

Json to_json(const Partition& p);
Json to_json(const SubsetMask& m);
Json to_json(const ElementSet& s);
Json to_json(const SetFamily& f);
Json to_json(const BigNat& v);

/// Streams (index, image) pairs and remembers the first two indices with
/// the same image.
template <class Image>
class CollisionDetector {
 public:
  /// Returns false on the first collision; later calls keep counting.
  bool add(std::uint64_t index, const Image& image) {
    ++count_;
    auto [it, fresh] = seen_.try_emplace(image, index);
    if (!fresh && !collision_) collision_ = std::make_pair(it->second, index);
    return fresh;
  }
  std::uint64_t count() const { return count_; }
  bool injective() const { return !collision_.has_value(); }
  const std::optional<std::pair<std::uint64_t, std::uint64_t>>& collision() const { return collision_; }

  void record(CheckResult& check) const {
    check.instances = count_;
    check.passed = injective();
    if (collision_) check.counterexample = Json::array({collision_->first, collision_->second});
  }

 private:
  std::map<Image, std::uint64_t> seen_;
  std::uint64_t count_ = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision_;
};

template <class Value>
WitnessReport verify_injective(const FiniteFunction<Value>& map) {
  Stopwatch clock;
  WitnessReport report;
  report.name = "verify_injective";
  report.params["domain_size"] = map.domain_size();
  CollisionDetector<Value> detector;
  for (std::size_t x = 0; x < map.domain_size(); ++x) detector.add(x, map.table[x]);
  detector.record(report.add_check("injective"));
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

/// On a finite domain every fiber is finite; the report carries the largest.
template <class Value>
WitnessReport verify_finite_to_one(const FiniteFunction<Value>& map) {
  Stopwatch clock;
  WitnessReport report;
  report.name = "verify_finite_to_one";
  report.params["domain_size"] = map.domain_size();
  std::size_t max_fiber = 0;
  for (const auto& [value, fiber] : map.fibers()) max_fiber = std::max(max_fiber, fiber.size());
  auto& check = report.add_check("finite_to_one");
  check.instances = map.domain_size();
  report.params["max_fiber"] = max_fiber;
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace finpart
