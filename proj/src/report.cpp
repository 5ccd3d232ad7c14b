#include "finpart/report.hpp"

#include <sstream>

namespace finpart {

bool WitnessReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

CheckResult& WitnessReport::add_check(std::string property) {
  checks.push_back(CheckResult{std::move(property), 0, true, nullptr});
  return checks.back();
}

Json WitnessReport::to_json(bool with_timing) const {
  Json out;
  out["name"] = name;
  out["params"] = params;
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back(Json{{"property", c.property},
                       {"instances", c.instances},
                       {"passed", c.passed},
                       {"counterexample", c.counterexample}});
  }
  out["checks"] = std::move(arr);
  if (with_timing) out["elapsed_ms"] = elapsed_ms;
  return out;
}

std::string WitnessReport::to_text() const {
  std::ostringstream out;
  out << name << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks) {
    out << "  " << (c.passed ? "ok  " : "FAIL") << " " << c.property << " (" << c.instances << " instances)";
    if (!c.counterexample.is_null()) out << " counterexample=" << c.counterexample.dump();
    out << "\n";
  }
  return out.str();
}

Json to_json(const Partition& p) { return Json(p.rgs()); }

Json to_json(const SubsetMask& m) { return m.to_string(); }

Json to_json(const ElementSet& s) { return Json(std::vector<std::size_t>(s.begin(), s.end())); }

Json to_json(const SetFamily& f) {
  Json out = Json::array();
  for (const auto& s : f) out.push_back(to_json(s));
  return out;
}

Json to_json(const BigNat& v) { return v.str(); }

}  // namespace finpart
