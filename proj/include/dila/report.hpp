#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dila {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // witness on failure, short note otherwise
};

/// Outcome of a verification: named pass/fail clauses plus informational
/// key/value facts. A refused report did not run its construction because a
/// hypothesis failed; the failing hypothesis is one of the checks.
struct Report {
  std::string name;
  std::vector<Check> checks{};
  std::vector<std::pair<std::string, std::string>> facts{};
  bool refused = false;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  Check& add(std::string n, bool ok, std::string detail = {}) {
    checks.push_back({std::move(n), ok, std::move(detail)});
    return checks.back();
  }
  void fact(std::string k, std::string v) { facts.emplace_back(std::move(k), std::move(v)); }
  void absorb(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.passed, c.detail});
    for (const auto& [k, v] : other.facts) facts.emplace_back(prefix + k, v);
  }
};

}  // namespace dila
