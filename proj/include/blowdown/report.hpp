#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace blowdown {

// verified: recomputed here. asserted: taken from an external argument we
// do not recompute (propagation rules). failed: recomputed and wrong.
enum class CheckStatus { verified, asserted, failed };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::verified: return "verified";
    case CheckStatus::asserted: return "asserted";
    case CheckStatus::failed: return "failed";
  }
  return "failed";
}

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::failed;
  std::string detail;

  bool operator==(const Check&) const = default;
};

struct Report {
  std::string subject;
  std::vector<Check> checks;

  // Records a recomputed check; returns ok so callers can chain.
  bool verify(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok ? CheckStatus::verified : CheckStatus::failed, std::move(detail)});
    return ok;
  }

  void assume(std::string name, std::string detail) {
    checks.push_back({std::move(name), CheckStatus::asserted, std::move(detail)});
  }

  void append(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.status, c.detail});
  }

  bool passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const Check& c) { return c.status == CheckStatus::failed; });
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (c.status == CheckStatus::failed) out.push_back(c.name + ": " + c.detail);
    }
    return out;
  }
};

}  // namespace blowdown
