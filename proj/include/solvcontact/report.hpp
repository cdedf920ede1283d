#pragma once

#include <optional>
#include <string>
#include <vector>

namespace solvcontact {

enum class Status { Pass, Fail, Skip };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "skip";
  }
}

struct Check {
  std::string name;
  Status status = Status::Skip;
  std::string detail;
  std::optional<double> residual;
};

/// Outcome of one verification run on one subject (usually a catalog entry).
struct Report {
  std::string subject;
  std::vector<Check> checks;

  Check& add(std::string name, bool ok, std::string detail = {}, std::optional<double> residual = std::nullopt) {
    checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail), residual});
    return checks.back();
  }
  Check& skip(std::string name, std::string detail) {
    checks.push_back({std::move(name), Status::Skip, std::move(detail), std::nullopt});
    return checks.back();
  }
  /// Appends other's checks with names prefixed "prefix.".
  void merge(const Report& other, const std::string& prefix = {}) {
    for (auto c : other.checks) {
      if (!prefix.empty()) c.name = prefix + "." + c.name;
      checks.push_back(std::move(c));
    }
  }
  bool passed() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail) return false;
    return true;
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (c.status == Status::Fail) out.push_back(c.name);
    return out;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace solvcontact
