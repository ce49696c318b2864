#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpt {

/// Outcome of checking one identity. `stage` is 0 for identities that are
/// not attached to a filtration stage.
struct Check {
  std::string identity;
  int stage = 0;
  bool passed = true;
  std::string witness;  // first failing generator or word, empty on success
};

/// Ordered list of checked identities. Validators never throw on bad data;
/// they record what failed and where.
class Report {
public:
  void add(Check check) { checks_.push_back(std::move(check)); }
  void pass(std::string identity, int stage = 0) { add({std::move(identity), stage, true, {}}); }
  void fail(std::string identity, std::string witness, int stage = 0) {
    add({std::move(identity), stage, false, std::move(witness)});
  }

  void append(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  bool ok() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }

  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks_)
      if (!c.passed) out.push_back(c);
    return out;
  }

  std::optional<Check> first_failure() const {
    for (const auto& c : checks_)
      if (!c.passed) return c;
    return std::nullopt;
  }

  /// True if some check with this identity name failed.
  bool failed(const std::string& identity) const {
    for (const auto& c : checks_)
      if (!c.passed && c.identity == identity) return true;
    return false;
  }

  const std::vector<Check>& checks() const { return checks_; }
  bool empty() const { return checks_.empty(); }

private:
  std::vector<Check> checks_;
};

/// Thrown by constructors that validate eagerly; carries the full report.
class ValidationError : public std::runtime_error {
public:
  ValidationError(const std::string& what, Report report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const Report& report() const { return report_; }

private:
  Report report_;
};

}  // namespace hpt
