#pragma once

// Verdicts of the checkers: an ordered list of named conditions, each with
// the first few nonzero values found as witnesses.

#include <cstddef>
#include <string>
#include <vector>

namespace qcrf {

struct Witness {
  std::string args;   // the offending argument tuple, e.g. "(d/dx1, dx2)"
  std::string value;  // the nonzero value, canonically printed
};

struct Condition {
  std::string id;  // frozen identifier, see docs/conditions.md
  bool pass = true;
  std::size_t failures = 0;  // number of argument tuples with a nonzero value
  std::vector<Witness> witnesses;
  std::string note;
};

class CheckReport {
 public:
  static constexpr std::size_t kMaxWitnesses = 3;

  /// Returns the condition with this id, appending it (passing) if absent.
  Condition& condition(const std::string& id);
  const Condition* find(const std::string& id) const;

  /// Records `value` for condition `id`; a nonzero value fails the condition.
  template <class T>
  void expect_zero(const std::string& id, const std::string& args, const T& value) {
    Condition& c = condition(id);
    if (value.is_zero()) return;
    fail(c, args, value.str());
  }
  void expect_true(const std::string& id, const std::string& args, bool ok, const std::string& value);
  void fail(const std::string& id, const std::string& args, const std::string& value);
  void note(const std::string& id, const std::string& text);

  /// Appends the conditions of `other` (ids must not clash).
  void append(const CheckReport& other);

  bool verdict() const;
  bool passed(const std::string& id) const;
  const std::vector<Condition>& conditions() const { return conditions_; }
  std::vector<std::string> failed_ids() const;

  /// Multi-line human-readable rendering.
  std::string str() const;

 private:
  static void fail(Condition& c, const std::string& args, const std::string& value);

  std::vector<Condition> conditions_;
};

}  // namespace qcrf
