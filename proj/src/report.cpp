#include "qcrf/report.hpp"

#include <algorithm>

#include "qcrf/error.hpp"

namespace qcrf {

Condition& CheckReport::condition(const std::string& id) {
  for (Condition& existing : conditions_) {
    if (existing.id == id) return existing;
  }
  Condition c;
  c.id = id;
  conditions_.push_back(std::move(c));
  return conditions_.back();
}

const Condition* CheckReport::find(const std::string& id) const {
  for (const Condition& c : conditions_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

void CheckReport::fail(Condition& c, const std::string& args, const std::string& value) {
  c.pass = false;
  ++c.failures;
  if (c.witnesses.size() < kMaxWitnesses) c.witnesses.push_back({args, value});
}

void CheckReport::fail(const std::string& id, const std::string& args, const std::string& value) {
  fail(condition(id), args, value);
}

void CheckReport::expect_true(const std::string& id, const std::string& args, bool ok, const std::string& value) {
  Condition& c = condition(id);
  if (!ok) fail(c, args, value);
}

void CheckReport::note(const std::string& id, const std::string& text) {
  Condition& c = condition(id);
  c.note = c.note.empty() ? text : c.note + "; " + text;
}

void CheckReport::append(const CheckReport& other) {
  for (const Condition& c : other.conditions_) {
    if (find(c.id)) throw Error("duplicate condition id '" + c.id + "'");
    conditions_.push_back(c);
  }
}

bool CheckReport::verdict() const {
  return std::all_of(conditions_.begin(), conditions_.end(), [](const Condition& c) { return c.pass; });
}

bool CheckReport::passed(const std::string& id) const {
  const Condition* c = find(id);
  if (!c) throw Error("no condition '" + id + "' in report");
  return c->pass;
}

std::vector<std::string> CheckReport::failed_ids() const {
  std::vector<std::string> out;
  for (const Condition& c : conditions_) {
    if (!c.pass) out.push_back(c.id);
  }
  return out;
}

std::string CheckReport::str() const {
  std::string out;
  for (const Condition& c : conditions_) {
    out += (c.pass ? "PASS " : "FAIL ") + c.id;
    if (!c.pass) out += "  (" + std::to_string(c.failures) + " nonzero)";
    if (!c.note.empty()) out += "  [" + c.note + "]";
    out += "\n";
    for (const Witness& w : c.witnesses) out += "    at " + w.args + ": " + w.value + "\n";
  }
  out += std::string("verdict: ") + (verdict() ? "pass" : "fail") + "\n";
  return out;
}

}  // namespace qcrf
