#include "qcrf/levels.hpp"

#include "qcrf/error.hpp"

namespace qcrf {

namespace {

const Endomorphism& need_A(const InstanceDocument& doc, const std::string& level) {
  if (!doc.has_A) throw UsageError("level '" + level + "' needs A, which '" + doc.instance.name + "' does not declare");
  return doc.instance.A;
}

const Multivector& need_pi(const InstanceDocument& doc, const std::string& level) {
  if (!doc.has_pi) throw UsageError("level '" + level + "' needs pi, which '" + doc.instance.name + "' does not declare");
  return doc.instance.pi;
}

void need_contact(const InstanceDocument& doc, const std::string& level) {
  need_A(doc, level);
  if (doc.instance.contact.empty()) {
    throw UsageError("level '" + level + "' needs contact data, which '" + doc.instance.name + "' does not declare");
  }
}

// The distribution P: the explicit projector if given, else -A^2.
Endomorphism distribution(const InstanceDocument& doc, const std::string& level) {
  if (doc.instance.projector_P) return *doc.instance.projector_P;
  const Endomorphism& A = need_A(doc, level);
  CheckReport f = check_f_structure(A);
  if (!f.verdict()) throw UsageError("level '" + level + "' needs P or an F structure A");
  return f_projectors(A).prP;
}

void append_frame(CheckReport& report, const StructureInstance& inst) {
  if (!inst.frame) return;
  CheckReport frame = validate_frame(inst);
  report.append(frame);
  if (frame.verdict()) report.append(check_frame_conditions(inst));
}

CheckReport integrable(const InstanceDocument& doc, const std::string& level) {
  const Endomorphism& A = need_A(doc, level);
  const Multivector& pi = doc.instance.pi;
  CheckReport report = check_quasi_classical(A, pi);
  if (!report.verdict()) return report;
  report.append(check_integrability(A, pi));
  report.append(check_q_leg(A, pi));
  CheckReport alt = check_integrability_alt(A, pi);
  for (const Condition& c : alt.conditions()) {
    if (c.id.rfind("prop2.4:", 0) == 0) {
      CheckReport one;
      one.condition(c.id) = c;
      report.append(one);
    }
  }
  report.append(check_remark22(A, pi));
  report.append(check_s_phi(A, pi));
  append_frame(report, doc.instance);
  return report;
}

}  // namespace

const std::vector<std::string>& check_levels() {
  static const std::vector<std::string> levels = {"f",       "cr",        "crf",
                                                  "quasi",   "integrable", "involutive",
                                                  "contact", "normality", "contact_poisson",
                                                  "normal_contact_poisson", "submanifold"};
  return levels;
}

CheckReport run_level(const InstanceDocument& doc, const std::string& level) {
  const StructureInstance& inst = doc.instance;
  if (level == "f") return check_f_structure(need_A(doc, level));
  if (level == "cr" || level == "crf") {
    const Endomorphism& A = need_A(doc, level);
    CheckReport report = check_f_structure(A);
    if (!report.verdict()) return report;
    report.append(check_cr_type(A));
    if (level == "crf") {
      report.append(check_classical_crf(A));
      append_frame(report, inst);
    }
    return report;
  }
  if (level == "quasi") {
    const Endomorphism& A = need_A(doc, level);
    CheckReport report = check_quasi_classical(A, inst.pi);
    if (report.passed("prop2.1:(i)")) report.append(check_local_form(A, inst.pi));
    return report;
  }
  if (level == "integrable") return integrable(doc, level);
  if (level == "involutive") return check_involutive(distribution(doc, level));
  if (level == "contact") {
    need_contact(doc, level);
    return check_almost_contact(inst);
  }
  if (level == "normality") {
    need_contact(doc, level);
    CheckReport report = check_almost_contact(inst);
    report.append(check_normality(inst));
    return report;
  }
  if (level == "contact_poisson" || level == "normal_contact_poisson") {
    need_contact(doc, level);
    const bool normal = level == "normal_contact_poisson";
    CheckReport report = check_almost_contact(inst);
    if (!report.verdict()) return report;
    if (normal) report.append(check_normal_classical(inst));
    report.append(check_contact_poisson(inst, normal));
    return report;
  }
  if (level == "submanifold") {
    const Multivector& pi = need_pi(doc, level);
    return check_nonholonomic_poisson_submanifold(pi, distribution(doc, level));
  }
  throw UsageError("unknown level '" + level + "'");
}

}  // namespace qcrf
