#include "qcrf/cohomology_job.hpp"

#include <sstream>

#include "qcrf/cohomology.hpp"
#include "qcrf/error.hpp"

namespace qcrf {

namespace {

std::string table_text(const std::vector<std::vector<std::size_t>>& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << "  i=" << i << ":";
    for (std::size_t v : t[i]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

void add_report(CohomologyOutput& out, nlohmann::ordered_json& conditions, const CheckReport& r) {
  out.pass = out.pass && r.verdict();
  for (const auto& c : report_json(r)["conditions"]) conditions.push_back(c);
  std::string s = r.str();
  const std::size_t cut = s.rfind("verdict: ");
  out.text += cut == std::string::npos ? s : s.substr(0, cut);
}

}  // namespace

CohomologyOutput run_cohomology(const InstanceDocument& doc, const CohomologyOptions& options) {
  const StructureInstance& in = doc.instance;
  if (options.degree_bound < 0) throw UsageError("--degree must be nonnegative");
  if (options.kmax < 0) throw UsageError("--kmax must be nonnegative");
  if (options.triple && !doc.has_A) throw UsageError("--triple needs A");

  CohomologyOutput out;
  nlohmann::ordered_json& j = out.json;
  j["tool"] = kToolVersion;
  j["instance"] = in.name;
  j["digest"] = instance_digest(doc);
  j["degree_bound"] = options.degree_bound;

  CohomologyTable t = poisson_cohomology(in.pi, options.degree_bound, options.kmax);
  std::ostringstream text;
  text << "instance: " << in.name << " (" << instance_digest(doc) << ")\n"
       << "truncated Poisson cohomology, coefficients of degree <= " << t.D << "\n"
       << "  k  dim C^k  rank d  dim H^k\n";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < t.betti.size(); ++k) {
    text << "  " << k << "  " << t.cochains[k] << "  " << t.ranks[k] << "  " << t.betti[k] << "\n";
    rows.push_back({{"k", k}, {"cochains", t.cochains[k]}, {"rank", t.ranks[k]}, {"betti", t.betti[k]}});
  }
  j["cohomology"] = rows;
  out.text = text.str();

  const PatchPtr& p = in.patch;
  Endomorphism prQ(p), prP = Endomorphism::identity(p);
  if (doc.has_A) {
    FProjectors pr = f_projectors(in.A);
    prQ = pr.prQ;
    prP = pr.prP;
  } else if (in.projector_P) {
    prP = *in.projector_P;
    prQ = Endomorphism::identity(p) - prP;
  }

  nlohmann::ordered_json conditions = nlohmann::ordered_json::array();
  if (options.bigrading || options.triple) {
    const std::vector<Multivector> samples = monomial_samples(p, std::min(options.degree_bound, 1), options.kmax);
    if (options.bigrading) add_report(out, conditions, check_bigrading(in.pi, prQ, prP, samples));
    if (options.triple) {
      if (in.frame) add_report(out, conditions, validate_frame(in));
      add_report(out, conditions, check_triple_grading(in.pi, in.A, samples));
    }
  }
  if (options.spectral) {
    SpectralTerms s = spectral_terms(in.pi, prQ, prP, options.degree_bound);
    add_report(out, conditions, check_quotient_algebroid(in.pi, prP));
    std::ostringstream st;
    st << "spectral sequence, rank Q = " << s.q << ", rank P = " << s.p
       << "; rows i = P-degree, columns j = Q-degree\n"
       << "E0 = E1\n" << table_text(s.e1) << "E2\n" << table_text(s.e2) << "rank of sigma' on E2 (to i+2, j-1)\n"
       << table_text(s.d2) << "E3\n" << table_text(s.e3);
    out.text += st.str();
    add_report(out, conditions, s.report);
    j["spectral"] = {{"rank_Q", s.q}, {"rank_P", s.p}, {"E0", s.e0}, {"E1", s.e1}, {"E2", s.e2},
                     {"sigma1_rank", s.d2}, {"E3", s.e3}};
  }
  j["conditions"] = conditions;
  j["verdict"] = out.pass ? "pass" : "fail";
  if (!conditions.empty()) out.text += std::string("verdict: ") + (out.pass ? "pass" : "fail") + "\n";
  return out;
}

}  // namespace qcrf
