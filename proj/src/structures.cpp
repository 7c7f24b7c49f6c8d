#include "qcrf/structures.hpp"

#include <set>

#include "qcrf/error.hpp"
#include "qcrf/linalg.hpp"

namespace qcrf {

namespace {

std::string vlabel(const PatchPtr& p, std::size_t i) { return basis_vector(p, i).str(); }
std::string flabel(const PatchPtr& p, std::size_t i) { return basis_form(p, i).str(); }
std::string args2(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }
std::string args3(const std::string& a, const std::string& b, const std::string& c) {
  return "(" + a + ", " + b + ", " + c + ")";
}

Poly eval2(const Multivector& w, const DiffForm& a, const DiffForm& b) {
  const DiffForm args[] = {a, b};
  return evaluate(w, args);
}

Poly eval2(const DiffForm& w, const Multivector& X, const Multivector& Y) {
  const Multivector args[] = {X, Y};
  return evaluate(w, args);
}

// Folds the failures of every condition in `from` into condition `id` of `into`.
void absorb(CheckReport& into, const std::string& id, const CheckReport& from) {
  Condition& target = into.condition(id);
  for (const Condition& c : from.conditions()) {
    if (c.pass) continue;
    target.pass = false;
    target.failures += c.failures;
    for (const Witness& w : c.witnesses) {
      if (target.witnesses.size() < CheckReport::kMaxWitnesses) target.witnesses.push_back({c.id + " " + w.args, w.value});
    }
  }
}

void require_f(const Endomorphism& A) {
  Endomorphism d = f_defect(A);
  if (!d.is_zero()) throw PreconditionError("A is not an F structure: A^3 + A = " + d.str());
}

void require_idempotent(const Endomorphism& D, const char* what) {
  if (!(D * D == D)) throw PreconditionError(std::string(what) + " is not idempotent");
}

void require_quasi_classical(const Endomorphism& A, const Multivector& pi) {
  CheckReport r = check_quasi_classical(A, pi);
  if (r.verdict()) return;
  std::string ids;
  for (const std::string& id : r.failed_ids()) ids += (ids.empty() ? "" : ", ") + id;
  throw PreconditionError("(A, pi) is not quasi-classical: " + ids + " failed");
}

void check_bracket_vanishes(CheckReport& report, const std::string& id, const Multivector& pi) {
  report.condition(id);
  Multivector b = schouten_bracket(pi, pi);
  const PatchPtr& p = pi.patch();
  for (const auto& [idx, c] : b.components()) {
    const std::size_t i = static_cast<std::size_t>(idx[0]), j = static_cast<std::size_t>(idx[1]),
                      k = static_cast<std::size_t>(idx[2]);
    report.expect_zero(id, "[pi,pi]" + args3(flabel(p, i), flabel(p, j), flabel(p, k)), c);
  }
}

void check_prop24_pair(CheckReport& report, const Endomorphism& A, const Multivector& pi, const std::string& id_a,
                       const std::string& id_b) {
  const PatchPtr& p = A.patch();
  const std::size_t m = p->dim();
  FProjectors pr = f_projectors(A);
  Endomorphism A2 = A * A;
  report.condition(id_a);
  for (std::size_t i = 0; i < m; ++i) {
    Multivector X = -A2.apply(basis_vector(p, i));
    if (X.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      DiffForm beta = -compose(basis_form(p, j), A2);
      if (beta.is_zero()) continue;
      report.expect_zero(id_a, args2("-A^2 " + vlabel(p, i), "-" + flabel(p, j) + " o A^2"),
                         pr.prQ.apply(lie_bracket(sharp(pi, beta), X)));
    }
  }
  report.condition(id_b);
  std::vector<DiffForm> lam;
  for (std::size_t a = 0; a < m; ++a) lam.push_back(compose(basis_form(p, a), pr.prH));
  for (std::size_t k = 0; k < m; ++k) {
    Multivector Y = pr.prHbar.apply(basis_vector(p, k));
    if (Y.is_zero()) continue;
    Multivector L = lie_derivative(Y, pi);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        report.expect_zero(id_b,
                           "Y = pr_Hbar " + vlabel(p, k) + " at " +
                               args2(flabel(p, a) + " o pr_H", flabel(p, b) + " o pr_H"),
                           eval2(L, lam[a], lam[b]));
      }
    }
  }
}

const std::vector<ContactPair>& require_contact(const StructureInstance& inst) {
  if (inst.contact.empty()) throw PreconditionError("instance '" + inst.name + "' has no contact data");
  return inst.contact;
}

std::string za(std::size_t a, std::size_t h) { return h == 1 ? "Z" : "Z" + std::to_string(a + 1); }
std::string xia(std::size_t a, std::size_t h) { return h == 1 ? "xi" : "xi" + std::to_string(a + 1); }

Poly embed(const Poly& f, const PatchPtr& target, std::size_t offset) {
  std::vector<Poly> images;
  for (std::size_t k = 0; k < f.patch()->dim(); ++k) images.push_back(Poly::coordinate(target, offset + k));
  return f.substitute(images);
}

template <Variance V>
AltTensor<V> embed(const AltTensor<V>& t, const PatchPtr& target, std::size_t offset) {
  AltTensor<V> out(target, t.degree());
  for (const auto& [idx, c] : t.components()) {
    IndexSet shifted = idx;
    for (int& i : shifted) i += static_cast<int>(offset);
    out.add(shifted, embed(c, target, offset));
  }
  return out;
}

void embed_into(Endomorphism& out, const Endomorphism& A, std::size_t offset) {
  const PatchPtr& target = out.patch();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      if (!A(i, j).is_zero()) out(offset + i, offset + j) = embed(A(i, j), target, offset);
    }
  }
}

PatchPtr concatenate(const PatchPtr& a, const PatchPtr& b) {
  std::vector<std::string> names = a->names();
  std::set<std::string> seen(names.begin(), names.end());
  for (const std::string& n : b->names()) {
    if (seen.count(n)) throw InstanceError("coordinate name '" + n + "' occurs in both factors");
    names.push_back(n);
  }
  return make_patch(names);
}

std::vector<GaussRational> padded_point(const StructureInstance& inst) {
  std::vector<GaussRational> pt = inst.base_point;
  pt.resize(inst.patch->dim(), GaussRational(0));
  return pt;
}

// (Z (x) xi)(i, j) = Z^i xi_j
Endomorphism outer(const Multivector& Z, const DiffForm& xi) {
  Endomorphism out(Z.patch());
  for (const auto& [zi, zc] : Z.components()) {
    for (const auto& [xj, xc] : xi.components()) {
      out(static_cast<std::size_t>(zi[0]), static_cast<std::size_t>(xj[0])) += zc * xc;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// StructureInstance

StructureInstance::StructureInstance(std::string n, PatchPtr p)
    : name(std::move(n)), patch(std::move(p)), A(patch), pi(patch, 2) {}

void StructureInstance::validate() const {
  if (!patch || patch->dim() == 0) throw InstanceError("instance '" + name + "' needs a nonempty patch");
  require_same_patch(patch, A.patch());
  require_same_patch(patch, pi.patch());
  if (pi.degree() != 2) throw InstanceError("pi must be a bivector");
  for (const ContactPair& c : contact) {
    require_same_patch(patch, c.Z.patch());
    require_same_patch(patch, c.xi.patch());
    if (c.Z.degree() != 1 || c.xi.degree() != 1) throw InstanceError("contact data must be a vector and a 1-form");
  }
  if (projector_P) require_same_patch(patch, projector_P->patch());
  if (frame) {
    for (const Multivector& v : frame->h) require_same_patch(patch, v.patch());
    for (const Multivector& v : frame->q) require_same_patch(patch, v.patch());
    for (const DiffForm& k : frame->kappa) require_same_patch(patch, k.patch());
  }
  if (base_point.size() > patch->dim()) throw InstanceError("base point has too many coordinates");
  for (const auto& [key, v] : vectors) require_same_patch(patch, v.patch());
  for (const auto& [key, f] : forms) require_same_patch(patch, f.patch());
}

std::vector<GaussRational> StructureInstance::point() const { return padded_point(*this); }

// ---------------------------------------------------------------------------
// F, CR and classical CRF

CheckReport check_f_structure(const Endomorphism& A) {
  CheckReport report;
  report.condition("f:A^3+A");
  Endomorphism d = f_defect(A);
  const PatchPtr& p = A.patch();
  for (std::size_t i = 0; i < p->dim(); ++i) {
    report.expect_zero("f:A^3+A", "(A^3 + A) " + vlabel(p, i), d.apply(basis_vector(p, i)));
  }
  return report;
}

CheckReport check_cr_type(const Endomorphism& A) {
  require_f(A);
  CheckReport report;
  report.condition("eq9:S_A");
  const PatchPtr& p = A.patch();
  Endomorphism A2 = A * A;
  for (std::size_t i = 0; i < p->dim(); ++i) {
    for (std::size_t j = i + 1; j < p->dim(); ++j) {
      Multivector X = basis_vector(p, i), Y = basis_vector(p, j);
      Multivector AX = A.apply(X), AY = A.apply(Y), A2X = A2.apply(X), A2Y = A2.apply(Y);
      Multivector s = lie_bracket(AX, AY) + A.apply(lie_bracket(AX, A2Y)) + A.apply(lie_bracket(A2X, AY)) -
                      lie_bracket(A2X, A2Y);
      report.expect_zero("eq9:S_A", args2(vlabel(p, i), vlabel(p, j)), s);
    }
  }
  return report;
}

CheckReport check_classical_crf(const Endomorphism& A) {
  require_f(A);
  CheckReport report;
  const PatchPtr& p = A.patch();
  const std::size_t m = p->dim();
  FProjectors pr = f_projectors(A);
  Endomorphism notH = Endomorphism::identity(p) - pr.prH;
  report.condition("rem2.3:[H,H]");
  for (std::size_t i = 0; i < m; ++i) {
    Multivector Xi = pr.prH.apply(basis_vector(p, i));
    if (Xi.is_zero()) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      Multivector Xj = pr.prH.apply(basis_vector(p, j));
      report.expect_zero("rem2.3:[H,H]", args2("pr_H " + vlabel(p, i), "pr_H " + vlabel(p, j)),
                         notH.apply(lie_bracket(Xi, Xj)));
    }
  }
  report.condition("rem2.3:eq13");
  Endomorphism A2 = A * A;
  for (std::size_t i = 0; i < m; ++i) {
    Multivector X = pr.prP.apply(basis_vector(p, i));
    if (X.is_zero()) continue;
    Multivector AX = A.apply(X);
    for (std::size_t j = 0; j < m; ++j) {
      Multivector Y = pr.prQ.apply(basis_vector(p, j));
      if (Y.is_zero()) continue;
      report.expect_zero("rem2.3:eq13", args2("pr_P " + vlabel(p, i), "pr_Q " + vlabel(p, j)),
                         A2.apply(lie_bracket(X, Y)) - A.apply(lie_bracket(AX, Y)));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// quasi-classical pairs

CheckReport check_quasi_classical(const Endomorphism& A, const Multivector& pi) {
  require_same_patch(A.patch(), pi.patch());
  CheckReport report;
  const PatchPtr& p = A.patch();
  Endomorphism d = f_defect(A);
  report.condition("prop2.1:(i)");
  for (std::size_t i = 0; i < p->dim(); ++i) {
    report.expect_zero("prop2.1:(i)", "(A^3 + A) " + vlabel(p, i), d.apply(basis_vector(p, i)));
  }
  Endomorphism S = A * A + Endomorphism::identity(p);
  report.condition("prop2.1:(ii)");
  report.condition("prop2.1:(iii)");
  for (std::size_t j = 0; j < p->dim(); ++j) {
    DiffForm a = basis_form(p, j);
    report.expect_zero("prop2.1:(ii)", "(A sharp - sharp A*) " + flabel(p, j),
                       A.apply(sharp(pi, a)) - sharp(pi, compose(a, A)));
    report.expect_zero("prop2.1:(iii)", "sharp(" + flabel(p, j) + " o (A^2 + Id))", sharp(pi, compose(a, S)));
  }
  return report;
}

CheckReport check_local_form(const Endomorphism& A, const Multivector& pi) {
  require_f(A);
  require_same_patch(A.patch(), pi.patch());
  CheckReport report;
  const PatchPtr& p = A.patch();
  const std::size_t m = p->dim();
  FProjectors pr = f_projectors(A);
  report.condition("prop2.2:Q-leg");
  report.condition("prop2.2:(1,1)-part");
  for (std::size_t a = 0; a < m; ++a) {
    DiffForm q = compose(basis_form(p, a), pr.prQ);
    DiffForm h = compose(basis_form(p, a), pr.prH);
    for (std::size_t b = 0; b < m; ++b) {
      if (!q.is_zero()) {
        report.expect_zero("prop2.2:Q-leg", args2(flabel(p, a) + " o pr_Q", flabel(p, b)),
                           eval2(pi, q, basis_form(p, b)));
      }
      DiffForm hb = compose(basis_form(p, b), pr.prHbar);
      if (!h.is_zero() && !hb.is_zero()) {
        report.expect_zero("prop2.2:(1,1)-part", args2(flabel(p, a) + " o pr_H", flabel(p, b) + " o pr_Hbar"),
                           eval2(pi, h, hb));
      }
    }
  }
  return report;
}

CheckReport check_integrability(const Endomorphism& A, const Multivector& pi) {
  require_quasi_classical(A, pi);
  CheckReport report;
  absorb(report, "thm2.1:(1)", check_classical_crf(A));
  check_bracket_vanishes(report, "thm2.1:(2)", pi);
  const PatchPtr& p = A.patch();
  const std::size_t m = p->dim();
  Endomorphism A2 = A * A;
  report.condition("thm2.1:(3)");
  for (std::size_t i = 0; i < m; ++i) {
    Multivector X = -A2.apply(basis_vector(p, i));
    if (X.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      DiffForm beta = -compose(basis_form(p, j), A2);
      if (beta.is_zero()) continue;
      report.expect_zero("thm2.1:(3)", args2("-A^2 " + vlabel(p, i), "-" + flabel(p, j) + " o A^2"),
                         schouten_concomitant(pi, A, X, beta));
    }
  }
  return report;
}

CheckReport check_q_leg(const Endomorphism& A, const Multivector& pi) {
  require_quasi_classical(A, pi);
  CheckReport report;
  const PatchPtr& p = A.patch();
  const std::size_t m = p->dim();
  Endomorphism A2 = A * A;
  Endomorphism prQ = A2 + Endomorphism::identity(p);
  report.condition("thm2.1:(3Q)");
  for (std::size_t k = 0; k < m; ++k) {
    Multivector Y = prQ.apply(basis_vector(p, k));
    if (Y.is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      DiffForm beta = -compose(basis_form(p, j), A2);
      if (beta.is_zero()) continue;
      report.expect_zero("thm2.1:(3Q)", args2("pr_Q " + vlabel(p, k), "-" + flabel(p, j) + " o A^2"),
                         A2.apply(schouten_concomitant(pi, A, Y, beta)));
    }
  }
  return report;
}

CheckReport check_integrability_alt(const Endomorphism& A, const Multivector& pi) {
  require_quasi_classical(A, pi);
  CheckReport report;
  absorb(report, "thm2.1:(1)", check_classical_crf(A));
  check_bracket_vanishes(report, "thm2.1:(2)", pi);
  check_prop24_pair(report, A, pi, "prop2.4:(3a)", "prop2.4:(3b)");
  return report;
}

CheckReport check_remark22(const Endomorphism& A, const Multivector& pi) {
  require_quasi_classical(A, pi);
  CheckReport report;
  const PatchPtr& p = A.patch();
  const std::size_t m = p->dim();
  FProjectors pr = f_projectors(A);
  Endomorphism A2 = A * A;
  std::vector<Multivector> X, H;
  std::vector<DiffForm> lam;
  for (std::size_t k = 0; k < m; ++k) {
    X.push_back(pr.prP.apply(basis_vector(p, k)));
    H.push_back(sharp(pi, compose(basis_form(p, k), pr.prP)));
    lam.push_back(compose(basis_form(p, k), pr.prQ));
  }
  report.condition("rem2.2:(a)");
  report.condition("rem2.2:(b)");
  report.condition("rem2.2:(c)");
  for (std::size_t j = 0; j < m; ++j) {
    if (H[j].is_zero()) continue;
    Endomorphism LA2 = lie_derivative(H[j], A2);
    std::vector<DiffForm> dl, Ll;
    for (std::size_t a = 0; a < m; ++a) {
      dl.push_back(exterior_derivative(lam[a]));
      Ll.push_back(lie_derivative(H[j], lam[a]));
    }
    const std::string b = "sharp(" + flabel(p, j) + " o pr_P)";
    for (std::size_t i = 0; i < m; ++i) {
      if (X[i].is_zero()) continue;
      const std::string x = "pr_P " + vlabel(p, i);
      report.expect_zero("rem2.2:(a)", args2(b, x), LA2.apply(X[i]));
      for (std::size_t a = 0; a < m; ++a) {
        if (lam[a].is_zero()) continue;
        const std::string l = flabel(p, a) + " o pr_Q";
        report.expect_zero("rem2.2:(b)", args3(l, b, x), eval2(dl[a], H[j], X[i]));
        report.expect_zero("rem2.2:(c)", args3(l, b, x), pair(Ll[a], X[i]));
      }
    }
  }
  return report;
}

CheckReport check_s_phi(const Endomorphism& A, const Multivector& pi) {
  return check_s_phi_vanishes(GenEndomorphism::quasi_classical(A, pi));
}

StructureInstance product_instance(const StructureInstance& a, const StructureInstance& b) {
  a.validate();
  b.validate();
  PatchPtr patch = concatenate(a.patch, b.patch);
  const std::size_t off = a.patch->dim();
  StructureInstance out(a.name + " x " + b.name, patch);
  embed_into(out.A, a.A, 0);
  embed_into(out.A, b.A, off);
  out.pi = embed(a.pi, patch, 0) + embed(b.pi, patch, off);
  if (a.frame && b.frame) {
    AdaptedFrame f;
    for (const auto& [src, shift] : {std::pair{&*a.frame, std::size_t{0}}, std::pair{&*b.frame, off}}) {
      for (const Multivector& v : src->h) f.h.push_back(embed(v, patch, shift));
      for (const Multivector& v : src->q) f.q.push_back(embed(v, patch, shift));
      for (const DiffForm& k : src->kappa) f.kappa.push_back(embed(k, patch, shift));
    }
    out.frame = std::move(f);
  }
  out.base_point = padded_point(a);
  for (const GaussRational& c : padded_point(b)) out.base_point.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// distributions and (non)holonomic Poisson submanifolds

CheckReport check_involutive(const Endomorphism& D) {
  require_idempotent(D, "the distribution projector");
  CheckReport report;
  report.condition("involutive");
  const PatchPtr& p = D.patch();
  Endomorphism comp = Endomorphism::identity(p) - D;
  for (std::size_t i = 0; i < p->dim(); ++i) {
    Multivector X = D.apply(basis_vector(p, i));
    if (X.is_zero()) continue;
    for (std::size_t j = i + 1; j < p->dim(); ++j) {
      Multivector Y = D.apply(basis_vector(p, j));
      report.expect_zero("involutive", args2("D " + vlabel(p, i), "D " + vlabel(p, j)),
                         comp.apply(lie_bracket(X, Y)));
    }
  }
  return report;
}

CheckReport check_projectable(const Multivector& pi, const Endomorphism& prQ) {
  require_idempotent(prQ, "pr_Q");
  require_same_patch(pi.patch(), prQ.patch());
  CheckReport report;
  const PatchPtr& p = pi.patch();
  const std::size_t m = p->dim();
  Endomorphism prP = Endomorphism::identity(p) - prQ;
  report.condition("prop3.1:im-sharp");
  std::vector<DiffForm> ann;
  for (std::size_t a = 0; a < m; ++a) {
    report.expect_zero("prop3.1:im-sharp", "pr_Q sharp(" + flabel(p, a) + ")", prQ.apply(sharp(pi, basis_form(p, a))));
    ann.push_back(compose(basis_form(p, a), prP));
  }
  report.condition("prop3.1:L_Y-pi");
  for (std::size_t k = 0; k < m; ++k) {
    Multivector Y = prQ.apply(basis_vector(p, k));
    if (Y.is_zero()) continue;
    Multivector L = lie_derivative(Y, pi);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        report.expect_zero("prop3.1:L_Y-pi",
                           "Y = pr_Q " + vlabel(p, k) + " at " + args2(flabel(p, a) + " o pr_P", flabel(p, b) + " o pr_P"),
                           eval2(L, ann[a], ann[b]));
      }
    }
  }
  return report;
}

CheckReport check_nonholonomic_poisson_submanifold(const Multivector& pi, const Endomorphism& prP) {
  require_idempotent(prP, "pr_P");
  require_same_patch(pi.patch(), prP.patch());
  CheckReport report;
  check_bracket_vanishes(report, "def4.1:[pi,pi]", pi);
  const PatchPtr& p = pi.patch();
  Endomorphism comp = Endomorphism::identity(p) - prP;
  report.condition("def4.1:1)");
  report.condition("def4.1:2)");
  for (std::size_t a = 0; a < p->dim(); ++a) {
    Multivector H = sharp(pi, basis_form(p, a));
    const std::string h = "sharp(" + flabel(p, a) + ")";
    report.expect_zero("def4.1:1)", "(Id - pr_P) " + h, comp.apply(H));
    if (H.is_zero()) continue;
    for (std::size_t i = 0; i < p->dim(); ++i) {
      Multivector X = prP.apply(basis_vector(p, i));
      if (X.is_zero()) continue;
      report.expect_zero("def4.1:2)", args2(h, "pr_P " + vlabel(p, i)), comp.apply(lie_bracket(H, X)));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// almost contact structures

CheckReport check_almost_contact(const StructureInstance& inst) {
  const auto& contact = require_contact(inst);
  inst.validate();
  CheckReport report;
  const PatchPtr& p = inst.patch;
  const std::size_t m = p->dim(), h = contact.size();
  const Endomorphism& A = inst.A;
  report.condition("eq33:compat");
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      DiffForm fa = basis_form(p, a), fb = basis_form(p, b);
      report.expect_zero("eq33:compat", args2(flabel(p, a), flabel(p, b)),
                         eval2(inst.pi, compose(fa, A), fb) - eval2(inst.pi, fa, compose(fb, A)));
    }
  }
  report.condition("eq33:AZ");
  report.condition("eq33:xiA");
  report.condition("eq33:i(xi)pi");
  report.condition("eq33:xi(Z)");
  Endomorphism S = A * A + Endomorphism::identity(p);
  for (std::size_t a = 0; a < h; ++a) {
    report.expect_zero("eq33:AZ", "A " + za(a, h), A.apply(contact[a].Z));
    report.expect_zero("eq33:xiA", xia(a, h) + " o A", compose(contact[a].xi, A));
    report.expect_zero("eq33:i(xi)pi", "i(" + xia(a, h) + ")pi", sharp(inst.pi, contact[a].xi));
    for (std::size_t b = 0; b < h; ++b) {
      Poly v = pair(contact[a].xi, contact[b].Z) - Poly(p, a == b ? 1 : 0);
      report.expect_zero("eq33:xi(Z)", xia(a, h) + "(" + za(b, h) + ") - delta", v);
    }
    S -= outer(contact[a].Z, contact[a].xi);
  }
  report.condition("eq33:A^2");
  for (std::size_t i = 0; i < m; ++i) {
    report.expect_zero("eq33:A^2", "(A^2 + Id - xi (x) Z) " + vlabel(p, i), S.apply(basis_vector(p, i)));
  }
  return report;
}

CheckReport check_normality(const StructureInstance& inst) {
  const auto& contact = require_contact(inst);
  inst.validate();
  CheckReport report;
  const PatchPtr& p = inst.patch;
  const std::size_t m = p->dim(), h = contact.size();
  const Endomorphism& A = inst.A;
  check_bracket_vanishes(report, "eq34:[pi,pi]", inst.pi);
  report.condition("eq34:R");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      report.expect_zero("eq34:R", args2(vlabel(p, i), flabel(p, j)),
                         schouten_concomitant(inst.pi, A, basis_vector(p, i), basis_form(p, j)));
    }
  }
  report.condition("eq34:L_Z pi");
  report.condition("eq34:L_sharp xi");
  std::vector<DiffForm> dxi;
  for (std::size_t a = 0; a < h; ++a) {
    report.expect_zero("eq34:L_Z pi", "L_" + za(a, h) + " pi", lie_derivative(contact[a].Z, inst.pi));
    for (std::size_t j = 0; j < m; ++j) {
      report.expect_zero("eq34:L_sharp xi", "L_sharp(" + flabel(p, j) + ") " + xia(a, h),
                         lie_derivative(sharp(inst.pi, basis_form(p, j)), contact[a].xi));
    }
    dxi.push_back(exterior_derivative(contact[a].xi));
  }
  report.condition("eq34:N_A");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Multivector X = basis_vector(p, i), Y = basis_vector(p, j);
      Multivector v = nijenhuis(A, X, Y);
      for (std::size_t a = 0; a < h; ++a) v += dxi[a].component({static_cast<int>(i), static_cast<int>(j)}) * contact[a].Z;
      report.expect_zero("eq34:N_A", args2(vlabel(p, i), vlabel(p, j)), v);
    }
  }
  return report;
}

CheckReport check_normality_extra(const StructureInstance& inst) {
  const auto& contact = require_contact(inst);
  inst.validate();
  CheckReport report;
  const PatchPtr& p = inst.patch;
  const std::size_t m = p->dim(), h = contact.size();
  const Endomorphism& A = inst.A;
  report.condition("eq34:[Z,Z]");
  report.condition("eq34:L_Z xi");
  report.condition("eq34:L_Z A");
  report.condition("eq34:AX-AY");
  for (std::size_t a = 0; a < h; ++a) {
    for (std::size_t b = a + 1; b < h; ++b) {
      report.expect_zero("eq34:[Z,Z]", args2(za(a, h), za(b, h)), lie_bracket(contact[a].Z, contact[b].Z));
    }
    for (std::size_t b = 0; b < h; ++b) {
      report.expect_zero("eq34:L_Z xi", "L_" + za(b, h) + " " + xia(a, h), lie_derivative(contact[b].Z, contact[a].xi));
    }
    report.expect_zero("eq34:L_Z A", "L_" + za(a, h) + " A", lie_derivative(contact[a].Z, A));
    for (std::size_t i = 0; i < m; ++i) {
      Multivector AX = A.apply(basis_vector(p, i));
      for (std::size_t j = i + 1; j < m; ++j) {
        Multivector AY = A.apply(basis_vector(p, j));
        Poly v = pair(lie_derivative(AX, contact[a].xi), basis_vector(p, j)) -
                 pair(lie_derivative(AY, contact[a].xi), basis_vector(p, i));
        report.expect_zero("eq34:AX-AY", xia(a, h) + " at " + args2(vlabel(p, i), vlabel(p, j)), v);
      }
    }
  }
  return report;
}

CheckReport check_contact_poisson(const StructureInstance& inst, bool normal) {
  const auto& contact = require_contact(inst);
  inst.validate();
  CheckReport ac = check_almost_contact(inst);
  CheckReport report;
  Condition& c1 = report.condition("def3.1:(1)");
  for (const char* id : {"eq33:compat", "eq33:i(xi)pi"}) {
    const Condition* c = ac.find(id);
    if (c->pass) continue;
    c1.pass = false;
    c1.failures += c->failures;
    for (const Witness& w : c->witnesses) {
      if (c1.witnesses.size() < CheckReport::kMaxWitnesses) c1.witnesses.push_back({std::string(id) + " " + w.args, w.value});
    }
  }
  require_f(inst.A);
  absorb(report, "def3.1:(2)", check_classical_crf(inst.A));
  check_bracket_vanishes(report, "def3.1:(3)", inst.pi);
  CheckReport alt;
  check_prop24_pair(alt, inst.A, inst.pi, "prop2.4:(3a)", "prop2.4:(3b)");
  absorb(report, "def3.1:(4)", alt);
  if (normal) {
    report.condition("def3.2:L_Z pi");
    for (std::size_t a = 0; a < contact.size(); ++a) {
      report.expect_zero("def3.2:L_Z pi", "L_" + za(a, contact.size()) + " pi", lie_derivative(contact[a].Z, inst.pi));
    }
  }
  return report;
}

CheckReport check_normal_classical(const StructureInstance& inst) {
  const auto& contact = require_contact(inst);
  inst.validate();
  CheckReport report;
  report.condition("eq35:N_A+dxi Z");
  const PatchPtr& p = inst.patch;
  for (std::size_t i = 0; i < p->dim(); ++i) {
    for (std::size_t j = i + 1; j < p->dim(); ++j) {
      Multivector v = nijenhuis(inst.A, basis_vector(p, i), basis_vector(p, j));
      for (const ContactPair& c : contact) {
        v += exterior_derivative(c.xi).component({static_cast<int>(i), static_cast<int>(j)}) * c.Z;
      }
      report.expect_zero("eq35:N_A+dxi Z", args2(vlabel(p, i), vlabel(p, j)), v);
    }
  }
  return report;
}

CheckReport check_prop33(const StructureInstance& inst) {
  const auto& contact = require_contact(inst);
  std::vector<std::string> failed;
  for (const CheckReport& r : {check_almost_contact(inst), check_normal_classical(inst), check_contact_poisson(inst, true)}) {
    for (const std::string& id : r.failed_ids()) failed.push_back(id);
  }
  if (!failed.empty()) {
    std::string ids;
    for (const std::string& id : failed) ids += (ids.empty() ? "" : ", ") + id;
    throw PreconditionError("hypotheses of the normality criterion fail: " + ids);
  }
  CheckReport report = check_normality(inst);
  report.append(check_normality_extra(inst));
  const PatchPtr& p = inst.patch;
  const std::size_t m = p->dim(), h = contact.size();
  Endomorphism A2 = inst.A * inst.A;
  report.condition("prop3.3:R(A2X,xi)");
  report.condition("prop3.3:R(Z,A*2a)");
  report.condition("prop3.3:R(Z,xi)");
  for (std::size_t a = 0; a < h; ++a) {
    const ContactPair& c = contact[a];
    for (std::size_t i = 0; i < m; ++i) {
      report.expect_zero("prop3.3:R(A2X,xi)", args2("A^2 " + vlabel(p, i), xia(a, h)),
                         schouten_concomitant(inst.pi, inst.A, A2.apply(basis_vector(p, i)), c.xi));
      report.expect_zero("prop3.3:R(Z,A*2a)", args2(za(a, h), flabel(p, i) + " o A^2"),
                         schouten_concomitant(inst.pi, inst.A, c.Z, compose(basis_form(p, i), A2)));
    }
    report.expect_zero("prop3.3:R(Z,xi)", args2(za(a, h), xia(a, h)), schouten_concomitant(inst.pi, inst.A, c.Z, c.xi));
  }
  return report;
}

ContactProduct contact_product(const StructureInstance& a, const StructureInstance& b) {
  a.validate();
  b.validate();
  if (a.contact.size() != 1 || b.contact.size() != 1) {
    throw PreconditionError("the product of almost contact structures needs one contact pair per factor");
  }
  PatchPtr patch = concatenate(a.patch, b.patch);
  const std::size_t off = a.patch->dim(), m = patch->dim();
  Multivector Z1 = embed(a.contact[0].Z, patch, 0), Z2 = embed(b.contact[0].Z, patch, off);
  DiffForm xi1 = embed(a.contact[0].xi, patch, 0), xi2 = embed(b.contact[0].xi, patch, off);
  ContactProduct out{StructureInstance(a.name + " x " + b.name, patch), {}};
  Endomorphism& J = out.instance.A;
  embed_into(J, a.A, 0);
  embed_into(J, b.A, off);
  J -= outer(Z1, xi2);
  J += outer(Z2, xi1);
  out.instance.pi = embed(a.pi, patch, 0) + embed(b.pi, patch, off);
  out.instance.base_point = padded_point(a);
  for (const GaussRational& c : padded_point(b)) out.instance.base_point.push_back(c);

  CheckReport& report = out.report;
  Endomorphism S = J * J + Endomorphism::identity(patch);
  report.condition("prop3.4:J^2");
  for (std::size_t i = 0; i < m; ++i) {
    report.expect_zero("prop3.4:J^2", "(J^2 + Id) " + vlabel(patch, i), S.apply(basis_vector(patch, i)));
  }
  report.condition("prop3.4:N_J");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      report.expect_zero("prop3.4:N_J", args2(vlabel(patch, i), vlabel(patch, j)),
                         nijenhuis(J, basis_vector(patch, i), basis_vector(patch, j)));
    }
  }
  check_bracket_vanishes(report, "prop3.4:[pi,pi]", out.instance.pi);
  const char* ids[] = {"prop3.4:R(1)", "prop3.4:R(2)", "prop3.4:R(3)", "prop3.4:R(4)"};
  for (const char* id : ids) report.condition(id);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int kind = (i < off ? 0 : 2) + (j < off ? 0 : 1);
      report.expect_zero(ids[kind], args2(vlabel(patch, i), flabel(patch, j)),
                         schouten_concomitant(out.instance.pi, J, basis_vector(patch, i), basis_form(patch, j)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// adapted frames

CheckReport validate_frame(const StructureInstance& inst) {
  if (!inst.frame) throw PreconditionError("instance '" + inst.name + "' has no adapted frame");
  inst.validate();
  const AdaptedFrame& f = *inst.frame;
  const PatchPtr& p = inst.patch;
  const std::size_t m = p->dim();
  const GaussRational I = GaussRational::imaginary_unit();
  CheckReport report;
  report.condition("frame:valid");
  for (std::size_t k = 0; k < f.h.size(); ++k) {
    report.expect_zero("frame:valid", "A h" + std::to_string(k + 1) + " - i h" + std::to_string(k + 1),
                       inst.A.apply(f.h[k]) - I * f.h[k]);
  }
  for (std::size_t k = 0; k < f.q.size(); ++k) {
    report.expect_zero("frame:valid", "A q" + std::to_string(k + 1), inst.A.apply(f.q[k]));
  }
  for (std::size_t k = 0; k < f.kappa.size(); ++k) {
    report.expect_zero("frame:valid", "kappa" + std::to_string(k + 1) + " o A - i kappa" + std::to_string(k + 1),
                       compose(f.kappa[k], inst.A) - I * f.kappa[k]);
  }
  if (2 * f.h.size() + f.q.size() != m || f.kappa.size() != f.h.size()) {
    report.fail("frame:valid", "counts", std::to_string(f.h.size()) + " h, " + std::to_string(f.q.size()) + " q, " +
                                            std::to_string(f.kappa.size()) + " kappa on a patch of dimension " +
                                            std::to_string(m));
  }
  const std::vector<GaussRational> pt = padded_point(inst);
  std::vector<SparseVector> rows;
  auto add_row = [&](const Multivector& v) {
    SparseVector row;
    for (const auto& [idx, c] : v.components()) {
      GaussRational x = c.evaluate(pt);
      if (!x.is_zero()) row.emplace(static_cast<std::size_t>(idx[0]), x);
    }
    rows.push_back(std::move(row));
  };
  for (const Multivector& v : f.h) {
    add_row(v);
    add_row(v.conj());
  }
  for (const Multivector& v : f.q) add_row(v);
  std::size_t r = rank(rows);
  if (r != m) {
    report.fail("frame:valid", "rank at base point", std::to_string(r) + " of " + std::to_string(m));
  }
  std::string where;
  for (const GaussRational& c : pt) where += (where.empty() ? "" : ", ") + c.str();
  report.note("frame:valid", "frame validated at point (" + where + ")");
  return report;
}

CheckReport check_frame_conditions(const StructureInstance& inst) {
  if (!inst.frame) throw PreconditionError("instance '" + inst.name + "' has no adapted frame");
  inst.validate();
  require_f(inst.A);
  const AdaptedFrame& f = *inst.frame;
  FProjectors pr = f_projectors(inst.A);
  Endomorphism notH = Endomorphism::identity(inst.patch) - pr.prH;
  CheckReport report;
  report.condition("eq12:[H,H]");
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    for (std::size_t j = i + 1; j < f.h.size(); ++j) {
      report.expect_zero("eq12:[H,H]", args2("h" + std::to_string(i + 1), "h" + std::to_string(j + 1)),
                         notH.apply(lie_bracket(f.h[i], f.h[j])));
    }
  }
  report.condition("eq12:[H,Q]");
  for (std::size_t i = 0; i < f.h.size(); ++i) {
    for (std::size_t j = 0; j < f.q.size(); ++j) {
      report.expect_zero("eq12:[H,Q]", args2("h" + std::to_string(i + 1), "q" + std::to_string(j + 1)),
                         pr.prHbar.apply(lie_bracket(f.h[i], f.q[j])));
    }
  }
  return report;
}

}  // namespace qcrf
