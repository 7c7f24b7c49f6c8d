#include "qcrf/biggeom.hpp"

#include <algorithm>

namespace qcrf {

namespace {

GaussRational half() { return GaussRational::ratio(1, 2); }

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }

}  // namespace

// ---------------------------------------------------------------------------
// GenSection

GenSection::GenSection(Multivector v, DiffForm f) : vec(std::move(v)), form(std::move(f)) {
  require_same_patch(vec.patch(), form.patch());
  if (vec.degree() != 1 || form.degree() != 1) throw InstanceError("a section of TM + T*M needs degree-1 parts");
}

GenSection GenSection::zero(const PatchPtr& patch) { return {Multivector(patch, 1), DiffForm(patch, 1)}; }
GenSection GenSection::of_vector(const Multivector& v) { return {v, DiffForm(v.patch(), 1)}; }
GenSection GenSection::of_form(const DiffForm& f) { return {Multivector(f.patch(), 1), f}; }

std::vector<GenSection> GenSection::coordinate_basis(const PatchPtr& patch) {
  std::vector<GenSection> out;
  for (std::size_t i = 0; i < patch->dim(); ++i) out.push_back(of_vector(basis_vector(patch, i)));
  for (std::size_t i = 0; i < patch->dim(); ++i) out.push_back(of_form(basis_form(patch, i)));
  return out;
}

std::string GenSection::str() const { return pair_label(vec.str(), form.str()); }

GenSection& GenSection::operator+=(const GenSection& o) {
  vec += o.vec;
  form += o.form;
  return *this;
}

GenSection& GenSection::operator-=(const GenSection& o) {
  vec -= o.vec;
  form -= o.form;
  return *this;
}

// ---------------------------------------------------------------------------
// GenEndomorphism / BlockOperator

GenEndomorphism::GenEndomorphism(Endomorphism a, Multivector p, DiffForm s)
    : A(std::move(a)), pi(std::move(p)), sigma(std::move(s)) {
  require_same_patch(A.patch(), pi.patch());
  require_same_patch(A.patch(), sigma.patch());
  if (pi.degree() != 2 || sigma.degree() != 2) throw InstanceError("pi and sigma must have degree 2");
}

GenEndomorphism GenEndomorphism::quasi_classical(const Endomorphism& a, const Multivector& p) {
  return {a, p, DiffForm(a.patch(), 2)};
}

BlockOperator::BlockOperator(PatchPtr patch)
    : patch_(std::move(patch)), n_(2 * patch_->dim()), entries_(n_ * n_, Poly(patch_)) {}

BlockOperator BlockOperator::identity(PatchPtr patch) {
  BlockOperator out(patch);
  for (std::size_t r = 0; r < out.n_; ++r) out(r, r) = Poly(patch, 1);
  return out;
}

BlockOperator BlockOperator::from(const GenEndomorphism& phi) {
  const PatchPtr& patch = phi.patch();
  const std::size_t m = patch->dim();
  BlockOperator out(patch);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int a = static_cast<int>(i), b = static_cast<int>(j);
      out(i, j) = phi.A(i, j);
      out(i, m + j) = phi.pi.component({b, a});     // (sharp a)^i = a_j pi^{ji}
      out(m + j, i) = phi.sigma.component({a, b});  // (flat X)_j = X^i sigma_{ij}
      out(m + j, m + i) = -phi.A(i, j);             // (-A* a)_j = -a_i A^i_j
    }
  }
  return out;
}

GenSection BlockOperator::apply(const GenSection& e) const {
  require_same_patch(patch_, e.patch());
  const std::size_t m = n_ / 2;
  std::vector<Poly> in(n_, Poly(patch_));
  for (const auto& [idx, c] : e.vec.components()) in[static_cast<std::size_t>(idx[0])] = c;
  for (const auto& [idx, c] : e.form.components()) in[m + static_cast<std::size_t>(idx[0])] = c;
  GenSection out = GenSection::zero(patch_);
  for (std::size_t r = 0; r < n_; ++r) {
    Poly acc(patch_);
    for (std::size_t c = 0; c < n_; ++c) {
      if (!in[c].is_zero() && !(*this)(r, c).is_zero()) acc += (*this)(r, c) * in[c];
    }
    if (acc.is_zero()) continue;
    if (r < m) {
      out.vec.add({static_cast<int>(r)}, acc);
    } else {
      out.form.add({static_cast<int>(r - m)}, acc);
    }
  }
  return out;
}

bool BlockOperator::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

BlockOperator& BlockOperator::operator+=(const BlockOperator& o) {
  require_same_patch(patch_, o.patch_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& o) {
  require_same_patch(patch_, o.patch_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
  require_same_patch(a.patch_, b.patch_);
  BlockOperator out(a.patch_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

BlockOperator operator*(const GaussRational& c, BlockOperator a) {
  for (Poly& p : a.entries_) p *= c;
  return a;
}

// ---------------------------------------------------------------------------
// F projectors

Endomorphism f_defect(const Endomorphism& A) { return A * A * A + A; }

FProjectors f_projectors(const Endomorphism& A) {
  Endomorphism defect = f_defect(A);
  if (!defect.is_zero()) throw PreconditionError("A is not an F structure: A^3 + A = " + defect.str());
  const PatchPtr& patch = A.patch();
  Endomorphism A2 = A * A;
  Endomorphism iA = GaussRational::imaginary_unit() * A;
  GaussRational mhalf = -half();
  return {mhalf * (A2 + iA), mhalf * (A2 - iA), A2 + Endomorphism::identity(patch), -A2};
}

// ---------------------------------------------------------------------------
// pairing, Courant bracket, Phi

Poly pairing(const GenSection& e1, const GenSection& e2) {
  require_same_patch(e1.patch(), e2.patch());
  return half() * (pair(e1.form, e2.vec) + pair(e2.form, e1.vec));
}

GenSection courant_bracket(const GenSection& e1, const GenSection& e2) {
  require_same_patch(e1.patch(), e2.patch());
  Multivector v = lie_bracket(e1.vec, e2.vec);
  DiffForm f = lie_derivative(e1.vec, e2.form) - lie_derivative(e2.vec, e1.form);
  f += half() * differential(pair(e1.form, e2.vec) - pair(e2.form, e1.vec));
  return {v, f};
}

GenSection apply_phi(const GenEndomorphism& phi, const GenSection& e) {
  require_same_patch(phi.patch(), e.patch());
  Multivector v = phi.A.apply(e.vec) + sharp(phi.pi, e.form);
  DiffForm f = flat(phi.sigma, e.vec) - compose(e.form, phi.A);
  return {v, f};
}

GenSection s_phi(const GenEndomorphism& phi, const GenSection& e1, const GenSection& e2) {
  GenSection p1 = apply_phi(phi, e1);
  GenSection p2 = apply_phi(phi, e2);
  GenSection q1 = apply_phi(phi, p1);
  GenSection q2 = apply_phi(phi, p2);
  GenSection out = courant_bracket(p1, p2);
  out += apply_phi(phi, courant_bracket(p1, q2));
  out += apply_phi(phi, courant_bracket(q1, p2));
  out -= courant_bracket(q1, q2);
  return out;
}

CheckReport is_skew_and_f(const BlockOperator& phi) {
  CheckReport report;
  const auto basis = GenSection::coordinate_basis(phi.patch());
  std::vector<GenSection> images;
  images.reserve(basis.size());
  for (const auto& e : basis) images.push_back(phi.apply(e));
  report.condition("gen:skew");
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = r; c < basis.size(); ++c) {
      Poly v = pairing(images[r], basis[c]) + pairing(basis[r], images[c]);
      report.expect_zero("gen:skew", pair_label(basis[r].str(), basis[c].str()), v);
    }
  }
  BlockOperator defect = phi * phi * phi + phi;
  report.condition("gen:F");
  for (const auto& e : basis) report.expect_zero("gen:F", e.str(), defect.apply(e));
  return report;
}

CheckReport is_skew_and_f(const GenEndomorphism& phi) { return is_skew_and_f(BlockOperator::from(phi)); }

CheckReport check_s_phi_vanishes(const GenEndomorphism& phi) {
  CheckReport report;
  report.condition("gen:S_Phi");
  const auto basis = GenSection::coordinate_basis(phi.patch());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = r + 1; c < basis.size(); ++c) {
      report.expect_zero("gen:S_Phi", pair_label(basis[r].str(), basis[c].str()), s_phi(phi, basis[r], basis[c]));
    }
  }
  return report;
}

GenProjectors gen_projectors(const GenEndomorphism& phi) {
  BlockOperator P = BlockOperator::from(phi);
  BlockOperator P2 = P * P;
  if (!(P2 * P + P).is_zero()) throw PreconditionError("Phi^3 + Phi != 0");
  BlockOperator iP = GaussRational::imaginary_unit() * P;
  return {-half() * (P2 + iP), -half() * (P2 - iP), P2 + BlockOperator::identity(phi.patch())};
}

GaussRational eq19_coefficient() { return -half() * GaussRational::imaginary_unit(); }

GenSection eq19_section(const Multivector& pi, const Multivector& Z, const DiffForm& xi, const GaussRational& c) {
  return {Z + c * sharp(pi, xi), xi};
}

bool eigenbundle_E_membership(const GenProjectors& pr, const GenSection& e) { return pr.prE.apply(e) == e; }

CheckReport check_gen_projectors(const GenEndomorphism& phi) {
  CheckReport report;
  GenProjectors pr = gen_projectors(phi);
  const PatchPtr& patch = phi.patch();
  const auto basis = GenSection::coordinate_basis(patch);

  BlockOperator sum = pr.prE + pr.prEbar + pr.prS - BlockOperator::identity(patch);
  report.condition("eq8:sum");
  for (const auto& e : basis) report.expect_zero("eq8:sum", e.str(), sum.apply(e));

  const std::pair<const char*, const BlockOperator*> named[] = {{"E", &pr.prE}, {"Ebar", &pr.prEbar}, {"S", &pr.prS}};
  report.condition("eq8:idempotent");
  report.condition("eq8:annihilate");
  for (const auto& [name, op] : named) {
    BlockOperator d = (*op) * (*op) - (*op);
    for (const auto& e : basis) report.expect_zero("eq8:idempotent", std::string(name) + " at " + e.str(), d.apply(e));
    for (const auto& [other_name, other] : named) {
      if (op == other) continue;
      BlockOperator z = (*op) * (*other);
      for (const auto& e : basis) {
        report.expect_zero("eq8:annihilate", std::string(name) + "*" + other_name + " at " + e.str(), z.apply(e));
      }
    }
  }

  FProjectors fp = f_projectors(phi.A);
  report.condition("eq19:E");
  report.note("eq19:E", "coefficient -i/2 on sharp_pi(xi)");
  report.condition("rem2.1:S");
  for (std::size_t i = 0; i < patch->dim(); ++i) {
    Multivector Z = fp.prH.apply(basis_vector(patch, i));
    GenSection e = GenSection::of_vector(Z);
    report.expect_zero("eq19:E", "Z = pr_H " + basis_vector(patch, i).str(), pr.prE.apply(e) - e);
    DiffForm xi = compose(basis_form(patch, i), fp.prHbar);
    GenSection s = eq19_section(phi.pi, Multivector(patch, 1), xi, eq19_coefficient());
    report.expect_zero("eq19:E", "xi = " + basis_form(patch, i).str() + " o pr_Hbar", pr.prE.apply(s) - s);
    Multivector X = basis_vector(patch, i);
    report.expect_zero("rem2.1:S", X.str(),
                       pr.prS.apply(GenSection::of_vector(X)) - GenSection::of_vector(fp.prQ.apply(X)));
  }
  return report;
}

}  // namespace qcrf
