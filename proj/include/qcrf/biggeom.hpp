#pragma once

// The big tangent bundle TM + T*M: pairing metric, Courant bracket, the block
// endomorphism Phi(X, a) = (AX + sharp_pi a, flat_sigma X - A* a), its
// eigen-projectors and the integrability tensor S_Phi.

#include <string>
#include <vector>

#include "qcrf/report.hpp"
#include "qcrf/tensor.hpp"

namespace qcrf {

struct GenSection {
  Multivector vec;
  DiffForm form;

  GenSection() = default;
  GenSection(Multivector v, DiffForm f);
  static GenSection zero(const PatchPtr& patch);
  static GenSection of_vector(const Multivector& v);
  static GenSection of_form(const DiffForm& f);
  /// The 2m coordinate sections (d/dx^1, 0), ..., (0, dx^1), ...
  static std::vector<GenSection> coordinate_basis(const PatchPtr& patch);

  const PatchPtr& patch() const { return vec.patch(); }
  bool is_zero() const { return vec.is_zero() && form.is_zero(); }
  std::string str() const;

  GenSection operator-() const { return {-vec, -form}; }
  GenSection& operator+=(const GenSection& o);
  GenSection& operator-=(const GenSection& o);
  friend GenSection operator+(GenSection a, const GenSection& b) { return a += b; }
  friend GenSection operator-(GenSection a, const GenSection& b) { return a -= b; }
  friend GenSection operator*(const Poly& f, const GenSection& e) { return {f * e.vec, f * e.form}; }
  friend GenSection operator*(const GaussRational& c, const GenSection& e) { return {c * e.vec, c * e.form}; }
  friend bool operator==(const GenSection& a, const GenSection& b) { return a.vec == b.vec && a.form == b.form; }
};

/// Phi given by its classical blocks; sigma = 0 for quasi-classical structures.
struct GenEndomorphism {
  Endomorphism A;
  Multivector pi;
  DiffForm sigma;

  GenEndomorphism() = default;
  GenEndomorphism(Endomorphism a, Multivector p, DiffForm s);
  static GenEndomorphism quasi_classical(const Endomorphism& a, const Multivector& p);
  const PatchPtr& patch() const { return A.patch(); }
};

/// General linear operator on TM + T*M acting on the 2m component vector
/// (X^1..X^m, a_1..a_m). Used for Phi's powers, projectors, and for operators
/// that are not of the (A, pi, sigma) shape.
class BlockOperator {
 public:
  BlockOperator() = default;
  explicit BlockOperator(PatchPtr patch);  // zero
  static BlockOperator identity(PatchPtr patch);
  static BlockOperator from(const GenEndomorphism& phi);

  const PatchPtr& patch() const { return patch_; }
  std::size_t size() const { return n_; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }

  GenSection apply(const GenSection& e) const;

  bool is_zero() const;
  BlockOperator& operator+=(const BlockOperator& o);
  BlockOperator& operator-=(const BlockOperator& o);
  friend BlockOperator operator+(BlockOperator a, const BlockOperator& b) { return a += b; }
  friend BlockOperator operator-(BlockOperator a, const BlockOperator& b) { return a -= b; }
  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator*(const GaussRational& c, BlockOperator a);
  friend bool operator==(const BlockOperator& a, const BlockOperator& b) { return a.entries_ == b.entries_; }

 private:
  PatchPtr patch_;
  std::size_t n_ = 0;
  std::vector<Poly> entries_;
};

/// The projectors of TM^c = H + Hbar + Q^c for an F structure:
/// pr_H = -(A^2 + iA)/2, pr_Hbar = -(A^2 - iA)/2, pr_Q = A^2 + Id, pr_P = -A^2.
struct FProjectors {
  Endomorphism prH;
  Endomorphism prHbar;
  Endomorphism prQ;
  Endomorphism prP;
};

/// A^3 + A; zero exactly for F structures.
Endomorphism f_defect(const Endomorphism& A);
/// Throws PreconditionError unless A^3 + A = 0.
FProjectors f_projectors(const Endomorphism& A);

/// g((X,a),(Y,b)) = (a(Y) + b(X)) / 2
Poly pairing(const GenSection& e1, const GenSection& e2);
/// ([X,Y], L_X b - L_Y a + d(a(Y) - b(X)) / 2)
GenSection courant_bracket(const GenSection& e1, const GenSection& e2);
GenSection apply_phi(const GenEndomorphism& phi, const GenSection& e);
/// S_Phi(e1,e2) = [Pe1,Pe2] + P[Pe1,P^2e2] + P[P^2e1,Pe2] - [P^2e1,P^2e2] with Courant brackets.
GenSection s_phi(const GenEndomorphism& phi, const GenSection& e1, const GenSection& e2);

/// "gen:skew" and "gen:F" on the coordinate basis sections.
CheckReport is_skew_and_f(const BlockOperator& phi);
CheckReport is_skew_and_f(const GenEndomorphism& phi);

/// "gen:S_Phi": S_Phi = 0 on all pairs of coordinate basis sections.
CheckReport check_s_phi_vanishes(const GenEndomorphism& phi);

struct GenProjectors {
  BlockOperator prE;     // -(Phi^2 + i Phi)/2
  BlockOperator prEbar;  // -(Phi^2 - i Phi)/2
  BlockOperator prS;     // Phi^2 + Id
};

/// Throws PreconditionError unless Phi^3 + Phi = 0.
GenProjectors gen_projectors(const GenEndomorphism& phi);
bool eigenbundle_E_membership(const GenProjectors& pr, const GenSection& e);

/// (Z + c sharp_pi(xi), xi). For Z in H and xi in ann(H + Q) this lies in E exactly
/// when c = -i/2 (or sharp_pi(xi) = 0); the printed parametrization uses c = -1/2.
GenSection eq19_section(const Multivector& pi, const Multivector& Z, const DiffForm& xi, const GaussRational& c);
GaussRational eq19_coefficient();

/// "eq8:sum", "eq8:idempotent", "eq8:annihilate" for the Phi projectors,
/// "eq19:E": (Z - (i/2) sharp_pi(xi), xi) lies in E for Z = pr_H d/dx^i, xi = dx^j o pr_Hbar, and
/// "rem2.1:S": pr_S(X, 0) = (pr_Q X, 0). Requires sigma = 0 and A an F structure.
CheckReport check_gen_projectors(const GenEndomorphism& phi);

}  // namespace qcrf
