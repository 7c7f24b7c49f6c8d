#pragma once

// Exterior calculus on a coordinate patch: multivector fields, differential
// forms and endomorphisms of TM with polynomial components, together with the
// brackets and concomitants built from them.
//
// Conventions (fixed once, pinned by tests):
//  * A k-vector is stored as w = sum_{I increasing} w^I d/dx^{i1} /\ ... /\ d/dx^{ik} and
//    evaluates by the determinant rule, so (d/dx /\ d/dy)(dx, dy) = 1. Forms likewise.
//  * Interior products contract the FIRST slot: (i(a)w)(b2, ..., bk) = w(a, b2, ..., bk).
//  * sharp_pi(a) = i(a)pi, flat_sigma(X) = i(X)sigma, (A* a) = a o A.
//  * Endomorphisms act by (AX)^i = A^i_j X^j; (L_X A)(Y) = [X, AY] - A[X, Y].
//  * The Schouten-Nijenhuis bracket of a p-vector P and a q-vector Q is
//        [P, Q] = sum_i i(dx^i)P /\ d_i Q - (-1)^(p-1) d_i P /\ i(dx^i)Q,
//    so [X, Y] is the Lie bracket, [X, f] = X(f), [P, f] = i(df)P, [Q, P] = (-1)^(pq)[P, Q]
//    and the Lichnerowicz coboundary is d_pi w = -[pi, w].

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcrf/scalar.hpp"

namespace qcrf {

using IndexSet = std::vector<int>;

enum class Variance { contravariant, covariant };

/// Totally antisymmetric tensor field of degree k. Only strictly increasing index
/// tuples are stored and zero components are dropped. Degrees above the patch
/// dimension are allowed and always zero (they arise as e.g. [pi, pi] on a plane).
template <Variance V>
class AltTensor {
 public:
  using ComponentMap = std::map<IndexSet, Poly>;

  AltTensor() = default;
  AltTensor(PatchPtr patch, int degree);

  static AltTensor scalar(const Poly& f);
  /// Basis element for an increasing index tuple.
  static AltTensor basis(PatchPtr patch, IndexSet indices);
  /// Degree-1 tensor from its component list.
  static AltTensor from_components(PatchPtr patch, const std::vector<Poly>& comps);

  const PatchPtr& patch() const { return patch_; }
  int degree() const { return degree_; }
  const ComponentMap& components() const { return comps_; }

  /// Component on an arbitrary index order; applies the permutation sign (0 on repeats).
  Poly component(const IndexSet& indices) const;
  /// Degree-1 convenience: component i.
  Poly operator[](std::size_t i) const { return component({static_cast<int>(i)}); }
  /// Degree-0 convenience: the function itself.
  Poly as_scalar() const;
  /// Degree-1 convenience: all components in coordinate order.
  std::vector<Poly> as_list() const;

  /// Adds `value` to the component with index order `indices` (sign applied).
  void add(const IndexSet& indices, const Poly& value);

  bool is_zero() const { return comps_.empty(); }
  bool is_real() const;
  /// Highest coefficient degree (-1 for zero).
  int coefficient_degree() const;

  AltTensor operator-() const;
  AltTensor& operator+=(const AltTensor& o);
  AltTensor& operator-=(const AltTensor& o);
  AltTensor& operator*=(const Poly& f);
  AltTensor& operator*=(const GaussRational& c);

  friend AltTensor operator+(AltTensor a, const AltTensor& b) { return a += b; }
  friend AltTensor operator-(AltTensor a, const AltTensor& b) { return a -= b; }
  friend AltTensor operator*(const Poly& f, AltTensor a) { return a *= f; }
  friend AltTensor operator*(AltTensor a, const Poly& f) { return a *= f; }
  friend AltTensor operator*(const GaussRational& c, AltTensor a) { return a *= c; }
  friend bool operator==(const AltTensor& a, const AltTensor& b) {
    return a.degree_ == b.degree_ && same_patch(a.patch_, b.patch_) && a.comps_ == b.comps_;
  }

  AltTensor conj() const;
  AltTensor partial(std::size_t coord_index) const;
  /// Applies `f` to every component (e.g. substitution or evaluation helpers).
  template <class F>
  AltTensor map_components(F&& f) const {
    AltTensor out(patch_, degree_);
    for (const auto& [idx, c] : comps_) out.add(idx, f(c));
    return out;
  }

  /// Canonical text, e.g. `-2*d/dx3` or `x*dx /\ dy`; `0` when zero.
  std::string str() const;

 private:
  PatchPtr patch_;
  int degree_ = 0;
  ComponentMap comps_;
};

using Multivector = AltTensor<Variance::contravariant>;
using DiffForm = AltTensor<Variance::covariant>;

extern template class AltTensor<Variance::contravariant>;
extern template class AltTensor<Variance::covariant>;

/// Endomorphism of TM, stored as the matrix A^i_j (row i, column j).
class Endomorphism {
 public:
  Endomorphism() = default;
  explicit Endomorphism(PatchPtr patch);  // zero
  Endomorphism(PatchPtr patch, std::vector<std::vector<Poly>> rows);

  static Endomorphism identity(PatchPtr patch);

  const PatchPtr& patch() const { return patch_; }
  std::size_t dim() const { return dim_; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

  Multivector apply(const Multivector& X) const;
  /// Matrix transpose, i.e. the coefficient matrix of A* on covector components.
  Endomorphism transpose() const;

  bool is_zero() const;
  bool is_real() const;
  int coefficient_degree() const;

  Endomorphism operator-() const;
  Endomorphism& operator+=(const Endomorphism& o);
  Endomorphism& operator-=(const Endomorphism& o);
  friend Endomorphism operator+(Endomorphism a, const Endomorphism& b) { return a += b; }
  friend Endomorphism operator-(Endomorphism a, const Endomorphism& b) { return a -= b; }
  friend Endomorphism operator*(const Endomorphism& a, const Endomorphism& b);
  friend Endomorphism operator*(const GaussRational& c, Endomorphism a);
  friend bool operator==(const Endomorphism& a, const Endomorphism& b);

  Endomorphism pow(unsigned n) const;
  Endomorphism conj() const;

  std::string str() const;

 private:
  PatchPtr patch_;
  std::size_t dim_ = 0;
  std::vector<Poly> entries_;
};

// --- construction helpers -----------------------------------------------------

/// d/dx^i
Multivector basis_vector(const PatchPtr& patch, std::size_t i);
/// dx^i
DiffForm basis_form(const PatchPtr& patch, std::size_t i);
Multivector vector_field(const PatchPtr& patch, const std::vector<Poly>& comps);
DiffForm one_form(const PatchPtr& patch, const std::vector<Poly>& comps);

// --- algebra -------------------------------------------------------------------

Multivector wedge(const Multivector& u, const Multivector& v);
DiffForm wedge(const DiffForm& u, const DiffForm& v);

/// <a, X> for a 1-form and a vector field.
Poly pair(const DiffForm& a, const Multivector& X);
/// w(a_1, ..., a_k) with the determinant convention.
Poly evaluate(const Multivector& w, std::span<const DiffForm> args);
Poly evaluate(const DiffForm& w, std::span<const Multivector> args);

/// i(a)w, contraction on the first slot. Requires deg a = 1 and deg w >= 1.
Multivector interior(const DiffForm& a, const Multivector& w);
DiffForm interior(const Multivector& X, const DiffForm& w);

/// a o A, i.e. A* a.
DiffForm compose(const DiffForm& a, const Endomorphism& A);

Multivector sharp(const Multivector& pi, const DiffForm& a);
DiffForm flat(const DiffForm& sigma, const Multivector& X);
Endomorphism transpose(const Endomorphism& A);

// --- calculus ------------------------------------------------------------------

Multivector lie_bracket(const Multivector& X, const Multivector& Y);
DiffForm exterior_derivative(const DiffForm& w);
/// df as a 1-form.
DiffForm differential(const Poly& f);
/// X(f)
Poly directional(const Multivector& X, const Poly& f);

DiffForm lie_derivative(const Multivector& X, const DiffForm& w);
Multivector lie_derivative(const Multivector& X, const Multivector& w);
Endomorphism lie_derivative(const Multivector& X, const Endomorphism& A);

Multivector schouten_bracket(const Multivector& P, const Multivector& Q);

// --- concomitants ----------------------------------------------------------------

/// N_A(X,Y) = [AX,AY] - A[X,AY] - A[AX,Y] + A^2[X,Y]
Multivector nijenhuis(const Endomorphism& A, const Multivector& X, const Multivector& Y);
/// S_A(X,Y) = [AX,AY] + A[AX,A^2Y] + A[A^2X,AY] - [A^2X,A^2Y]
Multivector cr_tensor(const Endomorphism& A, const Multivector& X, const Multivector& Y);
/// R_(pi,A)(X,a) = sharp_pi[L_X(A* a) - L_{AX} a] - (L_{sharp_pi a} A)(X)
Multivector schouten_concomitant(const Multivector& pi, const Endomorphism& A, const Multivector& X,
                                 const DiffForm& a);
/// C_(pi,A)(a,b) = b o L_{sharp a}A - a o L_{sharp b}A + d(pi(a,b)) o A - d(pi(a o A, b)),
/// dual to R through <a, R(X,b)> = <C(a,b), X> whenever A sharp_pi = sharp_pi A*.
DiffForm c_concomitant(const Multivector& pi, const Endomorphism& A, const DiffForm& a, const DiffForm& b);
/// {a,b}_pi = L_{sharp a} b - L_{sharp b} a - d(pi(a,b))
DiffForm poisson_bracket_1forms(const Multivector& pi, const DiffForm& a, const DiffForm& b);

}  // namespace qcrf
