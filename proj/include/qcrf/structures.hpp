#pragma once

// Checkers for F, CR, classical CRF and quasi-classical generalized CRF
// structures, (non)holonomic Poisson submanifolds and (generalized) almost
// contact structures. Every subbundle condition is decided on the coordinate
// (co)basis through the polynomial projectors of an F structure.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcrf/biggeom.hpp"
#include "qcrf/report.hpp"
#include "qcrf/tensor.hpp"

namespace qcrf {

struct ContactPair {
  Multivector Z;
  DiffForm xi;
};

/// Claimed frames: h of H, q of Q, kappa of H* (kappa o A = i kappa). Conjugates are implied.
struct AdaptedFrame {
  std::vector<Multivector> h;
  std::vector<Multivector> q;
  std::vector<DiffForm> kappa;
};

struct StructureInstance {
  std::string name;
  PatchPtr patch;
  Endomorphism A;
  Multivector pi;
  std::vector<ContactPair> contact;
  /// Projector onto a distribution P, for instances given by (pi, P) data only.
  std::optional<Endomorphism> projector_P;
  std::optional<AdaptedFrame> frame;
  std::vector<GaussRational> base_point;  // empty means the origin
  std::map<std::string, Multivector> vectors;
  std::map<std::string, DiffForm> forms;

  StructureInstance() = default;
  /// A = 0 and pi = 0 on the patch.
  StructureInstance(std::string name, PatchPtr patch);

  /// Throws InstanceError on mixed patches, wrong degrees or an empty patch.
  void validate() const;
  GenEndomorphism phi() const { return GenEndomorphism::quasi_classical(A, pi); }
  std::vector<GaussRational> point() const;
};

inline FProjectors projectors(const Endomorphism& A) { return f_projectors(A); }

/// "f:A^3+A"
CheckReport check_f_structure(const Endomorphism& A);
/// "eq9:S_A" on coordinate pairs. Throws PreconditionError unless A is F.
CheckReport check_cr_type(const Endomorphism& A);
/// "rem2.3:[H,H]": (Id - pr_H)[pr_H d_i, pr_H d_j] = 0 and
/// "rem2.3:eq13": A^2[pr_P d_i, pr_Q d_j] - A[A pr_P d_i, pr_Q d_j] = 0.
CheckReport check_classical_crf(const Endomorphism& A);

/// "prop2.1:(i)" A^3 + A = 0, "prop2.1:(ii)" A sharp = sharp A*, "prop2.1:(iii)" sharp(a o (A^2 + Id)) = 0.
CheckReport check_quasi_classical(const Endomorphism& A, const Multivector& pi);
/// "prop2.2:Q-leg" pi(dx^a o pr_Q, dx^b) = 0 and "prop2.2:(1,1)-part" pi(dx^a o pr_H, dx^b o pr_Hbar) = 0.
/// Needs only A to be F, so it also reports on pairs that are not quasi-classical.
CheckReport check_local_form(const Endomorphism& A, const Multivector& pi);

/// "thm2.1:(1)" classical CRF, "thm2.1:(2)" [pi,pi] = 0, "thm2.1:(3)" R(-A^2 d_i, -dx^j o A^2) = 0.
/// Throws PreconditionError unless (A, pi) is quasi-classical.
CheckReport check_integrability(const Endomorphism& A, const Multivector& pi);
/// "thm2.1:(3Q)": A^2 R(pr_Q d_k, -dx^j o A^2) = 0, i.e. a(R(Y, b)) = 0 for Y in Q and
/// a, b in ann Q. The Q-component of the covector part of S_Phi((0, a), (0, b)); it is not
/// implied by (1)-(3) when pi depends on the Q directions. See docs/conditions.md.
CheckReport check_q_leg(const Endomorphism& A, const Multivector& pi);
/// Same (1), (2), then "prop2.4:(3a)" pr_Q[sharp(-dx^j o A^2), -A^2 d_i] = 0 and
/// "prop2.4:(3b)" (L_{pr_Hbar d_k} pi)(dx^a o pr_H, dx^b o pr_H) = 0.
CheckReport check_integrability_alt(const Endomorphism& A, const Multivector& pi);
/// The three restatements of (3a): "rem2.2:(a)" (L_{sharp b} A^2)(X) = 0,
/// "rem2.2:(b)" d lambda(sharp b, X) = 0 and "rem2.2:(c)" (L_{sharp b} lambda)(X) = 0,
/// for X = pr_P d_i, b = dx^j o pr_P, lambda = dx^a o pr_Q.
CheckReport check_remark22(const Endomorphism& A, const Multivector& pi);
/// "gen:S_Phi" for the quasi-classical Phi of (A, pi).
CheckReport check_s_phi(const Endomorphism& A, const Multivector& pi);

/// A1 + A2 and pi1 + pi2 on the concatenated patch. Throws InstanceError on a name collision.
StructureInstance product_instance(const StructureInstance& a, const StructureInstance& b);

/// "involutive": (Id - D)[D d_i, D d_j] = 0. Throws PreconditionError unless D^2 = D.
CheckReport check_involutive(const Endomorphism& D);
/// "prop3.1:im-sharp": pr_Q sharp(dx^a) = 0 and
/// "prop3.1:L_Y-pi": (L_{pr_Q d_k} pi)(dx^a o pr_P, dx^b o pr_P) = 0, with pr_P = Id - pr_Q.
CheckReport check_projectable(const Multivector& pi, const Endomorphism& prQ);
/// "def4.1:[pi,pi]", "def4.1:1)" (Id - pr_P) sharp(dx^a) = 0 and
/// "def4.1:2)" (Id - pr_P)[sharp(dx^a), pr_P d_i] = 0.
CheckReport check_nonholonomic_poisson_submanifold(const Multivector& pi, const Endomorphism& prP);

/// The almost contact conditions with sigma = 0: "eq33:compat", "eq33:AZ", "eq33:xiA",
/// "eq33:i(xi)pi", "eq33:xi(Z)", "eq33:A^2". Throws PreconditionError without contact data.
CheckReport check_almost_contact(const StructureInstance& inst);
/// Normality with sigma = 0: "eq34:[pi,pi]", "eq34:R", "eq34:L_Z pi", "eq34:L_sharp xi", "eq34:N_A"
/// (N_A(X,Y) + sum dxi^a(X,Y) Z_a = 0).
CheckReport check_normality(const StructureInstance& inst);
/// The remaining lines: "eq34:[Z,Z]", "eq34:L_Z xi", "eq34:L_Z A", "eq34:AX-AY".
CheckReport check_normality_extra(const StructureInstance& inst);
/// "def3.1:(1)" compatibility and i(xi)pi = 0, "def3.1:(2)" classical CRF, "def3.1:(3)" [pi,pi] = 0,
/// "def3.1:(4)" through the two conditions of check_integrability_alt; with `normal`,
/// also "def3.2:L_Z pi".
CheckReport check_contact_poisson(const StructureInstance& inst, bool normal = false);
/// "eq35:N_A+dxi Z": N_A(X,Y) + dxi(X,Y) Z = 0 (pi is ignored).
CheckReport check_normal_classical(const StructureInstance& inst);
/// The full normality list including the extra lines, plus "prop3.3:R(A2X,xi)",
/// "prop3.3:R(Z,A*2a)", "prop3.3:R(Z,xi)". Throws PreconditionError unless the almost
/// contact structure is normal (classically) and pi is normal contact-Poisson.
CheckReport check_prop33(const StructureInstance& inst);

struct ContactProduct {
  StructureInstance instance;  // A = J, pi = pi1 + pi2, no contact data
  CheckReport report;
};
/// J(X1, X2) = (A1 X1 - xi2(X2) Z1, A2 X2 + xi1(X1) Z2) with "prop3.4:J^2", "prop3.4:N_J",
/// "prop3.4:[pi,pi]" and "prop3.4:R(1)" .. "prop3.4:R(4)" for the four argument types.
/// Both factors need exactly one contact pair; normality of the factors is not enforced,
/// so non-normal inputs show up as failures.
ContactProduct contact_product(const StructureInstance& a, const StructureInstance& b);

/// "frame:valid": A h = i h, A q = 0, kappa o A = i kappa, counts consistent, and the
/// matrix (h, conj h, q) has full rank at the base point.
CheckReport validate_frame(const StructureInstance& inst);
/// "eq12:[H,H]" (Id - pr_H)[h_i, h_j] = 0 and "eq12:[H,Q]" pr_Hbar[h_i, q_j] = 0 on the frame.
CheckReport check_frame_conditions(const StructureInstance& inst);

}  // namespace qcrf
