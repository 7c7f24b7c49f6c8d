#pragma once

// The Lichnerowicz-Poisson complex on polynomial multivectors: d_pi, the (Q, P)
// bigrading and its sigma', sigma'' pieces, the (Q, H, Hbar) triple grading,
// truncated cohomology and the first terms of the spectral sequence of the
// filtration by P-degree, and the quotient algebroid on P*.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qcrf/linalg.hpp"
#include "qcrf/report.hpp"
#include "qcrf/tensor.hpp"

namespace qcrf {

/// d_pi w = -[pi, w].
Multivector d_pi(const Multivector& pi, const Multivector& w);
/// The same operator from the Lie algebroid formula on the coordinate coframe:
/// sum_h (-1)^h (sharp l_h)(w(..^h..)) + sum_{h<s} (-1)^{h+s} w({l_h, l_s}, ..^h..^s..).
Multivector d_pi_cochain(const Multivector& pi, const Multivector& w);

/// Components of w under a splitting Id = parts[0] + parts[1] + ...: the key counts how
/// many legs fall in each part. Sums back to w when the parts sum to the identity.
std::map<std::vector<int>, Multivector> graded_components(const Multivector& w,
                                                          const std::vector<Endomorphism>& parts);

/// Bigrading (i, j): i = Q-degree, j = P-degree.
std::map<std::pair<int, int>, Multivector> bigrade(const Multivector& w, const Endomorphism& prQ,
                                                   const Endomorphism& prP);

struct SigmaSplit {
  Multivector sigma1;    // sigma', bidegree (-1, +2)
  Multivector sigma2;    // sigma'', bidegree (0, +1)
  Multivector residual;  // any other bidegree; zero for a (non)holonomic Poisson submanifold
};
SigmaSplit sigma_split(const Multivector& pi, const Multivector& w, const Endomorphism& prQ, const Endomorphism& prP);

struct TripleSplit {
  Multivector sigma_h;     // (a, b+1, c)
  Multivector sigma_hbar;  // (a, b, c+1)
  Multivector residual;    // the rest of sigma''
};
/// Splits sigma'' w along P = H + Hbar, for the projectors of an F structure.
TripleSplit sigma2_split(const Multivector& pi, const Multivector& w, const Endomorphism& prQ,
                         const Endomorphism& prH, const Endomorphism& prHbar);

/// Graded pieces and the identities among them, on the multivectors `samples`:
/// "sec4:bidegrees" (zero residual), "eq40:sigma'^2", "eq40:sigma''^2", "eq40:anticommute",
/// "sec4:filtration" (d_pi does not lower the P-degree), "eq41:sigma'" and "eq41:sigma''" (the
/// explicit formulas on the projected coframe). In the last sum of sigma'' the bracket {b_h, b_k}
/// takes the first slot; when the order with the bracket after the alphas disagrees, the number
/// of such tuples goes into the note of "eq41:sigma''". The eq41 rows are skipped unless `formulas`.
CheckReport check_bigrading(const Multivector& pi, const Endomorphism& prQ, const Endomorphism& prP,
                            const std::vector<Multivector>& samples, bool formulas = true);
/// "prop4.2:split", "prop4.2:H^2", "prop4.2:Hbar^2", "prop4.2:anticommute" for the F structure A.
CheckReport check_triple_grading(const Multivector& pi, const Endomorphism& A, const std::vector<Multivector>& samples);

/// Coordinate multivectors of degree k with monomial coefficients of degree <= D, for k = 0..dim.
std::vector<Multivector> monomial_samples(const PatchPtr& patch, int D, int kmax);

/// Degree-k multivectors with polynomial coefficients of degree <= D. Basis order: index sets
/// lexicographically, then monomials by total degree and then lexicographically by exponent.
class TruncatedSpace {
 public:
  TruncatedSpace(PatchPtr patch, int k, int D);

  std::size_t dim() const { return basis_.size(); }
  int degree() const { return k_; }
  int bound() const { return D_; }
  Multivector element(std::size_t index) const;
  Multivector element(const SparseVector& coords) const;
  /// Throws InstanceError when a coefficient exceeds the degree bound.
  SparseVector coordinates(const Multivector& w) const;

 private:
  PatchPtr patch_;
  int k_, D_;
  std::vector<std::pair<IndexSet, Exponent>> basis_;
  std::map<std::pair<IndexSet, Exponent>, std::size_t> index_;
};

/// C(dim, k) * C(dim + D, D).
std::size_t truncated_dimension(std::size_t dim, int k, int D);

struct CohomologyTable {
  int D = 0;
  std::vector<std::size_t> cochains;  // dim C^k, k = 0..kmax
  std::vector<std::size_t> ranks;     // rank d: C^k -> C^{k+1}
  std::vector<std::size_t> betti;     // dim H^k of the truncated complex
};

/// Truncated Poisson cohomology. Throws PreconditionError unless [pi, pi] = 0 and the
/// coefficients of pi have degree <= 1 (otherwise the truncation is not a subcomplex).
CohomologyTable poisson_cohomology(const Multivector& pi, int D, int kmax);

struct SpectralTerms {
  int D = 0;
  std::size_t q = 0, p = 0;  // rank Q, rank P
  /// Tables indexed [i][j] with i the P-degree and j the Q-degree: E_r^{ij}.
  std::vector<std::vector<std::size_t>> e0, e1, e2, e3;
  /// Rank of the map E_2^{ij} -> E_2^{i+2,j-1} induced by sigma'.
  std::vector<std::vector<std::size_t>> d2;
  CheckReport report;  // "eq40:action", "sec4:filtration", "rem4.2:P*-complex", "rem4.2:annP"
};

/// E_0 = E_1 = chi^{ji}, E_2 = H(chi^{j.}, sigma''), E_3 from the sigma' action on E_2.
/// Needs a Poisson pi with coefficients of degree <= 1, constant projectors with
/// prQ + prP = Id and im sharp_pi in P. `reverse` reverses the basis order used for the
/// E_2 representatives. Throws PreconditionError otherwise.
SpectralTerms spectral_terms(const Multivector& pi, const Endomorphism& prQ, const Endomorphism& prP, int D,
                             bool reverse = false);

/// Representative {a o prP, b o prP}_pi o prP of the bracket of classes in T*M / ann P.
DiffForm quotient_bracket(const Multivector& pi, const Endomorphism& prP, const DiffForm& a, const DiffForm& b);
/// "prop4.1:(a)" sharp_pi{a, b} = 0 and "prop4.1:(b)" {a, b} in ann P, for a in the coordinate
/// coframe and b = dx^j o prQ in ann P. Throws PreconditionError unless prP is idempotent.
CheckReport check_quotient_algebroid(const Multivector& pi, const Endomorphism& prP);

}  // namespace qcrf
