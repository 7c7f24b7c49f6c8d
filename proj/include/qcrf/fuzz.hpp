#pragma once

// Seeded generators of test instances: quasi-classical pairs (A, pi) in
// dimension <= 6 with coefficients of degree <= 2, and non-Poisson bivectors.

#include <cstdint>
#include <string>
#include <vector>

#include "qcrf/structures.hpp"

namespace qcrf {

struct FuzzCase {
  std::string name;  // e.g. "fuzz-007-sheared"
  std::string kind;  // holomorphic, sheared, perturbed, q-dependent
  Endomorphism A;
  Multivector pi;
};

/// Every case is quasi-classical by construction; integrability varies.
///   holomorphic  A = J + 0, pi the real part of sum f_ab d/dz_a /\ d/dz_b with f_ab polynomial in z
///   sheared      T (J + 0) T^-1 and T pi T^t for a product T of polynomial shears I + f E_rc
///   perturbed    the holomorphic case with a coefficient that also depends on conj(z)
///   q-dependent  coefficients that also depend on the Q coordinates
std::vector<FuzzCase> fuzz_quasi_classical(std::uint64_t seed, std::size_t count);

/// The pointwise push-forward T pi T^t.
Multivector push_forward(const Endomorphism& T, const Multivector& pi);

/// A random bivector on `patch` with [pi, pi] != 0 and coefficients of degree <= max_degree.
Multivector fuzz_non_poisson(std::uint64_t seed, const PatchPtr& patch, int max_degree = 1);

}  // namespace qcrf
