#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed per test so
// failures replay exactly.

#include <cstdint>
#include <random>
#include <vector>

#include "qcrf/tensor.hpp"

namespace qcrf::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int range(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (rng_() & 1u) != 0; }

  GaussRational coeff(bool complex = true) {
    mpq_class re(range(-4, 4), range(1, 3));
    mpq_class im(complex && coin() ? range(-3, 3) : 0, range(1, 2));
    return {re, im};
  }

  Poly poly(const PatchPtr& patch, int max_degree = 2, int max_terms = 3, bool complex = true) {
    Poly p(patch);
    int n = range(0, max_terms);
    for (int t = 0; t < n; ++t) {
      Exponent e(patch->dim(), 0);
      int deg = range(0, max_degree);
      for (int k = 0; k < deg; ++k) ++e[static_cast<std::size_t>(range(0, static_cast<int>(patch->dim()) - 1))];
      p += Poly::monomial(patch, e, coeff(complex));
    }
    return p;
  }

  IndexSet indices(const PatchPtr& patch, int k) {
    std::vector<int> all(patch->dim());
    for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<int>(a);
    for (std::size_t a = all.size(); a > 1; --a) std::swap(all[a - 1], all[rng_() % a]);
    return {all.begin(), all.begin() + k};
  }

  template <class T>
  T tensor(const PatchPtr& patch, int k, int max_degree = 2, int max_terms = 2, bool complex = true) {
    T out(patch, k);
    if (k > static_cast<int>(patch->dim())) return out;
    int n = range(1, 3);
    for (int t = 0; t < n; ++t) out.add(indices(patch, k), poly(patch, max_degree, max_terms, complex));
    return out;
  }

  Multivector multivector(const PatchPtr& patch, int k, int max_degree = 2) {
    return tensor<Multivector>(patch, k, max_degree);
  }
  DiffForm form(const PatchPtr& patch, int k, int max_degree = 2) { return tensor<DiffForm>(patch, k, max_degree); }
  Multivector vector(const PatchPtr& patch, int max_degree = 2) { return multivector(patch, 1, max_degree); }

  Endomorphism endomorphism(const PatchPtr& patch, int max_degree = 1) {
    Endomorphism A(patch);
    for (std::size_t i = 0; i < patch->dim(); ++i) {
      for (std::size_t j = 0; j < patch->dim(); ++j) {
        if (range(0, 2) == 0) A(i, j) = poly(patch, max_degree, 2);
      }
    }
    return A;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qcrf::testing
