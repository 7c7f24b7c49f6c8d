#include "qcrf/fuzz.hpp"

#include <cstdio>
#include <random>

namespace qcrf {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return range(0, 1) == 1; }
  GaussRational rational() {
    const int num = range(1, 3);
    return GaussRational(mpq_class(coin() ? num : -num, range(1, 2)));
  }

  // Random real polynomial of degree <= max_degree in the coordinates `vars`.
  Poly real_poly(const PatchPtr& p, const std::vector<std::size_t>& vars, int max_degree, int max_terms) {
    Poly out(p);
    const int terms = range(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Poly m(p, rational());
      const int deg = vars.empty() ? 0 : range(0, max_degree);
      for (int k = 0; k < deg; ++k) m *= Poly::coordinate(p, vars[static_cast<std::size_t>(range(0, static_cast<int>(vars.size()) - 1))]);
      out += m;
    }
    return out;
  }

  // Random polynomial of degree <= max_degree in z_a = x_a + i y_a, a < n.
  Poly holomorphic(const PatchPtr& p, std::size_t n, int max_degree) {
    Poly out(p);
    const int terms = range(1, 2);
    for (int t = 0; t < terms; ++t) {
      Poly m(p, rational());
      const int deg = range(0, max_degree);
      for (int k = 0; k < deg; ++k) {
        const auto a = static_cast<std::size_t>(range(0, static_cast<int>(n) - 1));
        m *= Poly::coordinate(p, 2 * a) + GaussRational(0, 1) * Poly::coordinate(p, 2 * a + 1);
      }
      out += m;
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

PatchPtr patch_for(std::size_t n, std::size_t q) {
  std::vector<std::string> names;
  for (std::size_t a = 1; a <= n; ++a) {
    names.push_back("x" + std::to_string(a));
    names.push_back("y" + std::to_string(a));
  }
  for (std::size_t k = 1; k <= q; ++k) names.push_back("t" + std::to_string(k));
  return make_patch(names);
}

Endomorphism standard(const PatchPtr& p, std::size_t n) {
  Endomorphism J(p);
  for (std::size_t a = 0; a < n; ++a) {
    J(2 * a + 1, 2 * a) = Poly(p, 1);
    J(2 * a, 2 * a + 1) = Poly(p, -1);
  }
  return J;
}

// 4 Re(f d/dz_a /\ d/dz_b) for f = u + i v.
Multivector real_part(const PatchPtr& p, std::size_t a, std::size_t b, const Poly& f) {
  auto v = [&](std::size_t i) { return basis_vector(p, i); };
  Multivector re = wedge(v(2 * a), v(2 * b)) - wedge(v(2 * a + 1), v(2 * b + 1));
  Multivector im = -(wedge(v(2 * a), v(2 * b + 1)) + wedge(v(2 * a + 1), v(2 * b)));
  const GaussRational half(mpq_class(1, 2));
  Poly u = half * (f + f.conj());
  Poly w = GaussRational(mpq_class(0), mpq_class(-1, 2)) * (f - f.conj());
  return u * re - w * im;
}

std::vector<std::size_t> all_vars(const PatchPtr& p) {
  std::vector<std::size_t> v(p->dim());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = k;
  return v;
}

}  // namespace

Multivector push_forward(const Endomorphism& T, const Multivector& pi) {
  Multivector out(pi.patch(), 2);
  for (const auto& [idx, c] : pi.components()) {
    out += c * wedge(T.apply(basis_vector(pi.patch(), static_cast<std::size_t>(idx[0]))),
                     T.apply(basis_vector(pi.patch(), static_cast<std::size_t>(idx[1]))));
  }
  return out;
}

std::vector<FuzzCase> fuzz_quasi_classical(std::uint64_t seed, std::size_t count) {
  static const char* kinds[] = {"holomorphic", "sheared", "perturbed", "q-dependent"};
  Draw d(seed);
  std::vector<FuzzCase> out;
  for (std::size_t k = 0; k < count; ++k) {
    FuzzCase c;
    c.kind = kinds[k % 4];
    const std::size_t n = static_cast<std::size_t>(d.range(0, 3) == 0 ? 1 : d.range(2, 3));
    std::size_t q = static_cast<std::size_t>(d.range(0, static_cast<int>(6 - 2 * n)));
    if (c.kind == std::string("q-dependent") && q == 0 && n < 3) q = 1;
    const PatchPtr p = patch_for(n, q);
    Endomorphism A = standard(p, n);
    Multivector pi(p, 2);
    std::vector<std::size_t> tq;
    for (std::size_t t = 2 * n; t < p->dim(); ++t) tq.push_back(t);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!d.coin() && !(a == 0 && b == 1)) continue;
        Poly f(p);
        if (c.kind == std::string("holomorphic")) {
          f = d.holomorphic(p, n, 2);
        } else if (c.kind == std::string("sheared")) {
          f = Poly(p, d.rational());
        } else if (c.kind == std::string("perturbed")) {
          f = d.holomorphic(p, n, 1) * d.real_poly(p, all_vars(p), 1, 2);
        } else {
          f = d.holomorphic(p, n, 1) * (tq.empty() ? Poly(p, 1) : d.real_poly(p, tq, 1, 2));
        }
        pi += real_part(p, a, b, f);
      }
    }
    if (c.kind == std::string("sheared")) {
      const int shears = d.range(1, 2);
      for (int s = 0; s < shears; ++s) {
        const auto r = static_cast<std::size_t>(d.range(0, static_cast<int>(p->dim()) - 1));
        auto col = static_cast<std::size_t>(d.range(0, static_cast<int>(p->dim()) - 2));
        if (col >= r) ++col;
        Poly f = d.real_poly(p, all_vars(p), 1, 1);
        if (s == 1) f = Poly(p, d.rational());
        Endomorphism T = Endomorphism::identity(p), Tinv = Endomorphism::identity(p);
        T(r, col) += f;
        Tinv(r, col) -= f;
        A = T * A * Tinv;
        pi = push_forward(T, pi);
      }
    }
    char name[64];
    std::snprintf(name, sizeof name, "fuzz-%03zu-%s", k, c.kind.c_str());
    c.name = name;
    c.A = std::move(A);
    c.pi = std::move(pi);
    out.push_back(std::move(c));
  }
  return out;
}

Multivector fuzz_non_poisson(std::uint64_t seed, const PatchPtr& patch, int max_degree) {
  Draw d(seed);
  for (;;) {
    Multivector pi(patch, 2);
    for (std::size_t i = 0; i < patch->dim(); ++i) {
      for (std::size_t j = i + 1; j < patch->dim(); ++j) {
        if (d.coin()) pi += d.real_poly(patch, all_vars(patch), max_degree, 2) * wedge(basis_vector(patch, i), basis_vector(patch, j));
      }
    }
    if (!schouten_bracket(pi, pi).is_zero()) return pi;
  }
}

}  // namespace qcrf
