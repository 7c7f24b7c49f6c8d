#pragma once

// Exact coefficient arithmetic: Gaussian rationals Q(i) and sparse multivariate
// polynomials over Q(i) in the coordinates of a patch.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcrf/error.hpp"

namespace qcrf {

/// Complex number with rational real and imaginary parts, always canonical
/// (lowest terms, positive denominators), so equality is structural.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussRational(mpq_class re, mpq_class im);
  explicit GaussRational(mpq_class re) : GaussRational(std::move(re), mpq_class(0)) {}

  static GaussRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }
  static GaussRational ratio(long num, long den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  GaussRational inverse() const;

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical text: `3/2`, `-i`, `2/3*i`, `(1 + 2*i)`.
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& q);

/// A single coordinate chart: an ordered list of distinct coordinate names.
class Patch {
 public:
  explicit Patch(std::vector<std::string> coord_names);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Patch& a, const Patch& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using PatchPtr = std::shared_ptr<const Patch>;

PatchPtr make_patch(std::vector<std::string> coord_names);

/// Throws InstanceError unless both patches have identical coordinate lists.
void require_same_patch(const PatchPtr& a, const PatchPtr& b);
bool same_patch(const PatchPtr& a, const PatchPtr& b);

using Exponent = std::vector<unsigned>;

/// Polynomial in the patch coordinates with Gaussian-rational coefficients.
/// Zero coefficients are never stored, so `p.is_zero()` is an exact test.
class Poly {
 public:
  using TermMap = std::map<Exponent, GaussRational>;

  Poly() = default;  // the null polynomial with no patch; only useful as a placeholder
  explicit Poly(PatchPtr patch) : patch_(std::move(patch)) {}
  Poly(PatchPtr patch, const GaussRational& constant);

  static Poly coordinate(PatchPtr patch, std::size_t index);
  static Poly monomial(PatchPtr patch, Exponent exponent, GaussRational coeff = 1);

  const PatchPtr& patch() const { return patch_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_real() const;
  /// -1 for the zero polynomial.
  int degree() const;
  GaussRational coeff(const Exponent& e) const;
  /// Value of the constant term.
  GaussRational constant_term() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const GaussRational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussRational& c) { return a *= c; }
  friend Poly operator*(const GaussRational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned n) const;
  Poly partial(std::size_t coord_index) const;
  Poly conj() const;
  GaussRational evaluate(std::span<const GaussRational> point) const;
  /// Composition: replaces coordinate k by `images[k]` (all on the target patch).
  Poly substitute(std::span<const Poly> images) const;

  /// Canonical text, e.g. `x^2*y - 3/2`; terms in descending graded-lex order.
  std::string str() const;

 private:
  void add_term(const Exponent& e, const GaussRational& c);

  PatchPtr patch_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Parses the expression grammar: integers, `a/b`, `i`, coordinate names,
/// `+ - * ^ ( )`; `^` takes nonnegative integer exponents, `/` needs a nonzero constant divisor.
Poly parse_poly(std::string_view text, const PatchPtr& patch);

}  // namespace qcrf
