#include "qcrf/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace qcrf {

// ---------------------------------------------------------------------------
// GaussRational

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational GaussRational::ratio(long num, long den) {
  if (den == 0) throw Error("GaussRational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return GaussRational(q);
}

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw Error("GaussRational: division by zero");
  mpq_class norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this *= o.inverse(); }

std::string GaussRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + re_.get_str();
  if (sgn(im_) < 0) {
    mpq_class a = abs(im_);
    out += " - " + (a == 1 ? std::string("i") : a.get_str() + "*i");
  } else {
    out += " + " + (im_ == 1 ? std::string("i") : im_.get_str() + "*i");
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussRational& q) { return os << q.str(); }

// ---------------------------------------------------------------------------
// Patch

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Patch::Patch(std::vector<std::string> coord_names) : names_(std::move(coord_names)) {
  if (names_.empty()) throw InstanceError("patch must have at least one coordinate");
  for (std::size_t a = 0; a < names_.size(); ++a) {
    if (!is_identifier(names_[a])) throw InstanceError("invalid coordinate name '" + names_[a] + "'");
    if (names_[a] == "i") throw InstanceError("'i' is reserved for the imaginary unit");
    for (std::size_t b = 0; b < a; ++b) {
      if (names_[a] == names_[b]) throw InstanceError("duplicate coordinate name '" + names_[a] + "'");
    }
  }
}

std::optional<std::size_t> Patch::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return k;
  }
  return std::nullopt;
}

PatchPtr make_patch(std::vector<std::string> coord_names) {
  return std::make_shared<const Patch>(std::move(coord_names));
}

bool same_patch(const PatchPtr& a, const PatchPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_patch(const PatchPtr& a, const PatchPtr& b) {
  if (!same_patch(a, b)) throw InstanceError("operands live on different patches");
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(PatchPtr patch, const GaussRational& constant) : patch_(std::move(patch)) {
  if (!constant.is_zero()) terms_.emplace(Exponent(patch_->dim(), 0), constant);
}

Poly Poly::coordinate(PatchPtr patch, std::size_t index) {
  if (index >= patch->dim()) throw InstanceError("coordinate index out of range");
  Exponent e(patch->dim(), 0);
  e[index] = 1;
  return monomial(std::move(patch), std::move(e));
}

Poly Poly::monomial(PatchPtr patch, Exponent exponent, GaussRational coeff) {
  if (exponent.size() != patch->dim()) throw InstanceError("exponent length must equal patch dimension");
  Poly p(std::move(patch));
  if (!coeff.is_zero()) p.terms_.emplace(std::move(exponent), std::move(coeff));
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponent& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
}

bool Poly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  }
  return d;
}

GaussRational Poly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussRational() : it->second;
}

GaussRational Poly::constant_term() const {
  if (!patch_) return {};
  return coeff(Exponent(patch_->dim(), 0));
}

void Poly::add_term(const Exponent& e, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(patch_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!patch_) {
    *this = o;
    return *this;
  }
  if (o.patch_) require_same_patch(patch_, o.patch_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!patch_) {
    *this = -o;
    return *this;
  }
  if (o.patch_) require_same_patch(patch_, o.patch_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_patch(a.patch_, b.patch_);
  Poly out(a.patch_);
  if (a.is_zero() || b.is_zero()) return out;
  Exponent e(a.patch_->dim());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.patch_ && b.patch_) require_same_patch(a.patch_, b.patch_);
  return a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned n) const {
  Poly result(patch_, GaussRational(1));
  Poly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

Poly Poly::partial(std::size_t coord_index) const {
  if (!patch_ || coord_index >= patch_->dim()) throw InstanceError("partial: coordinate index out of range");
  Poly out(patch_);
  for (const auto& [e, c] : terms_) {
    if (e[coord_index] == 0) continue;
    Exponent f = e;
    --f[coord_index];
    out.add_term(f, c * GaussRational(static_cast<long>(e[coord_index])));
  }
  return out;
}

Poly Poly::conj() const {
  Poly out(patch_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c.conj());
  return out;
}

GaussRational Poly::evaluate(std::span<const GaussRational> point) const {
  if (point.size() != patch_->dim()) throw InstanceError("evaluate: point has wrong dimension");
  GaussRational sum;
  for (const auto& [e, c] : terms_) {
    GaussRational term = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (unsigned r = 0; r < e[k]; ++r) term *= point[k];
    }
    sum += term;
  }
  return sum;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != patch_->dim()) throw InstanceError("substitute: wrong number of images");
  PatchPtr target = images.empty() ? patch_ : images.front().patch();
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t k, unsigned n) -> const Poly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.emplace_back(target, GaussRational(1));
    while (cache.size() <= n) cache.push_back(cache.back() * images[k]);
    return cache[n];
  };
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Poly term(target, c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] > 0) term *= power(k, e[k]);
    }
    out += term;
  }
  return out;
}

namespace {

std::string monomial_str(const Exponent& e, const Patch& patch) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += patch.name(k);
    if (e[k] > 1) out += "^" + std::to_string(e[k]);
  }
  return out;
}

bool graded_lex_greater(const Exponent& a, const Exponent& b) {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return graded_lex_greater(a->first, b->first); });

  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const GaussRational& c = t->second;
    const std::string mono = monomial_str(t->first, *patch_);
    bool negative = false;
    std::string mag;
    if (c.is_real() || sgn(c.re()) == 0) {
      // Real or purely imaginary: pull the sign out in front.
      const mpq_class& part = c.is_real() ? c.re() : c.im();
      negative = sgn(part) < 0;
      mpq_class a = abs(part);
      if (c.is_real()) {
        mag = (a == 1 && !mono.empty()) ? "" : a.get_str();
      } else {
        mag = a == 1 ? "i" : a.get_str() + "*i";
      }
    } else {
      mag = c.str();
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += mag;
    if (!mono.empty()) {
      if (!mag.empty()) out += "*";
      out += mono;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const PatchPtr& patch) : text_(text), patch_(patch) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError("divisor must be a nonzero constant", at);
        acc *= d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("exponent must be a nonnegative integer", at);
      unsigned long n = std::stoul(digits);
      return base.pow(static_cast<unsigned>(n));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    std::size_t at = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class n(read_digits());
      return Poly(patch_, GaussRational(mpq_class(n)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_++];
      }
      if (name == "i") return Poly(patch_, GaussRational::imaginary_unit());
      auto idx = patch_->index_of(name);
      if (!idx) throw ParseError("unknown coordinate '" + name + "'", at);
      return Poly::coordinate(patch_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  std::string read_digits() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    return digits;
  }

  std::string_view text_;
  const PatchPtr& patch_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const PatchPtr& patch) { return PolyParser(text, patch).parse(); }

}  // namespace qcrf
