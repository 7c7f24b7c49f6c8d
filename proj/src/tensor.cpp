#include "qcrf/tensor.hpp"

#include <algorithm>
#include <utility>

namespace qcrf {

namespace {

// Sorts `idx` in place; returns the sign of the sorting permutation, or 0 on a repeat.
int sort_with_sign(IndexSet& idx) {
  int sign = 1;
  for (std::size_t a = 1; a < idx.size(); ++a) {
    for (std::size_t b = a; b > 0 && idx[b - 1] >= idx[b]; --b) {
      if (idx[b - 1] == idx[b]) return 0;
      std::swap(idx[b - 1], idx[b]);
      sign = -sign;
    }
  }
  return sign;
}

Poly zero_poly(const PatchPtr& patch) { return Poly(patch); }

template <Variance V>
const char* basis_prefix() {
  return V == Variance::contravariant ? "d/d" : "d";
}

// Joins coefficient/basis pairs as `c1*b1 + c2*b2`, pulling single-term signs out.
std::string linear_combination(const std::vector<std::pair<Poly, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, basis] : terms) {
    std::string coef = c.str();
    bool negative = false;
    if (c.terms().size() == 1) {
      if (coef.front() == '-') {
        negative = true;
        coef.erase(0, 1);
      }
    } else {
      coef = "(" + coef + ")";
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (basis.empty()) {
      out += coef;
    } else if (coef == "1") {
      out += basis;
    } else {
      out += coef + "*" + basis;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// AltTensor

template <Variance V>
AltTensor<V>::AltTensor(PatchPtr patch, int degree) : patch_(std::move(patch)), degree_(degree) {
  if (!patch_) throw InstanceError("tensor requires a patch");
  if (degree_ < 0) throw InstanceError("tensor degree must be nonnegative");
}

template <Variance V>
AltTensor<V> AltTensor<V>::scalar(const Poly& f) {
  AltTensor out(f.patch(), 0);
  if (!f.is_zero()) out.comps_.emplace(IndexSet{}, f);
  return out;
}

template <Variance V>
AltTensor<V> AltTensor<V>::basis(PatchPtr patch, IndexSet indices) {
  AltTensor out(patch, static_cast<int>(indices.size()));
  out.add(indices, Poly(patch, GaussRational(1)));
  return out;
}

template <Variance V>
AltTensor<V> AltTensor<V>::from_components(PatchPtr patch, const std::vector<Poly>& comps) {
  if (comps.size() != patch->dim()) throw InstanceError("component list length must equal patch dimension");
  AltTensor out(patch, 1);
  for (std::size_t i = 0; i < comps.size(); ++i) out.add({static_cast<int>(i)}, comps[i]);
  return out;
}

template <Variance V>
Poly AltTensor<V>::component(const IndexSet& indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw InstanceError("component: wrong number of indices");
  IndexSet idx = indices;
  int sign = sort_with_sign(idx);
  if (sign == 0) return zero_poly(patch_);
  auto it = comps_.find(idx);
  if (it == comps_.end()) return zero_poly(patch_);
  return sign > 0 ? it->second : -it->second;
}

template <Variance V>
Poly AltTensor<V>::as_scalar() const {
  if (degree_ != 0) throw InstanceError("as_scalar: tensor has positive degree");
  return component({});
}

template <Variance V>
std::vector<Poly> AltTensor<V>::as_list() const {
  if (degree_ != 1) throw InstanceError("as_list: tensor is not of degree 1");
  std::vector<Poly> out(patch_->dim(), zero_poly(patch_));
  for (const auto& [idx, c] : comps_) out[static_cast<std::size_t>(idx[0])] = c;
  return out;
}

template <Variance V>
void AltTensor<V>::add(const IndexSet& indices, const Poly& value) {
  if (static_cast<int>(indices.size()) != degree_) throw InstanceError("add: wrong number of indices");
  if (value.is_zero()) return;
  if (value.patch()) require_same_patch(patch_, value.patch());
  for (int k : indices) {
    if (k < 0 || static_cast<std::size_t>(k) >= patch_->dim()) throw InstanceError("index out of range");
  }
  IndexSet idx = indices;
  int sign = sort_with_sign(idx);
  if (sign == 0) return;
  auto [it, inserted] = comps_.try_emplace(idx, sign > 0 ? value : -value);
  if (!inserted) {
    if (sign > 0) {
      it->second += value;
    } else {
      it->second -= value;
    }
    if (it->second.is_zero()) comps_.erase(it);
  }
}

template <Variance V>
bool AltTensor<V>::is_real() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

template <Variance V>
int AltTensor<V>::coefficient_degree() const {
  int d = -1;
  for (const auto& [idx, c] : comps_) d = std::max(d, c.degree());
  return d;
}

template <Variance V>
AltTensor<V> AltTensor<V>::operator-() const {
  AltTensor out = *this;
  for (auto& [idx, c] : out.comps_) c = -c;
  return out;
}

template <Variance V>
AltTensor<V>& AltTensor<V>::operator+=(const AltTensor& o) {
  require_same_patch(patch_, o.patch_);
  if (degree_ != o.degree_) throw InstanceError("cannot add tensors of different degree");
  for (const auto& [idx, c] : o.comps_) add(idx, c);
  return *this;
}

template <Variance V>
AltTensor<V>& AltTensor<V>::operator-=(const AltTensor& o) {
  require_same_patch(patch_, o.patch_);
  if (degree_ != o.degree_) throw InstanceError("cannot subtract tensors of different degree");
  for (const auto& [idx, c] : o.comps_) add(idx, -c);
  return *this;
}

template <Variance V>
AltTensor<V>& AltTensor<V>::operator*=(const Poly& f) {
  require_same_patch(patch_, f.patch());
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
  }
  return *this;
}

template <Variance V>
AltTensor<V>& AltTensor<V>::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    comps_.clear();
    return *this;
  }
  for (auto& [idx, p] : comps_) p *= c;
  return *this;
}

template <Variance V>
AltTensor<V> AltTensor<V>::conj() const {
  AltTensor out = *this;
  for (auto& [idx, c] : out.comps_) c = c.conj();
  return out;
}

template <Variance V>
AltTensor<V> AltTensor<V>::partial(std::size_t coord_index) const {
  AltTensor out(patch_, degree_);
  for (const auto& [idx, c] : comps_) out.add(idx, c.partial(coord_index));
  return out;
}

template <Variance V>
std::string AltTensor<V>::str() const {
  std::vector<std::pair<Poly, std::string>> terms;
  for (const auto& [idx, c] : comps_) {
    std::string basis;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) basis += " /\\ ";
      basis += basis_prefix<V>() + patch_->name(static_cast<std::size_t>(idx[k]));
    }
    terms.emplace_back(c, basis);
  }
  return linear_combination(terms);
}

template class AltTensor<Variance::contravariant>;
template class AltTensor<Variance::covariant>;

// ---------------------------------------------------------------------------
// Endomorphism

Endomorphism::Endomorphism(PatchPtr patch)
    : patch_(std::move(patch)), dim_(patch_->dim()), entries_(dim_ * dim_, Poly(patch_)) {}

Endomorphism::Endomorphism(PatchPtr patch, std::vector<std::vector<Poly>> rows) : Endomorphism(std::move(patch)) {
  if (rows.size() != dim_) throw InstanceError("endomorphism needs one row per coordinate");
  for (std::size_t i = 0; i < dim_; ++i) {
    if (rows[i].size() != dim_) throw InstanceError("endomorphism rows must have one entry per coordinate");
    for (std::size_t j = 0; j < dim_; ++j) {
      if (rows[i][j].patch()) require_same_patch(patch_, rows[i][j].patch());
      (*this)(i, j) = rows[i][j].patch() ? rows[i][j] : Poly(patch_);
    }
  }
}

Endomorphism Endomorphism::identity(PatchPtr patch) {
  Endomorphism out(patch);
  for (std::size_t i = 0; i < out.dim_; ++i) out(i, i) = Poly(patch, GaussRational(1));
  return out;
}

Multivector Endomorphism::apply(const Multivector& X) const {
  require_same_patch(patch_, X.patch());
  if (X.degree() != 1) throw InstanceError("endomorphisms act on vector fields");
  Multivector out(patch_, 1);
  for (const auto& [idx, c] : X.components()) {
    auto j = static_cast<std::size_t>(idx[0]);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!(*this)(i, j).is_zero()) out.add({static_cast<int>(i)}, (*this)(i, j) * c);
    }
  }
  return out;
}

Endomorphism Endomorphism::transpose() const {
  Endomorphism out(patch_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool Endomorphism::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool Endomorphism::is_real() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_real(); });
}

int Endomorphism::coefficient_degree() const {
  int d = -1;
  for (const Poly& p : entries_) d = std::max(d, p.degree());
  return d;
}

Endomorphism Endomorphism::operator-() const {
  Endomorphism out = *this;
  for (Poly& p : out.entries_) p = -p;
  return out;
}

Endomorphism& Endomorphism::operator+=(const Endomorphism& o) {
  require_same_patch(patch_, o.patch_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

Endomorphism& Endomorphism::operator-=(const Endomorphism& o) {
  require_same_patch(patch_, o.patch_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

Endomorphism operator*(const Endomorphism& a, const Endomorphism& b) {
  require_same_patch(a.patch_, b.patch_);
  Endomorphism out(a.patch_);
  for (std::size_t i = 0; i < a.dim_; ++i) {
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const Poly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

Endomorphism operator*(const GaussRational& c, Endomorphism a) {
  for (Poly& p : a.entries_) p *= c;
  return a;
}

bool operator==(const Endomorphism& a, const Endomorphism& b) {
  return same_patch(a.patch_, b.patch_) && a.entries_ == b.entries_;
}

Endomorphism Endomorphism::pow(unsigned n) const {
  Endomorphism result = identity(patch_);
  for (unsigned k = 0; k < n; ++k) result = result * *this;
  return result;
}

Endomorphism Endomorphism::conj() const {
  Endomorphism out = *this;
  for (Poly& p : out.entries_) p = p.conj();
  return out;
}

std::string Endomorphism::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i > 0) out += ", ";
    out += "[";
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j > 0) out += ", ";
      out += (*this)(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// construction helpers

Multivector basis_vector(const PatchPtr& patch, std::size_t i) {
  return Multivector::basis(patch, {static_cast<int>(i)});
}

DiffForm basis_form(const PatchPtr& patch, std::size_t i) { return DiffForm::basis(patch, {static_cast<int>(i)}); }

Multivector vector_field(const PatchPtr& patch, const std::vector<Poly>& comps) {
  return Multivector::from_components(patch, comps);
}

DiffForm one_form(const PatchPtr& patch, const std::vector<Poly>& comps) {
  return DiffForm::from_components(patch, comps);
}

// ---------------------------------------------------------------------------
// algebra

namespace {

template <Variance V>
AltTensor<V> wedge_impl(const AltTensor<V>& u, const AltTensor<V>& v) {
  require_same_patch(u.patch(), v.patch());
  AltTensor<V> out(u.patch(), u.degree() + v.degree());
  for (const auto& [I, a] : u.components()) {
    for (const auto& [J, b] : v.components()) {
      IndexSet K = I;
      K.insert(K.end(), J.begin(), J.end());
      out.add(K, a * b);
    }
  }
  return out;
}

// Contraction of the first slot of `w` (variance W) with a degree-1 tensor `a` of the other variance.
template <Variance W, Variance A>
AltTensor<W> interior_impl(const AltTensor<A>& a, const AltTensor<W>& w) {
  require_same_patch(a.patch(), w.patch());
  if (a.degree() != 1) throw InstanceError("interior product needs a degree-1 argument");
  if (w.degree() < 1) throw InstanceError("interior product of a degree-0 tensor");
  AltTensor<W> out(w.patch(), w.degree() - 1);
  for (const auto& [I, c] : w.components()) {
    for (std::size_t p = 0; p < I.size(); ++p) {
      Poly ap = a.component({I[p]});
      if (ap.is_zero()) continue;
      IndexSet J;
      J.reserve(I.size() - 1);
      for (std::size_t q = 0; q < I.size(); ++q) {
        if (q != p) J.push_back(I[q]);
      }
      Poly term = ap * c;
      out.add(J, p % 2 == 0 ? term : -term);
    }
  }
  return out;
}

template <Variance W, Variance A>
Poly evaluate_impl(const AltTensor<W>& w, std::span<const AltTensor<A>> args) {
  if (static_cast<int>(args.size()) != w.degree()) throw InstanceError("evaluate: wrong number of arguments");
  AltTensor<W> cur = w;
  for (const auto& a : args) cur = interior_impl(a, cur);
  return cur.as_scalar();
}

}  // namespace

Multivector wedge(const Multivector& u, const Multivector& v) { return wedge_impl(u, v); }
DiffForm wedge(const DiffForm& u, const DiffForm& v) { return wedge_impl(u, v); }

Poly pair(const DiffForm& a, const Multivector& X) {
  require_same_patch(a.patch(), X.patch());
  if (a.degree() != 1 || X.degree() != 1) throw InstanceError("pair: needs a 1-form and a vector field");
  Poly out(a.patch());
  for (const auto& [idx, c] : a.components()) {
    auto it = X.components().find(idx);
    if (it != X.components().end()) out += c * it->second;
  }
  return out;
}

Poly evaluate(const Multivector& w, std::span<const DiffForm> args) { return evaluate_impl(w, args); }
Poly evaluate(const DiffForm& w, std::span<const Multivector> args) { return evaluate_impl(w, args); }

Multivector interior(const DiffForm& a, const Multivector& w) { return interior_impl(a, w); }
DiffForm interior(const Multivector& X, const DiffForm& w) { return interior_impl(X, w); }

DiffForm compose(const DiffForm& a, const Endomorphism& A) {
  require_same_patch(a.patch(), A.patch());
  if (a.degree() != 1) throw InstanceError("compose: needs a 1-form");
  DiffForm out(a.patch(), 1);
  for (const auto& [idx, c] : a.components()) {
    auto i = static_cast<std::size_t>(idx[0]);
    for (std::size_t j = 0; j < A.dim(); ++j) {
      if (!A(i, j).is_zero()) out.add({static_cast<int>(j)}, c * A(i, j));
    }
  }
  return out;
}

Multivector sharp(const Multivector& pi, const DiffForm& a) { return interior(a, pi); }
DiffForm flat(const DiffForm& sigma, const Multivector& X) { return interior(X, sigma); }
Endomorphism transpose(const Endomorphism& A) { return A.transpose(); }

// ---------------------------------------------------------------------------
// calculus

Poly directional(const Multivector& X, const Poly& f) {
  require_same_patch(X.patch(), f.patch());
  if (X.degree() != 1) throw InstanceError("directional derivative needs a vector field");
  Poly out(X.patch());
  for (const auto& [idx, c] : X.components()) {
    Poly df = f.partial(static_cast<std::size_t>(idx[0]));
    if (!df.is_zero()) out += c * df;
  }
  return out;
}

Multivector lie_bracket(const Multivector& X, const Multivector& Y) {
  require_same_patch(X.patch(), Y.patch());
  if (X.degree() != 1 || Y.degree() != 1) throw InstanceError("lie_bracket needs vector fields");
  Multivector out(X.patch(), 1);
  for (std::size_t i = 0; i < X.patch()->dim(); ++i) {
    Poly yi = Y[i];
    Poly xi = X[i];
    out.add({static_cast<int>(i)}, directional(X, yi) - directional(Y, xi));
  }
  return out;
}

DiffForm exterior_derivative(const DiffForm& w) {
  DiffForm out(w.patch(), w.degree() + 1);
  for (const auto& [I, c] : w.components()) {
    for (std::size_t j = 0; j < w.patch()->dim(); ++j) {
      Poly dc = c.partial(j);
      if (dc.is_zero()) continue;
      IndexSet K;
      K.reserve(I.size() + 1);
      K.push_back(static_cast<int>(j));
      K.insert(K.end(), I.begin(), I.end());
      out.add(K, dc);
    }
  }
  return out;
}

DiffForm differential(const Poly& f) { return exterior_derivative(DiffForm::scalar(f)); }

DiffForm lie_derivative(const Multivector& X, const DiffForm& w) {
  require_same_patch(X.patch(), w.patch());
  if (w.degree() == 0) return DiffForm::scalar(directional(X, w.as_scalar()));
  DiffForm out = interior(X, exterior_derivative(w));
  out += exterior_derivative(interior(X, w));
  return out;
}

Multivector lie_derivative(const Multivector& X, const Multivector& w) {
  if (X.degree() != 1) throw InstanceError("lie_derivative needs a vector field");
  return schouten_bracket(X, w);
}

Endomorphism lie_derivative(const Multivector& X, const Endomorphism& A) {
  require_same_patch(X.patch(), A.patch());
  const PatchPtr& patch = A.patch();
  Endomorphism out(patch);
  for (std::size_t j = 0; j < A.dim(); ++j) {
    Multivector dj = basis_vector(patch, j);
    Multivector col = lie_bracket(X, A.apply(dj)) - A.apply(lie_bracket(X, dj));
    for (const auto& [idx, c] : col.components()) out(static_cast<std::size_t>(idx[0]), j) = c;
  }
  return out;
}

Multivector schouten_bracket(const Multivector& P, const Multivector& Q) {
  require_same_patch(P.patch(), Q.patch());
  const PatchPtr& patch = P.patch();
  const int p = P.degree();
  const int q = Q.degree();
  if (p + q == 0) return Multivector(patch, 0);
  Multivector out(patch, p + q - 1);
  const bool p_odd_shift = (p - 1) % 2 != 0;  // (-1)^(p-1) == -1
  for (std::size_t i = 0; i < patch->dim(); ++i) {
    DiffForm dxi = basis_form(patch, i);
    if (p > 0) {
      Multivector iP = interior(dxi, P);
      if (!iP.is_zero()) out += wedge(iP, Q.partial(i));
    }
    if (q > 0) {
      Multivector iQ = interior(dxi, Q);
      if (!iQ.is_zero()) {
        Multivector term = wedge(P.partial(i), iQ);
        if (p_odd_shift) {
          out += term;
        } else {
          out -= term;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// concomitants

Multivector nijenhuis(const Endomorphism& A, const Multivector& X, const Multivector& Y) {
  Multivector AX = A.apply(X);
  Multivector AY = A.apply(Y);
  Multivector out = lie_bracket(AX, AY);
  out -= A.apply(lie_bracket(X, AY));
  out -= A.apply(lie_bracket(AX, Y));
  out += A.apply(A.apply(lie_bracket(X, Y)));
  return out;
}

Multivector cr_tensor(const Endomorphism& A, const Multivector& X, const Multivector& Y) {
  Multivector AX = A.apply(X);
  Multivector AY = A.apply(Y);
  Multivector A2X = A.apply(AX);
  Multivector A2Y = A.apply(AY);
  Multivector out = lie_bracket(AX, AY);
  out += A.apply(lie_bracket(AX, A2Y));
  out += A.apply(lie_bracket(A2X, AY));
  out -= lie_bracket(A2X, A2Y);
  return out;
}

Multivector schouten_concomitant(const Multivector& pi, const Endomorphism& A, const Multivector& X,
                                 const DiffForm& a) {
  require_same_patch(pi.patch(), A.patch());
  if (pi.degree() != 2) throw InstanceError("schouten_concomitant needs a bivector");
  DiffForm inner = lie_derivative(X, compose(a, A)) - lie_derivative(A.apply(X), a);
  Multivector out = sharp(pi, inner);
  out -= lie_derivative(sharp(pi, a), A).apply(X);
  return out;
}

DiffForm c_concomitant(const Multivector& pi, const Endomorphism& A, const DiffForm& a, const DiffForm& b) {
  require_same_patch(pi.patch(), A.patch());
  if (pi.degree() != 2) throw InstanceError("c_concomitant needs a bivector");
  const DiffForm ab[] = {a, b};
  const DiffForm Aab[] = {compose(a, A), b};
  DiffForm out = compose(b, lie_derivative(sharp(pi, a), A));
  out -= compose(a, lie_derivative(sharp(pi, b), A));
  out += compose(differential(evaluate(pi, ab)), A);
  out -= differential(evaluate(pi, Aab));
  return out;
}

DiffForm poisson_bracket_1forms(const Multivector& pi, const DiffForm& a, const DiffForm& b) {
  if (pi.degree() != 2) throw InstanceError("poisson_bracket_1forms needs a bivector");
  const DiffForm ab[] = {a, b};
  DiffForm out = lie_derivative(sharp(pi, a), b);
  out -= lie_derivative(sharp(pi, b), a);
  out -= differential(evaluate(pi, ab));
  return out;
}

}  // namespace qcrf
