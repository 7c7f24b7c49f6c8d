#include "qcrf/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "qcrf/biggeom.hpp"
#include "qcrf/error.hpp"
#include "qcrf/structures.hpp"

namespace qcrf {

namespace {

std::vector<IndexSet> combinations(int n, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > n) return out;
  IndexSet cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++cur[static_cast<std::size_t>(pos)];
    for (int t = pos + 1; t < k; ++t) cur[static_cast<std::size_t>(t)] = cur[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Exponent> exponents_up_to(std::size_t m, int D) {
  std::vector<Exponent> out;
  Exponent e(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == m) {
      out.push_back(e);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[pos] = static_cast<unsigned>(d);
      rec(pos + 1, left - d);
    }
    e[pos] = 0;
  };
  rec(0, D);
  auto total = [](const Exponent& x) {
    unsigned s = 0;
    for (unsigned v : x) s += v;
    return s;
  };
  std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) {
    const unsigned da = total(a), db = total(b);
    return da != db ? da < db : a < b;
  });
  return out;
}

std::string form_tuple(const std::vector<std::string>& labels) {
  std::string s = "(";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? ", " : "") + labels[i];
  return s + ")";
}

Multivector scalar_mv(const PatchPtr& p, const Poly& f) {
  Multivector out(p, 0);
  out.add({}, f);
  return out;
}

template <class T>
std::vector<T> without(const std::vector<T>& v, std::initializer_list<std::size_t> drop) {
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(v[i]);
  }
  return out;
}

Poly eval_on(const Multivector& w, const std::vector<DiffForm>& args) { return evaluate(w, args); }

std::string key_str(const std::vector<int>& key) {
  std::string s = "(";
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? "," : "") + std::to_string(key[i]);
  return s + ")";
}

bool constant_endo(const Endomorphism& E) { return E.coefficient_degree() <= 0; }

// Nonzero forms dx^a o pr, deduplicated, with labels.
struct ProjectedCoframe {
  std::vector<DiffForm> forms;
  std::vector<std::string> labels;
};

ProjectedCoframe projected_coframe(const Endomorphism& pr, const std::string& name) {
  ProjectedCoframe out;
  const PatchPtr& p = pr.patch();
  for (std::size_t a = 0; a < p->dim(); ++a) {
    DiffForm f = compose(basis_form(p, a), pr);
    if (f.is_zero() || std::find(out.forms.begin(), out.forms.end(), f) != out.forms.end()) continue;
    out.forms.push_back(f);
    out.labels.push_back(basis_form(p, a).str() + " o " + name);
  }
  return out;
}

// Terms of sigma' and sigma'' from the explicit formulas, on one argument tuple.
struct Eq41Values {
  Poly sigma1, sigma2, sigma2_reordered;
};

Poly bracket_first_sum(const Multivector& pi, const Multivector& w, const std::vector<DiffForm>& alphas,
                       const std::vector<DiffForm>& betas, bool after_alphas) {
  Poly sum(w.patch());
  for (std::size_t h = 0; h < betas.size(); ++h) {
    for (std::size_t k = h + 1; k < betas.size(); ++k) {
      DiffForm br = poisson_bracket_1forms(pi, betas[h], betas[k]);
      std::vector<DiffForm> rest = without(betas, {h, k});
      std::vector<DiffForm> args;
      if (after_alphas) {
        args = alphas;
        args.push_back(br);
      } else {
        args.push_back(br);
        args.insert(args.end(), alphas.begin(), alphas.end());
      }
      args.insert(args.end(), rest.begin(), rest.end());
      Poly v = eval_on(w, args);
      if ((h + k) % 2) v = -v;
      sum += v;
    }
  }
  return sum;
}

Poly sigma2_formula(const Multivector& pi, const Multivector& w, const std::vector<DiffForm>& alphas,
                    const std::vector<DiffForm>& betas, bool reordered) {
  const std::size_t i = alphas.size();
  Poly sum(w.patch());
  for (std::size_t h = 0; h < betas.size(); ++h) {
    std::vector<DiffForm> args = alphas;
    std::vector<DiffForm> rest = without(betas, {h});
    args.insert(args.end(), rest.begin(), rest.end());
    Poly v = directional(sharp(pi, betas[h]), eval_on(w, args));
    if ((i + h) % 2) v = -v;
    sum += v;
  }
  for (std::size_t h = 0; h < i; ++h) {
    for (std::size_t k = 0; k < betas.size(); ++k) {
      std::vector<DiffForm> args{poisson_bracket_1forms(pi, alphas[h], betas[k])};
      std::vector<DiffForm> ra = without(alphas, {h}), rb = without(betas, {k});
      args.insert(args.end(), ra.begin(), ra.end());
      args.insert(args.end(), rb.begin(), rb.end());
      Poly v = eval_on(w, args);
      if ((i + h + k) % 2) v = -v;
      sum += v;
    }
  }
  sum += bracket_first_sum(pi, w, alphas, betas, !reordered);
  return sum;
}

void check_eq41(CheckReport& report, const Multivector& pi, const Multivector& w, int i, int j,
                const SigmaSplit& split, const ProjectedCoframe& alphas, const ProjectedCoframe& betas,
                std::size_t& printed_order_mismatches) {
  const int na = static_cast<int>(alphas.forms.size()), nb = static_cast<int>(betas.forms.size());
  auto pick = [](const ProjectedCoframe& c, const IndexSet& idx, std::vector<DiffForm>& forms,
                 std::vector<std::string>& labels) {
    for (int t : idx) {
      forms.push_back(c.forms[static_cast<std::size_t>(t)]);
      labels.push_back(c.labels[static_cast<std::size_t>(t)]);
    }
  };
  // sigma' w on (i-1) alphas and (j+2) betas.
  if (i >= 1) {
    for (const IndexSet& ai : combinations(na, i - 1)) {
      for (const IndexSet& bi : combinations(nb, j + 2)) {
        std::vector<DiffForm> a, b;
        std::vector<std::string> labels;
        pick(alphas, ai, a, labels);
        pick(betas, bi, b, labels);
        std::vector<DiffForm> args = a;
        args.insert(args.end(), b.begin(), b.end());
        Poly lhs = eval_on(split.sigma1, args);
        Poly rhs = bracket_first_sum(pi, w, a, b, false);
        report.expect_zero("eq41:sigma'", w.str() + " on " + form_tuple(labels), lhs - rhs);
      }
    }
  }
  for (const IndexSet& ai : combinations(na, i)) {
    for (const IndexSet& bi : combinations(nb, j + 1)) {
      std::vector<DiffForm> a, b;
      std::vector<std::string> labels;
      pick(alphas, ai, a, labels);
      pick(betas, bi, b, labels);
      std::vector<DiffForm> args = a;
      args.insert(args.end(), b.begin(), b.end());
      Poly lhs = eval_on(split.sigma2, args);
      const std::string where = w.str() + " on " + form_tuple(labels);
      report.expect_zero("eq41:sigma''", where, lhs - sigma2_formula(pi, w, a, b, true));
      if (!(lhs - sigma2_formula(pi, w, a, b, false)).is_zero()) ++printed_order_mismatches;
    }
  }
}

// Columns of a constant projector that form a basis of its image.
std::vector<Multivector> image_basis(const Endomorphism& pr) {
  const PatchPtr& p = pr.patch();
  std::vector<Multivector> out;
  EchelonBasis ech;
  for (std::size_t c = 0; c < p->dim(); ++c) {
    SparseVector col;
    for (std::size_t r = 0; r < p->dim(); ++r) {
      GaussRational v = pr(r, c).constant_term();
      if (!v.is_zero()) col[r] = v;
    }
    if (ech.insert(col)) out.push_back(pr.apply(basis_vector(p, c)));
  }
  return out;
}

Multivector wedge_all(const PatchPtr& p, const Poly& coeff, const std::vector<Multivector>& vs) {
  Multivector out = scalar_mv(p, coeff);
  for (const Multivector& v : vs) out = wedge(out, v);
  return out;
}

// f(0), ..., f(n-1) on the available hardware threads, in index order.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(n);
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          out[i] = f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

void require_poisson_linear(const Multivector& pi) {
  if (pi.degree() != 2) throw PreconditionError("pi must be a bivector");
  if (pi.coefficient_degree() > 1)
    throw PreconditionError("pi has coefficients of degree " + std::to_string(pi.coefficient_degree()) +
                            "; the truncated complex needs degree <= 1");
  if (!schouten_bracket(pi, pi).is_zero()) throw PreconditionError("pi is not Poisson: [pi, pi] != 0");
}

}  // namespace

Multivector d_pi(const Multivector& pi, const Multivector& w) { return -schouten_bracket(pi, w); }

Multivector d_pi_cochain(const Multivector& pi, const Multivector& w) {
  const PatchPtr& p = pi.patch();
  const int m = static_cast<int>(p->dim());
  const int k = w.degree();
  std::vector<DiffForm> coframe;
  for (int a = 0; a < m; ++a) coframe.push_back(basis_form(p, static_cast<std::size_t>(a)));
  std::map<std::pair<int, int>, DiffForm> brackets;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      brackets.emplace(std::pair{a, b}, poisson_bracket_1forms(pi, coframe[static_cast<std::size_t>(a)],
                                                               coframe[static_cast<std::size_t>(b)]));
  Multivector out(p, k + 1);
  for (const IndexSet& idx : combinations(m, k + 1)) {
    std::vector<DiffForm> lam;
    for (int a : idx) lam.push_back(coframe[static_cast<std::size_t>(a)]);
    Poly value(p);
    for (std::size_t h = 0; h < lam.size(); ++h) {
      Poly v = directional(sharp(pi, lam[h]), eval_on(w, without(lam, {h})));
      if (h % 2) v = -v;
      value += v;
      for (std::size_t s = h + 1; s < lam.size(); ++s) {
        std::vector<DiffForm> args{brackets.at({idx[h], idx[s]})};
        std::vector<DiffForm> rest = without(lam, {h, s});
        args.insert(args.end(), rest.begin(), rest.end());
        Poly u = eval_on(w, args);
        if ((h + s) % 2) u = -u;
        value += u;
      }
    }
    out.add(idx, value);
  }
  return out;
}

std::map<std::vector<int>, Multivector> graded_components(const Multivector& w,
                                                          const std::vector<Endomorphism>& parts) {
  const PatchPtr& p = w.patch();
  std::vector<std::vector<Multivector>> images(parts.size());
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t i = 0; i < p->dim(); ++i) images[a].push_back(parts[a].apply(basis_vector(p, i)));

  std::map<std::vector<int>, Multivector> out;
  std::vector<int> counts(parts.size(), 0);
  for (const auto& [idx, c] : w.components()) {
    std::function<void(std::size_t, const Multivector&)> rec = [&](std::size_t pos, const Multivector& acc) {
      if (acc.is_zero()) return;
      if (pos == idx.size()) {
        auto it = out.find(counts);
        if (it == out.end())
          out.emplace(counts, acc);
        else
          it->second += acc;
        return;
      }
      for (std::size_t a = 0; a < parts.size(); ++a) {
        ++counts[a];
        rec(pos + 1, wedge(acc, images[a][static_cast<std::size_t>(idx[pos])]));
        --counts[a];
      }
    };
    rec(0, scalar_mv(p, c));
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::map<std::pair<int, int>, Multivector> bigrade(const Multivector& w, const Endomorphism& prQ,
                                                   const Endomorphism& prP) {
  std::map<std::pair<int, int>, Multivector> out;
  for (auto& [key, part] : graded_components(w, {prQ, prP})) out.emplace(std::pair{key[0], key[1]}, part);
  return out;
}

SigmaSplit sigma_split(const Multivector& pi, const Multivector& w, const Endomorphism& prQ,
                       const Endomorphism& prP) {
  const PatchPtr& p = w.patch();
  SigmaSplit out{Multivector(p, w.degree() + 1), Multivector(p, w.degree() + 1), Multivector(p, w.degree() + 1)};
  for (const auto& [ij, part] : bigrade(w, prQ, prP)) {
    for (const auto& [ab, piece] : bigrade(d_pi(pi, part), prQ, prP)) {
      if (ab == std::pair{ij.first - 1, ij.second + 2})
        out.sigma1 += piece;
      else if (ab == std::pair{ij.first, ij.second + 1})
        out.sigma2 += piece;
      else
        out.residual += piece;
    }
  }
  return out;
}

TripleSplit sigma2_split(const Multivector& pi, const Multivector& w, const Endomorphism& prQ,
                         const Endomorphism& prH, const Endomorphism& prHbar) {
  const PatchPtr& p = w.patch();
  const std::vector<Endomorphism> parts{prQ, prH, prHbar};
  TripleSplit out{Multivector(p, w.degree() + 1), Multivector(p, w.degree() + 1), Multivector(p, w.degree() + 1)};
  for (const auto& [abc, part] : graded_components(w, parts)) {
    for (const auto& [key, piece] : graded_components(d_pi(pi, part), parts)) {
      if (key[0] != abc[0]) continue;
      if (key == std::vector<int>{abc[0], abc[1] + 1, abc[2]})
        out.sigma_h += piece;
      else if (key == std::vector<int>{abc[0], abc[1], abc[2] + 1})
        out.sigma_hbar += piece;
      else
        out.residual += piece;
    }
  }
  return out;
}

CheckReport check_bigrading(const Multivector& pi, const Endomorphism& prQ, const Endomorphism& prP,
                            const std::vector<Multivector>& samples, bool formulas) {
  CheckReport report;
  for (const char* id : {"sec4:bidegrees", "sec4:filtration", "eq40:sigma'^2", "eq40:sigma''^2", "eq40:anticommute"})
    report.condition(id);
  if (formulas)
    for (const char* id : {"eq41:sigma'", "eq41:sigma''"}) report.condition(id);
  std::size_t printed_order_mismatches = 0;
  const ProjectedCoframe alphas = projected_coframe(prQ, "pr_Q");
  const ProjectedCoframe betas = projected_coframe(prP, "pr_P");
  auto s1 = [&](const Multivector& w) { return sigma_split(pi, w, prQ, prP).sigma1; };
  auto s2 = [&](const Multivector& w) { return sigma_split(pi, w, prQ, prP).sigma2; };
  for (const Multivector& w : samples) {
    const std::string args = w.str();
    SigmaSplit split = sigma_split(pi, w, prQ, prP);
    report.expect_zero("sec4:bidegrees", args, split.residual);
    for (const auto& [ij, part] : bigrade(w, prQ, prP)) {
      for (const auto& [ab, piece] : bigrade(d_pi(pi, part), prQ, prP)) {
        if (ab.second < ij.second)
          report.fail("sec4:filtration", part.str() + " -> " + key_str({ab.first, ab.second}), piece.str());
      }
      if (formulas) check_eq41(report, pi, part, ij.first, ij.second, sigma_split(pi, part, prQ, prP), alphas, betas,
                              printed_order_mismatches);
    }
    report.expect_zero("eq40:sigma'^2", args, s1(split.sigma1));
    report.expect_zero("eq40:sigma''^2", args, s2(split.sigma2));
    report.expect_zero("eq40:anticommute", args, s1(split.sigma2) + s2(split.sigma1));
  }
  if (printed_order_mismatches > 0)
    report.note("eq41:sigma''", "with {b_h, b_k} after the alphas the last sum is off by (-1)^i on " +
                                    std::to_string(printed_order_mismatches) + " argument tuples");
  return report;
}

CheckReport check_triple_grading(const Multivector& pi, const Endomorphism& A, const std::vector<Multivector>& samples) {
  FProjectors pr = f_projectors(A);
  CheckReport report;
  for (const char* id : {"prop4.2:split", "prop4.2:H^2", "prop4.2:Hbar^2", "prop4.2:anticommute"}) report.condition(id);
  auto split = [&](const Multivector& w) { return sigma2_split(pi, w, pr.prQ, pr.prH, pr.prHbar); };
  for (const Multivector& w : samples) {
    const std::string args = w.str();
    TripleSplit t = split(w);
    report.expect_zero("prop4.2:split", args, t.residual);
    TripleSplit th = split(t.sigma_h), tb = split(t.sigma_hbar);
    report.expect_zero("prop4.2:H^2", args, th.sigma_h);
    report.expect_zero("prop4.2:Hbar^2", args, tb.sigma_hbar);
    report.expect_zero("prop4.2:anticommute", args, th.sigma_hbar + tb.sigma_h);
  }
  return report;
}

std::vector<Multivector> monomial_samples(const PatchPtr& patch, int D, int kmax) {
  std::vector<Multivector> out;
  const int m = static_cast<int>(patch->dim());
  for (int k = 0; k <= std::min(kmax, m); ++k) {
    TruncatedSpace space(patch, k, D);
    for (std::size_t i = 0; i < space.dim(); ++i) out.push_back(space.element(i));
  }
  return out;
}

TruncatedSpace::TruncatedSpace(PatchPtr patch, int k, int D) : patch_(std::move(patch)), k_(k), D_(D) {
  if (D < 0) throw UsageError("the degree bound must be nonnegative");
  const std::vector<Exponent> monos = exponents_up_to(patch_->dim(), D);
  for (const IndexSet& idx : combinations(static_cast<int>(patch_->dim()), k)) {
    for (const Exponent& e : monos) {
      index_.emplace(std::pair{idx, e}, basis_.size());
      basis_.emplace_back(idx, e);
    }
  }
}

Multivector TruncatedSpace::element(std::size_t index) const {
  const auto& [idx, e] = basis_.at(index);
  Multivector out(patch_, k_);
  out.add(idx, Poly::monomial(patch_, e));
  return out;
}

Multivector TruncatedSpace::element(const SparseVector& coords) const {
  Multivector out(patch_, k_);
  for (const auto& [i, c] : coords) {
    const auto& [idx, e] = basis_.at(i);
    out.add(idx, Poly::monomial(patch_, e, c));
  }
  return out;
}

SparseVector TruncatedSpace::coordinates(const Multivector& w) const {
  if (w.degree() != k_) throw InstanceError("multivector of degree " + std::to_string(w.degree()) +
                                            " in a space of degree " + std::to_string(k_));
  SparseVector out;
  for (const auto& [idx, c] : w.components()) {
    for (const auto& [e, v] : c.terms()) {
      auto it = index_.find({idx, e});
      if (it == index_.end()) throw InstanceError("coefficient of degree above " + std::to_string(D_) + ": " + w.str());
      out[it->second] = v;
    }
  }
  return out;
}

std::size_t truncated_dimension(std::size_t dim, int k, int D) {
  if (k < 0 || D < 0) return 0;
  return binom(dim, static_cast<std::size_t>(k)) * binom(dim + static_cast<std::size_t>(D), static_cast<std::size_t>(D));
}

CohomologyTable poisson_cohomology(const Multivector& pi, int D, int kmax) {
  require_poisson_linear(pi);
  const PatchPtr& p = pi.patch();
  const int m = static_cast<int>(p->dim());
  kmax = std::min(kmax, m);
  CohomologyTable t;
  t.D = D;
  for (int k = 0; k <= kmax; ++k) {
    TruncatedSpace src(p, k, D);
    t.cochains.push_back(src.dim());
    std::size_t r = 0;
    if (k < m) {
      TruncatedSpace dst(p, k + 1, D);
      EchelonBasis ech;
      std::vector<SparseVector> cols = parallel_map(src.dim(), [&](std::size_t i) {
        return dst.coordinates(d_pi(pi, src.element(i)));
      });
      for (SparseVector& c : cols) ech.insert(std::move(c));
      r = ech.rank();
    }
    t.ranks.push_back(r);
    const std::size_t prev = k > 0 ? t.ranks[static_cast<std::size_t>(k - 1)] : 0;
    t.betti.push_back(src.dim() - r - prev);
  }
  return t;
}

SpectralTerms spectral_terms(const Multivector& pi, const Endomorphism& prQ, const Endomorphism& prP, int D,
                             bool reverse) {
  require_poisson_linear(pi);
  if (!constant_endo(prQ) || !constant_endo(prP))
    throw PreconditionError("the spectral terms need constant projectors");
  const PatchPtr& p = pi.patch();
  if (!(prQ + prP == Endomorphism::identity(p))) throw PreconditionError("pr_Q + pr_P != Id");
  if (!(prP * prP == prP)) throw PreconditionError("pr_P is not idempotent");
  CheckReport sub = check_nonholonomic_poisson_submanifold(pi, prP);
  if (!sub.verdict()) throw PreconditionError("P is not a (non)holonomic Poisson submanifold of pi");

  const std::vector<Multivector> qb = image_basis(prQ), pb = image_basis(prP);
  const int q = static_cast<int>(qb.size()), np = static_cast<int>(pb.size());
  const std::vector<Exponent> monos = exponents_up_to(p->dim(), D);

  SpectralTerms out;
  out.D = D;
  out.q = qb.size();
  out.p = pb.size();
  CheckReport& report = out.report;
  for (const char* id : {"sec4:filtration", "eq40:action", "rem4.2:P*-complex", "rem4.2:annP"}) report.condition(id);

  auto sig = [&](const Multivector& w) { return sigma_split(pi, w, prQ, prP); };
  auto chi = [&](int j, int i) {
    std::vector<Multivector> els;
    for (const IndexSet& S : combinations(q, j))
      for (const IndexSet& T : combinations(np, i))
        for (const Exponent& e : monos) {
          std::vector<Multivector> vs;
          for (int s : S) vs.push_back(qb[static_cast<std::size_t>(s)]);
          for (int t : T) vs.push_back(pb[static_cast<std::size_t>(t)]);
          els.push_back(wedge_all(p, Poly::monomial(p, e), vs));
        }
    if (reverse) std::reverse(els.begin(), els.end());
    return els;
  };

  const auto size = [](int n) { return static_cast<std::size_t>(n); };
  std::vector<std::vector<std::size_t>> dims(size(np + 1), std::vector<std::size_t>(size(q + 1)));
  std::vector<std::vector<std::size_t>> rank2(size(np + 2), std::vector<std::size_t>(size(q + 1)));
  // Z: kernel of sigma'' on chi^{j,i}; B: image of sigma'' in chi^{j,i} (coordinates in the full space).
  std::vector<std::vector<std::vector<Multivector>>> Z(size(np + 1), std::vector<std::vector<Multivector>>(size(q + 1)));
  std::vector<std::vector<std::vector<SparseVector>>> B(size(np + 1), std::vector<std::vector<SparseVector>>(size(q + 1)));

  for (int j = 0; j <= q; ++j) {
    for (int i = 0; i <= np; ++i) {
      const std::vector<Multivector> els = chi(j, i);
      dims[size(i)][size(j)] = els.size();
      const int k = i + j;
      const bool top = k + 1 > static_cast<int>(p->dim());
      std::optional<TruncatedSpace> dst;
      if (!top) dst.emplace(p, k + 1, D);
      struct ElementWork {
        SparseVector image;
        std::vector<std::pair<std::string, std::string>> lowered;
        Multivector square;
      };
      std::vector<ElementWork> work = parallel_map(els.size(), [&](std::size_t e) {
        const Multivector& b = els[e];
        ElementWork w;
        for (const auto& [ab, piece] : bigrade(d_pi(pi, b), prQ, prP))
          if (ab.second < i) w.lowered.emplace_back(b.str() + " -> " + key_str({ab.first, ab.second}), piece.str());
        Multivector s2 = sig(b).sigma2;
        if (j == 0) w.square = sig(s2).sigma2;
        if (!top) w.image = dst->coordinates(s2);
        return w;
      });
      std::vector<SparseVector> images;
      for (std::size_t e = 0; e < els.size(); ++e) {
        for (const auto& [args, value] : work[e].lowered) report.fail("sec4:filtration", args, value);
        if (j == 0) report.expect_zero("rem4.2:P*-complex", els[e].str(), work[e].square);
        images.push_back(std::move(work[e].image));
      }
      EchelonBasis ech;
      for (const SparseVector& v : images) ech.insert(v);
      rank2[size(i)][size(j)] = ech.rank();
      if (i + 1 <= np) B[size(i + 1)][size(j)] = images;
      // kernel of the map with columns `images`
      std::map<std::size_t, SparseVector> rows;
      for (std::size_t c = 0; c < images.size(); ++c)
        for (const auto& [t, v] : images[c]) rows[t][c] = v;
      std::vector<SparseVector> rowlist;
      for (auto& [t, r] : rows) rowlist.push_back(std::move(r));
      for (const SparseVector& x : kernel(rowlist, els.size())) {
        Multivector z(p, k);
        for (const auto& [c, v] : x) z += v * els[c];
        Z[size(i)][size(j)].push_back(z);
      }
    }
  }

  out.e0 = dims;
  out.e1 = dims;
  out.e2 = dims;
  for (int i = 0; i <= np; ++i)
    for (int j = 0; j <= q; ++j)
      out.e2[size(i)][size(j)] = dims[size(i)][size(j)] - rank2[size(i)][size(j)] - (i > 0 ? rank2[size(i - 1)][size(j)] : 0);

  // rank of the sigma' action E_2^{ij} -> E_2^{i+2, j-1}
  auto induced_rank = [&](int i, int j) -> std::size_t {
    if (i < 0 || j < 1 || i + 2 > np) return 0;
    const int k = i + j + 1;
    TruncatedSpace dst(p, k, D);
    EchelonBasis ech;
    for (const SparseVector& v : B[size(i + 2)][size(j - 1)]) ech.insert(v);
    const std::size_t base = ech.rank();
    for (const Multivector& z : Z[size(i)][size(j)]) {
      Multivector s1 = sig(z).sigma1;
      report.expect_zero("eq40:action", z.str(), sig(s1).sigma2);
      ech.insert(dst.coordinates(s1));
    }
    return ech.rank() - base;
  };
  out.e3 = out.e2;
  std::vector<std::vector<std::size_t>> act(size(np + 1), std::vector<std::size_t>(size(q + 1)));
  for (int i = 0; i <= np; ++i)
    for (int j = 0; j <= q; ++j) act[size(i)][size(j)] = induced_rank(i, j);
  out.d2 = act;
  for (int i = 0; i <= np; ++i)
    for (int j = 0; j <= q; ++j) {
      std::size_t in = (i >= 2 && j + 1 <= q) ? act[size(i - 2)][size(j + 1)] : 0;
      out.e3[size(i)][size(j)] = out.e2[size(i)][size(j)] - act[size(i)][size(j)] - in;
    }

  // ann P has zero anchor and bracket, so its cohomology is the whole of Gamma wedge^j Q.
  const ProjectedCoframe ann = projected_coframe(prQ, "pr_Q");
  for (std::size_t a = 0; a < ann.forms.size(); ++a) {
    report.expect_zero("rem4.2:annP", "sharp" + form_tuple({ann.labels[a]}), sharp(pi, ann.forms[a]));
    for (std::size_t b = a + 1; b < ann.forms.size(); ++b)
      report.expect_zero("rem4.2:annP", "{,}" + form_tuple({ann.labels[a], ann.labels[b]}),
                         poisson_bracket_1forms(pi, ann.forms[a], ann.forms[b]));
  }
  std::string dimsq;
  for (int j = 0; j <= q; ++j) dimsq += (j ? " " : "") + std::to_string(dims[0][size(j)]);
  report.note("rem4.2:annP", "dim H^j(ann P) = " + dimsq);
  return out;
}

DiffForm quotient_bracket(const Multivector& pi, const Endomorphism& prP, const DiffForm& a, const DiffForm& b) {
  return compose(poisson_bracket_1forms(pi, compose(a, prP), compose(b, prP)), prP);
}

CheckReport check_quotient_algebroid(const Multivector& pi, const Endomorphism& prP) {
  if (!(prP * prP == prP)) throw PreconditionError("pr_P is not idempotent");
  const PatchPtr& p = pi.patch();
  const Endomorphism prQ = Endomorphism::identity(p) - prP;
  CheckReport report;
  report.condition("prop4.1:(a)");
  report.condition("prop4.1:(b)");
  const ProjectedCoframe ann = projected_coframe(prQ, "pr_Q");
  for (std::size_t a = 0; a < p->dim(); ++a) {
    for (std::size_t b = 0; b < ann.forms.size(); ++b) {
      DiffForm br = poisson_bracket_1forms(pi, basis_form(p, a), ann.forms[b]);
      const std::string args = form_tuple({basis_form(p, a).str(), ann.labels[b]});
      report.expect_zero("prop4.1:(a)", args, sharp(pi, br));
      report.expect_zero("prop4.1:(b)", args, compose(br, prP));
    }
  }
  return report;
}

}  // namespace qcrf
