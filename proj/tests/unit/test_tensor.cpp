#include <gtest/gtest.h>

#include "qcrf/tensor.hpp"
#include "support/gen.hpp"

using namespace qcrf;
using qcrf::testing::Gen;

namespace {

constexpr int kIterations = 60;

PatchPtr plane() { return make_patch({"x", "y"}); }
PatchPtr space(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
  return make_patch(names);
}

Poly P(const char* text, const PatchPtr& patch) { return parse_poly(text, patch); }

// Graded sign (-1)^n.
int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

}  // namespace

TEST(Tensor, DeterminantConvention) {
  auto p = plane();
  Multivector w = wedge(basis_vector(p, 0), basis_vector(p, 1));
  const DiffForm args[] = {basis_form(p, 0), basis_form(p, 1)};
  EXPECT_EQ(evaluate(w, args), Poly(p, 1));
  const DiffForm swapped[] = {basis_form(p, 1), basis_form(p, 0)};
  EXPECT_EQ(evaluate(w, swapped), Poly(p, -1));
  EXPECT_EQ(wedge(basis_vector(p, 1), basis_vector(p, 0)), -w);
}

TEST(Tensor, ComponentsAreAntisymmetric) {
  auto p = space(3);
  Multivector w(p, 2);
  w.add({2, 0}, P("x1", p));
  EXPECT_EQ(w.component({0, 2}), P("-x1", p));
  EXPECT_EQ(w.component({2, 0}), P("x1", p));
  EXPECT_TRUE(w.component({1, 1}).is_zero());
  w.add({0, 2}, P("x1", p));
  EXPECT_TRUE(w.is_zero());
}

TEST(Tensor, Text) {
  auto p = make_patch({"x1", "x2", "x3"});
  EXPECT_EQ((GaussRational(-2) * basis_vector(p, 2)).str(), "-2*d/dx3");
  EXPECT_EQ(wedge(basis_form(p, 0), basis_form(p, 1)).str(), "dx1 /\\ dx2");
  EXPECT_EQ(vector_field(p, {P("x1 + x2", p), Poly(p), Poly(p)}).str(), "(x1 + x2)*d/dx1");
  EXPECT_EQ(vector_field(p, {Poly(p), P("-x1", p), P("i", p)}).str(), "-x1*d/dx2 + i*d/dx3");
  EXPECT_EQ(Multivector(p, 1).str(), "0");
}

TEST(Tensor, InteriorContractsFirstSlot) {
  auto p = space(3);
  Gen g(21);
  for (int it = 0; it < kIterations; ++it) {
    Multivector w = g.multivector(p, 3, 1);
    DiffForm a = g.form(p, 1, 1), b = g.form(p, 1, 1), c = g.form(p, 1, 1);
    const DiffForm abc[] = {a, b, c};
    const DiffForm bc[] = {b, c};
    EXPECT_EQ(evaluate(interior(a, w), bc), evaluate(w, abc));
  }
}

TEST(Tensor, WedgeIsGradedCommutative) {
  auto p = space(4);
  Gen g(22);
  for (int it = 0; it < kIterations; ++it) {
    int k = g.range(0, 2), l = g.range(0, 2);
    Multivector u = g.multivector(p, k), v = g.multivector(p, l);
    EXPECT_EQ(wedge(u, v), parity_sign(k * l) * Poly(p, 1) * wedge(v, u));
    DiffForm a = g.form(p, k), b = g.form(p, l), c = g.form(p, 1);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(Tensor, InteriorIsAntiderivation) {
  auto p = space(4);
  Gen g(23);
  for (int it = 0; it < kIterations; ++it) {
    int k = g.range(1, 2), l = g.range(1, 2);
    Multivector u = g.multivector(p, k), v = g.multivector(p, l);
    DiffForm a = g.form(p, 1);
    Multivector lhs = interior(a, wedge(u, v));
    Multivector rhs = wedge(interior(a, u), v) + parity_sign(k) * Poly(p, 1) * wedge(u, interior(a, v));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Tensor, ExteriorDerivativeSquaresToZero) {
  auto p = space(4);
  Gen g(24);
  for (int it = 0; it < kIterations; ++it) {
    DiffForm w = g.form(p, g.range(0, 2), 3);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).is_zero());
  }
}

TEST(Tensor, ExteriorDerivativeOnOneFormsMatchesInvariantFormula) {
  auto p = space(3);
  Gen g(25);
  for (int it = 0; it < kIterations; ++it) {
    DiffForm xi = g.form(p, 1);
    Multivector X = g.vector(p), Y = g.vector(p);
    const Multivector XY[] = {X, Y};
    Poly expect = directional(X, pair(xi, Y)) - directional(Y, pair(xi, X)) - pair(xi, lie_bracket(X, Y));
    EXPECT_EQ(evaluate(exterior_derivative(xi), XY), expect);
  }
}

TEST(Tensor, CartanFormulaAndLieDerivativeOfPairing) {
  auto p = space(3);
  Gen g(26);
  for (int it = 0; it < kIterations; ++it) {
    Multivector X = g.vector(p), Y = g.vector(p);
    DiffForm a = g.form(p, 1);
    EXPECT_EQ(directional(X, pair(a, Y)), pair(lie_derivative(X, a), Y) + pair(a, lie_bracket(X, Y)));
  }
}

TEST(Tensor, EndomorphismLieDerivativeDefinition) {
  auto p = space(3);
  Gen g(27);
  for (int it = 0; it < kIterations; ++it) {
    Multivector X = g.vector(p), Y = g.vector(p);
    Endomorphism A = g.endomorphism(p);
    EXPECT_EQ(lie_derivative(X, A).apply(Y), lie_bracket(X, A.apply(Y)) - A.apply(lie_bracket(X, Y)));
  }
}

TEST(Tensor, ComposeIsPullbackByA) {
  auto p = space(3);
  Gen g(28);
  for (int it = 0; it < kIterations; ++it) {
    Multivector X = g.vector(p);
    DiffForm a = g.form(p, 1);
    Endomorphism A = g.endomorphism(p), B = g.endomorphism(p);
    EXPECT_EQ(pair(compose(a, A), X), pair(a, A.apply(X)));
    EXPECT_EQ(compose(a, A * B), compose(compose(a, A), B));
  }
}

TEST(Schouten, BasicValues) {
  auto p = plane();
  Poly x = P("x", p), y = P("y", p);
  Multivector dx = basis_vector(p, 0), dy = basis_vector(p, 1);
  // [X, f] = X(f), [f, X] likewise
  Multivector X = x * dy;
  EXPECT_EQ(schouten_bracket(X, Multivector::scalar(y)).as_scalar(), x);
  EXPECT_EQ(schouten_bracket(Multivector::scalar(y), X).as_scalar(), x);
  // [pi, f] = sharp_pi(df)
  Multivector pi = wedge(dx, dy);
  EXPECT_EQ(schouten_bracket(pi, Multivector::scalar(x)), sharp(pi, differential(x)));
  EXPECT_EQ(sharp(pi, differential(x)), dy);
  // Lie bracket on vector fields
  EXPECT_EQ(schouten_bracket(x * dy, y * dx), lie_bracket(x * dy, y * dx));
  EXPECT_EQ(lie_bracket(x * dy, y * dx), x * dx - y * dy);
}

TEST(Schouten, GradedAntisymmetry) {
  auto p = space(4);
  Gen g(31);
  for (int it = 0; it < kIterations; ++it) {
    int a = g.range(0, 3), b = g.range(0, 3);
    Multivector P1 = g.multivector(p, a), Q1 = g.multivector(p, b);
    EXPECT_EQ(schouten_bracket(Q1, P1), parity_sign(a * b) * Poly(p, 1) * schouten_bracket(P1, Q1));
  }
}

TEST(Schouten, GradedJacobi) {
  auto p = space(4);
  Gen g(32);
  for (int it = 0; it < kIterations; ++it) {
    int a = g.range(1, 2), b = g.range(0, 2), c = g.range(b == 0 ? 1 : 0, 2);
    Multivector A = g.multivector(p, a, 1), B = g.multivector(p, b, 2), C = g.multivector(p, c, 2);
    Multivector lhs = schouten_bracket(A, schouten_bracket(B, C));
    Multivector rhs = parity_sign(a - 1) * Poly(p, 1) * schouten_bracket(schouten_bracket(A, B), C) +
                      parity_sign((a - 1) * (b - 1)) * Poly(p, 1) * schouten_bracket(B, schouten_bracket(A, C));
    EXPECT_EQ(lhs, rhs) << "degrees " << a << " " << b << " " << c;
  }
}

TEST(Schouten, VectorFieldBracketIsLieDerivative) {
  auto p = space(3);
  Gen g(33);
  for (int it = 0; it < kIterations; ++it) {
    Multivector X = g.vector(p), Q = g.multivector(p, 2);
    DiffForm a = g.form(p, 1), b = g.form(p, 1);
    const DiffForm ab[] = {a, b};
    const DiffForm La_b[] = {lie_derivative(X, a), b};
    const DiffForm a_Lb[] = {a, lie_derivative(X, b)};
    Poly expect = directional(X, evaluate(Q, ab)) - evaluate(Q, La_b) - evaluate(Q, a_Lb);
    EXPECT_EQ(evaluate(schouten_bracket(X, Q), ab), expect);
  }
}

TEST(Schouten, GelfandDorfmanIdentity) {
  // [pi, pi](a, b, c) = 2 c(sharp{a,b} - [sharp a, sharp b])
  auto p = space(3);
  Gen g(34);
  for (int it = 0; it < kIterations; ++it) {
    Multivector pi = g.multivector(p, 2, 2);
    DiffForm a = g.form(p, 1, 1), b = g.form(p, 1, 1), c = g.form(p, 1, 1);
    const DiffForm abc[] = {a, b, c};
    Multivector defect = sharp(pi, poisson_bracket_1forms(pi, a, b)) - lie_bracket(sharp(pi, a), sharp(pi, b));
    EXPECT_EQ(evaluate(schouten_bracket(pi, pi), abc), GaussRational(2) * pair(c, defect));
  }
}

TEST(Schouten, KnownPoissonStructures) {
  auto p = make_patch({"x", "y", "z"});
  Poly x = P("x", p), y = P("y", p), z = P("z", p);
  auto e = [&](std::size_t i) { return basis_vector(p, i); };
  Multivector so3 = x * wedge(e(1), e(2)) + y * wedge(e(2), e(0)) + z * wedge(e(0), e(1));
  EXPECT_TRUE(schouten_bracket(so3, so3).is_zero());
  Multivector bad = y * wedge(e(1), e(2)) + wedge(e(0), e(1));
  EXPECT_FALSE(schouten_bracket(bad, bad).is_zero());
}

TEST(Concomitants, NijenhuisOfConstantIsZero) {
  auto p = plane();
  Endomorphism J(p, {{Poly(p), Poly(p, -1)}, {Poly(p, 1), Poly(p)}});
  EXPECT_EQ(J * J, GaussRational(-1) * Endomorphism::identity(p));
  EXPECT_TRUE(nijenhuis(J, basis_vector(p, 0), basis_vector(p, 1)).is_zero());
}

TEST(Concomitants, NijenhuisIsTensorial) {
  auto p = space(3);
  Gen g(41);
  for (int it = 0; it < 30; ++it) {
    Endomorphism A = g.endomorphism(p);
    Multivector X = g.vector(p, 1), Y = g.vector(p, 1);
    Poly f = g.poly(p, 1);
    EXPECT_EQ(nijenhuis(A, f * X, Y), f * nijenhuis(A, X, Y));
    EXPECT_EQ(nijenhuis(A, X, Y), -nijenhuis(A, Y, X));
  }
}

TEST(Concomitants, RAndCAreDual) {
  auto p = space(3);
  Gen g(42);
  for (int it = 0; it < 30; ++it) {
    Multivector pi = g.multivector(p, 2, 1);
    Endomorphism A = g.endomorphism(p);
    Multivector X = g.vector(p, 1);
    DiffForm a = g.form(p, 1, 1), b = g.form(p, 1, 1);
    // In general the two differ by X(b(A sharp a - sharp(A* a))), which vanishes for compatible pairs.
    Multivector defect = A.apply(sharp(pi, a)) - sharp(pi, compose(a, A));
    EXPECT_EQ(pair(c_concomitant(pi, A, a, b), X) - pair(a, schouten_concomitant(pi, A, X, b)),
              directional(X, pair(b, defect)));
  }
}

TEST(Concomitants, RIsTensorialInX) {
  auto p = space(3);
  Gen g(43);
  for (int it = 0; it < 30; ++it) {
    Multivector pi = g.multivector(p, 2, 1);
    Endomorphism A = g.endomorphism(p);
    Multivector X = g.vector(p, 1);
    DiffForm a = g.form(p, 1, 1);
    Poly f = g.poly(p, 1);
    EXPECT_EQ(schouten_concomitant(pi, A, f * X, a), f * schouten_concomitant(pi, A, X, a));
  }
}

TEST(Concomitants, PoissonBracketOfExactForms) {
  auto p = space(3);
  Gen g(44);
  for (int it = 0; it < kIterations; ++it) {
    Multivector pi = g.multivector(p, 2, 1);
    Poly f = g.poly(p), h = g.poly(p);
    const DiffForm args[] = {differential(f), differential(h)};
    EXPECT_EQ(poisson_bracket_1forms(pi, differential(f), differential(h)), differential(evaluate(pi, args)));
  }
}

TEST(Tensor, PatchMismatchIsRejected) {
  auto p = plane();
  auto q = make_patch({"u", "v"});
  EXPECT_THROW(lie_bracket(basis_vector(p, 0), basis_vector(q, 0)), InstanceError);
  EXPECT_THROW(interior(basis_form(p, 0), Multivector::scalar(Poly(p, 1))), InstanceError);
}
