#include <gtest/gtest.h>

#include "qcrf/scalar.hpp"
#include "support/gen.hpp"

using namespace qcrf;
using qcrf::testing::Gen;

namespace {

constexpr int kIterations = 200;

PatchPtr xyz() { return make_patch({"x", "y", "z"}); }

}  // namespace

TEST(GaussRational, Canonical) {
  GaussRational a(mpq_class(2, 4), mpq_class(-6, 3));
  EXPECT_EQ(a.re(), mpq_class(1, 2));
  EXPECT_EQ(a.im(), -2);
  EXPECT_EQ(a, GaussRational(mpq_class(1, 2), mpq_class(-2)));
}

TEST(GaussRational, Text) {
  EXPECT_EQ(GaussRational::ratio(3, 2).str(), "3/2");
  EXPECT_EQ((-GaussRational::imaginary_unit()).str(), "-i");
  EXPECT_EQ(GaussRational(mpq_class(0), mpq_class(2, 3)).str(), "2/3*i");
  EXPECT_EQ(GaussRational(mpq_class(1), mpq_class(2)).str(), "(1 + 2*i)");
  EXPECT_EQ(GaussRational(mpq_class(1), mpq_class(-1)).str(), "(1 - i)");
}

TEST(GaussRational, ISquaredIsMinusOne) {
  GaussRational i = GaussRational::imaginary_unit();
  EXPECT_EQ(i * i, GaussRational(-1));
}

TEST(GaussRational, FieldProperties) {
  Gen g(11);
  for (int it = 0; it < kIterations; ++it) {
    GaussRational a = g.coeff(), b = g.coeff(), c = g.coeff();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), GaussRational(1)) << a;
  }
}

TEST(GaussRational, DivisionByZeroThrows) { EXPECT_THROW(GaussRational(0).inverse(), Error); }

TEST(Patch, RejectsBadNames) {
  EXPECT_THROW(make_patch({}), InstanceError);
  EXPECT_THROW(make_patch({"x", "x"}), InstanceError);
  EXPECT_THROW(make_patch({"i"}), InstanceError);
  EXPECT_THROW(make_patch({"2x"}), InstanceError);
  EXPECT_EQ(*make_patch({"x1", "y_1"})->index_of("y_1"), 1u);
}

TEST(Poly, ParseAndPrint) {
  auto p = xyz();
  EXPECT_EQ(parse_poly("x^2*y - 3/2", p).str(), "x^2*y - 3/2");
  EXPECT_EQ(parse_poly("i*(x+y)", p).str(), "i*x + i*y");
  EXPECT_EQ(parse_poly("(1+2*i)*x", p).str(), "(1 + 2*i)*x");
  EXPECT_EQ(parse_poly("-(x - y)^2", p).str(), "-x^2 + 2*x*y - y^2");
  EXPECT_EQ(parse_poly("x*y/2 - x*y/2", p).str(), "0");
  EXPECT_EQ(parse_poly("  z ", p), Poly::coordinate(p, 2));
}

TEST(Poly, ParseErrorsCarryPosition) {
  auto p = make_patch({"x", "y"});
  try {
    parse_poly("x + z", p);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_poly("x +", p), ParseError);
  EXPECT_THROW(parse_poly("x / y", p), ParseError);
  EXPECT_THROW(parse_poly("x / 0", p), ParseError);
  EXPECT_THROW(parse_poly("x ^ y", p), ParseError);
  EXPECT_THROW(parse_poly("(x", p), ParseError);
  EXPECT_THROW(parse_poly("x $ y", p), ParseError);
}

TEST(Poly, PatchMismatchThrows) {
  auto p = make_patch({"x", "y"});
  auto q = make_patch({"x", "z"});
  EXPECT_THROW(Poly::coordinate(p, 0) + Poly::coordinate(q, 0), InstanceError);
  EXPECT_NO_THROW(Poly::coordinate(p, 0) + Poly::coordinate(make_patch({"x", "y"}), 1));
}

TEST(Poly, RingProperties) {
  Gen g(12);
  auto p = xyz();
  for (int it = 0; it < kIterations; ++it) {
    Poly a = g.poly(p), b = g.poly(p), c = g.poly(p);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Poly, LeibnizRule) {
  Gen g(13);
  auto p = xyz();
  for (int it = 0; it < kIterations; ++it) {
    Poly a = g.poly(p), b = g.poly(p);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ((a * b).partial(k), a.partial(k) * b + a * b.partial(k));
    }
  }
}

TEST(Poly, ConjugationIsRingAutomorphism) {
  Gen g(14);
  auto p = xyz();
  for (int it = 0; it < kIterations; ++it) {
    Poly a = g.poly(p), b = g.poly(p);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_TRUE((a + a.conj()).is_real());
  }
}

TEST(Poly, EvaluateIsHomomorphism) {
  Gen g(15);
  auto p = xyz();
  for (int it = 0; it < kIterations; ++it) {
    Poly a = g.poly(p), b = g.poly(p);
    std::vector<GaussRational> pt = {g.coeff(), g.coeff(), g.coeff()};
    EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
    EXPECT_EQ((a + b).evaluate(pt), a.evaluate(pt) + b.evaluate(pt));
  }
}

TEST(Poly, SubstituteComposesWithEvaluate) {
  Gen g(16);
  auto p = xyz();
  for (int it = 0; it < 50; ++it) {
    Poly a = g.poly(p);
    std::vector<Poly> images = {g.poly(p), g.poly(p), g.poly(p)};
    std::vector<GaussRational> pt = {g.coeff(), g.coeff(), g.coeff()};
    std::vector<GaussRational> img_pt = {images[0].evaluate(pt), images[1].evaluate(pt), images[2].evaluate(pt)};
    EXPECT_EQ(a.substitute(images).evaluate(pt), a.evaluate(img_pt));
  }
}

TEST(Poly, DegreeAndPow) {
  auto p = xyz();
  Poly x = Poly::coordinate(p, 0);
  Poly y = Poly::coordinate(p, 1);
  EXPECT_EQ(Poly(p).degree(), -1);
  EXPECT_EQ(Poly(p, 3).degree(), 0);
  EXPECT_EQ((x + y).pow(3).degree(), 3);
  EXPECT_EQ((x + y).pow(2), x * x + GaussRational(2) * x * y + y * y);
}
