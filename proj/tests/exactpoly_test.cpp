#include <gtest/gtest.h>

#include <lelong/exactpoly.hpp>

#include "support/generators.hpp"

using namespace lelong;
using lelong::testing::random_affine_point;
using lelong::testing::random_form;

namespace {

HomPoly P(const char* s) { return parse_hompoly(s); }

bool all_canonical(const HomPoly& p)
{
  for (const auto& [e, c] : p.terms())
    if (!is_canonical(c) || sgn(c) == 0) return false;
  return true;
}

}  // namespace

TEST(Rational, ParseAndPrint)
{
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
  EXPECT_TRUE(is_canonical(parse_rational("-12/18")));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(ProjPoint, NormalizesByLastNonzeroCoordinate)
{
  ProjPoint a(Rational(2), Rational(4), Rational(2));
  EXPECT_EQ(a, ProjPoint(Rational(1), Rational(2), Rational(1)));
  ProjPoint b(Rational(3), Rational(-6), Rational(0));
  EXPECT_EQ(to_string(b[0]), "-1/2");
  EXPECT_EQ(to_string(b[1]), "1");
  EXPECT_THROW(ProjPoint(Rational(0), Rational(0), Rational(0)), PreconditionError);
}

TEST(HomPoly, RejectsMixedDegreeTerms)
{
  // X^2*Z - Y^3 is homogeneous of degree 3; mixing degrees needs e.g. X^2 - Y^3.
  EXPECT_NO_THROW(P("X^2*Z - Y^3"));
  EXPECT_THROW(P("X^2 - Y^3"), PreconditionError);
  HomPoly p(2);
  EXPECT_THROW(p.add_term({1, 0, 0}, Rational(1)), PreconditionError);
}

TEST(HomPoly, ZeroKeepsDegreeAndOrderIsGrlex)
{
  HomPoly z(5);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), 5);
  const HomPoly p = P("Z^2 + Y*Z + X*Z + Y^2 + X*Y + X^2");
  std::vector<Exponent> order;
  for (const auto& [e, c] : p.terms()) order.push_back(e);
  EXPECT_EQ(order, monomials_of_degree(2));
  EXPECT_EQ(order.front(), (Exponent{2, 0, 0}));
  EXPECT_EQ(order.back(), (Exponent{0, 0, 2}));
}

TEST(HomPoly, ParsePrintRoundTrip)
{
  const HomPoly p = P("X^2*Z - 3/2*Y^3 + Z^3");
  EXPECT_EQ(parse_hompoly(p.to_string()), p);
  EXPECT_EQ(P("X*Y*Z").to_string(), "X*Y*Z");
}

TEST(Evaluate, Examples)
{
  EXPECT_EQ(evaluate(P("X*Y*Z"), ProjPoint(1, 1, 1)), 1);
  EXPECT_EQ(evaluate(P("X^3 + Y^3 + Z^3"), ProjPoint(1, -1, 0)), 0);
}

TEST(Evaluate, VanishingIsRepresentativeIndependent)
{
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const HomPoly p = random_form(rng, 3);
    const ProjPoint x = random_affine_point(rng);
    const Rational s = rng.small_rational() + 11;
    const std::array<Rational, 3> scaled{x[0] * s, x[1] * s, x[2] * s};
    EXPECT_EQ(p(scaled), evaluate(p, x) * rational_pow(s, 3));
  }
}

TEST(PartialDerivatives, Examples)
{
  const auto d = partial_derivatives(P("X^2"));
  EXPECT_EQ(d[0], P("2*X"));
  EXPECT_TRUE(d[1].is_zero());
  EXPECT_TRUE(d[2].is_zero());
  EXPECT_EQ(d[1].degree(), 1);
  const auto e = partial_derivatives(P("X*Y*Z"));
  EXPECT_EQ(e[0], P("Y*Z"));
  EXPECT_EQ(e[1], P("X*Z"));
  EXPECT_EQ(e[2], P("X*Y"));
  try {
    partial_derivatives(HomPoly::constant(Rational(3)));
    FAIL() << "expected an error";
  } catch (const PreconditionError& err) {
    EXPECT_STREQ(err.what(), "constant polynomial");
  }
}

TEST(PartialDerivatives, EulerIdentityOnRandomForms)
{
  Rng rng(2024);
  for (int d = 1; d <= 6; ++d)
    for (int trial = 0; trial < 5; ++trial) {
      const HomPoly p = random_form(rng, d, 20);
      const auto g = partial_derivatives(p);
      const HomPoly lhs = HomPoly::variable(0) * g[0] + HomPoly::variable(1) * g[1] + HomPoly::variable(2) * g[2];
      EXPECT_EQ(lhs, p * Rational(d));
      EXPECT_TRUE(all_canonical(g[0]) && all_canonical(g[1]) && all_canonical(g[2]));
    }
}

TEST(VanishingOrder, Examples)
{
  const ProjPoint origin(0, 0, 1);
  EXPECT_EQ(vanishing_order(P("X*Y"), origin), Order(2));
  EXPECT_EQ(vanishing_order(P("X"), origin), Order(1));
  EXPECT_EQ(vanishing_order(P("X*Y"), ProjPoint(1, 1, 1)), Order(0));
  EXPECT_TRUE(vanishing_order(HomPoly(4), origin).is_infinite());
}

TEST(VanishingOrder, SquaredLineTimesNonvanishingFactor)
{
  // Expand (aX + bY + cZ)^2 * q and compare both computation routes.
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ProjPoint x = random_affine_point(rng);
    const Rational a = rng.small_rational(), b = rng.small_rational() + 13;
    const Rational c = -(a * x[0] + b * x[1]);
    const HomPoly line = HomPoly::linear(a, b, c);
    HomPoly q = random_form(rng, 2);
    if (sgn(evaluate(q, x)) == 0) q += P("Z^2");
    ASSERT_NE(sgn(evaluate(q, x)), 0);
    const HomPoly p = line * line * q;
    EXPECT_EQ(vanishing_order(p, x), Order(2));
    EXPECT_EQ(order_by_partials(p, x), Order(2));
  }
}

TEST(VanishingOrder, AdditiveOnProducts)
{
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const ProjPoint x = random_affine_point(rng);
    // Force vanishing at x by using lines through it.
    auto through = [&](int k) {
      HomPoly f = HomPoly::constant(Rational(1));
      for (int i = 0; i < k; ++i) {
        const Rational a = rng.small_rational(), b = rng.small_rational() + 21;
        f = f * HomPoly::linear(a, b, -(a * x[0] + b * x[1]));
      }
      return f;
    };
    const HomPoly p = through(static_cast<int>(rng.uniform_int(0, 2))) * random_form(rng, 1);
    const HomPoly q = through(static_cast<int>(rng.uniform_int(0, 2))) * random_form(rng, 2);
    EXPECT_EQ(vanishing_order(p * q, x), vanishing_order(p, x) + vanishing_order(q, x));
    EXPECT_EQ(order_by_partials(p * q, x), vanishing_order(p * q, x));
  }
}

TEST(VanishingOrder, PointAtInfinity)
{
  // Y^2 Z - X^3 has its flex at [0:1:0]; the line Z is tangent there to order 3.
  const HomPoly cusp = P("Y^2*Z - X^3");
  EXPECT_EQ(vanishing_order(cusp, ProjPoint(0, 1, 0)), Order(1));
  EXPECT_EQ(vanishing_order(cusp, ProjPoint(0, 0, 1)), Order(2));
  EXPECT_EQ(order_by_partials(cusp, ProjPoint(0, 0, 1)), Order(2));
}

TEST(DivideExact, ExactAndInexact)
{
  const HomPoly a = P("X + Y"), b = P("X*Z - Y^2");
  const auto q = divide_exact(a * b, b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, a);
  EXPECT_FALSE(divide_exact(a * b + P("Z^3"), b).has_value());
  EXPECT_TRUE(divides(P("X"), P("X*Y*Z")));
  EXPECT_FALSE(divides(P("X + Z"), P("X*Y*Z")));
}

TEST(GcdHomogeneous, Examples)
{
  const HomPoly C = P("X*Z - Y^2"), D = P("X^3 + Y^3 + Z^3");
  EXPECT_EQ(gcd_homogeneous(P("X") * C, P("X") * D), P("X"));
  EXPECT_EQ(gcd_homogeneous(C, D), HomPoly::constant(Rational(1)));
  const HomPoly p = P("3*X^2*Y - 6*Y*Z^2");
  EXPECT_EQ(gcd_homogeneous(p, p), p.normalized());
}

TEST(GcdHomogeneous, DividesBothAndRecoversPlantedFactor)
{
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const HomPoly common = random_form(rng, static_cast<int>(rng.uniform_int(1, 2)));
    const HomPoly f = random_form(rng, static_cast<int>(rng.uniform_int(1, 3)));
    const HomPoly g = random_form(rng, static_cast<int>(rng.uniform_int(1, 3)));
    const HomPoly p = common * f, q = common * g;
    const HomPoly h = gcd_homogeneous(p, q);
    EXPECT_TRUE(divides(h, p));
    EXPECT_TRUE(divides(h, q));
    EXPECT_TRUE(divides(common, h));
    EXPECT_EQ(h.leading_coefficient(), 1);
  }
}

TEST(GcdHomogeneous, HandlesVariableFactors)
{
  EXPECT_EQ(gcd_homogeneous(P("X*Y*Z"), P("X*Y*Z")), P("X*Y*Z"));
  EXPECT_EQ(gcd_homogeneous(P("Z^2*X"), P("Z*Y^2")), P("Z"));
  EXPECT_EQ(gcd_homogeneous(P("Z^2*X + Z^3"), P("Z*X^2 - Z^3")), P("X*Z + Z^2"));
}

TEST(GcdHomogeneous, AgreesWithEuclideanOracle)
{
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int dg = static_cast<int>(rng.uniform_int(0, 2));
    const HomPoly g = random_form(rng, dg, 3);
    const HomPoly p = g * random_form(rng, static_cast<int>(rng.uniform_int(1, 3)), 4);
    const HomPoly q = g * random_form(rng, static_cast<int>(rng.uniform_int(1, 3)), 4);
    EXPECT_EQ(gcd_homogeneous(p, q), detail::gcd_by_prs(p, q)) << p.to_string() << " | " << q.to_string();
  }
}
