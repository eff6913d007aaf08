#include <gtest/gtest.h>

#include <lelong/curves.hpp>

#include "support/generators.hpp"
#include "support/multiplicity_check.hpp"
#include "support/resultant_oracle.hpp"

using namespace lelong;
using lelong::testing::random_affine_point;
using lelong::testing::random_form;
using lelong::testing::random_local_form;
using lelong::testing::resultant_multiplicity;

namespace {

HomPoly P(const char* s) { return parse_hompoly(s); }

}  // namespace

TEST(Resultant, Basics)
{
  // Res_y(y - x, y + x) = -2x up to sign.
  const Poly2 f = Poly2::y() - Poly2::x(), g = Poly2::y() + Poly2::x();
  const QPoly r = resultant_y(f, g);
  EXPECT_EQ(r.degree(), 1);
  EXPECT_EQ(r[0], 0);
  // Res_y(y^2 - x, y) = -x.
  EXPECT_EQ(resultant_y(Poly2::y() * Poly2::y() - Poly2::x(), Poly2::y()), QPoly(std::vector<Rational>{0, -1}));
}

TEST(RationalRoots, FindsAllRoots)
{
  // (x - 3/2)(x + 5)(x^2 + 1) x^2
  QPoly f = QPoly(std::vector<Rational>{Rational(-3, 2), 1}) * QPoly(std::vector<Rational>{5, 1}) *
            QPoly(std::vector<Rational>{1, 0, 1}) * QPoly::monomial(Rational(1), 2);
  const auto roots = rational_roots(f);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], -5);
  EXPECT_EQ(roots[1], 0);
  EXPECT_EQ(roots[2], Rational(3, 2));
}

TEST(RationalRoots, LargeCoefficientRoots)
{
  const Rational a(123457, 991), b(-77777, 4096);
  QPoly f = QPoly(std::vector<Rational>{-a, 1}) * QPoly(std::vector<Rational>{-b, 1});
  f = f * QPoly(std::vector<Rational>{-a, 1}) * QPoly(std::vector<Rational>{2, 0, 0, 1});
  const auto roots = rational_roots(f);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], b);
  EXPECT_EQ(roots[1], a);
}

TEST(CommonZeros, ProjectiveExamples)
{
  const auto z = projective_common_zeros({P("X"), P("Y")});
  EXPECT_FALSE(z.infinite);
  ASSERT_EQ(z.rational_points.size(), 1u);
  EXPECT_EQ(z.rational_points[0], ProjPoint(0, 0, 1));
  const auto w = projective_common_zeros({P("X*Y"), P("X*Z")});
  EXPECT_TRUE(w.infinite);
  const auto inf = projective_common_zeros({P("Z"), P("X")});
  ASSERT_EQ(inf.rational_points.size(), 1u);
  EXPECT_EQ(inf.rational_points[0], ProjPoint(0, 1, 0));
  // x^2 + y^2 = z^2 meets x = 0 only at irrational-free points (0, +-1).
  const auto c = projective_common_zeros({P("X^2 + Y^2 - Z^2"), P("X")});
  EXPECT_EQ(c.rational_points.size(), 2u);
  // x^2 + y^2 + z^2 = 0 and z = 0 meet in two non-real points.
  const auto nr = projective_common_zeros({P("X^2 + Y^2 + Z^2"), P("Z")});
  EXPECT_TRUE(nr.has_complex_zero);
  EXPECT_TRUE(nr.rational_points.empty());
  // Gradient of the Fermat cubic: no common zero.
  const auto sm = projective_common_zeros({P("3*X^2"), P("3*Y^2"), P("3*Z^2")});
  EXPECT_FALSE(sm.has_complex_zero);
}

TEST(ConicRank, Examples)
{
  EXPECT_EQ(conic_rank(P("X*Y")), 2);
  EXPECT_EQ(conic_rank(P("X^2")), 1);
  EXPECT_EQ(conic_rank(P("X*Z - Y^2")), 3);
  EXPECT_THROW(conic_rank(P("X^3")), PreconditionError);
}

TEST(LineComponents, Examples)
{
  auto a = find_line_components(P("X*Y*Z"));
  EXPECT_EQ(a.lines.size(), 3u);
  EXPECT_TRUE(a.complete);
  auto b = find_line_components(P("X^3 + Y^3 + Z^3"));
  EXPECT_TRUE(b.lines.empty());
  // The Fermat cubic contains 27 lines over C (e.g. X + wY with w^3 = 1 ... ),
  // but only over extensions; X + Y is not a component because Z^3 remains.
  EXPECT_TRUE(b.complete);
  auto c = find_line_components(P("X + Y") * P("X*Z - Y^2"));
  ASSERT_EQ(c.lines.size(), 1u);
  EXPECT_EQ(c.lines[0], P("X + Y"));
  EXPECT_TRUE(c.complete);
  EXPECT_EQ(conic_rank(c.residual), 3);
}

TEST(LineComponents, MultiplicityAndIrrationalLines)
{
  auto a = find_line_components(P("X^2*Y"));
  EXPECT_EQ(a.lines.size(), 3u);
  EXPECT_TRUE(a.complete);
  // X^2 - 2Y^2 splits over Q(sqrt 2) only.
  auto b = find_line_components(P("X^2 - 2*Y^2") * P("Z"));
  ASSERT_EQ(b.lines.size(), 1u);
  EXPECT_FALSE(b.complete);
}

TEST(CubicIrreducible, Examples)
{
  EXPECT_EQ(cubic_is_irreducible(P("X*Y*Z")), Tristate::False);
  EXPECT_EQ(cubic_is_irreducible(P("X^3 + Y^3 + Z^3")), Tristate::True);
  EXPECT_EQ(cubic_is_irreducible(P("Y^2*Z - X^3 - X^2*Z")), Tristate::True);
  // Conic times line over an extension: (X^2 - 2Y^2) Z is reducible.
  EXPECT_EQ(cubic_is_irreducible(P("X^2*Z - 2*Y^2*Z")), Tristate::False);
  // X^3 - 2 Z^3 is a product of three non-rational lines through [0:1:0].
  EXPECT_EQ(cubic_is_irreducible(P("X^3 - 2*Z^3")), Tristate::False);
}

TEST(CurveAnalysis, NodalCubicAndSmoothness)
{
  const auto a = analyze_curve(P("Y^2*Z - X^3 - X^2*Z"));
  EXPECT_FALSE(a.smooth);
  ASSERT_EQ(a.singular_points_over_Q.size(), 1u);
  EXPECT_EQ(a.singular_points_over_Q[0], ProjPoint(0, 0, 1));
  EXPECT_EQ(a.is_geometrically_irreducible, Tristate::True);
  const auto f = analyze_curve(P("X^3 + Y^3 + Z^3"));
  EXPECT_TRUE(f.smooth);
  EXPECT_TRUE(f.singular_points_over_Q.empty());
  EXPECT_EQ(f.is_geometrically_irreducible, Tristate::True);
}

TEST(SmoothImpliesIrreducible, RandomCubics)
{
  Rng rng(404);
  for (int trial = 0; trial < 8; ++trial) {
    const HomPoly p = random_form(rng, 3, 3);
    const auto a = analyze_curve(p);
    if (a.smooth) {
      EXPECT_EQ(cubic_is_irreducible(p), Tristate::True);
      EXPECT_TRUE(a.singular_points_over_Q.empty());
    }
  }
}

TEST(IntersectionMultiplicity, Examples)
{
  const ProjPoint o(0, 0, 1);
  EXPECT_EQ(intersection_multiplicity(P("X"), P("Y"), o), Order(1));
  EXPECT_EQ(intersection_multiplicity(P("Y*Z - X^2"), P("Y"), o), Order(2));
  EXPECT_EQ(intersection_multiplicity(P("Y^2*Z - X^3"), P("Y"), o), Order(3));
  EXPECT_EQ(intersection_multiplicity(P("X"), P("Y"), ProjPoint(1, 1, 1)), Order(0));
  EXPECT_TRUE(intersection_multiplicity(P("X*Y"), P("X*Z"), o).is_infinite());
  // Common factor away from the point does not matter.
  EXPECT_EQ(intersection_multiplicity(P("X") * P("X + Z"), P("Y") * P("X + Z"), o), Order(1));
}

TEST(IntersectionMultiplicity, OracleAgreesOnExamples)
{
  const ProjPoint o(0, 0, 1);
  EXPECT_EQ(resultant_multiplicity(P("Y*Z - X^2"), P("Y"), o), 2);
  EXPECT_EQ(resultant_multiplicity(P("Y^2*Z - X^3"), P("Y"), o), 3);
  EXPECT_EQ(resultant_multiplicity(P("Y^2*Z - X^3"), P("X"), o), 2);
}

TEST(IntersectionMultiplicity, MatchesResultantOracleOnRandomPairs)
{
  const auto run = lelong::testing::run_multiplicity_comparison(123, 120);
  EXPECT_EQ(run.pairs, 120);
  EXPECT_GT(run.points, 100);
  for (const auto& f : run.failures) ADD_FAILURE() << f;
}

TEST(IntersectionMultiplicity, Multiplicative)
{
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const ProjPoint x = random_affine_point(rng, 5, 3);
    const HomPoly p1 = random_local_form(rng, 2, 1, x, 3);
    const HomPoly p2 = random_local_form(rng, 2, 1, x, 3);
    const HomPoly q = random_local_form(rng, 3, 1, x, 4);
    if (gcd_homogeneous(p1 * p2, q).degree() > 0) continue;
    EXPECT_EQ(intersection_multiplicity(p1 * p2, q, x),
              intersection_multiplicity(p1, q, x) + intersection_multiplicity(p2, q, x));
  }
}

TEST(BezoutTable, Examples)
{
  const BezoutTable t = bezout_table(P("X*Z - Y^2"), P("X"));
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].point, ProjPoint(0, 0, 1));
  EXPECT_EQ(t.records[0].multiplicity, 2);
  EXPECT_EQ(t.residual, 0);
  EXPECT_THROW(bezout_table(P("X*Y"), P("X*Z")), PreconditionError);
  // Two conics through four rational points.
  const std::vector<ProjPoint> pts{ProjPoint(0, 0, 1), ProjPoint(1, 0, 1), ProjPoint(0, 1, 1), ProjPoint(2, 3, 1)};
  const HomPoly l01 = line_through(pts[0], pts[1]), l23 = line_through(pts[2], pts[3]);
  const HomPoly l02 = line_through(pts[0], pts[2]), l13 = line_through(pts[1], pts[3]);
  const HomPoly c1 = l01 * l23 + l02 * l13 * Rational(3), c2 = l01 * l23 - l02 * l13 * Rational(5);
  const BezoutTable u = bezout_table(c1, c2);
  EXPECT_EQ(u.records.size(), 4u);
  for (const auto& r : u.records) EXPECT_EQ(r.multiplicity, 1);
  EXPECT_EQ(u.residual, 0);
}

TEST(BezoutTable, IrrationalIntersectionsGoToResidual)
{
  const BezoutTable t = bezout_table(P("X^2 - 2*Z^2"), P("Y"));
  EXPECT_TRUE(t.records.empty());
  EXPECT_EQ(t.residual, 2);
}

TEST(CommonZerosDiscrete, Examples)
{
  EXPECT_FALSE(common_zeros_discrete(P("X*Y"), P("X*Z")));
  EXPECT_TRUE(common_zeros_discrete(P("X*Z - Y^2"), P("X^3 + Y^3 + Z^3")));
  Rng rng(8);
  EXPECT_TRUE(common_zeros_discrete(random_form(rng, 6), random_form(rng, 6)));
}

TEST(IntersectionMultiplicity, ColengthAgreesWithReduction)
{
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const ProjPoint at = random_affine_point(rng, 4, 3);
    const int k1 = static_cast<int>(rng.uniform_int(1, 2)), k2 = static_cast<int>(rng.uniform_int(1, 3));
    const HomPoly p = random_local_form(rng, 3, k1, at, 4);
    const HomPoly q = random_local_form(rng, 3, k2, at, 4);
    if (p.is_zero() || q.is_zero()) continue;
    EXPECT_EQ(intersection_multiplicity(p, q, at), detail::intersection_multiplicity_by_reduction(p, q, at))
        << p.to_string() << " | " << q.to_string();
  }
}
