#include <gtest/gtest.h>

#include <lelong/config.hpp>

#include "support/generators.hpp"

using namespace lelong;
using lelong::testing::random_affine_point;
using lelong::testing::random_form;

namespace {

HomPoly P(const char* s) { return parse_hompoly(s); }

std::vector<ProjPoint> random_points(Rng& rng, int n)
{
  std::vector<ProjPoint> pts;
  while (static_cast<int>(pts.size()) < n) {
    ProjPoint p = random_affine_point(rng);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return pts;
}

/// Six double points followed by six simple points.
std::vector<VanishingCondition> sextic_conditions(const std::vector<ProjPoint>& pts)
{
  std::vector<VanishingCondition> c;
  for (std::size_t i = 0; i < pts.size(); ++i) c.push_back({pts[i], i < 6 ? 2 : 1});
  return c;
}

}  // namespace

TEST(BuildSystem, CubicThroughNinePoints)
{
  Rng rng(1);
  std::vector<VanishingCondition> c;
  for (const auto& p : random_points(rng, 9)) c.push_back({p, 1});
  const LinearSystem s = build_system(3, c);
  EXPECT_EQ(s.dimension(), 1);
  EXPECT_EQ(s.matrix_rank, 9);
}

TEST(BuildSystem, SexticWithSixDoublePoints)
{
  Rng rng(2);
  const LinearSystem s = build_system(6, sextic_conditions(random_points(rng, 12)));
  EXPECT_EQ(s.expected_dimension(), 4);
  EXPECT_EQ(s.dimension(), 4);
  EXPECT_EQ(s.dimension(), s.ambient_dimension() - s.matrix_rank);
}

TEST(BuildSystem, LinesThroughThreePoints)
{
  const ProjPoint a(0, 0, 1), b(1, 1, 1), c(2, 2, 1), d(1, 0, 1);
  EXPECT_EQ(build_system(1, {{a, 1}, {b, 1}, {c, 1}}).dimension(), 1);
  EXPECT_EQ(build_system(1, {{a, 1}, {b, 1}, {d, 1}}).dimension(), 0);
}

TEST(BuildSystem, PointsAtInfinity)
{
  // Conics through [1:0:0], [0:1:0] and singular at [0:0:1]: multiples of XY.
  const LinearSystem s = build_system(2, {{ProjPoint(1, 0, 0), 1}, {ProjPoint(0, 1, 0), 1}, {ProjPoint(0, 0, 1), 2}});
  ASSERT_EQ(s.dimension(), 1);
  EXPECT_EQ(s.kernel_basis[0], P("X*Y"));
}

TEST(BuildSystem, DuplicatePointsMerged)
{
  const ProjPoint a(0, 0, 1);
  const LinearSystem s = build_system(2, {{a, 1}, {ProjPoint(0, 0, 5), 2}});
  ASSERT_EQ(s.conditions.size(), 1u);
  EXPECT_EQ(s.conditions[0].order, 2);
  EXPECT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(s.dimension(), 3);
}

TEST(BuildSystem, DegreeCap)
{
  EXPECT_THROW(build_system(13, {}), PreconditionError);
  EXPECT_THROW(build_system(0, {}), PreconditionError);
  EXPECT_EQ(build_system(12, {}).dimension(), 91);
}

TEST(BuildSystem, KernelSatisfiesConditions)
{
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(2, 6));
    std::vector<VanishingCondition> c;
    for (const auto& p : random_points(rng, static_cast<int>(rng.uniform_int(1, 6))))
      c.push_back({p, static_cast<int>(rng.uniform_int(1, 3))});
    // One point at infinity as well.
    c.push_back({ProjPoint(rng.small_rational(), 1, 0), 1});
    const LinearSystem s = build_system(d, c);
    EXPECT_GE(s.dimension(), s.expected_dimension());
    for (bool ok : check_conditions(s)) EXPECT_TRUE(ok);
    for (const auto& b : s.kernel_basis)
      for (const auto& cond : s.conditions) EXPECT_GE(order_by_partials(b, cond.point), Order(cond.order));
  }
}

TEST(BuildSystem, RankStableUnderPermutation)
{
  Rng rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    auto c = sextic_conditions(random_points(rng, 12));
    c.erase(c.begin() + rng.uniform_int(6, 12), c.end());
    const LinearSystem s = build_system(6, c);
    rng.shuffle(c);
    const LinearSystem t = build_system(6, c);
    EXPECT_EQ(s.matrix_rank, t.matrix_rank);
    EXPECT_EQ(s.kernel_basis, t.kernel_basis);
  }
}

TEST(BuildSystem, GenericDimensionEquality)
{
  Rng rng(5);
  int equal = 0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    const LinearSystem s = build_system(6, sextic_conditions(random_points(rng, 12)));
    EXPECT_GE(s.dimension(), 4);
    if (s.dimension() == 4) ++equal;
  }
  EXPECT_GE(equal * 100, 95 * trials);
}

TEST(IndependentPair, DirectPick)
{
  Rng rng(6);
  const LinearSystem s = build_system(6, sextic_conditions(random_points(rng, 12)));
  const auto r = independent_pair(s, {P("X"), P("Y")});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.move, "direct");
  EXPECT_EQ(r.first, s.kernel_basis[0]);
  EXPECT_EQ(r.second, s.kernel_basis[1]);
}

TEST(IndependentPair, DimensionOneRejected)
{
  Rng rng(7);
  std::vector<VanishingCondition> c;
  for (const auto& p : random_points(rng, 9)) c.push_back({p, 1});
  EXPECT_THROW(independent_pair(build_system(3, c), {}), PreconditionError);
}

TEST(IndependentPair, SumMove)
{
  LinearSystem s;
  s.degree = 2;
  s.kernel_basis = {P("X^2"), P("Y^2"), P("X*Z")};
  // X divides basis[0] and basis[2], Y divides basis[1]: only sums are clean.
  const auto r = independent_pair(s, {P("X"), P("Y")});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.move, "sum");
  EXPECT_FALSE(divides(P("X"), r.first));
  EXPECT_FALSE(divides(P("Y"), r.second));
  EXPECT_EQ(forms_rank({r.first, r.second}), 2);
}

TEST(IndependentPair, AllMembersShareAFactor)
{
  Rng rng(8);
  const HomPoly c1 = random_form(rng, 3), c2 = random_form(rng, 3);
  LinearSystem s;
  s.degree = 6;
  s.kernel_basis = {c1 * c2, c1 * random_form(rng, 3), c1 * random_form(rng, 3), c1 * random_form(rng, 3)};
  const auto r = independent_pair(s, {c1, c2});
  EXPECT_FALSE(r.found);
  EXPECT_NE(r.report.find("basis[0] divisible by {factor[0],factor[1]}"), std::string::npos);
}

TEST(PencilMember, Examples)
{
  const HomPoly f = P("X^3 + Y^2*Z"), g = P("X*Y*Z - Z^3");
  auto r = pencil_member(f, g, f);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, 1);
  EXPECT_EQ(r->second, 0);
  r = pencil_member(f, g, f + g);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first, 1);
  EXPECT_EQ(r->second, 1);
  EXPECT_FALSE(pencil_member(f, g, P("X^3 + Y^3 + Z^3")));
  EXPECT_THROW(pencil_member(f, g, P("X^2")), PreconditionError);
  EXPECT_THROW(pencil_member(f, f * Rational(2), g), PreconditionError);
}

TEST(PencilMember, RoundTrip)
{
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = static_cast<int>(rng.uniform_int(1, 5));
    const HomPoly f = random_form(rng, d), g = random_form(rng, d);
    if (forms_rank({f, g}) < 2) continue;
    const Rational a = rng.small_rational(), b = rng.small_rational();
    const auto r = pencil_member(f, g, f * a + g * b);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first, a);
    EXPECT_EQ(r->second, b);
  }
}

TEST(CayleyBacharach, NineRationalPoints)
{
  Rng rng(10);
  // Two triangles of rational lines meet in 9 rational points; random
  // members of their pencil are cubics through the same 9 points.
  std::vector<HomPoly> ls, ms;
  for (int i = 0; i < 3; ++i) {
    ls.push_back(line_through(random_affine_point(rng), random_affine_point(rng)));
    ms.push_back(line_through(random_affine_point(rng), random_affine_point(rng)));
  }
  const HomPoly a = ls[0] * ls[1] * ls[2], b = ms[0] * ms[1] * ms[2];
  const HomPoly c1 = a + b * Rational(2), c2 = a * Rational(3) - b * Rational(5);
  const auto rep = cayley_bacharach_check(c1, c2);
  EXPECT_TRUE(rep.passed);
  ASSERT_EQ(rep.entries.size(), 9u);
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.dimension, 2);
    EXPECT_TRUE(e.contains_omitted);
  }
}

TEST(CayleyBacharach, Errors)
{
  const HomPoly c = P("X^3 + Y^3 + Z^3");
  EXPECT_THROW(cayley_bacharach_check(c, c), PreconditionError);
  // Over Q non-rational intersection points come in conjugate sets, so the
  // smallest non-rational residual is 2 (here 6).
  EXPECT_THROW(cayley_bacharach_check(P("X*Y*Z"), c), UnsupportedInstance);
  // Tangency: non-reduced intersection.
  EXPECT_THROW(cayley_bacharach_check(P("X*Z^2 - Y^2*Z"), P("X*Y*Z + X^3")), Error);
}
