#ifndef LELONG_CURVES_HPP
#define LELONG_CURVES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lelong/elimination.hpp"
#include "lelong/error.hpp"
#include "lelong/exactpoly.hpp"
#include "lelong/hompoly.hpp"
#include "lelong/matrix.hpp"

namespace lelong {

enum class Tristate { False, True, Unknown };

inline std::string to_string(Tristate t)
{
  switch (t) {
    case Tristate::False:
      return "false";
    case Tristate::True:
      return "true";
    default:
      return "unknown";
  }
}

/// Rank of the symmetric matrix of a conic: 3 irreducible, 2 line pair,
/// 1 double line.
inline int conic_rank(const HomPoly& p)
{
  if (p.degree() != 2) throw PreconditionError("conic_rank needs a degree-2 form, got degree " + std::to_string(p.degree()));
  if (p.is_zero()) throw PreconditionError("conic_rank of the zero form");
  const Rational half(1, 2);
  const Rational a = p.coeff({2, 0, 0}), b = p.coeff({1, 1, 0}), c = p.coeff({0, 2, 0});
  const Rational d = p.coeff({1, 0, 1}), e = p.coeff({0, 1, 1}), f = p.coeff({0, 0, 2});
  const Matrix m{{a, b * half, d * half}, {b * half, c, e * half}, {d * half, e * half, f}};
  return rank(m, 3);
}

/// The line through two distinct points, normalized.
inline HomPoly line_through(const ProjPoint& a, const ProjPoint& b)
{
  if (a == b) throw PreconditionError("line_through: points coincide");
  return HomPoly::linear(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]).normalized();
}

inline std::optional<ProjPoint> intersect_lines(const HomPoly& l, const HomPoly& m)
{
  const Rational a1 = l.coeff({1, 0, 0}), b1 = l.coeff({0, 1, 0}), c1 = l.coeff({0, 0, 1});
  const Rational a2 = m.coeff({1, 0, 0}), b2 = m.coeff({0, 1, 0}), c2 = m.coeff({0, 0, 1});
  const Rational x = b1 * c2 - c1 * b2, y = c1 * a2 - a1 * c2, z = a1 * b2 - b1 * a2;
  if (sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0) return std::nullopt;
  return ProjPoint(x, y, z);
}

namespace detail {

inline Integer binomial(int n, int k)
{
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Coefficients in (a, b) of p(X, Y, -aX - bY), indexed by the power of Y.
inline std::vector<Poly2> line_chart_coefficients(const HomPoly& p)
{
  std::vector<Poly2> out(static_cast<std::size_t>(p.degree()) + 1);
  for (const auto& [e, c] : p.terms()) {
    const int j = e[1], k = e[2];
    for (int l = 0; l <= k; ++l) {
      Rational coef = c * Rational(binomial(k, l));
      if (k % 2 == 1) coef = -coef;
      out[static_cast<std::size_t>(j + l)].add_term({k - l, l}, coef);
    }
  }
  return out;
}

/// Coefficients in a of p(X, -aX, Z), as one polynomial per power of X.
inline std::vector<QPoly> pencil_chart_coefficients(const HomPoly& p)
{
  std::vector<std::vector<Rational>> c(static_cast<std::size_t>(p.degree()) + 1);
  for (const auto& [e, v] : p.terms()) {
    auto& row = c[static_cast<std::size_t>(e[0] + e[1])];
    if (row.size() <= static_cast<std::size_t>(e[1])) row.resize(static_cast<std::size_t>(e[1]) + 1);
    row[static_cast<std::size_t>(e[1])] += (e[1] % 2 == 1) ? Rational(-v) : v;
  }
  std::vector<QPoly> out;
  for (auto& row : c) out.emplace_back(std::move(row));
  return out;
}

inline bool contains_line_x_zero(const HomPoly& p)
{
  for (const auto& [e, v] : p.terms())
    if (e[0] == 0) return false;
  return true;
}

struct LineSearch {
  bool any_complex = false;
  std::vector<HomPoly> rational_lines;  ///< distinct, normalized
};

/// Lines contained in the curve p = 0, searched over the three charts of
/// the dual plane.
inline LineSearch search_lines(const HomPoly& p, ZeroQuery query)
{
  LineSearch out;
  // aX + bY + Z = 0.
  const AffineZeros az = affine_common_zeros(line_chart_coefficients(p), query);
  if (az.infinite) throw PreconditionError("line search on a form with infinitely many line components");
  out.any_complex = az.has_complex_zero;
  for (const auto& [a, b] : az.rational_points) out.rational_lines.push_back(HomPoly::linear(a, b, Rational(1)));
  // aX + Y = 0.
  QPoly h;
  for (const auto& c : pencil_chart_coefficients(p)) h = gcd(h, c);
  if (h.is_zero()) throw PreconditionError("line search on a form with infinitely many line components");
  if (h.degree() >= 1) {
    out.any_complex = true;
    if (query.rational_points)
      for (const Rational& a : rational_roots(h)) out.rational_lines.push_back(HomPoly::linear(a, Rational(1), Rational(0)));
  }
  // X = 0.
  if (contains_line_x_zero(p)) {
    out.any_complex = true;
    out.rational_lines.push_back(HomPoly::linear(Rational(1), Rational(0), Rational(0)));
  }
  for (auto& l : out.rational_lines) l = l.normalized();
  return out;
}

}  // namespace detail

struct LineComponents {
  std::vector<HomPoly> lines;  ///< rational line factors with multiplicity, normalized
  HomPoly residual;            ///< p divided by all listed lines
  bool complete = false;       ///< residual certified free of complex line factors
};

inline LineComponents find_line_components(const HomPoly& p)
{
  if (p.degree() < 1 || p.degree() > 6)
    throw PreconditionError("find_line_components supports degrees 1..6, got " + std::to_string(p.degree()));
  if (p.is_zero()) throw PreconditionError("find_line_components of the zero form");
  LineComponents out;
  out.residual = p;
  const auto found = detail::search_lines(p, {false, true});
  for (const auto& l : found.rational_lines) {
    while (out.residual.degree() >= 1) {
      auto q = divide_exact(out.residual, l);
      if (!q) break;
      out.lines.push_back(l);
      out.residual = std::move(*q);
    }
  }
  if (out.residual.degree() == 0) {
    out.complete = true;
  } else {
    try {
      out.complete = !detail::search_lines(out.residual, {true, false}).any_complex;
    } catch (const UnsupportedInstance&) {
      out.complete = false;
    }
  }
  return out;
}

/// A cubic is irreducible over C iff it contains no line.
inline Tristate cubic_is_irreducible(const HomPoly& p)
{
  if (p.degree() != 3 || p.is_zero()) throw PreconditionError("cubic_is_irreducible needs a nonzero cubic");
  try {
    return detail::search_lines(p, {true, false}).any_complex ? Tristate::False : Tristate::True;
  } catch (const UnsupportedInstance&) {
    return Tristate::Unknown;
  }
}

struct CurveAnalysis {
  HomPoly poly;
  Tristate is_geometrically_irreducible = Tristate::Unknown;
  std::vector<HomPoly> line_components;
  bool lines_complete = false;
  std::vector<ProjPoint> singular_points_over_Q;
  bool singular_locus_infinite = false;
  bool smooth = false;
};

inline CurveAnalysis analyze_curve(const HomPoly& p)
{
  if (p.is_zero() || p.degree() < 1) throw PreconditionError("analyze_curve needs a nonconstant form");
  CurveAnalysis a;
  a.poly = p;
  const auto grad = partial_derivatives(p);
  const ProjectiveZeros sing = projective_common_zeros({grad[0], grad[1], grad[2]});
  a.singular_locus_infinite = sing.infinite;
  if (!sing.infinite) a.singular_points_over_Q = sing.rational_points;
  a.smooth = !sing.has_complex_zero;
  if (p.degree() <= 6) {
    const LineComponents lc = find_line_components(p);
    a.line_components = lc.lines;
    a.lines_complete = lc.complete;
  }
  switch (p.degree()) {
    case 1:
      a.is_geometrically_irreducible = Tristate::True;
      break;
    case 2:
      a.is_geometrically_irreducible = conic_rank(p) == 3 ? Tristate::True : Tristate::False;
      break;
    case 3:
      a.is_geometrically_irreducible = cubic_is_irreducible(p);
      break;
    default:
      a.is_geometrically_irreducible = a.line_components.empty() ? Tristate::Unknown : Tristate::False;
  }
  if (a.smooth) a.is_geometrically_irreducible = Tristate::True;
  return a;
}

namespace detail {

/// Local intersection multiplicity by the classical reduction: translate x
/// to the origin, then repeatedly lower the degree of the restriction to
/// y = 0. Coefficients grow quickly; kept as a test oracle.
inline Order intersection_multiplicity_by_reduction(const HomPoly& p, const HomPoly& q, const ProjPoint& x)
{
  if (p.is_zero() || q.is_zero()) return Order::infinity();
  if (sgn(evaluate(p, x)) != 0 || sgn(evaluate(q, x)) != 0) return Order(0);
  HomPoly pp = p, qq = q;
  const HomPoly g = gcd_homogeneous(p, q);
  if (g.degree() > 0) {
    if (sgn(evaluate(g, x)) == 0) return Order::infinity();
    pp = *divide_exact(p, g);
    qq = *divide_exact(q, g);
  }
  Poly2 F = local_at(pp, x), G = local_at(qq, x);
  int total = 0;
  for (;;) {
    if (sgn(F.coeff(0, 0)) != 0 || sgn(G.coeff(0, 0)) != 0) return Order(total);
    QPoly fx = F.restrict_y_zero(), gx = G.restrict_y_zero();
    if (fx.is_zero() && gx.is_zero()) return Order::infinity();  // y divides both
    if (!fx.is_zero() && (gx.is_zero() || fx.degree() > gx.degree())) {
      std::swap(F, G);
      std::swap(fx, gx);
    }
    if (fx.is_zero()) {
      total += gx.order_at_zero();
      F = F.divided_by_y();
      continue;
    }
    const int r = fx.degree(), s = gx.degree();
    G = G * fx.leading() - Poly2::monomial(gx.leading(), s - r, 0) * F;
  }
}

/// dim of the truncated local algebra Q[x, y] / ((F, G) + m^n) at the origin.
inline int truncated_colength(const Poly2& f, const Poly2& g, int n)
{
  std::vector<std::array<int, 2>> mons;
  for (int d = 0; d < n; ++d)
    for (int i = d; i >= 0; --i) mons.push_back({i, d - i});
  std::map<std::array<int, 2>, std::size_t> col;
  for (std::size_t k = 0; k < mons.size(); ++k) col[mons[k]] = k;
  Matrix rows;
  for (const Poly2* h : {&f, &g})
    for (const auto& m : mons) {
      Vector row(mons.size());
      bool any = false;
      for (const auto& [e, c] : h->terms()) {
        const int a = e[0] + m[0], b = e[1] + m[1];
        if (a + b >= n) continue;
        row[col.at({a, b})] = c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  return static_cast<int>(mons.size()) - rank(rows, mons.size());
}

}  // namespace detail

/// Local intersection multiplicity of p and q at x: the colength of (P, Q)
/// in the local ring, read off from the truncations Q[x, y] / ((F, G) + m^n)
/// once two consecutive ones agree.
inline Order intersection_multiplicity(const HomPoly& p, const HomPoly& q, const ProjPoint& x)
{
  if (p.is_zero() || q.is_zero()) return Order::infinity();
  if (sgn(evaluate(p, x)) != 0 || sgn(evaluate(q, x)) != 0) return Order(0);
  HomPoly pp = p, qq = q;
  const HomPoly g = gcd_homogeneous(p, q);
  if (g.degree() > 0) {
    if (sgn(evaluate(g, x)) == 0) return Order::infinity();
    pp = *divide_exact(p, g);
    qq = *divide_exact(q, g);
  }
  const Poly2 F = local_at(pp, x), G = local_at(qq, x);
  const int bound = pp.degree() * qq.degree();
  int prev = detail::truncated_colength(F, G, 1);
  for (int n = 2; n <= bound + 2; ++n) {
    const int cur = detail::truncated_colength(F, G, n);
    if (cur == prev) return Order(cur);
    prev = cur;
  }
  throw VerificationFailure("intersection multiplicity did not stabilize within the Bezout bound");
}

struct IntersectionRecord {
  ProjPoint point;
  int multiplicity;
};

struct BezoutTable {
  std::vector<IntersectionRecord> records;
  int residual = 0;
};

/// Rational common zeros of two coprime forms with their multiplicities;
/// residual accounts for the non-rational intersections.
inline BezoutTable bezout_table(const HomPoly& p, const HomPoly& q)
{
  if (p.is_zero() || q.is_zero() || gcd_homogeneous(p, q).degree() > 0) throw PreconditionError("infinite intersection");
  BezoutTable t;
  const ProjectiveZeros z = projective_common_zeros({p, q}, {false, true});
  int sum = 0;
  for (const auto& x : z.rational_points) {
    const Order mu = intersection_multiplicity(p, q, x);
    t.records.push_back({x, mu.value()});
    sum += mu.value();
  }
  t.residual = p.degree() * q.degree() - sum;
  if (t.residual < 0) throw VerificationFailure("negative Bezout residual");
  return t;
}

inline bool common_zeros_discrete(const HomPoly& p, const HomPoly& q)
{
  if (p.is_zero() || q.is_zero()) throw PreconditionError("common_zeros_discrete needs nonzero forms");
  return gcd_homogeneous(p, q).degree() == 0;
}

}  // namespace lelong

#endif  // LELONG_CURVES_HPP
