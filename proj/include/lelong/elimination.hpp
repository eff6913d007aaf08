#ifndef LELONG_ELIMINATION_HPP
#define LELONG_ELIMINATION_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "lelong/error.hpp"
#include "lelong/exactpoly.hpp"
#include "lelong/hompoly.hpp"
#include "lelong/matrix.hpp"
#include "lelong/poly2.hpp"
#include "lelong/rational_roots.hpp"
#include "lelong/upoly.hpp"

namespace lelong {

/// Resultant of f and g with respect to y, as a polynomial in x.
inline QPoly resultant_y(const Poly2& f, const Poly2& g)
{
  if (f.is_zero() || g.is_zero()) return QPoly();
  const QxPoly a = f.as_poly_in_y();
  const QxPoly b = g.as_poly_in_y();
  const int m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return QPoly(Rational(1));
  if (m == 0) {
    QPoly r(Rational(1));
    for (int i = 0; i < n; ++i) r = r * a[0];
    return r;
  }
  if (n == 0) {
    QPoly r(Rational(1));
    for (int i = 0; i < m; ++i) r = r * b[0];
    return r;
  }
  const auto size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<QPoly>> s(size, std::vector<QPoly>(size));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b[n - j];
  return bareiss_determinant(std::move(s));
}

/// Summary of the common zero set of a family of polynomials.
struct AffineZeros {
  bool infinite = false;
  bool has_complex_zero = false;  ///< computed only when requested
  std::vector<std::pair<Rational, Rational>> rational_points;
};

struct ProjectiveZeros {
  bool infinite = false;
  bool has_complex_zero = false;
  std::vector<ProjPoint> rational_points;
};

struct ZeroQuery {
  bool complex_existence = true;
  bool rational_points = true;
};

namespace detail {

/// Polynomial in y with coefficients in Q[x]/(m).
using ResiduePoly = std::vector<QPoly>;

inline void trim_mod(ResiduePoly& p, const QPoly& m)
{
  for (auto& c : p) c = c % m;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

struct SplitOrGcd {
  std::optional<QPoly> split;  ///< nontrivial factor of m found
  ResiduePoly gcd;
};

/// Monic gcd in (Q[x]/m)[y], or a factor of m when a leading coefficient
/// is a zero divisor.
inline SplitOrGcd residue_gcd(ResiduePoly a, ResiduePoly b, const QPoly& m)
{
  trim_mod(a, m);
  trim_mod(b, m);
  auto make_monic = [&](ResiduePoly& p) -> std::optional<QPoly> {
    const QPoly lc = p.back();
    auto [g, s, t] = xgcd(lc, m);
    if (g.degree() > 0) return g;
    for (auto& c : p) c = (c * s) % m;
    return std::nullopt;
  };
  if (!a.empty())
    if (auto f = make_monic(a)) return {f, {}};
  while (!b.empty()) {
    if (auto f = make_monic(b)) return {f, {}};
    // a mod b with b monic.
    while (a.size() >= b.size()) {
      const QPoly c = a.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] - c * b[j]) % m;
      a.pop_back();
      while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    std::swap(a, b);
  }
  return {std::nullopt, std::move(a)};
}

/// True if the family has a common zero (x, y) with m(x) = 0, by dynamic
/// evaluation over the squarefree modulus m.
inline bool residue_system_has_zero(const QPoly& m, const std::vector<ResiduePoly>& polys)
{
  if (m.degree() < 1) return false;
  ResiduePoly g;
  for (const auto& p : polys) {
    SplitOrGcd r = residue_gcd(g, p, m);
    if (r.split) {
      const QPoly m1 = monic(*r.split);
      const QPoly m2 = monic(exact_quotient(m, m1));
      return residue_system_has_zero(m1, polys) || residue_system_has_zero(m2, polys);
    }
    g = std::move(r.gcd);
    if (g.size() <= 1) return false;  // gcd is a unit: no common zero over any root
  }
  return g.size() >= 2;
}

inline bool is_nonzero_constant(const Poly2& p) { return !p.is_zero() && p.total_degree() == 0; }

}  // namespace detail

/// Common zeros in the affine plane of a family of polynomials in (x, y).
inline AffineZeros affine_common_zeros(std::vector<Poly2> polys, ZeroQuery query = {})
{
  AffineZeros out;
  polys.erase(std::remove_if(polys.begin(), polys.end(), [](const Poly2& p) { return p.is_zero(); }), polys.end());
  if (polys.empty()) {
    out.infinite = out.has_complex_zero = true;
    return out;
  }
  for (const auto& p : polys)
    if (detail::is_nonzero_constant(p)) return out;
  Poly2 g = polys.front();
  for (std::size_t i = 1; i < polys.size() && g.total_degree() > 0; ++i) g = gcd2(g, polys[i]);
  if (g.total_degree() > 0) {
    out.infinite = out.has_complex_zero = true;
    return out;
  }
  // Base polynomial: smallest total degree, first on ties.
  std::stable_sort(polys.begin(), polys.end(),
                   [](const Poly2& a, const Poly2& b) { return a.total_degree() < b.total_degree(); });
  // Shear so that the base polynomial has a constant leading coefficient in y.
  const Poly2 top = polys.front().top_form();
  int c = 0;
  while (sgn(top(Rational(c), Rational(1))) == 0) ++c;
  std::vector<Poly2> sheared;
  for (const auto& p : polys) sheared.push_back(c == 0 ? p : p.sheared(Rational(c)));
  const Poly2& f1 = sheared.front();
  // A combination of the others coprime to f1.
  Poly2 f2;
  bool found = false;
  for (int t = 0; t < 64 && !found; ++t) {
    f2 = Poly2();
    for (std::size_t i = 1; i < sheared.size(); ++i)
      f2 += sheared[i] * rational_pow(Rational(static_cast<long>(i)), static_cast<unsigned>(t));
    if (!f2.is_zero() && gcd2(f1, f2).total_degree() == 0) found = true;
  }
  if (!found) throw UnsupportedInstance("no combination of the system coprime to its base polynomial");
  const QPoly res = resultant_y(f1, f2);
  if (query.complex_existence) {
    const QPoly m = squarefree_part(res);
    std::vector<detail::ResiduePoly> rp;
    for (const auto& p : sheared) rp.push_back(p.as_poly_in_y().coeffs());
    out.has_complex_zero = detail::residue_system_has_zero(monic(m), rp);
  }
  if (query.rational_points) {
    for (const Rational& x0 : rational_roots(res)) {
      QPoly h;
      for (const auto& p : sheared) h = gcd(h, p.restrict_x(x0));
      if (h.degree() < 1) continue;
      for (const Rational& y0 : rational_roots(h)) out.rational_points.emplace_back(x0 + c * y0, y0);
    }
    std::sort(out.rational_points.begin(), out.rational_points.end());
    if (!out.rational_points.empty()) out.has_complex_zero = true;
  }
  return out;
}

/// Common zeros in the projective plane of a family of forms.
inline ProjectiveZeros projective_common_zeros(const std::vector<HomPoly>& forms, ZeroQuery query = {})
{
  ProjectiveZeros out;
  std::vector<HomPoly> nz;
  for (const auto& f : forms)
    if (!f.is_zero()) nz.push_back(f);
  if (nz.empty()) {
    out.infinite = out.has_complex_zero = true;
    return out;
  }
  for (const auto& f : nz)
    if (f.degree() == 0) return out;
  HomPoly g = nz.front();
  for (std::size_t i = 1; i < nz.size() && g.degree() > 0; ++i) g = gcd_homogeneous(g, nz[i]);
  if (g.degree() > 0) {
    out.infinite = out.has_complex_zero = true;
    return out;
  }
  // Chart Z = 1.
  std::vector<Poly2> affine;
  for (const auto& f : nz) affine.push_back(dehomogenize(f, 2));
  const AffineZeros az = affine_common_zeros(affine, query);
  out.has_complex_zero = az.has_complex_zero;
  for (const auto& [x, y] : az.rational_points) out.rational_points.push_back(ProjPoint::affine(x, y));
  // Line Z = 0, chart X = 1: points [1 : y : 0].
  QPoly h;
  for (const auto& f : nz) {
    std::vector<Rational> c(static_cast<std::size_t>(f.degree()) + 1);
    for (const auto& [e, v] : f.terms())
      if (e[2] == 0) c[static_cast<std::size_t>(e[1])] += v;
    h = gcd(h, QPoly(std::move(c)));
  }
  if (h.degree() >= 1) {
    out.has_complex_zero = true;
    if (query.rational_points)
      for (const Rational& y : rational_roots(h)) out.rational_points.emplace_back(Rational(1), y, Rational(0));
  }
  // The point [0 : 1 : 0].
  const ProjPoint inf(Rational(0), Rational(1), Rational(0));
  bool all_vanish = true;
  for (const auto& f : nz)
    if (sgn(evaluate(f, inf)) != 0) all_vanish = false;
  if (all_vanish) {
    out.has_complex_zero = true;
    out.rational_points.push_back(inf);
  }
  std::sort(out.rational_points.begin(), out.rational_points.end());
  return out;
}

}  // namespace lelong

#endif  // LELONG_ELIMINATION_HPP
