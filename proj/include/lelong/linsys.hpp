#ifndef LELONG_LINSYS_HPP
#define LELONG_LINSYS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lelong/curves.hpp"
#include "lelong/error.hpp"
#include "lelong/exactpoly.hpp"
#include "lelong/hompoly.hpp"
#include "lelong/matrix.hpp"

namespace lelong {

/// p must vanish to order >= `order` at `point`: every partial derivative
/// of total order < `order` vanishes there.
struct VanishingCondition {
  ProjPoint point;
  int order = 1;

  int constraint_count() const { return order * (order + 1) / 2; }
  friend bool operator==(const VanishingCondition& a, const VanishingCondition& b)
  {
    return a.point == b.point && a.order == b.order;
  }
};

struct LinearSystem {
  int degree = 0;
  std::vector<VanishingCondition> conditions;
  int matrix_rank = 0;
  std::vector<HomPoly> kernel_basis;  ///< canonical: reduced echelon over the monomial order
  std::vector<std::string> warnings;

  int ambient_dimension() const { return monomial_count(degree); }
  int dimension() const { return static_cast<int>(kernel_basis.size()); }
  /// C(d+2, 2) - sum m(m+1)/2, the count assuming independent conditions.
  int expected_dimension() const
  {
    int n = ambient_dimension();
    for (const auto& c : conditions) n -= c.constraint_count();
    return n;
  }
};

inline constexpr int kMaxSystemDegree = 12;

namespace detail {

inline Rational binomial_q(int n, int k)
{
  if (k < 0 || k > n) return Rational(0);
  return Rational(binomial(n, k));
}

/// Rows of the constraint matrix for one condition. Each row applies a
/// scaled derivative operator d_u^a d_w^b / (a! b!) with a + b < order in
/// the affine chart where the point's largest coordinate is 1.
inline Matrix condition_rows(int degree, const VanishingCondition& c)
{
  const int v = c.point.largest_coordinate();
  const auto [u, w] = chart_variables(v);
  const Rational su = c.point[u] / c.point[v], sw = c.point[w] / c.point[v];
  const auto mons = monomials_of_degree(degree);
  Matrix rows;
  for (int total = 0; total < c.order; ++total) {
    for (int a = total; a >= 0; --a) {
      const int b = total - a;
      Vector row;
      row.reserve(mons.size());
      for (const auto& e : mons) {
        const int i = e[static_cast<std::size_t>(u)], j = e[static_cast<std::size_t>(w)];
        if (i < a || j < b) {
          row.emplace_back(0);
          continue;
        }
        row.push_back(binomial_q(i, a) * binomial_q(j, b) * rational_pow(su, static_cast<unsigned>(i - a)) *
                      rational_pow(sw, static_cast<unsigned>(j - b)));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline HomPoly form_from_vector(int degree, const Vector& v)
{
  HomPoly p(degree);
  const auto mons = monomials_of_degree(degree);
  for (std::size_t k = 0; k < mons.size(); ++k)
    if (sgn(v[k]) != 0) p.add_term(mons[k], v[k]);
  return p;
}

inline Vector vector_from_form(const HomPoly& p)
{
  const auto mons = monomials_of_degree(p.degree());
  Vector v;
  v.reserve(mons.size());
  for (const auto& e : mons) v.push_back(p.coeff(e));
  return v;
}

}  // namespace detail

/// Exact rank and canonical kernel basis of the degree-`degree` system with
/// the given vanishing conditions. Repeated points are merged to the largest
/// order; conflicting orders produce a warning.
inline LinearSystem build_system(int degree, std::vector<VanishingCondition> conditions)
{
  if (degree < 1 || degree > kMaxSystemDegree)
    throw PreconditionError("build_system: degree must be in 1.." + std::to_string(kMaxSystemDegree) + ", got " +
                            std::to_string(degree));
  LinearSystem s;
  s.degree = degree;
  for (auto& c : conditions) {
    if (c.order < 1) throw PreconditionError("vanishing order must be positive, got " + std::to_string(c.order));
    auto it = std::find_if(s.conditions.begin(), s.conditions.end(),
                           [&](const VanishingCondition& d) { return d.point == c.point; });
    if (it == s.conditions.end()) {
      s.conditions.push_back(std::move(c));
      continue;
    }
    if (it->order != c.order)
      s.warnings.push_back("point " + c.point.to_string() + " listed with orders " + std::to_string(it->order) + " and " +
                           std::to_string(c.order) + "; using " + std::to_string(std::max(it->order, c.order)));
    it->order = std::max(it->order, c.order);
  }
  Matrix m;
  for (const auto& c : s.conditions)
    for (auto& row : detail::condition_rows(degree, c)) m.push_back(std::move(row));
  const auto ncols = static_cast<std::size_t>(monomial_count(degree));
  const Matrix kernel = kernel_basis(m, ncols);
  s.matrix_rank = static_cast<int>(ncols) - static_cast<int>(kernel.size());
  for (const auto& v : kernel) s.kernel_basis.push_back(detail::form_from_vector(degree, v));
  return s;
}

/// Per-condition re-check of a system's basis through vanishing_order, which
/// works from local expansions rather than the constraint matrix.
inline std::vector<bool> check_conditions(const LinearSystem& s)
{
  std::vector<bool> ok;
  for (const auto& c : s.conditions) {
    bool pass = true;
    for (const auto& b : s.kernel_basis)
      if (vanishing_order(b, c.point) < Order(c.order)) pass = false;
    ok.push_back(pass);
  }
  return ok;
}

/// True if p lies in the system's span.
inline bool in_system(const LinearSystem& s, const HomPoly& p)
{
  if (p.degree() != s.degree) return false;
  if (p.is_zero()) return true;
  Matrix m;
  for (const auto& b : s.kernel_basis) m.push_back(detail::vector_from_form(b));
  const int r0 = rank(m, static_cast<std::size_t>(monomial_count(s.degree)));
  m.push_back(detail::vector_from_form(p));
  return rank(m, static_cast<std::size_t>(monomial_count(s.degree))) == r0;
}

/// Rank of a family of forms of one degree.
inline int forms_rank(const std::vector<HomPoly>& forms)
{
  if (forms.empty()) return 0;
  Matrix m;
  for (const auto& f : forms) {
    if (f.degree() != forms.front().degree()) throw PreconditionError("forms_rank: mixed degrees");
    m.push_back(detail::vector_from_form(f));
  }
  return rank(m, static_cast<std::size_t>(monomial_count(forms.front().degree())));
}

struct PairResult {
  bool found = false;
  HomPoly first, second;
  std::string move;    ///< "direct" or "sum"
  std::string report;  ///< divisibility pattern when nothing was found
};

/// Indices of the forbidden factors dividing p.
inline std::vector<int> dividing_factors(const HomPoly& p, const std::vector<HomPoly>& factors)
{
  std::vector<int> out;
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (divides(factors[k], p)) out.push_back(static_cast<int>(k));
  return out;
}

/// Two independent members of the system, neither divisible by a forbidden
/// factor. Tries basis pairs first, then pairwise sums of basis elements.
inline PairResult independent_pair(const LinearSystem& s, const std::vector<HomPoly>& forbidden)
{
  if (s.dimension() < 2)
    throw PreconditionError("independent_pair needs dimension >= 2, got " + std::to_string(s.dimension()));
  const auto& b = s.kernel_basis;
  auto clean = [&](const HomPoly& p) { return dividing_factors(p, forbidden).empty(); };
  PairResult r;
  std::vector<std::size_t> clean_basis;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (clean(b[i])) clean_basis.push_back(i);
  if (clean_basis.size() >= 2) {
    r.found = true;
    r.first = b[clean_basis[0]];
    r.second = b[clean_basis[1]];
    r.move = "direct";
    return r;
  }
  std::vector<HomPoly> candidates;
  if (!clean_basis.empty()) candidates.push_back(b[clean_basis[0]]);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      HomPoly sum = b[i];
      sum += b[j];
      if (clean(sum)) candidates.push_back(std::move(sum));
    }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      if (forms_rank({candidates[i], candidates[j]}) == 2) {
        r.found = true;
        r.first = candidates[i];
        r.second = candidates[j];
        r.move = "sum";
        return r;
      }
  std::string rep;
  for (std::size_t i = 0; i < b.size(); ++i) {
    rep += "basis[" + std::to_string(i) + "] divisible by {";
    const auto f = dividing_factors(b[i], forbidden);
    for (std::size_t k = 0; k < f.size(); ++k) rep += (k ? "," : "") + std::string("factor[") + std::to_string(f[k]) + "]";
    rep += "}; ";
  }
  rep += std::to_string(candidates.size()) + " clean candidates, all proportional";
  r.report = rep;
  return r;
}

/// The coefficients (alpha, beta) with h = alpha f + beta g, or nullopt if
/// h is outside the pencil.
inline std::optional<std::pair<Rational, Rational>> pencil_member(const HomPoly& f, const HomPoly& g, const HomPoly& h)
{
  if (f.degree() != g.degree() || f.degree() != h.degree())
    throw PreconditionError("pencil_member: degree mismatch (" + std::to_string(f.degree()) + ", " +
                            std::to_string(g.degree()) + ", " + std::to_string(h.degree()) + ")");
  if (forms_rank({f, g}) != 2) throw PreconditionError("pencil_member: f and g are linearly dependent");
  const Vector vf = detail::vector_from_form(f), vg = detail::vector_from_form(g), vh = detail::vector_from_form(h);
  Matrix m;
  for (std::size_t k = 0; k < vf.size(); ++k) m.push_back({vf[k], vg[k]});
  auto [ok, x] = solve(m, vh, 2);
  if (!ok) return std::nullopt;
  return std::make_pair(x[0], x[1]);
}

struct CayleyBacharachEntry {
  ProjPoint omitted;
  int dimension = 0;            ///< of cubics through the other eight
  bool contains_omitted = false;  ///< every such cubic passes through it
};

struct CayleyBacharachReport {
  std::vector<ProjPoint> points;
  std::vector<CayleyBacharachEntry> entries;
  bool passed = false;
};

/// Checks on an instance that every cubic through 8 of the 9 intersection
/// points of two cubics contains the 9th.
inline CayleyBacharachReport cayley_bacharach_check(const HomPoly& c1, const HomPoly& c2)
{
  if (c1.degree() != 3 || c2.degree() != 3 || c1.is_zero() || c2.is_zero())
    throw PreconditionError("cayley_bacharach_check needs two nonzero cubics");
  if (gcd_homogeneous(c1, c2).degree() > 0) throw PreconditionError("cayley_bacharach_check: cubics are not coprime");
  const BezoutTable t = bezout_table(c1, c2);
  if (t.residual > 0)
    throw UnsupportedInstance("cubics meet in " + std::to_string(t.residual) + " non-rational point(s)");
  for (const auto& r : t.records)
    if (r.multiplicity != 1)
      throw UnsupportedInstance("non-reduced intersection at " + r.point.to_string() + " (multiplicity " +
                                std::to_string(r.multiplicity) + ")");
  CayleyBacharachReport rep;
  for (const auto& r : t.records) rep.points.push_back(r.point);
  rep.passed = true;
  for (std::size_t k = 0; k < rep.points.size(); ++k) {
    std::vector<VanishingCondition> conds;
    for (std::size_t i = 0; i < rep.points.size(); ++i)
      if (i != k) conds.push_back({rep.points[i], 1});
    const LinearSystem s = build_system(3, conds);
    CayleyBacharachEntry e{rep.points[k], s.dimension(), true};
    for (const auto& b : s.kernel_basis)
      if (sgn(evaluate(b, rep.points[k])) != 0) e.contains_omitted = false;
    if (e.dimension != 2 || !e.contains_omitted) rep.passed = false;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace lelong

#endif  // LELONG_LINSYS_HPP
