#ifndef LELONG_EXACTPOLY_HPP
#define LELONG_EXACTPOLY_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lelong/error.hpp"
#include "lelong/hompoly.hpp"
#include "lelong/matrix.hpp"
#include "lelong/poly2.hpp"
#include "lelong/rational.hpp"
#include "lelong/upoly.hpp"

namespace lelong {

/// A vanishing order or intersection multiplicity: a non-negative integer
/// or infinity.
class Order {
 public:
  constexpr Order() = default;
  constexpr explicit Order(int v) : v_(v) {}
  static constexpr Order infinity() { return Order(kInf); }

  constexpr bool is_infinite() const { return v_ == kInf; }
  int value() const
  {
    if (is_infinite()) throw PreconditionError("value() of an infinite order");
    return v_;
  }
  std::string to_string() const { return is_infinite() ? "infinity" : std::to_string(v_); }

  friend constexpr bool operator==(Order a, Order b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(Order a, Order b) { return a.v_ != b.v_; }
  friend constexpr bool operator<(Order a, Order b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(Order a, Order b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(Order a, Order b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(Order a, Order b) { return a.v_ >= b.v_; }
  friend constexpr Order operator+(Order a, Order b)
  {
    return (a.is_infinite() || b.is_infinite()) ? infinity() : Order(a.v_ + b.v_);
  }
  friend constexpr Order operator*(Order a, Order b)
  {
    if (a.v_ == 0 || b.v_ == 0) return Order(0);
    return (a.is_infinite() || b.is_infinite()) ? infinity() : Order(a.v_ * b.v_);
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();
  int v_ = 0;
};

inline Rational evaluate(const HomPoly& p, const ProjPoint& x) { return p(x.coords()); }

/// Formal partial derivative with respect to variable v (0 = X, 1 = Y, 2 = Z).
inline HomPoly partial(const HomPoly& p, int v)
{
  if (p.degree() == 0) throw PreconditionError("constant polynomial");
  HomPoly d(p.degree() - 1);
  for (const auto& [e, c] : p.terms()) {
    const int k = e[static_cast<std::size_t>(v)];
    if (k == 0) continue;
    Exponent f = e;
    f[static_cast<std::size_t>(v)] = k - 1;
    d.add_term(f, c * k);
  }
  return d;
}

inline std::array<HomPoly, 3> partial_derivatives(const HomPoly& p)
{
  return {partial(p, 0), partial(p, 1), partial(p, 2)};
}

/// The two variables kept when variable v is set to 1, in increasing order.
inline std::pair<int, int> chart_variables(int v)
{
  switch (v) {
    case 0:
      return {1, 2};
    case 1:
      return {0, 2};
    default:
      return {0, 1};
  }
}

/// p with variable v set to 1; the remaining variables become (x, y) in
/// increasing index order.
inline Poly2 dehomogenize(const HomPoly& p, int v = 2)
{
  const auto [u, w] = chart_variables(v);
  Poly2 r;
  for (const auto& [e, c] : p.terms()) r.add_term({e[static_cast<std::size_t>(u)], e[static_cast<std::size_t>(w)]}, c);
  return r;
}

/// Inverse of dehomogenize for the given target degree (>= total degree of f).
inline HomPoly homogenize(const Poly2& f, int degree, int v = 2)
{
  if (f.total_degree() > degree)
    throw PreconditionError("homogenizing to degree " + std::to_string(degree) + " below the total degree " +
                            std::to_string(f.total_degree()));
  const auto [u, w] = chart_variables(v);
  HomPoly r(degree);
  for (const auto& [e, c] : f.terms()) {
    Exponent h{0, 0, 0};
    h[static_cast<std::size_t>(u)] = e[0];
    h[static_cast<std::size_t>(w)] = e[1];
    h[static_cast<std::size_t>(v)] = degree - e[0] - e[1];
    r.add_term(h, c);
  }
  return r;
}

/// Local affine equation of p at x: chart by the largest coordinate of x,
/// translated so that x sits at the origin.
inline Poly2 local_at(const HomPoly& p, const ProjPoint& x)
{
  const int v = x.largest_coordinate();
  const auto [u, w] = chart_variables(v);
  const Rational inv = 1 / x[v];
  return dehomogenize(p, v).translated(x[u] * inv, x[w] * inv);
}

/// Order of vanishing of p at x (lowest degree of the local expansion).
inline Order vanishing_order(const HomPoly& p, const ProjPoint& x)
{
  if (p.is_zero()) return Order::infinity();
  return Order(local_at(p, x).order_at_origin());
}

/// Same quantity computed as the least order of an iterated partial
/// derivative that does not vanish at x.
inline Order order_by_partials(const HomPoly& p, const ProjPoint& x)
{
  if (p.is_zero()) return Order::infinity();
  std::vector<HomPoly> layer{p};
  for (int k = 0;; ++k) {
    for (const auto& q : layer)
      if (sgn(evaluate(q, x)) != 0) return Order(k);
    // Distinct derivatives of order k+1 indexed by multi-index; derive each
    // from a parent so every multi-index is produced once.
    std::vector<HomPoly> next;
    const int d = layer.front().degree();
    if (d == 0) return Order(k);  // unreachable for nonzero p
    const auto parents = monomials_of_degree(k);
    for (const auto& m : monomials_of_degree(k + 1)) {
      int var = m[0] > 0 ? 0 : (m[1] > 0 ? 1 : 2);
      Exponent parent = m;
      parent[static_cast<std::size_t>(var)] -= 1;
      const auto it = std::find(parents.begin(), parents.end(), parent);
      next.push_back(partial(layer[static_cast<std::size_t>(it - parents.begin())], var));
    }
    layer = std::move(next);
  }
}

/// p / q if q divides p exactly, otherwise nullopt. q must be nonzero.
inline std::optional<HomPoly> divide_exact(const HomPoly& p, const HomPoly& q)
{
  if (q.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (p.degree() < q.degree()) {
    if (p.is_zero()) return HomPoly(0);
    return std::nullopt;
  }
  HomPoly quotient(p.degree() - q.degree());
  HomPoly r = p;
  const Exponent lq = q.leading_exponent();
  const Rational inv = 1 / q.leading_coefficient();
  while (!r.is_zero()) {
    const Exponent lr = r.leading_exponent();
    Exponent t{lr[0] - lq[0], lr[1] - lq[1], lr[2] - lq[2]};
    if (t[0] < 0 || t[1] < 0 || t[2] < 0) return std::nullopt;
    const HomPoly term = HomPoly::monomial(t, r.leading_coefficient() * inv);
    quotient += term;
    r -= term * q;
  }
  return quotient;
}

inline bool divides(const HomPoly& q, const HomPoly& p) { return divide_exact(p, q).has_value(); }

/// Greatest common divisor in Q[x, y], normalized to a monic content part and
/// a primitive part with monic leading coefficient in y.
inline Poly2 gcd2(const Poly2& a, const Poly2& b)
{
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  QxPoly pa = a.as_poly_in_y();
  QxPoly pb = b.as_poly_in_y();
  const QPoly cont = gcd(content(pa), content(pb));
  pa = primitive_part(pa);
  pb = primitive_part(pb);
  if (pa.degree() < pb.degree()) std::swap(pa, pb);
  while (!pb.is_zero()) {
    QxPoly r = pseudo_remainder(pa, pb);
    pa = std::move(pb);
    pb = r.is_zero() ? r : primitive_part(r);
  }
  // pa is primitive; fix the scalar so the leading coefficient is monic.
  const QPoly lead = pa.leading();
  QxPoly g = pa * QPoly(Rational(1 / lead.leading()));
  return Poly2::from_poly_in_y(g * cont);
}

/// Largest power of variable v dividing p (p nonzero).
inline int variable_valuation(const HomPoly& p, int v)
{
  int k = p.degree();
  for (const auto& [e, c] : p.terms()) k = std::min(k, e[static_cast<std::size_t>(v)]);
  return k;
}

/// p with variable v divided out `times` times (requires v^times | p).
inline HomPoly divide_by_variable(const HomPoly& p, int v, int times)
{
  HomPoly r(p.degree() - times);
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[static_cast<std::size_t>(v)] -= times;
    r.add_term(f, c);
  }
  return r;
}

namespace detail {

/// Homogeneous gcd through the Euclidean algorithm in Q[x][y]. Exact but
/// slow on forms with large coefficients; kept as a test oracle.
inline HomPoly gcd_by_prs(const HomPoly& p, const HomPoly& q)
{
  if (p.is_zero() && q.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  if (p.is_zero()) return q.normalized();
  if (q.is_zero()) return p.normalized();
  int v = 2;
  for (int cand : {2, 1, 0})
    if (variable_valuation(p, cand) == 0 || variable_valuation(q, cand) == 0) {
      v = cand;
      break;
    }
  const int a = variable_valuation(p, v);
  const int b = variable_valuation(q, v);
  const HomPoly p1 = divide_by_variable(p, v, a);
  const HomPoly q1 = divide_by_variable(q, v, b);
  const Poly2 g = gcd2(dehomogenize(p1, v), dehomogenize(q1, v));
  HomPoly h = homogenize(g, g.total_degree(), v);
  const int k = std::min(a, b);
  if (k > 0) {
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(v)] = k;
    h = h * HomPoly::monomial(e, Rational(1));
  }
  return h.normalized();
}

/// Matrix of (U, V) -> P U + Q V with deg U = deg Q - t and deg V = deg P - t.
/// It has a nonzero kernel iff deg gcd(P, Q) >= t.
inline Matrix cofactor_matrix(const HomPoly& p, const HomPoly& q, int t)
{
  const int du = q.degree() - t, dv = p.degree() - t;
  const int target = p.degree() + du;
  const auto rows = monomials_of_degree(target);
  const auto mu = monomials_of_degree(du), mv = monomials_of_degree(dv);
  std::map<Exponent, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  Matrix m(rows.size(), Vector(mu.size() + mv.size()));
  auto fill = [&](const HomPoly& f, const std::vector<Exponent>& mons, std::size_t offset) {
    for (std::size_t j = 0; j < mons.size(); ++j)
      for (const auto& [e, c] : f.terms()) {
        const Exponent sum{e[0] + mons[j][0], e[1] + mons[j][1], e[2] + mons[j][2]};
        m[row_of.at(sum)][offset + j] = c;
      }
  };
  fill(p, mu, 0);
  fill(q, mv, mu.size());
  return m;
}

/// Rank of a rational matrix reduced modulo a prime, or nullopt when a
/// denominator vanishes modulo that prime. It never exceeds the rank over Q.
inline std::optional<int> rank_mod_prime(const Matrix& m, std::size_t ncols, unsigned long prime)
{
  using U = unsigned long long;
  auto inverse = [&](U a) {
    U r = 1, e = prime - 2;
    while (e) {
      if (e & 1) r = r * a % prime;
      a = a * a % prime;
      e >>= 1;
    }
    return r;
  };
  std::vector<std::vector<U>> a(m.size(), std::vector<U>(ncols));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) {
      const Rational& x = m[i][j];
      const U den = mpz_fdiv_ui(x.get_den_mpz_t(), prime);
      if (den == 0) return std::nullopt;
      a[i][j] = static_cast<U>(mpz_fdiv_ui(x.get_num_mpz_t(), prime)) * inverse(den) % prime;
    }
  int r = 0;
  for (std::size_t col = 0; col < ncols && static_cast<std::size_t>(r) < a.size(); ++col) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(r)]);
    auto& pr = a[static_cast<std::size_t>(r)];
    const U inv = inverse(pr[col]);
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      const U f = a[i][col] * inv % prime;
      for (std::size_t j = col; j < ncols; ++j) a[i][j] = (a[i][j] + (prime - f) * pr[j]) % prime;
    }
    ++r;
  }
  return r;
}

/// True when the matrix is certified to have full column rank.
inline bool full_column_rank(const Matrix& m, std::size_t ncols)
{
  for (unsigned long prime : {2147483647UL, 2147483629UL, 2147483587UL})
    if (const auto r = rank_mod_prime(m, ncols, prime)) {
      if (static_cast<std::size_t>(*r) == ncols) return true;
    }
  return rank(m, ncols) == static_cast<int>(ncols);
}

}  // namespace detail

/// Homogeneous gcd normalized to leading coefficient 1 in grlex order. The
/// degree t of the gcd is the largest t for which P U + Q V = 0 has a
/// nonzero solution with deg U = deg Q - t; then U is Q / gcd up to scale.
inline HomPoly gcd_homogeneous(const HomPoly& p, const HomPoly& q)
{
  if (p.is_zero() && q.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  if (p.is_zero()) return q.normalized();
  if (q.is_zero()) return p.normalized();
  for (int t = std::min(p.degree(), q.degree()); t >= 1; --t) {
    const Matrix m = detail::cofactor_matrix(p, q, t);
    const std::size_t ncols = static_cast<std::size_t>(monomial_count(q.degree() - t) + monomial_count(p.degree() - t));
    if (detail::full_column_rank(m, ncols)) continue;
    const Matrix k = kernel_basis(m, ncols);
    if (k.empty()) continue;
    if (k.size() != 1) throw VerificationFailure("gcd: cofactor kernel of dimension " + std::to_string(k.size()));
    const auto mu = monomials_of_degree(q.degree() - t);
    HomPoly u(q.degree() - t);
    for (std::size_t j = 0; j < mu.size(); ++j)
      if (sgn(k[0][j]) != 0) u.add_term(mu[j], k[0][j]);
    const auto g = divide_exact(q, u);
    if (!g) throw VerificationFailure("gcd: cofactor does not divide Q");
    return g->normalized();
  }
  return HomPoly::constant(Rational(1));
}

/// Rescales p by a positive rational so its coefficients are coprime
/// integers with positive leading coefficient.
inline HomPoly primitive_integer_form(const HomPoly& p)
{
  if (p.is_zero()) return p;
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational s(den_lcm, num_gcd);
  s.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) s = -s;
  return p * s;
}

}  // namespace lelong

#endif  // LELONG_EXACTPOLY_HPP
