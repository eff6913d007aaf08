#ifndef LELONG_UPOLY_HPP
#define LELONG_UPOLY_HPP

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "lelong/rational.hpp"

namespace lelong {

inline bool is_zero_value(const Rational& q) { return sgn(q) == 0; }

/// Dense univariate polynomial over a commutative ring T, coefficients
/// stored from the constant term upwards and kept trimmed.
template <typename T>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(T constant)
  {
    c_.push_back(std::move(constant));
    trim();
  }
  explicit UPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(T coeff, int power)
  {
    std::vector<T> c(static_cast<std::size_t>(power) + 1);
    c[static_cast<std::size_t>(power)] = std::move(coeff);
    return UPoly(std::move(c));
  }

  /// Degree, -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  const T& operator[](int i) const
  {
    static const T zero{};
    if (i < 0 || i > degree()) return zero;
    return c_[static_cast<std::size_t>(i)];
  }
  const T& leading() const
  {
    assert(!c_.empty());
    return c_.back();
  }

  UPoly& operator+=(const UPoly& o)
  {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o)
  {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator*=(const UPoly& o)
  {
    *this = *this * o;
    return *this;
  }
  UPoly& scale(const T& s)
  {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a)
  {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b)
  {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_value(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
  }
  friend UPoly operator*(UPoly a, const T& s) { return a.scale(s); }
  friend UPoly operator*(const T& s, UPoly a) { return a.scale(s); }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  /// Horner evaluation at a point of any ring receiving T.
  template <typename V>
  V operator()(const V& x) const
  {
    V acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + V(*it);
    return acc;
  }

  UPoly derivative() const
  {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return UPoly(std::move(d));
  }

  /// Multiplicity of 0 as a root; -1 for the zero polynomial.
  int order_at_zero() const
  {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_zero_value(c_[i])) return static_cast<int>(i);
    return -1;
  }

  UPoly shifted_down(int k) const
  {
    if (k <= 0) return *this;
    if (k > degree()) return {};
    return UPoly(std::vector<T>(c_.begin() + k, c_.end()));
  }

 private:
  void trim()
  {
    while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <typename T>
bool is_zero_value(const UPoly<T>& p)
{
  return p.is_zero();
}

/// Univariate polynomials over Q.
using QPoly = UPoly<Rational>;
/// Polynomials in an outer variable with coefficients in Q[inner].
using QxPoly = UPoly<QPoly>;

inline QPoly qpoly_x() { return QPoly::monomial(Rational(1), 1); }

inline QPoly monic(const QPoly& p)
{
  if (p.is_zero()) return p;
  Rational inv = 1 / p.leading();
  return p * inv;
}

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b)
{
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {QPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(da - db + 1));
  const Rational inv = 1 / b.leading();
  for (int i = da; i >= db; --i) {
    const Rational c = r[static_cast<std::size_t>(i)] * inv;
    if (sgn(c) == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b[j];
  }
  r.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

inline QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

inline QPoly exact_quotient(const QPoly& a, const QPoly& b)
{
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }

/// Monic gcd; gcd(0, 0) = 0.
inline QPoly gcd(QPoly a, QPoly b)
{
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<QPoly, QPoly, QPoly> xgcd(const QPoly& a, const QPoly& b)
{
  QPoly r0 = a, r1 = b, s0(Rational(1)), s1, t0, t1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    QPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

inline QPoly squarefree_part(const QPoly& f)
{
  if (f.degree() <= 0) return f;
  return monic(exact_quotient(f, gcd(f, f.derivative())));
}

/// f(x + a).
inline QPoly taylor_shift(const QPoly& f, const Rational& a)
{
  QPoly result;
  const QPoly lin(std::vector<Rational>{a, Rational(1)});
  for (int i = f.degree(); i >= 0; --i) result = result * lin + QPoly(f[i]);
  return result;
}

/// Gcd of all coefficients of a polynomial over Q[x], monic.
inline QPoly content(const QxPoly& p)
{
  QPoly g;
  for (const auto& c : p.coeffs()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

inline QxPoly divide_coefficients(const QxPoly& p, const QPoly& d)
{
  std::vector<QPoly> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(exact_quotient(x, d));
  return QxPoly(std::move(c));
}

inline QxPoly primitive_part(const QxPoly& p)
{
  if (p.is_zero()) return p;
  return divide_coefficients(p, content(p));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Q[x][y].
inline QxPoly pseudo_remainder(const QxPoly& a, const QxPoly& b)
{
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  std::vector<QPoly> r = a.coeffs();
  const int db = b.degree();
  int dr = a.degree();
  const QPoly& lb = b.leading();
  while (dr >= db) {
    const QPoly lr = r[static_cast<std::size_t>(dr)];
    for (auto& x : r) x = x * lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= lr * b[j];
    r.resize(static_cast<std::size_t>(dr));
    QxPoly tmp(r);
    r = tmp.coeffs();
    dr = tmp.degree();
  }
  return QxPoly(std::move(r));
}

}  // namespace lelong

#endif  // LELONG_UPOLY_HPP
