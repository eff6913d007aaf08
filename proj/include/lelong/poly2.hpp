#ifndef LELONG_POLY2_HPP
#define LELONG_POLY2_HPP

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lelong/rational.hpp"
#include "lelong/upoly.hpp"

namespace lelong {

/// Sparse polynomial in two affine variables (x, y) over Q.
class Poly2 {
 public:
  using Exponent = std::array<int, 2>;
  using TermMap = std::map<Exponent, Rational>;

  Poly2() = default;
  explicit Poly2(const Rational& c)
  {
    if (sgn(c) != 0) terms_[{0, 0}] = c;
  }

  static Poly2 x() { return monomial(Rational(1), 1, 0); }
  static Poly2 y() { return monomial(Rational(1), 0, 1); }
  static Poly2 monomial(const Rational& c, int i, int j)
  {
    Poly2 p;
    if (sgn(c) != 0) p.terms_[{i, j}] = c;
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int i, int j) const
  {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c)
  {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  int total_degree() const
  {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1]);
    return d;
  }
  /// Least total degree of a term: the order of vanishing at the origin.
  int order_at_origin() const
  {
    int d = -1;
    for (const auto& [e, c] : terms_)
      if (d < 0 || e[0] + e[1] < d) d = e[0] + e[1];
    return d;
  }
  int degree_in_y() const
  {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[1]);
    return d;
  }

  Poly2& operator+=(const Poly2& o)
  {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly2& operator-=(const Poly2& o)
  {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b)
  {
    Poly2 r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
    return r;
  }
  friend Poly2 operator*(Poly2 a, const Rational& s)
  {
    if (sgn(s) == 0) return {};
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  Rational operator()(const Rational& x, const Rational& y) const
  {
    Rational acc(0);
    for (const auto& [e, c] : terms_) acc += c * rational_pow(x, e[0]) * rational_pow(y, e[1]);
    return acc;
  }

  Poly2 pow(int k) const
  {
    Poly2 r(Rational(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Substitutes x -> sx, y -> sy.
  Poly2 compose(const Poly2& sx, const Poly2& sy) const
  {
    Poly2 r;
    std::map<int, Poly2> px, py;
    for (const auto& [e, c] : terms_) {
      if (!px.count(e[0])) px[e[0]] = sx.pow(e[0]);
      if (!py.count(e[1])) py[e[1]] = sy.pow(e[1]);
      r += px[e[0]] * py[e[1]] * c;
    }
    return r;
  }

  /// p(x + a, y + b): moves the point (a, b) to the origin.
  Poly2 translated(const Rational& a, const Rational& b) const
  {
    return compose(x() + Poly2(a), y() + Poly2(b));
  }

  /// p(x + c*y, y).
  Poly2 sheared(const Rational& c) const { return compose(x() + y() * c, y()); }

  /// p(x, 0) as a univariate polynomial in x.
  QPoly restrict_y_zero() const
  {
    std::vector<Rational> c;
    for (const auto& [e, v] : terms_) {
      if (e[1] != 0) continue;
      if (c.size() <= static_cast<std::size_t>(e[0])) c.resize(static_cast<std::size_t>(e[0]) + 1);
      c[static_cast<std::size_t>(e[0])] += v;
    }
    return QPoly(std::move(c));
  }

  /// p(x0, y) as a univariate polynomial in y.
  QPoly restrict_x(const Rational& x0) const
  {
    std::vector<Rational> c;
    for (const auto& [e, v] : terms_) {
      if (c.size() <= static_cast<std::size_t>(e[1])) c.resize(static_cast<std::size_t>(e[1]) + 1);
      c[static_cast<std::size_t>(e[1])] += v * rational_pow(x0, e[0]);
    }
    return QPoly(std::move(c));
  }

  /// Exact division by y; requires y | p.
  Poly2 divided_by_y() const
  {
    Poly2 r;
    for (const auto& [e, c] : terms_) {
      if (e[1] == 0) throw std::logic_error("polynomial not divisible by y");
      r.terms_[{e[0], e[1] - 1}] = c;
    }
    return r;
  }

  /// Homogeneous part of the top total degree.
  Poly2 top_form() const
  {
    const int d = total_degree();
    Poly2 r;
    for (const auto& [e, c] : terms_)
      if (e[0] + e[1] == d) r.terms_[e] = c;
    return r;
  }

  /// View as a polynomial in y whose coefficients lie in Q[x].
  QxPoly as_poly_in_y() const
  {
    std::vector<std::vector<Rational>> c;
    for (const auto& [e, v] : terms_) {
      if (c.size() <= static_cast<std::size_t>(e[1])) c.resize(static_cast<std::size_t>(e[1]) + 1);
      auto& inner = c[static_cast<std::size_t>(e[1])];
      if (inner.size() <= static_cast<std::size_t>(e[0])) inner.resize(static_cast<std::size_t>(e[0]) + 1);
      inner[static_cast<std::size_t>(e[0])] = v;
    }
    std::vector<QPoly> out;
    out.reserve(c.size());
    for (auto& inner : c) out.emplace_back(std::move(inner));
    return QxPoly(std::move(out));
  }

  static Poly2 from_poly_in_y(const QxPoly& p)
  {
    Poly2 r;
    for (int j = 0; j <= p.degree(); ++j)
      for (int i = 0; i <= p[j].degree(); ++i)
        if (sgn(p[j][i]) != 0) r.terms_[{i, j}] = p[j][i];
    return r;
  }

 private:
  TermMap terms_;
};

}  // namespace lelong

#endif  // LELONG_POLY2_HPP
