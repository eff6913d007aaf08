#ifndef LELONG_HOMPOLY_HPP
#define LELONG_HOMPOLY_HPP

#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lelong/error.hpp"
#include "lelong/rational.hpp"

namespace lelong {

/// Point of the projective plane with exact coordinates. The stored
/// representative has its last nonzero coordinate equal to 1, so equality
/// and ordering are component-wise.
class ProjPoint {
 public:
  ProjPoint(Rational x, Rational y, Rational z) : c_{std::move(x), std::move(y), std::move(z)}
  {
    int last = -1;
    for (int i = 2; i >= 0; --i)
      if (sgn(c_[static_cast<std::size_t>(i)]) != 0) {
        last = i;
        break;
      }
    if (last < 0) throw PreconditionError("projective point with all coordinates zero");
    const Rational inv = 1 / c_[static_cast<std::size_t>(last)];
    for (auto& v : c_) v *= inv;
  }

  /// The affine point (x, y) of the chart Z = 1.
  static ProjPoint affine(const Rational& x, const Rational& y) { return {x, y, Rational(1)}; }

  const Rational& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::array<Rational, 3>& coords() const { return c_; }
  bool is_affine() const { return sgn(c_[2]) != 0; }

  /// Index of the coordinate of largest absolute value (first on ties).
  int largest_coordinate() const
  {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (abs(c_[static_cast<std::size_t>(i)]) > abs(c_[static_cast<std::size_t>(best)])) best = i;
    return best;
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.c_ < b.c_; }

  std::string to_string() const
  {
    return "[" + lelong::to_string(c_[0]) + ":" + lelong::to_string(c_[1]) + ":" +
           lelong::to_string(c_[2]) + "]";
  }

 private:
  std::array<Rational, 3> c_;
};

using Exponent = std::array<int, 3>;

/// Graded lexicographic order with X > Y > Z; "greater" monomials first.
struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const
  {
    const int da = a[0] + a[1] + a[2];
    const int db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
  }
};

/// All exponent triples of total degree d, in GrlexDescending order.
inline std::vector<Exponent> monomials_of_degree(int d)
{
  std::vector<Exponent> out;
  out.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

inline int monomial_count(int d) { return (d + 1) * (d + 2) / 2; }

/// Homogeneous polynomial in X, Y, Z with rational coefficients. The zero
/// polynomial keeps its declared degree.
class HomPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexDescending>;

  explicit HomPoly(int degree = 0) : degree_(degree)
  {
    if (degree < 0) throw PreconditionError("negative polynomial degree");
  }

  static HomPoly constant(const Rational& c)
  {
    HomPoly p(0);
    if (sgn(c) != 0) p.terms_[{0, 0, 0}] = c;
    return p;
  }
  /// Variable 0 = X, 1 = Y, 2 = Z.
  static HomPoly variable(int i)
  {
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(e, Rational(1));
  }
  static HomPoly monomial(const Exponent& e, const Rational& c)
  {
    HomPoly p(e[0] + e[1] + e[2]);
    p.add_term(e, c);
    return p;
  }
  /// aX + bY + cZ.
  static HomPoly linear(const Rational& a, const Rational& b, const Rational& c)
  {
    HomPoly p(1);
    p.add_term({1, 0, 0}, a);
    p.add_term({0, 1, 0}, b);
    p.add_term({0, 0, 1}, c);
    return p;
  }
  static HomPoly from_terms(int degree, const std::vector<std::pair<Exponent, Rational>>& terms)
  {
    HomPoly p(degree);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
  }

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Rational coeff(const Exponent& e) const
  {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const Exponent& leading_exponent() const
  {
    if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
    return terms_.begin()->first;
  }
  const Rational& leading_coefficient() const
  {
    if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
    return terms_.begin()->second;
  }

  /// Scaled so that the leading coefficient is 1; zero stays zero.
  HomPoly normalized() const
  {
    if (is_zero()) return *this;
    return *this * (1 / leading_coefficient());
  }

  void add_term(const Exponent& e, const Rational& c)
  {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_)
      throw PreconditionError("term of degree " + std::to_string(e[0] + e[1] + e[2]) +
                              " in a polynomial of degree " + std::to_string(degree_));
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  HomPoly& operator+=(const HomPoly& o)
  {
    require_same_degree(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  HomPoly& operator-=(const HomPoly& o)
  {
    require_same_degree(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator-(HomPoly a) { return a * Rational(-1); }
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b)
  {
    HomPoly r(a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }
  friend HomPoly operator*(HomPoly a, const Rational& s)
  {
    if (sgn(s) == 0) return HomPoly(a.degree_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend HomPoly operator*(const Rational& s, HomPoly a) { return std::move(a) * s; }

  friend bool operator==(const HomPoly& a, const HomPoly& b)
  {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const HomPoly& a, const HomPoly& b) { return !(a == b); }

  HomPoly pow(int k) const
  {
    HomPoly r = constant(Rational(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Value at the given coordinate triple (not necessarily normalized).
  Rational operator()(const std::array<Rational, 3>& v) const
  {
    Rational acc(0);
    for (const auto& [e, c] : terms_)
      acc += c * rational_pow(v[0], static_cast<unsigned>(e[0])) * rational_pow(v[1], static_cast<unsigned>(e[1])) *
             rational_pow(v[2], static_cast<unsigned>(e[2]));
    return acc;
  }

  /// Human-readable form, e.g. "X^2*Z - 3/2*Y^3".
  std::string to_string() const
  {
    if (is_zero()) return "0";
    static const char* names[3] = {"X", "Y", "Z"};
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (sgn(c) < 0) out += "-";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (int v = 0; v < 3; ++v) {
        if (e[static_cast<std::size_t>(v)] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[v];
        if (e[static_cast<std::size_t>(v)] > 1) mono += "^" + std::to_string(e[static_cast<std::size_t>(v)]);
      }
      if (mono.empty())
        out += lelong::to_string(mag);
      else if (mag == 1)
        out += mono;
      else
        out += lelong::to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  void require_same_degree(const HomPoly& o) const
  {
    if (o.degree_ != degree_)
      throw PreconditionError("adding homogeneous polynomials of degrees " + std::to_string(degree_) + " and " +
                              std::to_string(o.degree_));
  }

  int degree_;
  TermMap terms_;
};

/// Parses a sum of monomials such as "X^2*Z - 3/2*Y^3 + Z^3". Every term
/// must have the same total degree.
inline HomPoly parse_hompoly(std::string_view text)
{
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  if (s == "0") return HomPoly(0);
  std::size_t pos = 0;
  std::vector<std::pair<Exponent, Rational>> terms;
  auto read_uint = [&](std::string& out) {
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) out += s[pos++];
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!terms.empty()) {
      throw ParseError("expected '+' or '-' at offset " + std::to_string(pos) + " in '" + s + "'");
    }
    Rational coeff(1);
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::string num;
      read_uint(num);
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::string den;
        read_uint(den);
        if (den.empty()) throw ParseError("missing denominator in '" + s + "'");
        num += "/" + den;
      }
      coeff = parse_rational(num);
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    Exponent e{0, 0, 0};
    while (pos < s.size() && (s[pos] == 'X' || s[pos] == 'Y' || s[pos] == 'Z')) {
      const int v = s[pos] - 'X';
      ++pos;
      int power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::string digits;
        read_uint(digits);
        if (digits.empty()) throw ParseError("missing exponent in '" + s + "'");
        power = std::stoi(digits);
      }
      e[static_cast<std::size_t>(v)] += power;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
      throw ParseError("unexpected character '" + std::string(1, s[pos]) + "' in '" + s + "'");
    terms.emplace_back(e, coeff * sign);
  }
  const int degree = terms.front().first[0] + terms.front().first[1] + terms.front().first[2];
  HomPoly p(degree);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

}  // namespace lelong

#endif  // LELONG_HOMPOLY_HPP
