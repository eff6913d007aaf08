#ifndef LELONG_RATIONAL_HPP
#define LELONG_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lelong/error.hpp"

namespace lelong {

/// Exact rational number. GMP keeps every value in canonical form
/// (gcd(|num|, den) = 1, den > 0) after arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_canonical(const Rational& q)
{
  if (sgn(q.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return g == 1;
}

/// "num/den", with the denominator omitted when it is 1.
inline std::string to_string(const Rational& q)
{
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text)
{
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational literal '" + s + "'");
  Rational q;
  q.get_num() = Integer(num);
  q.get_den() = Integer(den);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Bit size used to rank pivots in exact elimination.
inline std::size_t bit_size(const Rational& q)
{
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline Rational rational_pow(const Rational& base, unsigned exponent)
{
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

/// log2 |q|, usable for values far outside the double range. q != 0.
inline double log2_abs(const Rational& q)
{
  long exp_num = 0, exp_den = 0;
  const double mant_num = mpz_get_d_2exp(&exp_num, q.get_num_mpz_t());
  const double mant_den = mpz_get_d_2exp(&exp_den, q.get_den_mpz_t());
  return std::log2(std::abs(mant_num)) - std::log2(mant_den) + double(exp_num - exp_den);
}

/// q * 2^(-shift) converted to double.
inline double scaled_to_double(const Rational& q, long shift)
{
  Rational s;
  if (shift >= 0)
    mpq_div_2exp(s.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  else
    mpq_mul_2exp(s.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  return s.get_d();
}

}  // namespace lelong

#endif  // LELONG_RATIONAL_HPP
