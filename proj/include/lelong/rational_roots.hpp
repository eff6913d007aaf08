#ifndef LELONG_RATIONAL_ROOTS_HPP
#define LELONG_RATIONAL_ROOTS_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lelong/error.hpp"
#include "lelong/rational.hpp"
#include "lelong/upoly.hpp"

namespace lelong {

namespace detail {

using ModPoly = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
  std::uint64_t r = 1 % m;
  for (; e; e >>= 1, a = mulmod(a, a, m))
    if (e & 1) r = mulmod(r, a, m);
  return r;
}

inline bool is_prime(std::uint64_t n)
{
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void trim(ModPoly& p)
{
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& b, std::uint64_t m)
{
  const std::uint64_t inv = powmod(b.back(), m - 2, m);
  while (a.size() >= b.size()) {
    const std::uint64_t c = mulmod(a.back(), inv, m);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + m - mulmod(c, b[j], m)) % m;
    trim(a);
  }
  return a;
}

inline std::size_t mod_gcd_degree(ModPoly a, ModPoly b, std::uint64_t m)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, m);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

inline std::uint64_t mod_eval(const ModPoly& p, std::uint64_t x, std::uint64_t m)
{
  std::uint64_t acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = (mulmod(acc, x, m) + *it) % m;
  return acc;
}

inline Integer eval_int(const std::vector<Integer>& p, const Integer& x)
{
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Smallest |p|/q with p = q*r mod M, |p|, q <= bound; returns false when
/// no such fraction exists.
inline bool rational_reconstruction(const Integer& r, const Integer& M, const Integer& bound, Rational& out)
{
  Integer r0 = M, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace detail

/// Distinct rational roots of a nonzero polynomial, sorted ascending.
/// Roots are found modulo a good prime, lifted p-adically and recovered by
/// rational reconstruction; every candidate is checked exactly.
inline std::vector<Rational> rational_roots(const QPoly& f)
{
  if (f.is_zero()) throw PreconditionError("rational roots of the zero polynomial");
  std::vector<Rational> roots;
  QPoly g = f.shifted_down(f.order_at_zero());
  if (f.order_at_zero() > 0) roots.emplace_back(0);
  if (g.degree() >= 1) {
    g = squarefree_part(g);
    // Primitive integer coefficients.
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : g.coeffs()) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    std::vector<Integer> a;
    for (const auto& c : g.coeffs()) a.push_back(Integer(c * den_lcm / num_gcd));
    const Integer& a0 = a.front();
    const Integer& lc = a.back();
    const Integer bound = std::max(abs(a0), abs(lc));

    if (g.degree() == 1) {
      Rational r(Integer(-a[0]), a[1]);
      r.canonicalize();
      roots.push_back(r);
    } else {
      std::uint64_t ell = 1009;
      detail::ModPoly gm, dm;
      for (;; ell += 2) {
        if (!detail::is_prime(ell) || mpz_fdiv_ui(lc.get_mpz_t(), ell) == 0) continue;
        gm.clear();
        for (const auto& c : a) gm.push_back(mpz_fdiv_ui(c.get_mpz_t(), ell));
        dm.clear();
        for (std::size_t i = 1; i < gm.size(); ++i) dm.push_back(detail::mulmod(gm[i], i % ell, ell));
        if (detail::mod_gcd_degree(gm, dm, ell) == 0) break;
      }
      std::vector<Integer> da;
      for (std::size_t i = 1; i < a.size(); ++i) da.push_back(a[i] * static_cast<unsigned long>(i));
      const Integer target = 2 * bound * bound + 1;
      for (std::uint64_t r0 = 0; r0 < ell; ++r0) {
        if (detail::mod_eval(gm, r0, ell) != 0) continue;
        Integer modulus = static_cast<unsigned long>(ell);
        Integer r = static_cast<unsigned long>(r0);
        while (modulus < target) {
          const Integer next = modulus * modulus;
          Integer inv, fr = detail::eval_int(da, r);
          fr %= next;
          if (mpz_invert(inv.get_mpz_t(), fr.get_mpz_t(), next.get_mpz_t()) == 0) break;
          Integer val = detail::eval_int(a, r);
          r = (r - val * inv) % next;
          if (r < 0) r += next;
          modulus = next;
        }
        Rational cand;
        Integer half = modulus / 2;
        Integer rb;
        mpz_sqrt(rb.get_mpz_t(), half.get_mpz_t());
        if (!detail::rational_reconstruction(r, modulus, rb, cand)) continue;
        if (sgn(g(cand)) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace lelong

#endif  // LELONG_RATIONAL_ROOTS_HPP
