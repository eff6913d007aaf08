#ifndef LELONG_CURRENTS_HPP
#define LELONG_CURRENTS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lelong/config.hpp"
#include "lelong/construct.hpp"
#include "lelong/error.hpp"
#include "lelong/instances.hpp"
#include "lelong/parallel.hpp"
#include "lelong/rng.hpp"

namespace lelong {

// ---------------------------------------------------------------------------
// Weighted line arrangements.

struct WeightedLine {
  HomPoly line;
  Rational weight;
};

/// T = sum of w_j [L_j]; each line has unit degree, so the mass is the sum
/// of the weights.
struct ArrangementCurrent {
  std::vector<WeightedLine> lines;

  Rational mass() const
  {
    Rational m;
    for (const auto& l : lines) m += l.weight;
    return m;
  }
  void validate() const
  {
    for (const auto& l : lines) {
      if (l.line.degree() != 1 || l.line.is_zero()) throw PreconditionError("arrangement lines must be nonzero linear forms");
      if (sgn(l.weight) <= 0) throw PreconditionError("arrangement weights must be positive");
    }
  }
};

/// Sum of the weights of the lines through x.
inline Rational lelong_exact(const ArrangementCurrent& t, const ProjPoint& x)
{
  t.validate();
  Rational v;
  for (const auto& l : t.lines)
    if (sgn(evaluate(l.line, x)) == 0) v += l.weight;
  return v;
}

namespace detail {

/// Euclidean distance in C^2 from the real point (x, y) to the complex line
/// a X + b Y + c = 0 with rational coefficients.
inline double line_distance(const HomPoly& l, double x, double y)
{
  const double a = l.coeff({1, 0, 0}).get_d(), b = l.coeff({0, 1, 0}).get_d(), c = l.coeff({0, 0, 1}).get_d();
  return std::abs(a * x + b * y + c) / std::sqrt(a * a + b * b);
}

inline bool is_line_at_infinity(const HomPoly& l) { return sgn(l.coeff({1, 0, 0})) == 0 && sgn(l.coeff({0, 1, 0})) == 0; }

}  // namespace detail

/// (1 / pi r^2) times the mass of T in the Euclidean ball B(x, r) of the
/// chart Z = 1: sum of w_j (r^2 - d_j^2)^+ / r^2.
inline double lelong_ball_mass(const ArrangementCurrent& t, const ProjPoint& x, double r)
{
  t.validate();
  if (!x.is_affine()) throw PreconditionError("lelong_ball_mass needs a point of the chart Z = 1");
  if (!(r > 0)) throw PreconditionError("radius must be positive");
  const double px = x[0].get_d(), py = x[1].get_d();
  double m = 0;
  for (const auto& l : t.lines) {
    if (detail::is_line_at_infinity(l.line)) throw PreconditionError("the line at infinity has no affine trace");
    const double d = sgn(evaluate(l.line, x)) == 0 ? 0.0 : detail::line_distance(l.line, px, py);
    m += l.weight.get_d() * std::max(0.0, r * r - d * d) / (r * r);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Numerical estimators.

using C2 = std::array<std::complex<double>, 2>;
using Potential = std::function<double(const C2&)>;

inline constexpr int kSampleDirections = 32;
inline constexpr int kSamplePhases = 8;

struct LineFit {
  double slope = 0, intercept = 0, residual = 0;  ///< residual: RMS deviation from the fitted line
};

/// Least-squares line through (xs[i], ys[i]).
inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys)
{
  if (xs.size() != ys.size() || xs.size() < 2) throw PreconditionError("fit_line needs at least two matching samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw PreconditionError("fit_line needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

/// Unit vectors of C^2, kSampleDirections of them, drawn from the seed.
inline std::vector<C2> sample_directions(std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<C2> out;
  for (int k = 0; k < kSampleDirections; ++k) {
    C2 v{std::complex<double>(rng.normal(), rng.normal()), std::complex<double>(rng.normal(), rng.normal())};
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    out.push_back({v[0] / n, v[1] / n});
  }
  return out;
}

/// Maximum of u over center + rho e^{i theta} v for the sampled directions v
/// and kSamplePhases equally spaced phases.
inline double sphere_max(const Potential& u, const C2& center, double rho, const std::vector<C2>& dirs)
{
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : dirs)
    for (int k = 0; k < kSamplePhases; ++k) {
      const std::complex<double> ph = std::polar(rho, 2.0 * M_PI * k / kSamplePhases);
      const C2 z{center[0] + ph * v[0], center[1] + ph * v[1]};
      best = std::max(best, u(z));
    }
  return best;
}

struct LelongEstimate {
  ProjPoint point;
  std::vector<double> radii;   ///< decreasing
  std::vector<double> values;  ///< max of u on each sphere
  double extrapolated = 0;     ///< fitted slope of max u against log r
  double residual = 0;
  std::optional<Rational> exact;
  double tolerance = 0.05;
  bool within_tolerance() const { return !exact || std::abs(extrapolated - exact->get_d()) <= tolerance; }
};

struct GrowthEstimate {
  std::vector<double> radii;  ///< increasing
  std::vector<double> max_values;
  double slope = 0;
  double residual = 0;
  Rational claimed;
  double tolerance = 0.1;
  bool within_tolerance() const { return std::abs(slope - claimed.get_d()) <= tolerance; }
};

/// Radii 2^{-lo}, ..., 2^{-hi} (or 2^{lo}.. 2^{hi} with positive exponents).
inline std::vector<double> dyadic_radii(int from_exp, int to_exp)
{
  std::vector<double> r;
  const int step = from_exp <= to_exp ? 1 : -1;
  for (int k = from_exp;; k += step) {
    r.push_back(std::ldexp(1.0, k));
    if (k == to_exp) break;
  }
  return r;
}

namespace detail {

/// Complex evaluation of a Poly2 whose coefficients were divided by the
/// largest one in absolute value.
struct ScaledPoly2 {
  std::vector<std::array<int, 2>> exps;
  std::vector<double> coeffs;

  explicit ScaledPoly2(const Poly2& f)
  {
    Rational big;
    for (const auto& [e, c] : f.terms()) big = std::max(big, Rational(abs(c)));
    if (sgn(big) == 0) throw PreconditionError("cannot sample the zero polynomial");
    for (const auto& [e, c] : f.terms()) {
      exps.push_back(e);
      coeffs.push_back(Rational(c / big).get_d());
    }
  }
  std::complex<double> operator()(const std::complex<double>& a, const std::complex<double>& b) const
  {
    std::complex<double> s;
    for (std::size_t k = 0; k < exps.size(); ++k) s += coeffs[k] * std::pow(a, exps[k][0]) * std::pow(b, exps[k][1]);
    return s;
  }
};

/// u = (1 / 2r) log(|P|^2 + |Q|^2) in affine coordinates of the given
/// expansions. Separate scalings of P and Q shift u by a bounded amount.
inline Potential potential_from(const Poly2& p, const Poly2& q, int r)
{
  const ScaledPoly2 sp(p), sq(q);
  return [sp, sq, r](const C2& z) {
    const double s = std::norm(sp(z[0], z[1])) + std::norm(sq(z[0], z[1]));
    return std::log(s) / (2.0 * r);
  };
}

inline void require_radii(const std::vector<double>& radii)
{
  if (radii.size() < 3) throw PreconditionError("an estimate needs at least three radii, got " + std::to_string(radii.size()));
  for (double r : radii)
    if (!(r > 0) || !std::isfinite(r)) throw PreconditionError("radii must be positive and finite");
}

}  // namespace detail

/// Slope of max u on spheres of the given radii around center, against
/// log r. For u with a logarithmic pole of weight a this tends to a.
inline LelongEstimate estimate_pole_weight(const Potential& u, const C2& center, const std::vector<double>& radii,
                                           std::uint64_t seed, int jobs = 1)
{
  detail::require_radii(radii);
  const auto dirs = sample_directions(seed);
  LelongEstimate est{ProjPoint::affine(Rational(center[0].real()), Rational(center[1].real())), radii, {}, 0, 0, std::nullopt};
  est.values.assign(radii.size(), 0.0);
  parallel_for(radii.size(), jobs, [&](std::size_t i) { est.values[i] = sphere_max(u, center, radii[i], dirs); });
  std::vector<double> logs;
  for (double r : radii) logs.push_back(std::log(r));
  const LineFit f = fit_line(logs, est.values);
  est.extrapolated = f.slope;
  est.residual = f.residual;
  return est;
}

/// Pole weight at a listed point of a certificate. The potential is
/// expanded exactly at x (chart Z = 1 when x is affine, else the chart of
/// its largest coordinate) so sampling avoids cancellation.
inline LelongEstimate estimate_pole_weight(const PotentialCertificate& cert, const ProjPoint& x, const std::vector<double>& radii,
                                           std::uint64_t seed, int jobs = 1)
{
  if (!cert.verified) throw PreconditionError("estimate_pole_weight needs a verified certificate");
  const auto it = std::find_if(cert.points.begin(), cert.points.end(), [&](const WeightedPoint& w) { return w.point == x; });
  if (it == cert.points.end()) throw PreconditionError("point " + x.to_string() + " is not listed in the certificate");
  const auto expand = [&](const HomPoly& f) {
    return x.is_affine() ? dehomogenize(f, 2).translated(x[0], x[1]) : local_at(f, x);
  };
  const Potential u = detail::potential_from(expand(cert.P), expand(cert.Q), cert.r);
  LelongEstimate est = estimate_pole_weight(u, C2{}, radii, seed, jobs);
  est.point = x;
  est.exact = it->weight;
  return est;
}

/// Slope of max u on spheres |z| = R against log R.
inline GrowthEstimate estimate_growth(const Potential& u, const std::vector<double>& radii, std::uint64_t seed, int jobs = 1)
{
  detail::require_radii(radii);
  const auto dirs = sample_directions(seed);
  GrowthEstimate est;
  est.radii = radii;
  est.max_values.assign(radii.size(), 0.0);
  parallel_for(radii.size(), jobs, [&](std::size_t i) { est.max_values[i] = sphere_max(u, C2{}, radii[i], dirs); });
  std::vector<double> logs;
  for (double r : radii) logs.push_back(std::log(r));
  const LineFit f = fit_line(logs, est.max_values);
  est.slope = f.slope;
  est.residual = f.residual;
  return est;
}

inline GrowthEstimate estimate_growth(const PotentialCertificate& cert, const std::vector<double>& radii, std::uint64_t seed,
                                      int jobs = 1)
{
  if (!cert.verified) throw PreconditionError("estimate_growth needs a verified certificate");
  const Potential u = detail::potential_from(dehomogenize(cert.P, 2), dehomogenize(cert.Q, 2), cert.r);
  GrowthEstimate est = estimate_growth(u, radii, seed, jobs);
  est.claimed = Rational(cert.P.degree(), cert.r);
  return est;
}

// ---------------------------------------------------------------------------
// The inequality sum a_j nu(T, x_j) <= gamma_u.

struct Prop21Term {
  ProjPoint point;
  int label = 0;
  Rational weight, lelong;
};

struct Prop21Report {
  std::vector<Prop21Term> terms;
  Rational lhs, rhs;
  bool holds = false;
  std::string note;
};

inline Prop21Report prop21_check(const ArrangementCurrent& t, const PotentialCertificate& cert)
{
  if (!cert.verified) throw PreconditionError("prop21_check needs a verified certificate");
  if (t.mass() != 1) throw PreconditionError("arrangement mass is " + to_string(t.mass()) + ", expected 1");
  Prop21Report rep;
  for (const auto& wp : cert.points) {
    const Rational nu = lelong_exact(t, wp.point);
    rep.terms.push_back({wp.point, wp.label, wp.weight, nu});
    rep.lhs += wp.weight * nu;
  }
  rep.rhs = cert.gamma;
  rep.holds = rep.lhs <= rep.rhs;
  rep.note = "growth of u = (1/2r) log(|P|^2 + |Q|^2) is deg/r by construction; locally bounded off the discrete zero set";
  return rep;
}

// ---------------------------------------------------------------------------
// Six generic lines and their fifteen intersection points.

struct SharpnessReport {
  std::uint64_t seed = 0;
  int attempts = 0;
  ArrangementCurrent current;
  PointSet points;
  std::vector<Rational> lelong;           ///< per point, exact
  bool all_one_third = false;
  std::vector<std::array<int, 2>> omitted; ///< the two labels left out of each 13-subset
  std::vector<int> cubic_ranks;            ///< rank of the degree-3 evaluation matrix per 13-subset
  bool all_full_rank = false;
  MSequence msequence;
};

inline SharpnessReport sharpness_example(std::uint64_t seed)
{
  const Instance inst = make_instance("example6lines", seed);
  SharpnessReport rep;
  rep.seed = seed;
  rep.attempts = inst.attempts;
  for (const auto& l : inst.arrangement) rep.current.lines.push_back({l, Rational(1, 6)});
  rep.points = inst.points;
  rep.all_one_third = true;
  for (const auto& x : rep.points.points()) {
    rep.lelong.push_back(lelong_exact(rep.current, x));
    if (rep.lelong.back() != Rational(1, 3)) rep.all_one_third = false;
  }
  rep.all_full_rank = true;
  const int n = static_cast<int>(rep.points.size());
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      Matrix rows;
      for (int k = 1; k <= n; ++k)
        if (k != a && k != b) rows.push_back(detail::monomial_row(rep.points.at(k), 3));
      rep.omitted.push_back({a, b});
      rep.cubic_ranks.push_back(rank(rows, 10));
      if (rep.cubic_ranks.back() != 10) rep.all_full_rank = false;
    }
  rep.msequence = inst.msequence;
  return rep;
}

}  // namespace lelong

#endif  // LELONG_CURRENTS_HPP
