#ifndef LELONG_CONSTRUCT_HPP
#define LELONG_CONSTRUCT_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lelong/config.hpp"
#include "lelong/curves.hpp"
#include "lelong/error.hpp"
#include "lelong/exactpoly.hpp"
#include "lelong/linsys.hpp"

namespace lelong {

// ---------------------------------------------------------------------------
// Certificates.

/// A point with its claimed pole weight. Label is the point's 1-based label
/// in the input set, or 0 for an auxiliary point outside it.
struct WeightedPoint {
  ProjPoint point;
  int label = 0;
  Rational weight;
};

inline const std::string kRouteIntersection = "intersection";
inline const std::string kRouteOrderBound = "order_bound";

/// u = (1/2r) log(|P|^2 + |Q|^2) with logarithmic growth gamma = deg/r and
/// poles of the listed weights.
struct PotentialCertificate {
  HomPoly P, Q;
  int r = 1;
  std::vector<WeightedPoint> points;
  Rational gamma;
  std::string case_tag;
  /// kRouteIntersection: every point also has (P.Q)_x = (w r)^2.
  /// kRouteOrderBound: weights are min(ord P, ord Q) / r only.
  std::string route = kRouteOrderBound;
  Rational claimed_total;
  bool verified = false;

  Rational total_weight() const
  {
    Rational t;
    for (const auto& p : points) t += p.weight;
    return t;
  }
};

struct PointVerification {
  ProjPoint point;
  int label = 0;
  Order ord_p, ord_q;
  std::optional<Order> multiplicity;
  Rational claimed, recomputed;
  bool ok = false;
  std::string problem;
};

struct VerificationReport {
  bool verified = false;
  bool degrees_ok = false;
  bool gamma_ok = false;
  bool discrete = false;
  bool total_ok = false;
  HomPoly gcd;
  std::vector<PointVerification> points;
  std::vector<std::string> failures;
};

namespace detail {

/// Coprimality through the resultant: after a shear making the leading
/// y-coefficient of P constant, P and Q share a component iff Res_y = 0 or
/// Z divides both.
inline bool coprime_by_resultant(const HomPoly& p, const HomPoly& q)
{
  if (p.degree() == 0 || q.degree() == 0) return true;
  if (variable_valuation(p, 2) > 0 && variable_valuation(q, 2) > 0) return false;
  Poly2 f = dehomogenize(p, 2), g = dehomogenize(q, 2);
  if (f.total_degree() == 0 || g.total_degree() == 0) return true;
  const Poly2 top = f.top_form();
  int c = 0;
  while (sgn(top(Rational(c), Rational(1))) == 0) ++c;
  if (c != 0) {
    f = f.sheared(Rational(c));
    g = g.sheared(Rational(c));
  }
  // The y-leading coefficient of f is now constant, so Res_y(f, g)(x0) is a
  // nonzero multiple of the resultant of the specializations at x = x0.
  auto in_y = [](const QPoly& u) {
    Poly2 r;
    for (int j = 0; j <= u.degree(); ++j)
      if (sgn(u[j]) != 0) r.add_term({0, j}, u[j]);
    return r;
  };
  for (int x0 = 0; x0 < 4; ++x0) {
    const Poly2 fs = in_y(f.restrict_x(Rational(x0))), gs = in_y(g.restrict_x(Rational(x0)));
    if (gs.is_zero()) continue;
    if (!resultant_y(fs, gs).is_zero()) return true;
  }
  return !resultant_y(f, g).is_zero();
}

}  // namespace detail

/// Re-derives every claim of a certificate from P, Q and the listed points
/// alone. Orders come from partial derivatives and discreteness from a
/// resultant, cross-checked against the gcd.
inline VerificationReport verify_certificate(const PotentialCertificate& c)
{
  VerificationReport rep;
  auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };
  if (c.P.is_zero() || c.Q.is_zero()) fail("P or Q is the zero polynomial");
  if (c.P.degree() != c.Q.degree()) fail("degrees differ: " + std::to_string(c.P.degree()) + " and " + std::to_string(c.Q.degree()));
  if (c.r < 1) fail("scaling r must be a positive integer");
  rep.degrees_ok = rep.failures.empty();
  if (!rep.degrees_ok) return rep;
  rep.gamma_ok = c.gamma == Rational(c.P.degree(), c.r);
  if (!rep.gamma_ok) fail("gamma " + to_string(c.gamma) + " differs from deg/r = " + to_string(Rational(c.P.degree(), c.r)));
  rep.gcd = gcd_homogeneous(c.P, c.Q);
  const bool by_gcd = rep.gcd.degree() == 0;
  const bool by_resultant = detail::coprime_by_resultant(c.P, c.Q);
  if (by_gcd != by_resultant) fail("gcd and resultant disagree on discreteness");
  rep.discrete = by_gcd && by_resultant;
  if (!rep.discrete) fail("common zero set is not discrete: gcd " + rep.gcd.to_string());
  const bool intersection_route = c.route == kRouteIntersection;
  if (!intersection_route && c.route != kRouteOrderBound) fail("unknown route '" + c.route + "'");
  std::set<ProjPoint> seen;
  for (const auto& wp : c.points) {
    PointVerification pv{wp.point, wp.label, Order(0), Order(0), std::nullopt, wp.weight, Rational(0), true, ""};
    const std::string name = wp.label > 0 ? "x" + std::to_string(wp.label) : "auxiliary point " + wp.point.to_string();
    if (!seen.insert(wp.point).second) {
      pv.ok = false;
      pv.problem = "listed twice";
    }
    if (sgn(evaluate(c.P, wp.point)) != 0 || sgn(evaluate(c.Q, wp.point)) != 0) {
      pv.ok = false;
      pv.problem = "not a common zero";
    }
    pv.ord_p = order_by_partials(c.P, wp.point);
    pv.ord_q = order_by_partials(c.Q, wp.point);
    const Order m = std::min(pv.ord_p, pv.ord_q);
    if (m.is_infinite()) {
      pv.ok = false;
      pv.problem = "infinite order";
    } else {
      pv.recomputed = Rational(m.value(), c.r);
    }
    if (sgn(wp.weight) <= 0) {
      pv.ok = false;
      pv.problem = "non-positive weight";
    } else if (pv.ok && pv.recomputed != wp.weight) {
      pv.ok = false;
      pv.problem = "claimed weight " + to_string(wp.weight) + " but min(ord P, ord Q)/r = " + to_string(pv.recomputed);
    }
    if (intersection_route && pv.ok && rep.discrete) {
      pv.multiplicity = intersection_multiplicity(c.P, c.Q, wp.point);
      const Rational wr = wp.weight * c.r;
      if (pv.multiplicity->is_infinite() || Rational(pv.multiplicity->value()) != wr * wr) {
        pv.ok = false;
        pv.problem = "(P.Q)_x = " + pv.multiplicity->to_string() + " differs from (w r)^2 = " + to_string(wr * wr);
      }
    }
    if (!pv.ok) fail(name + ": " + pv.problem);
    rep.points.push_back(std::move(pv));
  }
  Rational total;
  for (const auto& wp : c.points) total += wp.weight;
  rep.total_ok = total == c.claimed_total;
  if (!rep.total_ok) fail("total weight " + to_string(total) + " differs from the claimed " + to_string(c.claimed_total));
  rep.verified = rep.failures.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Construction reports.

inline const std::string kOutcomeCertificate = "certificate";
inline const std::string kOutcomeContradiction = "contradiction-witness";
inline const std::string kOutcomeUnsupported = "unsupported-instance";

struct ConstructionReport {
  std::vector<std::string> trace;  ///< stable branch identifiers, see branch_catalog()
  std::string outcome;
  std::optional<PotentialCertificate> certificate;
  std::string witness;     ///< contradiction witness or named exclusion
  std::vector<int> relabeling;  ///< internal x_i (index i - 1) -> input label
  std::vector<std::string> notes;
};

/// Every branch identifier a pipeline can emit, with what it means.
inline const std::map<std::string, std::string>& branch_catalog()
{
  static const std::map<std::string, std::string> c{
      {"pair.setup", "sextics with double points x1..x6 and simple points x7..x12; P1 = C1*C2 and three more independent members"},
      {"pair.direct", "a member divisible by neither cubic: (P1, member)"},
      {"pair.sum", "C1 divides one member, C2 another: (P1, sum of the two)"},
      {"pair.both-divide", "both cubics divide a member, so it is a multiple of P1: contradiction"},
      {"pair.one-divides-all", "one cubic divides every other member"},
      {"pair.residual-cubics", "members written as the dividing cubic times residual cubics D_i"},
      {"pair.cb-ninth-point", "ninth intersection point of C2 and D_2: Cayley-Bacharach puts D_3 in the pencil, contradiction"},
      {"pair.tangency", "C2 and D_2 tangent at a known point: a combination of D_3, D_4 lies in the pencil, contradiction"},
      {"pair.generic-member", "replace D_2 by a pencil member meeting C2 in nine distinct points and repeat"},
      {"pair.dependent", "a residual cubic is a multiple of C2, contradiction"},
      {"cubics.both-irreducible", "both interpolating cubics are irreducible: pair construction"},
      {"cubics.swap", "only the second cubic is reducible: the roles of the two cubics are exchanged"},
      {"cubics.reducible", "the first cubic is a line times a conic"},
      {"cubics.seven-point-conic", "the conic factor holds seven points and is irreducible: quartic construction"},
      {"cascade.coprime", "the second sextic is coprime to P1: weight 18, growth 6"},
      {"cascade.common-factor", "the second sextic shares components with P1; both are divided by the gcd"},
      {"cascade.dependent", "the quotient pair has degree below 3: the members would be dependent, contradiction"},
      {"quartic.conic-pair", "P1 = C * C~ for two conics through seven and five points; P2 a quartic through all twelve"},
      {"lemma2.case1", "m2 = 5: two irreducible cubics through nine points each"},
      {"lemma2.case2", "m2 = 6 and m1 <= 3"},
      {"lemma2.case3", "m2 = 6 and m1 = 4: the unique four-point line is relabeled x9..x12"},
      {"lemma2.case4.irreducible-conic", "m2 = 7 with an irreducible conic through seven points"},
      {"lemma2.case4.reducible-conic", "m2 = 7, every seven-point conic is a line pair: cubics through a (6|3|3) split"},
      {"theorem.case2", "m3 = 10, m2 = 6: cubics through x1,x2,x5,x7..x12 and x3,x4,x6,x7..x12"},
      {"theorem.case3", "m3 = 10, m2 = 7"},
      {"theorem.case3.conic-pair", "irreducible seven-point conic and irreducible conic through the other five"},
      {"theorem.case3.conic-Ci", "conic through x8..x11 and one x_i is irreducible: weight 12 off x12"},
      {"theorem.case3.lines", "all conics C_i reducible: line-pair property tests"},
      {"theorem.case3.P1", "property P1 holds for a line pair"},
      {"theorem.case3.P2", "property P2 holds for a line pair"},
      {"theorem.case3.P3", "property P3 holds for a line pair"},
      {"theorem.case3.line-configuration", "no irreducible seven-point conic: four-point lines, cubics through a (6|3|3) split"},
      {"theorem.case4", "m3 = 11: cubic = conic through x1..x7 plus line through x8..x11"},
      {"theorem.case4.a", "line through p and x12 misses the points on the line: weight 13 on S and p"},
      {"theorem.case4.b", "it meets a point of the line but no point of the conic: weight 13 on S and p"},
      {"theorem.case4.c", "it meets both: weight 12 with x1 double, x10 and x11 dropped"},
      {"exclusion.line-five", "five collinear points are excluded by the current-theoretic argument"},
      {"exclusion.conic-eight", "eight points on a conic are excluded by the current-theoretic argument"},
      {"exclusion.irreducible-cubic-ten", "ten points on an irreducible cubic are excluded by the current-theoretic argument"},
  };
  return c;
}

namespace detail {

using Support = std::vector<std::pair<int, ProjPoint>>;

/// Builds, checks and independently verifies a certificate for (p, q) over
/// the candidate points. Candidates of weight zero are dropped; the total
/// must match the claim.
inline PotentialCertificate assemble(const HomPoly& p, const HomPoly& q, const Support& candidates, const std::string& tag,
                                     const Rational& claimed_total)
{
  if (!common_zeros_discrete(p, q)) throw VerificationFailure(tag + ": P and Q share a component");
  PotentialCertificate c;
  c.P = p;
  c.Q = q;
  c.r = 1;
  c.gamma = Rational(p.degree());
  c.case_tag = tag;
  c.claimed_total = claimed_total;
  bool uniform = true;
  for (const auto& [label, x] : candidates) {
    const Order m = std::min(vanishing_order(p, x), vanishing_order(q, x));
    if (m == Order(0)) continue;
    const Rational w(m.value());
    if (!c.points.empty() && c.points.front().weight != w) uniform = false;
    c.points.push_back({x, label, w});
  }
  if (c.total_weight() != claimed_total) {
    std::string detail;
    for (const auto& wp : c.points) detail += " x" + std::to_string(wp.label) + ":" + to_string(wp.weight);
    throw VerificationFailure(tag + ": total weight " + to_string(c.total_weight()) + " differs from the claimed " +
                              to_string(claimed_total) + " (weights" + detail + ")");
  }
  if (uniform && !c.points.empty()) {
    bool transversal = true;
    for (const auto& wp : c.points) {
      const Order mu = intersection_multiplicity(p, q, wp.point);
      const Rational w = wp.weight;
      if (mu.is_infinite() || Rational(mu.value()) != w * w) transversal = false;
    }
    if (transversal) c.route = kRouteIntersection;
  }
  const VerificationReport v = verify_certificate(c);
  if (!v.verified) throw VerificationFailure(tag + ": independent verification failed: " + v.failures.front());
  c.verified = true;
  return c;
}

/// Internal view of a 12-point set under a relabeling.
struct Labeled {
  const PointSet* s = nullptr;
  std::vector<int> perm;  ///< x_i -> input label

  const ProjPoint& x(int i) const { return s->at(perm[static_cast<std::size_t>(i - 1)]); }
  int label(int i) const { return perm[static_cast<std::size_t>(i - 1)]; }
  std::vector<ProjPoint> xs(const std::vector<int>& internal) const
  {
    std::vector<ProjPoint> out;
    for (int i : internal) out.push_back(x(i));
    return out;
  }
  Support support(const std::vector<int>& internal) const
  {
    Support out;
    for (int i : internal) out.emplace_back(label(i), x(i));
    return out;
  }
};

inline std::vector<int> range(int a, int b)
{
  std::vector<int> v;
  for (int i = a; i <= b; ++i) v.push_back(i);
  return v;
}

inline std::vector<int> identity_perm(int n) { return range(1, n); }

inline bool on(const HomPoly& f, const ProjPoint& x) { return sgn(evaluate(f, x)) == 0; }

inline HomPoly interpolate(const std::vector<ProjPoint>& pts, int degree) { return curve_through(pts, degree); }

inline std::string label_list(const std::vector<int>& labels)
{
  std::string s;
  for (int l : labels) s += (s.empty() ? "" : ",") + std::to_string(l);
  return "{" + s + "}";
}

inline void set_certificate(ConstructionReport& rep, PotentialCertificate c)
{
  rep.outcome = kOutcomeCertificate;
  rep.certificate = std::move(c);
}

inline void set_witness(ConstructionReport& rep, std::string w)
{
  rep.outcome = kOutcomeContradiction;
  rep.witness = std::move(w);
}

inline void set_unsupported(ConstructionReport& rep, std::string w)
{
  rep.outcome = kOutcomeUnsupported;
  rep.witness = std::move(w);
}

inline std::optional<Tristate> irreducible_cubic(const HomPoly& c)
{
  const Tristate t = cubic_is_irreducible(c);
  if (t == Tristate::Unknown) return std::nullopt;
  return t;
}

/// Coefficients (a, b, c, d) with a f + b g + c h + d k = 0 and (c, d) != 0.
inline std::optional<std::array<Rational, 4>> relation_with_tail(const HomPoly& f, const HomPoly& g, const HomPoly& h,
                                                                  const HomPoly& k)
{
  const std::array<Vector, 4> v{vector_from_form(f), vector_from_form(g), vector_from_form(h), vector_from_form(k)};
  Matrix m;
  for (std::size_t row = 0; row < v[0].size(); ++row) m.push_back({v[0][row], v[1][row], v[2][row], v[3][row]});
  for (const auto& kv : kernel_basis(m, 4))
    if (sgn(kv[2]) != 0 || sgn(kv[3]) != 0) return std::array<Rational, 4>{kv[0], kv[1], kv[2], kv[3]};
  return std::nullopt;
}

/// The proof's endgame when one cubic divides every other member: the
/// residual cubics are shown to be dependent modulo the other cubic.
inline void residual_branch(const Labeled& lx, const HomPoly& a, const HomPoly& b, bool a_is_c1,
                            const std::vector<HomPoly>& members, ConstructionReport& rep)
{
  rep.trace.push_back("pair.residual-cubics");
  std::vector<HomPoly> d;
  for (const auto& m : members) d.push_back(*divide_exact(m, a));
  const std::vector<int> own_b = a_is_c1 ? range(10, 12) : range(7, 9);
  const CurveAnalysis an = analyze_curve(a);
  std::vector<int> smooth;
  for (int i = 1; i <= 6; ++i)
    if (std::find(an.singular_points_over_Q.begin(), an.singular_points_over_Q.end(), lx.x(i)) == an.singular_points_over_Q.end())
      smooth.push_back(i);
  if (smooth.size() > 5) smooth.resize(5);
  std::vector<int> known = smooth;
  known.insert(known.end(), own_b.begin(), own_b.end());
  for (std::size_t k = 0; k < d.size(); ++k)
    for (int i : known)
      if (!on(d[k], lx.x(i)))
        rep.notes.push_back("D_" + std::to_string(k + 2) + " misses x" + std::to_string(i) + " (expected from the order conditions)");
  const auto known_pts = lx.xs(known);
  HomPoly base = d[0];
  std::string base_name = "D_2";
  for (int round = 0; round < 6; ++round) {
    if (gcd_homogeneous(b, base).degree() > 0) {
      rep.trace.push_back("pair.dependent");
      set_witness(rep, base_name + " shares a component with the irreducible cubic, so it is a multiple of it and the "
                               "corresponding member is a multiple of P1");
      return;
    }
    BezoutTable bt;
    try {
      bt = bezout_table(b, base);
    } catch (const UnsupportedInstance& e) {
      set_unsupported(rep, std::string("intersection of the cubic and ") + base_name + ": " + e.what());
      return;
    }
    std::vector<IntersectionRecord> extra;
    std::optional<IntersectionRecord> tangent;
    for (const auto& r : bt.records) {
      const bool is_known = std::find(known_pts.begin(), known_pts.end(), r.point) != known_pts.end();
      if (!is_known) extra.push_back(r);
      else if (r.multiplicity == 2) tangent = r;
    }
    if (!extra.empty() && extra.front().multiplicity == 1) {
      rep.trace.push_back("pair.cb-ninth-point");
      const ProjPoint xs = extra.front().point;
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k] == base) continue;
        const bool contains = on(d[k], xs);
        if (forms_rank({b, base}) < 2) continue;
        const auto pm = pencil_member(b, base, d[k]);
        if (pm) {
          set_witness(rep, "ninth point " + xs.to_string() + (contains ? " lies" : " does not lie") + " on D_" +
                               std::to_string(k + 2) + "; D_" + std::to_string(k + 2) + " = (" + to_string(pm->first) +
                               ") C + (" + to_string(pm->second) + ") " + base_name +
                               ", so the members are linearly dependent");
          return;
        }
        rep.notes.push_back("D_" + std::to_string(k + 2) + " is not in the pencil of the cubic and " + base_name);
      }
      set_unsupported(rep, "Cayley-Bacharach step did not produce a pencil relation on this instance");
      return;
    }
    if (tangent && extra.empty()) {
      const ProjPoint t = tangent->point;
      std::optional<std::size_t> transversal;
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k] == base) continue;
        if (intersection_multiplicity(b, d[k], t) != Order(2)) transversal = k;
      }
      if (!transversal) {
        rep.trace.push_back("pair.tangency");
        std::vector<HomPoly> others;
        for (const auto& dk : d)
          if (dk != base) others.push_back(dk);
        if (others.size() < 2) {
          set_unsupported(rep, "tangency branch needs two further residual cubics");
          return;
        }
        const auto rel = relation_with_tail(b, base, others[0], others[1]);
        if (rel) {
          set_witness(rep, "tangency at " + t.to_string() + ": (" + to_string((*rel)[2]) + ") D_3 + (" + to_string((*rel)[3]) +
                               ") D_4 lies in the pencil of the cubic and " + base_name +
                               ", so the members are linearly dependent");
        } else {
          set_unsupported(rep, "local-ring relation not realized on this instance");
        }
        return;
      }
      rep.trace.push_back("pair.generic-member");
      base = base + d[*transversal] * Rational(round + 1);
      base_name = base_name + " + " + std::to_string(round + 1) + " D_" + std::to_string(*transversal + 2);
      continue;
    }
    set_unsupported(rep, "intersection of the cubic with " + base_name + " has an unexpected pattern (residual " +
                             std::to_string(bt.residual) + ")");
    return;
  }
  set_unsupported(rep, "no pencil member with nine distinct intersection points found");
}

/// The move sequence for an explicit list of further members.
inline void pair_moves(const Labeled& lx, const HomPoly& c1, const HomPoly& c2, const std::vector<HomPoly>& members,
                       ConstructionReport& rep)
{
  const HomPoly p1 = c1 * c2;
  std::vector<char> d1, d2;
  for (const auto& m : members) {
    d1.push_back(divides(c1, m));
    d2.push_back(divides(c2, m));
  }
  const Support all = lx.support(range(1, 12));
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!d1[i] && !d2[i]) {
      rep.trace.push_back("pair.direct");
      rep.notes.push_back("Q = P_" + std::to_string(i + 2));
      set_certificate(rep, assemble(p1, members[i], all, "pair.direct", Rational(18)));
      return;
    }
  for (std::size_t i = 0; i < members.size(); ++i)
    if (d1[i] && d2[i]) {
      rep.trace.push_back("pair.both-divide");
      set_witness(rep, "C1 and C2 both divide P_" + std::to_string(i + 2) + ", so it is a multiple of P1 = C1 C2");
      return;
    }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j)
      if (d1[i] && d2[j]) {
        rep.trace.push_back("pair.sum");
        rep.notes.push_back("Q = P_" + std::to_string(i + 2) + " + P_" + std::to_string(j + 2));
        set_certificate(rep, assemble(p1, members[i] + members[j], all, "pair.sum", Rational(18)));
        return;
      }
  rep.trace.push_back("pair.one-divides-all");
  const bool by_c1 = !members.empty() && d1[0];
  rep.notes.push_back(std::string(by_c1 ? "C1" : "C2") + " divides every further member");
  if (members.size() < 3) {
    set_unsupported(rep, "one cubic divides every member but fewer than three members were given");
    return;
  }
  residual_branch(lx, by_c1 ? c1 : c2, by_c1 ? c2 : c1, by_c1, members, rep);
}

/// The sextic system: double points x1..x6, simple points x7..x12.
inline LinearSystem sextic_system(const Labeled& lx)
{
  std::vector<VanishingCondition> conds;
  for (int i = 1; i <= 12; ++i) conds.push_back({lx.x(i), i <= 6 ? 2 : 1});
  return build_system(6, conds);
}

inline void lemma1_core(const Labeled& lx, const HomPoly& c1, const HomPoly& c2, ConstructionReport& rep)
{
  rep.trace.push_back("pair.setup");
  const LinearSystem sys = sextic_system(lx);
  const HomPoly p1 = c1 * c2;
  if (!in_system(sys, p1)) throw VerificationFailure("C1 C2 is not in the sextic system");
  std::vector<HomPoly> chosen{p1};
  for (const auto& b : sys.kernel_basis) {
    if (chosen.size() == 4) break;
    auto next = chosen;
    next.push_back(b);
    if (forms_rank(next) == static_cast<int>(next.size())) chosen = std::move(next);
  }
  if (chosen.size() < 4) throw VerificationFailure("sextic system has dimension below 4");
  pair_moves(lx, c1, c2, {chosen.begin() + 1, chosen.end()}, rep);
}

inline void check_lemma1_preconditions(const Labeled& lx, const HomPoly& c1, const HomPoly& c2)
{
  if (lx.s->size() != 12) throw PreconditionError("pair construction needs 12 points");
  for (const auto* c : {&c1, &c2})
    if (c->degree() != 3 || c->is_zero()) throw PreconditionError("c1 and c2 must be nonzero cubics");
  for (int i = 1; i <= 9; ++i)
    if (!on(c1, lx.x(i))) throw PreconditionError("c1 does not contain x" + std::to_string(i));
  for (int i = 10; i <= 12; ++i)
    if (on(c1, lx.x(i))) throw PreconditionError("c1 contains x" + std::to_string(i));
  for (int i : {1, 2, 3, 4, 5, 6, 10, 11, 12})
    if (!on(c2, lx.x(i))) throw PreconditionError("c2 does not contain x" + std::to_string(i));
  for (int i = 7; i <= 9; ++i)
    if (on(c2, lx.x(i))) throw PreconditionError("c2 contains x" + std::to_string(i));
  for (const auto& [c, name] : {std::pair{&c1, "c1"}, std::pair{&c2, "c2"}}) {
    const auto irr = irreducible_cubic(*c);
    if (!irr) throw UnsupportedInstance(std::string(name) + ": irreducibility could not be decided");
    if (*irr != Tristate::True) throw PreconditionError(std::string(name) + " is reducible");
  }
}

/// The quartic partner: the first system member independent of p1 and
/// coprime to it, trying basis elements and then pairwise sums.
inline std::optional<HomPoly> quartic_partner(const LinearSystem& sys, const HomPoly& p1, ConstructionReport& rep)
{
  if (!in_system(sys, p1)) throw VerificationFailure("P1 is not in the quartic system");
  std::vector<HomPoly> cands = sys.kernel_basis;
  for (std::size_t i = 0; i < sys.kernel_basis.size(); ++i)
    for (std::size_t j = i + 1; j < sys.kernel_basis.size(); ++j) cands.push_back(sys.kernel_basis[i] + sys.kernel_basis[j]);
  bool first_independent = true;
  for (const auto& c : cands) {
    if (forms_rank({p1, c}) < 2) continue;
    if (common_zeros_discrete(p1, c)) return c;
    if (first_independent) rep.notes.push_back("first independent quartic shares a component with P1; searching further");
    first_independent = false;
  }
  return std::nullopt;
}

/// P1 = C * C~ with quartics through all twelve points.
inline void quartic_conic_pair(const Labeled& lx, const HomPoly& conic, const HomPoly& conic2, const std::string& tag,
                               ConstructionReport& rep)
{
  rep.trace.push_back("quartic.conic-pair");
  if (conic_rank(conic2) != 3) rep.notes.push_back("conic through x8..x12 is reducible");
  std::vector<VanishingCondition> conds;
  for (int i = 1; i <= 12; ++i) conds.push_back({lx.x(i), 1});
  const LinearSystem sys = build_system(4, conds);
  const HomPoly p1 = conic * conic2;
  const auto p2 = quartic_partner(sys, p1, rep);
  if (!p2) {
    set_unsupported(rep, "no quartic through the twelve points is coprime to C C~");
    return;
  }
  set_certificate(rep, assemble(p1, *p2, lx.support(range(1, 12)), tag, Rational(12)));
}

/// Irreducible conics through at least seven points, as label sets.
inline std::optional<std::pair<std::vector<int>, HomPoly>> irreducible_seven_conic(const PointSet& s)
{
  const int n = static_cast<int>(s.size());
  std::vector<int> c(7);
  for (int i = 0; i < 7; ++i) c[static_cast<std::size_t>(i)] = i;
  do {
    std::vector<ProjPoint> pts;
    for (int i : c) pts.push_back(s.points()[static_cast<std::size_t>(i)]);
    std::vector<VanishingCondition> conds;
    for (const auto& p : pts) conds.push_back({p, 1});
    const LinearSystem sys = build_system(2, conds);
    if (sys.dimension() == 1 && conic_rank(sys.kernel_basis[0]) == 3)
      return std::make_pair(s.labels_on(sys.kernel_basis[0]), sys.kernel_basis[0]);
  } while (next_combination(c, n));
  return std::nullopt;
}

/// Division cascade for C1 = l1 * conic.
inline void cascade(const Labeled& lx, const HomPoly& l1, const HomPoly& conic, const HomPoly& c2, const std::string& tag,
                    ConstructionReport& rep)
{
  const LinearSystem sys = sextic_system(lx);
  const HomPoly p1 = l1 * conic * c2;
  if (!in_system(sys, p1)) throw VerificationFailure("C1 C2 is not in the sextic system");
  std::optional<HomPoly> p2;
  for (const auto& b : sys.kernel_basis)
    if (forms_rank({p1, b}) == 2) {
      p2 = b;
      break;
    }
  if (!p2) throw VerificationFailure("sextic system has no member independent of C1 C2");
  const HomPoly g = gcd_homogeneous(p1, *p2);
  const Support all = lx.support(range(1, 12));
  if (g.degree() == 0) {
    rep.trace.push_back("cascade.coprime");
    set_certificate(rep, assemble(p1, *p2, all, tag + "/cascade.coprime", Rational(18)));
    return;
  }
  rep.trace.push_back("cascade.common-factor");
  std::vector<std::pair<std::string, HomPoly>> parts{{"l1", l1}, {"C", conic}};
  if (conic_rank(conic) < 3) {
    const auto lc = find_line_components(conic);
    for (std::size_t k = 0; k < lc.lines.size(); ++k) parts.emplace_back("C.line" + std::to_string(k + 1), lc.lines[k]);
  }
  parts.emplace_back("C2", c2);
  {
    const auto lc = find_line_components(c2);
    for (std::size_t k = 0; k < lc.lines.size(); ++k) parts.emplace_back("C2.line" + std::to_string(k + 1), lc.lines[k]);
    if (!lc.lines.empty() && lc.residual.degree() > 0) parts.emplace_back("C2.rest", lc.residual);
  }
  for (const auto& [name, f] : parts)
    if (divides(f, g)) rep.notes.push_back(name + " divides P2");
  const HomPoly q1 = *divide_exact(p1, g), q2 = *divide_exact(*p2, g);
  const int d = q1.degree();
  rep.notes.push_back("common factor of degree " + std::to_string(g.degree()) + "; quotient pair of degree " + std::to_string(d));
  if (d < 3) {
    rep.trace.push_back("cascade.dependent");
    set_witness(rep, "after removing the common factor the pair has degree " + std::to_string(d) +
                         ", which forces the two sextics to be dependent");
    return;
  }
  set_certificate(rep, assemble(q1, q2, all, tag + "/cascade.divided", Rational(3 * d)));
}

/// Interpolates C1 through x1..x9 and C2 through x1..x6, x10..x12 and
/// follows the irreducible or reducible route.
inline void cubic_pair_route(const PointSet& s, std::vector<int> perm, const std::string& tag, ConstructionReport& rep)
{
  Labeled lx{&s, std::move(perm)};
  HomPoly c1 = interpolate(lx.xs(range(1, 9)), 3);
  HomPoly c2 = interpolate(lx.xs({1, 2, 3, 4, 5, 6, 10, 11, 12}), 3);
  auto irr1 = irreducible_cubic(c1), irr2 = irreducible_cubic(c2);
  if (!irr1 || !irr2) {
    rep.relabeling = lx.perm;
    set_unsupported(rep, "irreducibility of an interpolating cubic could not be decided");
    return;
  }
  if (*irr1 == Tristate::True && *irr2 == Tristate::True) {
    for (int i = 10; i <= 12; ++i)
      if (on(c1, lx.x(i))) rep.notes.push_back("C1 also contains x" + std::to_string(i));
    for (int i = 7; i <= 9; ++i)
      if (on(c2, lx.x(i))) rep.notes.push_back("C2 also contains x" + std::to_string(i));
    rep.trace.push_back("cubics.both-irreducible");
    rep.relabeling = lx.perm;
    lemma1_core(lx, c1, c2, rep);
    return;
  }
  if (*irr1 == Tristate::True) {
    rep.trace.push_back("cubics.swap");
    std::vector<int> q = lx.perm;
    std::rotate(q.begin() + 6, q.begin() + 9, q.end());
    lx.perm = q;
    std::swap(c1, c2);
  }
  rep.relabeling = lx.perm;
  rep.trace.push_back("cubics.reducible");
  const LineComponents lc = find_line_components(c1);
  if (lc.lines.empty()) {
    set_unsupported(rep, "reducible cubic without a rational line component");
    return;
  }
  const auto nine = lx.xs(range(1, 9));
  auto count_on = [&](const HomPoly& f) {
    int k = 0;
    for (const auto& x : nine)
      if (on(f, x)) ++k;
    return k;
  };
  // The line whose residual conic holds the most of the nine points.
  std::optional<std::pair<HomPoly, HomPoly>> split;
  int best = -1;
  for (const auto& l : lc.lines) {
    const HomPoly conic = *divide_exact(c1, l);
    const int k = count_on(conic);
    if (k > best) {
      best = k;
      split = std::make_pair(l, conic);
    }
  }
  const auto& [l1, conic] = *split;
  rep.notes.push_back("C1 = l1 * C with l1 through " + std::to_string(count_on(l1)) + " and C through " +
                      std::to_string(best) + " of x1..x9");
  const auto on_conic = s.labels_on(conic);
  if (on_conic.size() >= 7 && conic_rank(conic) == 3) {
    rep.trace.push_back("cubics.seven-point-conic");
    std::vector<int> q = on_conic;
    q.resize(7);
    for (int l = 1; l <= 12; ++l)
      if (std::find(q.begin(), q.end(), l) == q.end()) q.push_back(l);
    Labeled lq{&s, q};
    rep.relabeling = q;
    quartic_conic_pair(lq, conic, interpolate(lq.xs(range(8, 12)), 2), tag + "/seven-point-conic", rep);
    return;
  }
  cascade(lx, l1, conic, c2, tag, rep);
}

/// Labels of the 4-point lines.
inline std::vector<std::vector<int>> four_point_lines(const PointSet& s) { return collinear_subsets(s, 4); }

/// First split of the labels into six common points and two triples such
/// that neither nine-point set contains a four-point line and each cubic
/// through nine points avoids the other triple.
inline std::optional<std::vector<int>> split_6_3_3(const PointSet& s)
{
  const auto lines = four_point_lines(s);
  auto contains_line = [&](const std::vector<int>& set) {
    for (const auto& l : lines)
      if (std::all_of(l.begin(), l.end(), [&](int x) { return std::count(set.begin(), set.end(), x) > 0; })) return true;
    return false;
  };
  std::vector<int> a(6);
  for (int i = 0; i < 6; ++i) a[static_cast<std::size_t>(i)] = i;
  do {
    std::vector<int> common = to_labels(a), rest;
    for (int l = 1; l <= 12; ++l)
      if (std::find(common.begin(), common.end(), l) == common.end()) rest.push_back(l);
    std::vector<int> b{0, 1, 2};
    do {
      std::vector<int> t1, t2;
      for (int i = 0; i < 6; ++i)
        (std::count(b.begin(), b.end(), i) ? t1 : t2).push_back(rest[static_cast<std::size_t>(i)]);
      if (t1.front() > t2.front()) continue;
      std::vector<int> n1 = common, n2 = common;
      n1.insert(n1.end(), t1.begin(), t1.end());
      n2.insert(n2.end(), t2.begin(), t2.end());
      if (contains_line(n1) || contains_line(n2)) continue;
      const HomPoly c1 = interpolate(s.select(n1), 3), c2 = interpolate(s.select(n2), 3);
      bool clean = true;
      for (int l : t2)
        if (on(c1, s.at(l))) clean = false;
      for (int l : t1)
        if (on(c2, s.at(l))) clean = false;
      if (!clean) continue;
      std::vector<int> perm = common;
      perm.insert(perm.end(), t1.begin(), t1.end());
      perm.insert(perm.end(), t2.begin(), t2.end());
      return perm;
    } while (next_combination(b, 6));
  } while (next_combination(a, 12));
  return std::nullopt;
}

inline void require_twelve(const PointSet& s, const char* what)
{
  if (s.size() != 12) throw PreconditionError(std::string(what) + " needs exactly 12 points, got " + std::to_string(s.size()));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pipelines.

/// Two members of the sextic system with a discrete common zero set, given
/// irreducible cubics c1 through x1..x9 and c2 through x1..x6, x10..x12.
inline ConstructionReport lemma1_construct(const PointSet& s, const HomPoly& c1, const HomPoly& c2)
{
  detail::require_twelve(s, "lemma1_construct");
  const detail::Labeled lx{&s, detail::identity_perm(12)};
  detail::check_lemma1_preconditions(lx, c1, c2);
  ConstructionReport rep;
  rep.relabeling = lx.perm;
  detail::lemma1_core(lx, c1, c2, rep);
  return rep;
}

/// The same move sequence with explicitly given further members P2, P3, P4
/// in place of a basis of the sextic system.
inline ConstructionReport lemma1_with_members(const PointSet& s, const HomPoly& c1, const HomPoly& c2,
                                              const std::vector<HomPoly>& members)
{
  detail::require_twelve(s, "lemma1_with_members");
  const detail::Labeled lx{&s, detail::identity_perm(12)};
  detail::check_lemma1_preconditions(lx, c1, c2);
  for (const auto& m : members)
    if (m.degree() != 6) throw PreconditionError("members must be sextics");
  std::vector<HomPoly> all{c1 * c2};
  all.insert(all.end(), members.begin(), members.end());
  ConstructionReport rep;
  if (forms_rank(all) != static_cast<int>(all.size())) rep.notes.push_back("P1 and the given members are linearly dependent");
  rep.relabeling = lx.perm;
  rep.trace.push_back("pair.setup");
  detail::pair_moves(lx, c1, c2, members, rep);
  return rep;
}

/// A certificate with total weight equal to three times the growth for a
/// 12-point set whose largest cubic subset has 9 points.
inline ConstructionReport lemma2_construct(const PointSet& s)
{
  detail::require_twelve(s, "lemma2_construct");
  const MSequence ms = m_sequence(s);
  if (ms.m3() != 9)
    throw PreconditionError("lemma2_construct needs m3 = 9, got m-sequence " + ms.to_string());
  ConstructionReport rep;
  rep.notes.push_back("m-sequence " + ms.to_string());
  const std::vector<int> id = detail::identity_perm(12);
  if (ms.m2() == 5) {
    rep.trace.push_back("lemma2.case1");
    detail::cubic_pair_route(s, id, "lemma2.case1", rep);
  } else if (ms.m2() == 6 && ms.m1() <= 3) {
    rep.trace.push_back("lemma2.case2");
    detail::cubic_pair_route(s, id, "lemma2.case2", rep);
  } else if (ms.m2() == 6) {
    rep.trace.push_back("lemma2.case3");
    const auto lines = detail::four_point_lines(s);
    if (lines.size() != 1) throw VerificationFailure("expected a unique four-point line, found " + std::to_string(lines.size()));
    const auto& l = lines.front();
    std::vector<int> o;
    for (int x = 1; x <= 12; ++x)
      if (std::find(l.begin(), l.end(), x) == l.end()) o.push_back(x);
    // Line = x9..x12, C1 through x1..x7, x9, x10 and C2 through x1..x6, x8, x11, x12.
    const std::vector<int> perm{o[0], o[1], o[2], o[3], o[4], o[5], o[6], l[0], l[1], o[7], l[2], l[3]};
    detail::cubic_pair_route(s, perm, "lemma2.case3", rep);
  } else {
    if (auto c = detail::irreducible_seven_conic(s)) {
      rep.trace.push_back("lemma2.case4.irreducible-conic");
      std::vector<int> perm(c->first.begin(), c->first.begin() + 7);
      for (int x = 1; x <= 12; ++x)
        if (std::find(perm.begin(), perm.end(), x) == perm.end()) perm.push_back(x);
      const detail::Labeled lx{&s, perm};
      rep.relabeling = perm;
      detail::quartic_conic_pair(lx, c->second, detail::interpolate(lx.xs(detail::range(8, 12)), 2),
                                 "lemma2.case4.irreducible-conic", rep);
    } else {
      rep.trace.push_back("lemma2.case4.reducible-conic");
      const auto perm = detail::split_6_3_3(s);
      if (!perm) {
        detail::set_unsupported(rep, "no (6|3|3) split avoids the four-point lines");
        return rep;
      }
      rep.notes.push_back("split: common " + detail::label_list({perm->begin(), perm->begin() + 6}) + ", triples " +
                          detail::label_list({perm->begin() + 6, perm->begin() + 9}) + " and " +
                          detail::label_list({perm->begin() + 9, perm->end()}));
      detail::cubic_pair_route(s, *perm, "lemma2.case4.reducible-conic", rep);
    }
  }
  if (rep.certificate && rep.certificate->total_weight() != 3 * rep.certificate->gamma)
    throw VerificationFailure("certificate breaks the ratio total/gamma = 3");
  return rep;
}

namespace detail {

/// Quartic construction with P1 given and the system described by its
/// simple points and one optional double point.
inline void quartic_route(const HomPoly& p1, const Support& simple, const std::optional<std::pair<int, ProjPoint>>& dbl,
                          const std::string& tag, const Rational& claim, ConstructionReport& rep)
{
  std::vector<VanishingCondition> conds;
  Support cand = simple;
  for (const auto& [label, x] : simple) conds.push_back({x, 1});
  if (dbl) {
    conds.push_back({dbl->second, 2});
    cand.push_back(*dbl);
  }
  const LinearSystem sys = build_system(4, conds);
  const auto p2 = quartic_partner(sys, p1, rep);
  if (!p2) {
    set_unsupported(rep, tag + ": no quartic of the system is coprime to P1");
    return;
  }
  set_certificate(rep, assemble(p1, *p2, cand, tag, claim));
}

inline void theorem_case3_lines(const Labeled& lx, const HomPoly& conic, ConstructionReport& rep)
{
  rep.trace.push_back("theorem.case3.lines");
  struct Pair {
    int a, b, c, d, excluded;
  };
  const std::vector<Pair> pairs{{8, 9, 10, 11, 12},  {8, 10, 9, 11, 12},  {8, 11, 9, 10, 12},
                                {8, 12, 10, 11, 9}, {8, 10, 11, 12, 9}, {8, 11, 10, 12, 9}};
  auto conic_points = [&](const HomPoly& l) {
    std::vector<int> out;
    for (int i = 1; i <= 7; ++i)
      if (on(l, lx.x(i))) out.push_back(i);
    return out;
  };
  for (const auto& pr : pairs) {
    const HomPoly la = line_through(lx.x(pr.a), lx.x(pr.b)), lb = line_through(lx.x(pr.c), lx.x(pr.d));
    if (la == lb) continue;
    for (int orient = 0; orient < 2; ++orient) {
      const HomPoly& first = orient == 0 ? la : lb;
      const HomPoly& second = orient == 0 ? lb : la;
      const auto ca = conic_points(first), cb = conic_points(second);
      std::string prop;
      int dbl = 0;
      if (ca.size() == 1 && (cb.empty() || cb == ca)) {
        prop = "P1";
        dbl = ca[0];
      } else if (ca.size() == 1 && cb.size() == 1 && ca != cb) {
        prop = "P2";
        dbl = ca[0];
      } else if (ca.size() == 2 && cb.size() == 1 && std::find(ca.begin(), ca.end(), cb[0]) == ca.end()) {
        prop = "P3";
        dbl = cb[0];
      }
      if (prop.empty()) continue;
      const std::string pair_name = "(L" + std::to_string(orient == 0 ? pr.a : pr.c) + "," +
                                    std::to_string(orient == 0 ? pr.b : pr.d) + ", L" +
                                    std::to_string(orient == 0 ? pr.c : pr.a) + "," +
                                    std::to_string(orient == 0 ? pr.d : pr.b) + ")";
      std::vector<int> simple;
      for (int i = 1; i <= 12; ++i)
        if (i != pr.excluded && i != dbl) simple.push_back(i);
      ConstructionReport trial = rep;
      trial.trace.push_back("theorem.case3." + prop);
      trial.notes.push_back("property " + prop + " for " + pair_name + ", double point x" + std::to_string(dbl) + ", x" +
                            std::to_string(pr.excluded) + " dropped");
      quartic_route(conic * la * lb, lx.support(simple), std::make_pair(lx.label(dbl), lx.x(dbl)), "theorem.case3." + prop,
                    Rational(12), trial);
      if (trial.outcome == kOutcomeCertificate) {
        rep = std::move(trial);
        return;
      }
      rep.notes.push_back("property " + prop + " for " + pair_name + " gave no coprime quartic");
    }
  }
  set_unsupported(rep, "no line pair satisfies P1, P2 or P3 with a coprime quartic");
}

/// Ten points on an irreducible cubic.
inline std::optional<std::string> current_exclusion(const PointSet& s)
{
  std::vector<int> c(10);
  for (int i = 0; i < 10; ++i) c[static_cast<std::size_t>(i)] = i;
  do {
    std::vector<VanishingCondition> conds;
    for (int i : c) conds.push_back({s.points()[static_cast<std::size_t>(i)], 1});
    const LinearSystem sys = build_system(3, conds);
    for (const auto& b : sys.kernel_basis)
      if (cubic_is_irreducible(b) == Tristate::True) return std::string("exclusion.irreducible-cubic-ten");
  } while (next_combination(c, static_cast<int>(s.size())));
  return std::nullopt;
}

}  // namespace detail

/// Certificates for the cases m3 = 10 and m3 = 11. For m3 = 11 an extra
/// point p off the 11-point cubic and distinct from x12 is required.
inline ConstructionReport theorem_case_construct(const PointSet& s, const std::optional<ProjPoint>& extra)
{
  detail::require_twelve(s, "theorem_case_construct");
  const MSequence ms = m_sequence(s);
  if (ms.m3() != 10 && ms.m3() != 11)
    throw PreconditionError("theorem_case_construct needs m3 in {10, 11}, got m-sequence " + ms.to_string());
  if (ms.m1() > 4)
    throw PreconditionError("m1 = " + std::to_string(ms.m1()) + " > 4 (exclusion.line-five: " +
                            branch_catalog().at("exclusion.line-five") + ")");
  if (ms.m2() > 7)
    throw PreconditionError("m2 = " + std::to_string(ms.m2()) + " > 7 (exclusion.conic-eight: " +
                            branch_catalog().at("exclusion.conic-eight") + ")");
  ConstructionReport rep;
  rep.notes.push_back("m-sequence " + ms.to_string());
  if (auto ex = detail::current_exclusion(s)) {
    rep.trace.push_back(*ex);
    detail::set_unsupported(rep, *ex + ": " + branch_catalog().at(*ex));
    return rep;
  }
  if (ms.m3() == 10 && ms.m2() == 6) {
    rep.trace.push_back("theorem.case2");
    const auto lines = detail::four_point_lines(s);
    if (lines.size() != 1) throw VerificationFailure("expected a unique four-point line, found " + std::to_string(lines.size()));
    const auto& l = lines.front();
    std::vector<int> o;
    for (int x = 1; x <= 12; ++x)
      if (std::find(l.begin(), l.end(), x) == l.end()) o.push_back(x);
    // Line x1..x4, then x5..x12; C1 through x1,x2,x5,x7..x12, C2 through x3,x4,x6,x7..x12.
    const std::vector<int> perm{o[2], o[3], o[4], o[5], o[6], o[7], l[0], l[1], o[0], l[2], l[3], o[1]};
    detail::cubic_pair_route(s, perm, "theorem.case2", rep);
    if (rep.certificate && rep.certificate->total_weight() != 3 * rep.certificate->gamma)
      throw VerificationFailure("certificate breaks the ratio total/gamma = 3");
    return rep;
  }
  if (ms.m3() == 10) {
    rep.trace.push_back("theorem.case3");
    if (auto c = detail::irreducible_seven_conic(s)) {
      std::vector<int> perm(c->first.begin(), c->first.begin() + 7);
      for (int x = 1; x <= 12; ++x)
        if (std::find(perm.begin(), perm.end(), x) == perm.end()) perm.push_back(x);
      detail::Labeled lx{&s, perm};
      const HomPoly conic = c->second;
      const HomPoly conic2 = detail::interpolate(lx.xs(detail::range(8, 12)), 2);
      if (conic_rank(conic2) == 3) {
        rep.relabeling = perm;
        rep.trace.push_back("theorem.case3.conic-pair");
        detail::quartic_conic_pair(lx, conic, conic2, "theorem.case3.conic-pair", rep);
        return rep;
      }
      // Relabel so that x8, x9, x12 lie on a line component of the residual conic.
      const auto lc = find_line_components(conic2);
      std::optional<std::vector<int>> three;
      for (const auto& ln : lc.lines) {
        std::vector<int> on_line;
        for (int i = 8; i <= 12; ++i)
          if (detail::on(ln, lx.x(i))) on_line.push_back(i);
        if (on_line.size() == 3) three = on_line;
      }
      if (!three) {
        detail::set_unsupported(rep, "residual conic has no line through exactly three of x8..x12");
        return rep;
      }
      std::vector<int> others;
      for (int i = 8; i <= 12; ++i)
        if (std::find(three->begin(), three->end(), i) == three->end()) others.push_back(i);
      const std::vector<int> order{(*three)[0], (*three)[1], others[0], others[1], (*three)[2]};
      for (int k = 0; k < 5; ++k) perm[static_cast<std::size_t>(7 + k)] = lx.label(order[static_cast<std::size_t>(k)]);
      lx.perm = perm;
      rep.relabeling = perm;
      for (int i = 1; i <= 7; ++i) {
        const HomPoly ci = detail::interpolate(lx.xs({8, 9, 10, 11, i}), 2);
        if (conic_rank(ci) != 3) continue;
        rep.trace.push_back("theorem.case3.conic-Ci");
        rep.notes.push_back("C_" + std::to_string(i) + " is irreducible");
        std::vector<int> simple;
        for (int k = 1; k <= 11; ++k)
          if (k != i) simple.push_back(k);
        detail::quartic_route(conic * ci, lx.support(simple), std::make_pair(lx.label(i), lx.x(i)), "theorem.case3.conic-Ci",
                              Rational(12), rep);
        return rep;
      }
      detail::theorem_case3_lines(lx, conic, rep);
      return rep;
    }
    rep.trace.push_back("theorem.case3.line-configuration");
    const auto lines = detail::four_point_lines(s);
    IncidenceStructure st{12, {}};
    for (const auto& l : lines)
      if (l.size() == 4) st.lines.push_back({l[0], l[1], l[2], l[3]});
    rep.notes.push_back(std::to_string(st.lines.size()) + " four-point lines, shape " + shape_of(st));
    const auto perm = detail::split_6_3_3(s);
    if (!perm) {
      detail::set_unsupported(rep, "no (6|3|3) split avoids the four-point lines");
      return rep;
    }
    rep.notes.push_back("split: common " + detail::label_list({perm->begin(), perm->begin() + 6}) + ", triples " +
                        detail::label_list({perm->begin() + 6, perm->begin() + 9}) + " and " +
                        detail::label_list({perm->begin() + 9, perm->end()}));
    detail::cubic_pair_route(s, *perm, "theorem.case3.line-configuration", rep);
    return rep;
  }
  // m3 = 11.
  rep.trace.push_back("theorem.case4");
  if (!extra) throw PreconditionError("m3 = 11 needs an extra point p off the 11-point cubic");
  const Witness& w = ms.witnesses[2];
  const HomPoly gamma = w.curve;
  int x12 = 0;
  for (int x = 1; x <= 12; ++x)
    if (std::find(w.labels.begin(), w.labels.end(), x) == w.labels.end()) x12 = x;
  const ProjPoint p = *extra;
  if (detail::on(gamma, p)) throw PreconditionError("extra point lies on the 11-point cubic");
  if (p == s.at(x12)) throw PreconditionError("extra point coincides with x12");
  const LineComponents lc = find_line_components(gamma);
  std::optional<std::pair<HomPoly, HomPoly>> split;
  for (const auto& l : lc.lines) {
    const HomPoly conic = *divide_exact(gamma, l);
    if (conic_rank(conic) == 3 && s.labels_on(conic).size() >= 7) split = std::make_pair(l, conic);
  }
  if (!split) {
    if (lc.lines.empty()) {
      rep.trace.push_back("exclusion.irreducible-cubic-ten");
      detail::set_unsupported(rep, "exclusion.irreducible-cubic-ten: " + branch_catalog().at("exclusion.irreducible-cubic-ten"));
    } else {
      rep.trace.push_back("exclusion.conic-eight");
      detail::set_unsupported(rep, "the 11-point cubic is not an irreducible conic plus a line");
    }
    return rep;
  }
  const auto& [line, conic] = *split;
  std::vector<int> c_labels, l_labels;
  for (int x : w.labels) (detail::on(conic, s.at(x)) && c_labels.size() < 7 ? c_labels : l_labels).push_back(x);
  if (c_labels.size() != 7 || l_labels.size() != 4) {
    detail::set_unsupported(rep, "conic and line do not split the cubic's points as 7 + 4");
    return rep;
  }
  const HomPoly lp = line_through(p, s.at(x12));
  std::vector<int> meet_c, meet_l;
  for (int x : c_labels)
    if (detail::on(lp, s.at(x))) meet_c.push_back(x);
  for (int x : l_labels)
    if (detail::on(lp, s.at(x))) meet_l.push_back(x);
  if (meet_l.empty() || meet_c.empty()) {
    std::vector<int> perm = c_labels;
    perm.insert(perm.end(), l_labels.begin(), l_labels.end());
    perm.push_back(x12);
    rep.relabeling = perm;
    const std::string tag = meet_l.empty() ? "theorem.case4.a" : "theorem.case4.b";
    rep.trace.push_back(tag);
    detail::Support simple = detail::Labeled{&s, perm}.support(detail::range(1, 12));
    simple.emplace_back(0, p);
    detail::quartic_route(conic * lp * line, simple, std::nullopt, tag, Rational(13), rep);
    return rep;
  }
  rep.trace.push_back("theorem.case4.c");
  // x1 on the conic and x11 on the line, both on the line through p and x12.
  std::vector<int> perm{meet_c[0]};
  for (int x : c_labels)
    if (x != meet_c[0]) perm.push_back(x);
  for (int x : l_labels)
    if (x != meet_l[0]) perm.push_back(x);
  perm.push_back(meet_l[0]);
  perm.push_back(x12);
  rep.relabeling = perm;
  const detail::Labeled lx{&s, perm};
  detail::Support simple = lx.support({2, 3, 4, 5, 6, 7, 8, 9, 12});
  simple.emplace_back(0, p);
  detail::quartic_route(conic * line * lp, simple, std::make_pair(lx.label(1), lx.x(1)), "theorem.case4.c", Rational(12), rep);
  return rep;
}

}  // namespace lelong

#endif  // LELONG_CONSTRUCT_HPP
