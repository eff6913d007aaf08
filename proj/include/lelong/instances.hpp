#ifndef LELONG_INSTANCES_HPP
#define LELONG_INSTANCES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lelong/config.hpp"
#include "lelong/curves.hpp"
#include "lelong/error.hpp"
#include "lelong/rng.hpp"

namespace lelong {

/// A named point configuration with its certified m-sequence.
struct Instance {
  std::string kind;
  std::uint64_t seed = 0;
  PointSet points;
  std::vector<std::vector<int>> special_lines;  ///< designed collinear label sets
  std::vector<HomPoly> arrangement;             ///< example6lines: the six lines
  std::optional<ProjPoint> extra;               ///< case4: the additional point p
  MSequence msequence;
  std::array<int, 3> expected{-1, -1, -1};      ///< -1 where unconstrained
  int attempts = 0;
};

inline const std::vector<std::string>& instance_kinds()
{
  static const std::vector<std::string> kinds{"generic12", "figure1", "figure2", "figure3",     "figure4",
                                              "figure5",   "case2",   "case3",   "case4",       "example6lines",
                                              "conic6",    "conic6line4", "conic7"};
  return kinds;
}

/// The 4-point line families used for the figure kinds.
inline IncidenceStructure figure_structure(const std::string& kind)
{
  using L = std::array<int, 4>;
  const std::vector<L> k5{{1, 2, 3, 4}, {1, 5, 6, 7}, {2, 5, 8, 9}, {3, 6, 8, 10}, {4, 7, 9, 10}};
  if (kind == "figure1" || kind == "figure2") return {12, k5};
  if (kind == "figure3") return {12, {{1, 2, 3, 4}, {1, 5, 6, 7}, {1, 8, 9, 10}, {2, 5, 8, 11}, {3, 6, 9, 11}}};
  if (kind == "figure4") return {12, {{1, 2, 3, 4}, {1, 5, 6, 7}, {1, 8, 9, 10}, {2, 5, 8, 11}, {2, 6, 9, 12}}};
  if (kind == "figure5")
    return {12, {{1, 2, 3, 4}, {1, 5, 6, 7}, {1, 8, 9, 10}, {2, 5, 8, 11}, {3, 6, 9, 11}, {4, 7, 10, 11}}};
  throw PreconditionError("no figure structure for kind '" + kind + "'");
}

namespace detail {

inline ProjPoint random_point(Rng& rng) { return ProjPoint::affine(rng.small_rational(12, 12), rng.small_rational(12, 12)); }

/// Random affine point of a line (the line must not be Z = 0).
inline ProjPoint random_point_on_line(Rng& rng, const HomPoly& l)
{
  const Rational a = l.coeff({1, 0, 0}), b = l.coeff({0, 1, 0}), c = l.coeff({0, 0, 1});
  const Rational t = rng.small_rational(12, 12);
  if (sgn(b) != 0) return ProjPoint::affine(t, -(a * t + c) / b);
  return ProjPoint::affine(-c / a, t);
}

/// Random irreducible conic given as the image of t -> (t^2, t, 1) under an
/// invertible integer matrix.
struct ConicParam {
  std::array<std::array<long, 3>, 3> a{};

  static ConicParam random(Rng& rng)
  {
    for (;;) {
      ConicParam c;
      for (auto& row : c.a)
        for (auto& v : row) v = static_cast<long>(rng.uniform_int(-4, 4));
      const auto& m = c.a;
      const long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      if (det != 0) return c;
    }
  }
  std::optional<ProjPoint> at(const Rational& t) const
  {
    const std::array<Rational, 3> v{t * t, t, Rational(1)};
    std::array<Rational, 3> w;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) w[i] += Rational(a[i][j]) * v[j];
    if (sgn(w[2]) == 0) return std::nullopt;
    return ProjPoint(w[0], w[1], w[2]);
  }
  ProjPoint random_point(Rng& rng) const
  {
    for (;;)
      if (auto p = at(rng.small_rational(8, 6))) return *p;
  }
};

/// Appends `count` new points drawn by `draw`, skipping repeats.
template <typename Draw>
void append_points(std::vector<ProjPoint>& pts, int count, Draw&& draw)
{
  for (int added = 0; added < count;) {
    ProjPoint p = draw();
    if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
    pts.push_back(std::move(p));
    ++added;
  }
}

/// Collinear triples must be exactly those inside the designed lines.
inline bool collinearities_as_designed(const PointSet& s, const std::vector<std::vector<int>>& designed)
{
  std::set<std::vector<int>> want;
  for (auto l : designed) {
    std::sort(l.begin(), l.end());
    want.insert(l);
  }
  std::set<std::vector<int>> got;
  for (auto& c : collinear_subsets(s, 3)) got.insert(std::move(c));
  return got == want;
}

struct Draft {
  std::vector<ProjPoint> points;
  std::vector<std::vector<int>> lines;
  std::vector<HomPoly> arrangement;
  std::optional<ProjPoint> extra;
  std::array<int, 3> expected{-1, -1, -1};
  bool ok = true;
};

inline Draft draft_instance(const std::string& kind, Rng& rng)
{
  Draft d;
  auto& pts = d.points;
  auto generic = [&](int n) { append_points(pts, n, [&] { return random_point(rng); }); };
  auto on_line = [&](const HomPoly& l, int n) { append_points(pts, n, [&] { return random_point_on_line(rng, l); }); };
  auto on_conic = [&](const ConicParam& c, int n) { append_points(pts, n, [&] { return c.random_point(rng); }); };
  if (kind == "generic12") {
    generic(12);
    d.expected = {2, 5, 9};
  } else if (kind.rfind("figure", 0) == 0) {
    const IncidenceStructure st = figure_structure(kind);
    const Realization r = realize_structure(st, rng.next(), 50);
    if (!r.realized) {
      d.ok = false;
      return d;
    }
    pts = r.points.points();
    for (const auto& l : st.lines) d.lines.push_back({l.begin(), l.end()});
    d.expected = {4, 7, -1};
    if (kind == "figure1") d.expected[2] = 9;
  } else if (kind == "case2") {
    const HomPoly l = line_through(random_point(rng), random_point(rng));
    on_line(l, 4);
    on_conic(ConicParam::random(rng), 6);
    generic(2);
    d.lines = {{1, 2, 3, 4}};
    d.expected = {4, 6, 10};
  } else if (kind == "case3") {
    on_conic(ConicParam::random(rng), 7);
    generic(2);  // x8, x9
    const HomPoly l = line_through(pts[7], pts[8]);
    generic(2);  // x10, x11
    on_line(l, 1);  // x12
    d.lines = {{8, 9, 12}};
    d.expected = {3, 7, 10};
  } else if (kind == "case4") {
    on_conic(ConicParam::random(rng), 7);
    on_line(line_through(random_point(rng), random_point(rng)), 4);
    generic(1);
    d.lines = {{8, 9, 10, 11}};
    d.expected = {4, 7, 11};
    d.extra = random_point(rng);
  } else if (kind == "conic6") {
    on_conic(ConicParam::random(rng), 6);
    on_line(line_through(random_point(rng), random_point(rng)), 3);
    generic(3);
    d.lines = {{7, 8, 9}};
    d.expected = {3, 6, 9};
  } else if (kind == "conic6line4") {
    const ConicParam c = ConicParam::random(rng);
    on_conic(c, 1);  // a1
    const HomPoly la = line_through(pts[0], random_point(rng));
    on_line(la, 3);  // a2..a4
    on_conic(c, 5);  // b1..b5
    const HomPoly lc = line_through(pts[1], random_point(rng));
    on_line(lc, 2);  // c1, c2
    generic(1);      // c3
    d.lines = {{1, 2, 3, 4}, {2, 10, 11}};
    d.expected = {4, 6, 9};
  } else if (kind == "conic7") {
    on_conic(ConicParam::random(rng), 7);
    generic(5);
    d.expected = {2, 7, 9};
  } else if (kind == "example6lines") {
    for (int i = 0; i < 6; ++i) {
      HomPoly l(1);
      while (l.is_zero() || sgn(l.coeff({0, 1, 0})) == 0)
        l = HomPoly::linear(Rational(rng.uniform_int(-6, 6)), Rational(rng.uniform_int(-6, 6)), Rational(rng.uniform_int(-9, 9)));
      d.arrangement.push_back(l.normalized());
    }
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        auto x = intersect_lines(d.arrangement[static_cast<std::size_t>(i)], d.arrangement[static_cast<std::size_t>(j)]);
        if (!x || !x->is_affine() || std::find(pts.begin(), pts.end(), *x) != pts.end()) {
          d.ok = false;  // parallel, repeated or concurrent lines
          return d;
        }
        pts.push_back(*x);
      }
    for (const auto& l : d.arrangement) {
      PointSet tmp(pts);
      d.lines.push_back(tmp.labels_on(l));
    }
    d.expected = {5, 9, 12};
  } else {
    throw PreconditionError("unknown instance kind '" + kind + "'");
  }
  return d;
}

}  // namespace detail

/// Builds a configuration of the requested kind with its designed
/// collinearities and nothing more, and certifies its m-sequence. Draws are
/// repeated with derived seeds until the checks pass.
inline Instance make_instance(const std::string& kind, std::uint64_t seed, int max_attempts = 100)
{
  if (std::find(instance_kinds().begin(), instance_kinds().end(), kind) == instance_kinds().end())
    throw PreconditionError("unknown instance kind '" + kind + "'");
  Rng root(seed);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    Rng rng = root.fork(static_cast<std::uint64_t>(attempt));
    detail::Draft d = detail::draft_instance(kind, rng);
    if (!d.ok) continue;
    PointSet s(d.points);
    if (!detail::collinearities_as_designed(s, d.lines)) continue;
    if (d.extra) {
      bool on_special = std::find(d.points.begin(), d.points.end(), *d.extra) != d.points.end();
      for (const auto& l : d.lines)
        if (l.size() >= 2 && sgn(evaluate(line_through(s.at(l[0]), s.at(l[1])), *d.extra)) == 0) on_special = true;
      if (on_special) continue;
    }
    MSequence ms = m_sequence(s);
    bool matches = true;
    for (int j = 0; j < 3; ++j)
      if (d.expected[static_cast<std::size_t>(j)] >= 0 && d.expected[static_cast<std::size_t>(j)] != ms.m[static_cast<std::size_t>(j)])
        matches = false;
    if (!matches) continue;
    Instance inst;
    inst.kind = kind;
    inst.seed = seed;
    inst.points = std::move(s);
    inst.special_lines = std::move(d.lines);
    inst.arrangement = std::move(d.arrangement);
    inst.extra = d.extra;
    inst.msequence = std::move(ms);
    inst.expected = d.expected;
    inst.attempts = attempt;
    return inst;
  }
  throw UnsupportedInstance("could not generate a '" + kind + "' instance within " + std::to_string(max_attempts) +
                            " attempts for seed " + std::to_string(seed));
}

}  // namespace lelong

#endif  // LELONG_INSTANCES_HPP
