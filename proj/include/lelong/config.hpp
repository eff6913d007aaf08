#ifndef LELONG_CONFIG_HPP
#define LELONG_CONFIG_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lelong/error.hpp"
#include "lelong/exactpoly.hpp"
#include "lelong/hompoly.hpp"
#include "lelong/linsys.hpp"
#include "lelong/matrix.hpp"
#include "lelong/parallel.hpp"
#include "lelong/rng.hpp"

namespace lelong {

/// Ordered list of distinct points; point i carries label i + 1.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<ProjPoint> points) : points_(std::move(points))
  {
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (points_[i] == points_[j])
          throw PreconditionError("point set has a repeated point: labels " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " are both " + points_[i].to_string());
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<ProjPoint>& points() const { return points_; }
  /// Point with the given 1-based label.
  const ProjPoint& at(int label) const
  {
    if (label < 1 || label > static_cast<int>(points_.size()))
      throw PreconditionError("label " + std::to_string(label) + " out of range 1.." + std::to_string(points_.size()));
    return points_[static_cast<std::size_t>(label - 1)];
  }
  std::vector<ProjPoint> select(const std::vector<int>& labels) const
  {
    std::vector<ProjPoint> out;
    for (int l : labels) out.push_back(at(l));
    return out;
  }
  /// Labels of the points on the curve p = 0.
  std::vector<int> labels_on(const HomPoly& p) const
  {
    std::vector<int> out;
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (sgn(evaluate(p, points_[i])) == 0) out.push_back(static_cast<int>(i) + 1);
    return out;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::vector<ProjPoint> points_;
};

/// A largest subset on a curve of some degree, with that curve.
struct Witness {
  std::vector<int> labels;
  HomPoly curve;
};

/// m_j = the largest number of points on one curve of degree j, j = 1, 2, 3.
struct MSequence {
  std::array<int, 3> m{};
  std::array<Witness, 3> witnesses;

  int m1() const { return m[0]; }
  int m2() const { return m[1]; }
  int m3() const { return m[2]; }
  int operator[](int j) const { return m[static_cast<std::size_t>(j - 1)]; }
  std::string to_string() const
  {
    return "(" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + ")";
  }
};

inline constexpr std::size_t kMaxMSequencePoints = 16;

namespace detail {

/// Values of all degree-d monomials at x, in the fixed monomial order.
inline Vector monomial_row(const ProjPoint& x, int degree)
{
  Vector row;
  for (const auto& e : monomials_of_degree(degree)) {
    Rational v(1);
    for (int i = 0; i < 3; ++i) v *= rational_pow(x[i], static_cast<unsigned>(e[static_cast<std::size_t>(i)]));
    row.push_back(std::move(v));
  }
  return row;
}

/// Advances `c` to the next k-subset of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<int>& c, int n)
{
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

inline HomPoly curve_through(const std::vector<ProjPoint>& pts, int degree)
{
  std::vector<VanishingCondition> c;
  for (const auto& p : pts) c.push_back({p, 1});
  const LinearSystem s = build_system(degree, c);
  if (s.kernel_basis.empty()) throw VerificationFailure("no curve of degree " + std::to_string(degree) + " through the subset");
  return s.kernel_basis.front();
}

inline std::vector<int> to_labels(const std::vector<int>& indices)
{
  std::vector<int> out;
  for (int i : indices) out.push_back(i + 1);
  return out;
}

}  // namespace detail

/// Exact m-sequence by descending subset search: a k-subset lies on a
/// degree-j curve iff its evaluation matrix has rank below C(j+2, 2).
/// Sizes at or below max(C(j+2,2) - 1, m_{j-1}) are attained without search.
inline MSequence m_sequence(const PointSet& s)
{
  const int n = static_cast<int>(s.size());
  if (s.size() > kMaxMSequencePoints)
    throw PreconditionError("m_sequence supports at most " + std::to_string(kMaxMSequencePoints) + " points, got " +
                            std::to_string(n));
  MSequence out;
  int previous = 0;
  for (int j = 1; j <= 3; ++j) {
    const int cols = monomial_count(j);
    const int lower = std::max(std::min(n, cols - 1), previous);
    std::vector<Vector> rows;
    for (const auto& p : s.points()) rows.push_back(detail::monomial_row(p, j));
    Witness w;
    int found = -1;
    for (int k = n; k > lower && found < 0; --k) {
      std::vector<int> c(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
      do {
        Matrix m;
        for (int i : c) m.push_back(rows[static_cast<std::size_t>(i)]);
        if (rank_at_least(std::move(m), static_cast<std::size_t>(cols), cols) < cols) {
          found = k;
          w.labels = detail::to_labels(c);
          break;
        }
      } while (detail::next_combination(c, n));
    }
    if (found < 0) {
      found = lower;
      if (previous == lower && j > 1 && previous > 0)
        w.labels = out.witnesses[static_cast<std::size_t>(j - 2)].labels;
      else
        for (int i = 1; i <= lower; ++i) w.labels.push_back(i);
    }
    w.curve = detail::curve_through(s.select(w.labels), j);
    out.m[static_cast<std::size_t>(j - 1)] = found;
    out.witnesses[static_cast<std::size_t>(j - 1)] = std::move(w);
    previous = found;
  }
  return out;
}

/// Re-checks witness sizes and that each witness curve is a nonzero form of
/// the right degree vanishing on its subset.
inline bool witnesses_sound(const PointSet& s, const MSequence& ms)
{
  for (int j = 1; j <= 3; ++j) {
    const Witness& w = ms.witnesses[static_cast<std::size_t>(j - 1)];
    if (static_cast<int>(w.labels.size()) != ms[j] || w.curve.is_zero() || w.curve.degree() != j) return false;
    for (int l : w.labels)
      if (sgn(evaluate(w.curve, s.at(l))) != 0) return false;
  }
  return ms.m1() <= ms.m2() && ms.m2() <= ms.m3() && ms.m3() <= static_cast<int>(s.size());
}

/// Maximal collinear subsets with at least `min_size` points, as sorted
/// label lists in lexicographic order.
inline std::vector<std::vector<int>> collinear_subsets(const PointSet& s, std::size_t min_size = 3)
{
  std::set<std::vector<int>> found;
  const auto& pts = s.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const HomPoly l = HomPoly::linear(pts[i][1] * pts[j][2] - pts[i][2] * pts[j][1],
                                        pts[i][2] * pts[j][0] - pts[i][0] * pts[j][2],
                                        pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0]);
      auto on = s.labels_on(l);
      if (on.size() >= min_size) found.insert(std::move(on));
    }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Incidence structures of 4-point lines.

/// Abstract family of 4-point lines on labels 1..n_points.
struct IncidenceStructure {
  int n_points = 0;
  std::vector<std::array<int, 4>> lines;

  friend bool operator==(const IncidenceStructure& a, const IncidenceStructure& b)
  {
    return a.n_points == b.n_points && a.lines == b.lines;
  }
  friend bool operator<(const IncidenceStructure& a, const IncidenceStructure& b)
  {
    return std::tie(a.n_points, a.lines) < std::tie(b.n_points, b.lines);
  }

  std::vector<int> point_degrees() const
  {
    std::vector<int> d(static_cast<std::size_t>(n_points) + 1, 0);
    for (const auto& l : lines)
      for (int p : l) ++d[static_cast<std::size_t>(p)];
    return d;
  }
};

inline int shared_labels(const std::array<int, 4>& a, const std::array<int, 4>& b)
{
  int k = 0;
  for (int x : a)
    for (int y : b) k += (x == y);
  return k;
}

/// Throws PreconditionError unless labels are in range, distinct within each
/// line, two lines share at most one label and no label is on more than
/// `cap` lines (cap <= 0 disables the last check).
inline void validate_structure(const IncidenceStructure& s, int cap = 0)
{
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    const auto& l = s.lines[i];
    for (int p : l)
      if (p < 1 || p > s.n_points)
        throw PreconditionError("line " + std::to_string(i + 1) + " has label " + std::to_string(p) + " outside 1.." +
                                std::to_string(s.n_points));
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (l[static_cast<std::size_t>(a)] == l[static_cast<std::size_t>(b)])
          throw PreconditionError("line " + std::to_string(i + 1) + " repeats a label");
    for (std::size_t j = i + 1; j < s.lines.size(); ++j)
      if (shared_labels(l, s.lines[j]) > 1)
        throw PreconditionError("lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " share more than one label");
  }
  if (cap > 0) {
    const auto d = s.point_degrees();
    for (int p = 1; p <= s.n_points; ++p)
      if (d[static_cast<std::size_t>(p)] > cap)
        throw PreconditionError("label " + std::to_string(p) + " lies on " + std::to_string(d[static_cast<std::size_t>(p)]) +
                                " lines, cap is " + std::to_string(cap));
  }
}

/// Canonical representative under relabeling. For each order of the lines
/// the points are relabeled by their incidence pattern (points on the first
/// line first); the result is the least sorted line list over all line
/// orders. Only orders that sort lines by an isomorphism invariant are
/// tried.
inline IncidenceStructure canonical_form(const IncidenceStructure& s)
{
  const std::size_t L = s.lines.size();
  if (L == 0) return s;
  const auto deg = s.point_degrees();
  std::vector<std::pair<std::vector<int>, std::size_t>> keyed;
  for (std::size_t i = 0; i < L; ++i) {
    std::vector<int> inv;
    for (int p : s.lines[i]) inv.push_back(deg[static_cast<std::size_t>(p)]);
    std::sort(inv.begin(), inv.end());
    keyed.emplace_back(std::move(inv), i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> order;
  std::vector<std::pair<std::size_t, std::size_t>> classes;  // [begin, end)
  for (std::size_t i = 0; i < L; ++i) {
    order.push_back(keyed[i].second);
    if (i == 0 || keyed[i].first != keyed[i - 1].first) classes.emplace_back(i, i + 1);
    else classes.back().second = i + 1;
  }
  std::optional<std::vector<std::array<int, 4>>> best;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == classes.size()) {
      std::vector<std::uint64_t> sig(static_cast<std::size_t>(s.n_points) + 1, 0);
      for (std::size_t pos = 0; pos < L; ++pos)
        for (int p : s.lines[order[pos]]) sig[static_cast<std::size_t>(p)] |= std::uint64_t{1} << (L - 1 - pos);
      std::vector<int> pts;
      for (int p = 1; p <= s.n_points; ++p)
        if (sig[static_cast<std::size_t>(p)]) pts.push_back(p);
      std::stable_sort(pts.begin(), pts.end(), [&](int a, int b) { return sig[static_cast<std::size_t>(a)] > sig[static_cast<std::size_t>(b)]; });
      std::vector<int> label(static_cast<std::size_t>(s.n_points) + 1, 0);
      for (std::size_t i = 0; i < pts.size(); ++i) label[static_cast<std::size_t>(pts[i])] = static_cast<int>(i) + 1;
      std::vector<std::array<int, 4>> enc;
      for (const auto& l : s.lines) {
        std::array<int, 4> r{};
        for (std::size_t k = 0; k < 4; ++k) r[k] = label[static_cast<std::size_t>(l[k])];
        std::sort(r.begin(), r.end());
        enc.push_back(r);
      }
      std::sort(enc.begin(), enc.end());
      if (!best || enc < *best) best = std::move(enc);
      return;
    }
    auto first = order.begin() + static_cast<long>(classes[c].first);
    auto last = order.begin() + static_cast<long>(classes[c].second);
    std::sort(first, last);
    do rec(c + 1);
    while (std::next_permutation(first, last));
  };
  rec(0);
  return {s.n_points, *best};
}

/// Points on three or more lines.
inline std::vector<int> triple_points(const IncidenceStructure& s)
{
  std::vector<int> out;
  const auto d = s.point_degrees();
  for (int p = 1; p <= s.n_points; ++p)
    if (d[static_cast<std::size_t>(p)] >= 3) out.push_back(p);
  return out;
}

/// Shape of a line family by its points on three lines: "no-triple-point",
/// "one-triple-point", "triple-points-collinear" (exactly two, joined by one
/// of the lines), "triple-points-apart" (exactly two, not joined) and
/// "many-triple-points" (three or more).
inline std::string shape_of(const IncidenceStructure& s)
{
  const auto t = triple_points(s);
  if (t.empty()) return "no-triple-point";
  if (t.size() == 1) return "one-triple-point";
  if (t.size() > 2) return "many-triple-points";
  for (const auto& l : s.lines)
    if (std::count(l.begin(), l.end(), t[0]) && std::count(l.begin(), l.end(), t[1])) return "triple-points-collinear";
  return "triple-points-apart";
}

struct EnumerationResult {
  int n_points = 0;
  int cap = 0;
  int maximum = 0;                               ///< largest family size
  std::vector<IncidenceStructure> maximal;       ///< inclusion-maximal families, canonical, sorted
  /// Families admitting no extension of the same shape (see shape_of).
  std::vector<IncidenceStructure> shape_maximal;
  std::vector<std::size_t> families_per_size;    ///< canonical families of each size 0..maximum
  /// For each shape, every family of the largest size having that shape.
  std::map<std::string, std::vector<IncidenceStructure>> largest_by_shape;
};

/// All families of 4-subsets of {1..n} in which any two members share
/// exactly one label and no label is in more than `cap` members, up to
/// relabeling. Families are grown one line at a time and deduplicated by
/// canonical form.
inline EnumerationResult enumerate_4lines(int n_points, int per_point_cap, int jobs = 1)
{
  if (n_points < 0 || n_points > 12) throw PreconditionError("enumerate_4lines supports n <= 12, got " + std::to_string(n_points));
  if (per_point_cap != 2 && per_point_cap != 3)
    throw PreconditionError("enumerate_4lines: per-point cap must be 2 or 3, got " + std::to_string(per_point_cap));
  EnumerationResult out;
  out.n_points = n_points;
  out.cap = per_point_cap;
  std::vector<std::array<int, 4>> candidates;
  for (int a = 1; a <= n_points; ++a)
    for (int b = a + 1; b <= n_points; ++b)
      for (int c = b + 1; c <= n_points; ++c)
        for (int d = c + 1; d <= n_points; ++d) candidates.push_back({a, b, c, d});
  std::vector<IncidenceStructure> level{IncidenceStructure{n_points, {}}};
  out.families_per_size.push_back(1);
  auto record_shape = [&](const IncidenceStructure& f) {
    auto& best = out.largest_by_shape[shape_of(f)];
    if (!best.empty() && best.front().lines.size() > f.lines.size()) return;
    if (!best.empty() && best.front().lines.size() < f.lines.size()) best.clear();
    best.push_back(f);
  };
  while (!level.empty()) {
    std::vector<std::vector<IncidenceStructure>> ext(level.size());
    std::vector<char> extendable(level.size(), 0), extendable_in_shape(level.size(), 0);
    parallel_for(level.size(), jobs, [&](std::size_t i) {
      const auto& f = level[i];
      const auto deg = f.point_degrees();
      std::set<IncidenceStructure> seen;
      for (const auto& c : candidates) {
        bool ok = true;
        for (int p : c)
          if (deg[static_cast<std::size_t>(p)] + 1 > per_point_cap) ok = false;
        for (std::size_t k = 0; ok && k < f.lines.size(); ++k)
          if (shared_labels(c, f.lines[k]) != 1) ok = false;
        if (!ok) continue;
        extendable[i] = 1;
        IncidenceStructure g = f;
        g.lines.push_back(c);
        if (shape_of(g) == shape_of(f)) extendable_in_shape[i] = 1;
        seen.insert(canonical_form(g));
      }
      ext[i].assign(seen.begin(), seen.end());
    });
    std::set<IncidenceStructure> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!level[i].lines.empty()) record_shape(level[i]);
      if (!extendable[i] && !level[i].lines.empty()) out.maximal.push_back(level[i]);
      if (!extendable_in_shape[i] && !level[i].lines.empty()) out.shape_maximal.push_back(level[i]);
      next.insert(ext[i].begin(), ext[i].end());
    }
    if (next.empty()) break;
    level.assign(next.begin(), next.end());
    out.families_per_size.push_back(level.size());
    out.maximum = static_cast<int>(level.front().lines.size());
  }
  const auto larger_first = [](const IncidenceStructure& a, const IncidenceStructure& b) {
    if (a.lines.size() != b.lines.size()) return a.lines.size() > b.lines.size();
    return a < b;
  };
  std::sort(out.maximal.begin(), out.maximal.end(), larger_first);
  std::sort(out.shape_maximal.begin(), out.shape_maximal.end(), larger_first);
  return out;
}

// ---------------------------------------------------------------------------
// Realization.

struct Realization {
  bool realized = false;
  PointSet points;
  std::vector<HomPoly> line_equations;  ///< one per structure line
  int attempts = 0;
  std::string report;
};

namespace detail {

/// Exact check that the structure's lines are collinear in `s` and that no
/// other three points are collinear. Returns an empty string on success.
inline std::string incidence_mismatch(const IncidenceStructure& st, const PointSet& s)
{
  std::set<std::vector<int>> required;
  for (const auto& l : st.lines) required.insert({l.begin(), l.end()});
  for (const auto& c : collinear_subsets(s, 3)) {
    if (!required.count(c)) {
      std::string lab;
      for (int x : c) lab += (lab.empty() ? "" : ",") + std::to_string(x);
      return "unintended collinear points {" + lab + "}";
    }
    required.erase(c);
  }
  if (!required.empty()) return "a required line is not realized";
  return "";
}

}  // namespace detail

/// Random rational points realizing the structure exactly, with no further
/// collinear triples. Points are placed in order; a point on two lines that
/// already have two placed points each is their intersection, a point on
/// one such line is a random point of it, otherwise it is random. Later
/// attempts shuffle the placement order.
inline Realization realize_structure(const IncidenceStructure& st, std::uint64_t seed, int max_attempts = 400)
{
  validate_structure(st);
  Rng rng(seed);
  Realization out;
  std::string last_failure = "no attempt made";
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    out.attempts = attempt;
    std::vector<int> order;
    for (int p = 1; p <= st.n_points; ++p) order.push_back(p);
    if (attempt > 1) rng.shuffle(order);
    std::vector<std::optional<ProjPoint>> placed(static_cast<std::size_t>(st.n_points) + 1);
    bool failed = false;
    for (int p : order) {
      std::vector<HomPoly> fixed;
      for (const auto& l : st.lines) {
        if (std::find(l.begin(), l.end(), p) == l.end()) continue;
        std::vector<ProjPoint> on;
        for (int q : l)
          if (placed[static_cast<std::size_t>(q)]) on.push_back(*placed[static_cast<std::size_t>(q)]);
        if (on.size() >= 2) fixed.push_back(line_through(on[0], on[1]));
      }
      std::optional<ProjPoint> x;
      if (fixed.size() >= 2) {
        x = intersect_lines(fixed[0], fixed[1]);
        if (x)
          for (const auto& f : fixed)
            if (sgn(evaluate(f, *x)) != 0) x.reset();
      } else if (fixed.size() == 1) {
        // Random point of the line: a + t (b - a) for two of its points.
        const auto& f = fixed[0];
        const Rational a = f.coeff({1, 0, 0}), b = f.coeff({0, 1, 0}), c = f.coeff({0, 0, 1});
        const Rational t = rng.small_rational(20, 20);
        if (sgn(b) != 0) x = ProjPoint::affine(t, -(a * t + c) / b);
        else x = ProjPoint::affine(-c / a, t);
      } else {
        x = ProjPoint::affine(rng.small_rational(20, 20), rng.small_rational(20, 20));
      }
      if (!x || !x->is_affine()) {
        failed = true;
        last_failure = "forced point at infinity or inconsistent lines at label " + std::to_string(p);
        break;
      }
      for (const auto& q : placed)
        if (q && *q == *x) failed = true;
      if (failed) {
        last_failure = "coincident points";
        break;
      }
      placed[static_cast<std::size_t>(p)] = x;
    }
    if (failed) continue;
    std::vector<ProjPoint> pts;
    for (int p = 1; p <= st.n_points; ++p) pts.push_back(*placed[static_cast<std::size_t>(p)]);
    PointSet s(std::move(pts));
    const std::string mismatch = detail::incidence_mismatch(st, s);
    if (!mismatch.empty()) {
      last_failure = mismatch;
      continue;
    }
    out.realized = true;
    out.points = std::move(s);
    for (const auto& l : st.lines) out.line_equations.push_back(line_through(out.points.at(l[0]), out.points.at(l[1])));
    out.report = "realized after " + std::to_string(attempt) + " attempt(s)";
    return out;
  }
  out.report = "not realized within " + std::to_string(max_attempts) + " attempts; last failure: " + last_failure;
  return out;
}

}  // namespace lelong

#endif  // LELONG_CONFIG_HPP
