#ifndef LELONG_IO_HPP
#define LELONG_IO_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lelong/config.hpp"
#include "lelong/construct.hpp"
#include "lelong/currents.hpp"
#include "lelong/error.hpp"
#include "lelong/instances.hpp"
#include "lelong/linsys.hpp"

namespace lelong::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Reading with field paths in error messages.

/// A JSON value together with its path from the document root.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_ + ": " + what); }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key) && !(*j_)[key].is_null(); }
  Node at(const std::string& key) const
  {
    if (!j_->is_object()) fail("expected an object");
    if (!j_->contains(key)) fail("missing field '" + key + "'");
    return Node((*j_)[key], path_ + "/" + key);
  }
  Node at(std::size_t i) const
  {
    if (!j_->is_array() || i >= j_->size()) fail("missing element " + std::to_string(i));
    return Node((*j_)[i], path_ + "/" + std::to_string(i));
  }
  std::size_t size() const
  {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }
  std::vector<Node> items() const
  {
    std::vector<Node> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
  }
  std::string str() const
  {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  std::int64_t integer() const
  {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<std::int64_t>();
  }
  std::uint64_t unsigned_integer() const
  {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    return j_->get<std::uint64_t>();
  }
  bool boolean() const
  {
    if (!j_->is_boolean()) fail("expected a boolean");
    return j_->get<bool>();
  }
  double number() const
  {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

 private:
  const Json* j_;
  std::string path_;
};

/// Parses JSON text; syntax errors name the line and column.
inline Json parse_text(const std::string& text, const std::string& source)
{
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

inline Json read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline void write_file(const std::string& path, const Json& j)
{
  std::ofstream out(path);
  if (!out) throw PreconditionError(path + ": cannot write file");
  out << j.dump(2) << "\n";
}

/// Checks schema_version and the document kind.
inline void check_header(const Node& root, const std::string& kind)
{
  const std::int64_t v = root.at("schema_version").integer();
  if (v != kSchemaVersion) root.at("schema_version").fail("unsupported schema_version " + std::to_string(v));
  const std::string k = root.at("kind").str();
  if (k != kind) root.at("kind").fail("expected kind '" + kind + "', got '" + k + "'");
}

inline Json header(const std::string& kind) { return Json{{"schema_version", kSchemaVersion}, {"kind", kind}}; }

// ---------------------------------------------------------------------------
// Exact types.

inline Json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from(const Node& n)
{
  try {
    return parse_rational(n.str());
  } catch (const ParseError& e) {
    n.fail(e.what());
  }
}

inline Json to_json(const ProjPoint& p) { return Json::array({to_string(p[0]), to_string(p[1]), to_string(p[2])}); }

inline ProjPoint point_from(const Node& n)
{
  if (n.size() != 3) n.fail("a point has three coordinates");
  try {
    return ProjPoint(rational_from(n.at(0)), rational_from(n.at(1)), rational_from(n.at(2)));
  } catch (const PreconditionError& e) {
    n.fail(e.what());
  }
}

inline Json to_json(const HomPoly& p)
{
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({e[0], e[1], e[2], to_string(c)}));
  return Json{{"degree", p.degree()}, {"terms", terms}};
}

inline HomPoly hompoly_from(const Node& n)
{
  const std::int64_t d = n.at("degree").integer();
  if (d < 0 || d > 64) n.at("degree").fail("degree out of range");
  HomPoly p(static_cast<int>(d));
  for (const auto& t : n.at("terms").items()) {
    if (t.size() != 4) t.fail("a term is [i, j, k, \"coeff\"]");
    Exponent e{};
    for (std::size_t v = 0; v < 3; ++v) {
      const std::int64_t x = t.at(v).integer();
      if (x < 0) t.at(v).fail("negative exponent");
      e[v] = static_cast<int>(x);
    }
    if (e[0] + e[1] + e[2] != d) t.fail("term degree differs from the declared degree");
    p.add_term(e, rational_from(t.at(3)));
  }
  return p;
}

inline Json to_json(const Order& o) { return o.is_infinite() ? Json("infinity") : Json(o.value()); }

// ---------------------------------------------------------------------------
// Point sets and instances.

inline Json points_json(const PointSet& s)
{
  Json pts = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    pts.push_back(Json{{"label", i + 1}, {"coords", to_json(s.points()[i])}});
  return pts;
}

inline PointSet points_from(const Node& n)
{
  std::vector<ProjPoint> pts;
  const auto items = n.items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.has("label") && it.at("label").integer() != static_cast<std::int64_t>(i + 1))
      it.at("label").fail("labels must be 1, 2, ... in order");
    pts.push_back(point_from(it.at("coords")));
  }
  try {
    return PointSet(pts);
  } catch (const PreconditionError& e) {
    n.fail(e.what());
  }
}

inline Json to_json(const MSequence& ms)
{
  Json w = Json::array();
  for (std::size_t j = 0; j < 3; ++j)
    w.push_back(Json{{"degree", j + 1}, {"count", ms.m[j]}, {"labels", ms.witnesses[j].labels}, {"curve", to_json(ms.witnesses[j].curve)}});
  return Json{{"m", ms.m}, {"witnesses", w}};
}

/// Instance file: the points plus the generator's certified metadata.
inline Json to_json(const Instance& inst)
{
  Json j = header("instance");
  j["instance_kind"] = inst.kind;
  j["seed"] = inst.seed;
  j["points"] = points_json(inst.points);
  if (inst.extra) j["extra"] = to_json(*inst.extra);
  j["special_lines"] = inst.special_lines;
  if (!inst.arrangement.empty()) {
    Json a = Json::array();
    for (const auto& l : inst.arrangement) a.push_back(to_json(l));
    j["arrangement"] = a;
  }
  j["expected"] = inst.expected;
  j["msequence"] = to_json(inst.msequence);
  return j;
}

/// An instance or bare point-set document. Only the points, the extra point
/// and the recorded metadata are read; certification is redone by callers.
struct InstanceFile {
  PointSet points;
  std::optional<ProjPoint> extra;
  std::optional<std::array<int, 3>> recorded_m;
  std::string kind;
  std::uint64_t seed = 0;
};

inline InstanceFile instance_from(const Json& j, const std::string& source)
{
  const Node root(j, source);
  const std::string k = root.at("kind").str();
  if (k != "instance" && k != "pointset") root.at("kind").fail("expected kind 'instance' or 'pointset', got '" + k + "'");
  check_header(root, k);
  InstanceFile f;
  f.points = points_from(root.at("points"));
  if (root.has("extra")) f.extra = point_from(root.at("extra"));
  if (root.has("instance_kind")) f.kind = root.at("instance_kind").str();
  if (root.has("seed")) f.seed = root.at("seed").unsigned_integer();
  if (root.has("msequence")) {
    const Node m = root.at("msequence").at("m");
    if (m.size() != 3) m.fail("m has three entries");
    f.recorded_m = std::array<int, 3>{static_cast<int>(m.at(0).integer()), static_cast<int>(m.at(1).integer()),
                                      static_cast<int>(m.at(2).integer())};
  }
  return f;
}

// ---------------------------------------------------------------------------
// Linear systems and curves.

inline Json to_json(const LinearSystem& s)
{
  Json conds = Json::array();
  for (const auto& c : s.conditions) conds.push_back(Json{{"point", to_json(c.point)}, {"order", c.order}});
  Json basis = Json::array();
  for (const auto& b : s.kernel_basis) basis.push_back(to_json(b));
  Json j{{"degree", s.degree}, {"conditions", conds}, {"rank", s.matrix_rank}, {"dimension", s.dimension()}, {"basis", basis}};
  if (!s.warnings.empty()) j["warnings"] = s.warnings;
  return j;
}

inline Json to_json(const CurveAnalysis& a)
{
  Json sing = Json::array();
  for (const auto& p : a.singular_points_over_Q) sing.push_back(to_json(p));
  Json lines = Json::array();
  for (const auto& l : a.line_components) lines.push_back(to_json(l));
  return Json{{"curve", to_json(a.poly)},
              {"irreducible", to_string(a.is_geometrically_irreducible)},
              {"line_components", lines},
              {"lines_complete", a.lines_complete},
              {"singular_points_over_Q", sing},
              {"singular_locus_infinite", a.singular_locus_infinite},
              {"smooth", a.smooth}};
}

inline Json to_json(const BezoutTable& t)
{
  Json recs = Json::array();
  for (const auto& r : t.records) recs.push_back(Json{{"point", to_json(r.point)}, {"multiplicity", r.multiplicity}});
  return Json{{"records", recs}, {"residual", t.residual}};
}

// ---------------------------------------------------------------------------
// Certificates and construction reports.

inline Json to_json(const PotentialCertificate& c)
{
  Json j = header("certificate");
  j["P"] = to_json(c.P);
  j["Q"] = to_json(c.Q);
  j["r"] = c.r;
  j["gamma"] = to_json(c.gamma);
  j["case_tag"] = c.case_tag;
  j["route"] = c.route;
  j["claimed_total"] = to_json(c.claimed_total);
  j["verified"] = c.verified;
  Json pts = Json::array();
  for (const auto& wp : c.points) pts.push_back(Json{{"label", wp.label}, {"point", to_json(wp.point)}, {"weight", to_json(wp.weight)}});
  j["points"] = pts;
  return j;
}

inline PotentialCertificate certificate_from(const Json& j, const std::string& source)
{
  const Node root(j, source);
  check_header(root, "certificate");
  PotentialCertificate c;
  c.P = hompoly_from(root.at("P"));
  c.Q = hompoly_from(root.at("Q"));
  c.r = static_cast<int>(root.at("r").integer());
  c.gamma = rational_from(root.at("gamma"));
  c.case_tag = root.has("case_tag") ? root.at("case_tag").str() : "";
  c.route = root.at("route").str();
  c.claimed_total = rational_from(root.at("claimed_total"));
  c.verified = root.has("verified") && root.at("verified").boolean();
  for (const auto& p : root.at("points").items())
    c.points.push_back({point_from(p.at("point")), static_cast<int>(p.at("label").integer()), rational_from(p.at("weight"))});
  return c;
}

inline Json to_json(const VerificationReport& v)
{
  Json pts = Json::array();
  for (const auto& p : v.points) {
    Json e{{"label", p.label}, {"point", to_json(p.point)}, {"ord_P", to_json(p.ord_p)}, {"ord_Q", to_json(p.ord_q)}};
    e["multiplicity"] = p.multiplicity ? to_json(*p.multiplicity) : Json(nullptr);
    e["claimed"] = to_json(p.claimed);
    e["recomputed"] = to_json(p.recomputed);
    e["ok"] = p.ok;
    if (!p.problem.empty()) e["problem"] = p.problem;
    pts.push_back(e);
  }
  Json j = header("verification");
  j["verified"] = v.verified;
  j["degrees_ok"] = v.degrees_ok;
  j["gamma_ok"] = v.gamma_ok;
  j["discrete"] = v.discrete;
  j["total_ok"] = v.total_ok;
  j["gcd"] = to_json(v.gcd);
  j["points"] = pts;
  j["failures"] = v.failures;
  return j;
}

inline Json to_json(const ConstructionReport& r)
{
  Json j = header("construction");
  j["outcome"] = r.outcome;
  j["trace"] = r.trace;
  Json meanings = Json::object();
  for (const auto& id : r.trace)
    if (branch_catalog().count(id)) meanings[id] = branch_catalog().at(id);
  j["trace_meaning"] = meanings;
  j["relabeling"] = r.relabeling;
  if (!r.witness.empty()) j["witness"] = r.witness;
  j["notes"] = r.notes;
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Enumeration.

inline Json to_json(const IncidenceStructure& s)
{
  Json lines = Json::array();
  for (const auto& l : s.lines) lines.push_back(l);
  return Json{{"points", s.n_points}, {"lines", lines}, {"shape", shape_of(s)}};
}

inline Json to_json(const EnumerationResult& r)
{
  Json j = header("enumeration");
  Json maximal = Json::array(), shape_max = Json::array(), by_shape = Json::object();
  for (const auto& s : r.maximal) maximal.push_back(to_json(s));
  for (const auto& s : r.shape_maximal) shape_max.push_back(to_json(s));
  for (const auto& [shape, list] : r.largest_by_shape) {
    Json a = Json::array();
    for (const auto& s : list) a.push_back(to_json(s));
    by_shape[shape] = a;
  }
  j["maximum"] = r.maximum;
  j["maximal"] = maximal;
  j["shape_maximal"] = shape_max;
  j["largest_by_shape"] = by_shape;
  return j;
}

// ---------------------------------------------------------------------------
// Currents.

inline Json to_json(const ArrangementCurrent& t)
{
  Json lines = Json::array();
  for (const auto& l : t.lines) lines.push_back(Json{{"line", to_json(l.line)}, {"weight", to_json(l.weight)}});
  Json j = header("arrangement");
  j["lines"] = lines;
  return j;
}

inline ArrangementCurrent arrangement_from(const Json& j, const std::string& source)
{
  const Node root(j, source);
  check_header(root, "arrangement");
  ArrangementCurrent t;
  for (const auto& l : root.at("lines").items()) {
    const HomPoly line = hompoly_from(l.at("line"));
    if (line.degree() != 1) l.at("line").fail("expected a linear form");
    t.lines.push_back({line, rational_from(l.at("weight"))});
  }
  try {
    t.validate();
  } catch (const PreconditionError& e) {
    root.fail(e.what());
  }
  return t;
}

inline Json to_json(const LelongEstimate& e)
{
  Json j{{"point", to_json(e.point)}, {"radii", e.radii}, {"max_values", e.values}, {"slope", e.extrapolated},
         {"residual", e.residual}, {"tolerance", e.tolerance}};
  j["exact"] = e.exact ? to_json(*e.exact) : Json(nullptr);
  j["within_tolerance"] = e.within_tolerance();
  return j;
}

inline Json to_json(const GrowthEstimate& g)
{
  return Json{{"radii", g.radii},         {"max_values", g.max_values}, {"slope", g.slope},
              {"residual", g.residual},   {"claimed", to_json(g.claimed)}, {"tolerance", g.tolerance},
              {"within_tolerance", g.within_tolerance()}};
}

/// (log r, max u) pairs, one per line, for plotting.
inline std::string csv(const std::vector<double>& radii, const std::vector<double>& values, const std::string& series)
{
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < radii.size(); ++i) out << series << "," << std::log(radii[i]) << "," << values[i] << "\n";
  return out.str();
}

inline Json to_json(const Prop21Report& r)
{
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back(Json{{"label", t.label}, {"point", to_json(t.point)}, {"weight", to_json(t.weight)}, {"lelong", to_json(t.lelong)}});
  Json j = header("pairing");
  j["terms"] = terms;
  j["lhs"] = to_json(r.lhs);
  j["rhs"] = to_json(r.rhs);
  j["holds"] = r.holds;
  j["note"] = r.note;
  return j;
}

inline Json to_json(const SharpnessReport& r)
{
  Json j = header("sharpness");
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  j["arrangement"] = to_json(r.current)["lines"];
  j["points"] = points_json(r.points);
  Json vals = Json::array();
  for (const auto& v : r.lelong) vals.push_back(to_json(v));
  j["lelong"] = vals;
  j["all_one_third"] = r.all_one_third;
  Json ranks = Json::array();
  for (std::size_t i = 0; i < r.cubic_ranks.size(); ++i) ranks.push_back(Json{{"omitted", r.omitted[i]}, {"rank", r.cubic_ranks[i]}});
  j["thirteen_point_cubic_ranks"] = ranks;
  j["all_full_rank"] = r.all_full_rank;
  j["msequence"] = to_json(r.msequence);
  return j;
}

}  // namespace lelong::io

#endif  // LELONG_IO_HPP
