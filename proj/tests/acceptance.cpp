// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <lelong/io.hpp>

#include "support/multiplicity_check.hpp"

using namespace lelong;
using io::Json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& why)
  {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
};

constexpr int kGenericInstances = 20;
constexpr std::uint64_t kGenericSeed0 = 1000;

// Each criterion also returns the text of its report so the determinism
// criterion can rerun it and compare bytes.

std::string dimension_report(std::uint64_t seed, Outcome& out, double& worst)
{
  const auto t0 = Clock::now();
  const Instance inst = make_instance("generic12", seed);
  std::vector<VanishingCondition> conds;
  for (std::size_t i = 0; i < 12; ++i) conds.push_back({inst.points.points()[i], i < 6 ? 2 : 1});
  const LinearSystem s = build_system(6, conds);
  worst = std::max(worst, seconds_since(t0));
  out.require(s.dimension() == 4, "seed " + std::to_string(seed) + ": dimension " + std::to_string(s.dimension()));
  return io::to_json(s).dump();
}

std::string msequence_report(std::uint64_t seed, Outcome& out, double& worst)
{
  const Instance inst = make_instance("generic12", seed);
  const auto t0 = Clock::now();
  const MSequence ms = m_sequence(inst.points);
  const bool sound = witnesses_sound(inst.points, ms);
  worst = std::max(worst, seconds_since(t0));
  out.require(ms.m == std::array<int, 3>{2, 5, 9}, "seed " + std::to_string(seed) + ": " + ms.to_string());
  out.require(sound, "seed " + std::to_string(seed) + ": unsound witnesses");
  return io::to_json(ms).dump();
}

Outcome criterion_dimension()
{
  Outcome out;
  double worst = 0;
  for (int i = 0; i < kGenericInstances; ++i) dimension_report(kGenericSeed0 + static_cast<std::uint64_t>(i), out, worst);
  out.require(worst < 5.0, "slowest instance took " + std::to_string(worst) + " s");
  if (out.pass) out.detail = std::to_string(kGenericInstances) + " instances, dimension 4, slowest " + std::to_string(worst) + " s";
  return out;
}

Outcome criterion_msequence()
{
  Outcome out;
  double worst = 0;
  for (int i = 0; i < kGenericInstances; ++i) msequence_report(kGenericSeed0 + static_cast<std::uint64_t>(i), out, worst);
  out.require(worst < 30.0, "slowest instance took " + std::to_string(worst) + " s");
  if (out.pass) out.detail = std::to_string(kGenericInstances) + " instances, (2,5,9), slowest " + std::to_string(worst) + " s";
  return out;
}

struct Lemma2Case {
  const char* kind;
  std::uint64_t seed;
  int m2;
};

const std::vector<Lemma2Case>& lemma2_cases()
{
  static const std::vector<Lemma2Case> cases{{"generic12", 201, 5}, {"conic6", 202, 6}, {"conic6line4", 203, 6},
                                             {"conic7", 204, 7},    {"figure1", 205, 7}, {"figure2", 206, 7}};
  return cases;
}

std::string lemma2_report(const Lemma2Case& c, Outcome& out, double& worst, std::set<std::pair<std::string, std::string>>& pairs)
{
  const Instance inst = make_instance(c.kind, c.seed);
  const std::string where = std::string(c.kind) + " seed " + std::to_string(c.seed);
  out.require(inst.msequence.m2() == c.m2, where + ": m2 = " + std::to_string(inst.msequence.m2()));
  const auto t0 = Clock::now();
  const ConstructionReport r = lemma2_construct(inst.points);
  worst = std::max(worst, seconds_since(t0));
  if (!r.certificate) {
    out.require(false, where + ": " + r.outcome + " " + r.witness);
    return io::to_json(r).dump();
  }
  const PotentialCertificate& cert = *r.certificate;
  const std::set<std::pair<Rational, Rational>> allowed{
      {Rational(6), Rational(18)}, {Rational(5), Rational(15)}, {Rational(4), Rational(12)}, {Rational(3), Rational(9)}};
  out.require(allowed.count({cert.gamma, cert.claimed_total}) == 1,
              where + ": (gamma, weight) = (" + to_string(cert.gamma) + ", " + to_string(cert.claimed_total) + ")");
  out.require(cert.claimed_total / cert.gamma == Rational(3), where + ": ratio " + to_string(cert.claimed_total / cert.gamma));
  out.require(cert.verified, where + ": certificate not marked verified");
  PotentialCertificate fresh = cert;
  fresh.verified = false;
  out.require(verify_certificate(fresh).verified, where + ": independent verification failed");
  pairs.insert({to_string(cert.gamma), to_string(cert.claimed_total)});
  return io::to_json(r).dump();
}

Outcome criterion_lemma2()
{
  Outcome out;
  double worst = 0;
  std::set<std::pair<std::string, std::string>> pairs;
  std::set<int> m2_seen;
  for (const auto& c : lemma2_cases()) {
    lemma2_report(c, out, worst, pairs);
    m2_seen.insert(c.m2);
  }
  out.require(m2_seen == std::set<int>{5, 6, 7}, "cases m2 = 5, 6, 7 not all covered");
  out.require(worst < 60.0, "slowest instance took " + std::to_string(worst) + " s");
  if (out.pass) {
    std::ostringstream d;
    d << lemma2_cases().size() << " instances, (gamma, weight) in {";
    bool first = true;
    for (const auto& [g, w] : pairs) {
      d << (first ? "" : ", ") << "(" << g << "," << w << ")";
      first = false;
    }
    d << "}, slowest " << worst << " s";
    out.detail = d.str();
  }
  return out;
}

std::string case4_report(Outcome& out, double& elapsed)
{
  const Instance inst = make_instance("case4", 3);
  out.require(inst.msequence.m3() == 11, "case4 instance has m3 = " + std::to_string(inst.msequence.m3()));
  const auto t0 = Clock::now();
  const ConstructionReport r = theorem_case_construct(inst.points, inst.extra);
  elapsed = seconds_since(t0);
  if (!r.certificate) {
    out.require(false, r.outcome + " " + r.witness);
    return io::to_json(r).dump();
  }
  const PotentialCertificate& c = *r.certificate;
  out.require(c.gamma == Rational(4), "gamma " + to_string(c.gamma));
  out.require(c.claimed_total == Rational(13), "total weight " + to_string(c.claimed_total));
  out.require(c.claimed_total / c.gamma > Rational(3), "ratio not above 3");
  PotentialCertificate fresh = c;
  fresh.verified = false;
  out.require(verify_certificate(fresh).verified, "independent verification failed");
  bool p_used = false;
  for (const auto& wp : c.points) p_used |= wp.point == *inst.extra;
  out.require(p_used, "extra point carries no weight");
  return io::to_json(r).dump();
}

Outcome criterion_case4()
{
  Outcome out;
  double t = 0;
  case4_report(out, t);
  out.require(t < 60.0, "took " + std::to_string(t) + " s");
  if (out.pass) out.detail = "gamma 4, total weight 13 (13/4 > 3), " + std::to_string(t) + " s";
  return out;
}

std::string sharpness_report(Outcome& out, double& elapsed)
{
  const auto t0 = Clock::now();
  const SharpnessReport r = sharpness_example(7);
  elapsed = seconds_since(t0);
  out.require(r.points.size() == 15, std::to_string(r.points.size()) + " points");
  for (const auto& x : r.points.points()) out.require(lelong_exact(r.current, x) == Rational(1, 3), "value at " + x.to_string());
  out.require(r.cubic_ranks.size() == 105, std::to_string(r.cubic_ranks.size()) + " rank checks");
  for (int rk : r.cubic_ranks) out.require(rk == 10, "rank " + std::to_string(rk));
  return io::to_json(r).dump();
}

Outcome criterion_sharpness()
{
  Outcome out;
  double t = 0;
  sharpness_report(out, t);
  out.require(t < 10.0, "took " + std::to_string(t) + " s");
  if (out.pass) out.detail = "15 values 1/3, 105 ranks 10, " + std::to_string(t) + " s";
  return out;
}

std::string enumeration_report(Outcome& out, double& elapsed)
{
  const auto t0 = Clock::now();
  const EnumerationResult two = enumerate_4lines(12, 2);
  const EnumerationResult three = enumerate_4lines(12, 3);
  elapsed = seconds_since(t0);
  out.require(two.maximum == 5, "cap 2 maximum " + std::to_string(two.maximum));
  for (const char* fig : {"figure3", "figure4", "figure5"}) {
    const IncidenceStructure st = canonical_form(figure_structure(fig));
    const bool found = std::find(three.shape_maximal.begin(), three.shape_maximal.end(), st) != three.shape_maximal.end();
    out.require(found, std::string(fig) + " shape not among the maximal structures");
  }
  return io::to_json(two).dump() + io::to_json(three).dump();
}

Outcome criterion_enumeration()
{
  Outcome out;
  double t = 0;
  enumeration_report(out, t);
  out.require(t < 300.0, "took " + std::to_string(t) + " s");
  if (out.pass) out.detail = "cap 2 maximum 5; figure 3/4/5 shapes maximal at cap 3; " + std::to_string(t) + " s";
  return out;
}

Outcome criterion_multiplicity()
{
  Outcome out;
  const auto t0 = Clock::now();
  const testing::MultiplicityRun run = testing::run_multiplicity_comparison(77, 100);
  const double t = seconds_since(t0);
  out.require(run.pairs >= 100, std::to_string(run.pairs) + " pairs");
  for (const auto& f : run.failures) out.require(false, f);
  out.require(t < 120.0, "took " + std::to_string(t) + " s");
  if (out.pass)
    out.detail = std::to_string(run.pairs) + " pairs, " + std::to_string(run.points) + " common zeros agree, Bezout balanced, " +
                 std::to_string(t) + " s";
  return out;
}

const PotentialCertificate& case1_certificate()
{
  static const PotentialCertificate c = [] {
    const ConstructionReport r = lemma2_construct(make_instance("generic12", 201).points);
    if (!r.certificate) throw VerificationFailure("no Case-1 certificate: " + r.witness);
    return *r.certificate;
  }();
  return c;
}

std::string estimator_report(Outcome& out, int jobs)
{
  const PotentialCertificate& c = case1_certificate();
  Json j = Json::array();
  int twos = 0, ones = 0;
  for (const auto& wp : c.points) {
    twos += wp.weight == Rational(2);
    ones += wp.weight == Rational(1);
    const LelongEstimate e = estimate_pole_weight(c, wp.point, dyadic_radii(-8, -16), 7, jobs);
    out.require(std::abs(e.extrapolated - wp.weight.get_d()) <= 0.05,
                "x" + std::to_string(wp.label) + ": slope " + std::to_string(e.extrapolated) + " vs " + to_string(wp.weight));
    j.push_back(io::to_json(e));
  }
  out.require(c.points.size() == 12 && twos == 6 && ones == 6, "weights are not 2 at six points and 1 at six");
  const GrowthEstimate g = estimate_growth(c, dyadic_radii(8, 16), 7, jobs);
  out.require(std::abs(g.slope - 6.0) <= 0.1, "growth slope " + std::to_string(g.slope));
  j.push_back(io::to_json(g));
  return j.dump();
}

Outcome criterion_estimators()
{
  Outcome out;
  case1_certificate();
  const auto t0 = Clock::now();
  estimator_report(out, 1);
  const double t = seconds_since(t0);
  out.require(t < 120.0, "took " + std::to_string(t) + " s");
  if (out.pass) out.detail = "12 pole slopes within 0.05, growth within 0.1 of 6, " + std::to_string(t) + " s";
  return out;
}

/// Verified certificates used as the u side of the pairing.
const std::vector<PotentialCertificate>& pairing_certificates()
{
  static const std::vector<PotentialCertificate> certs = [] {
    std::vector<PotentialCertificate> v{case1_certificate()};
    for (const Lemma2Case& c : {Lemma2Case{"conic7", 204, 7}, Lemma2Case{"conic6", 202, 6}}) {
      const ConstructionReport r = lemma2_construct(make_instance(c.kind, c.seed).points);
      if (r.certificate) v.push_back(*r.certificate);
    }
    const Instance k = make_instance("case4", 3);
    const ConstructionReport r = theorem_case_construct(k.points, k.extra);
    if (r.certificate) v.push_back(*r.certificate);
    return v;
  }();
  return certs;
}

/// Random unit-mass arrangement; most lines pass through one or two poles.
ArrangementCurrent random_arrangement(Rng& rng, const PotentialCertificate& c)
{
  const int n = static_cast<int>(rng.uniform_int(1, 6));
  std::vector<long> raw;
  long total = 0;
  for (int i = 0; i < n; ++i) {
    raw.push_back(rng.uniform_int(1, 9));
    total += raw.back();
  }
  ArrangementCurrent t;
  const auto pick = [&] { return c.points[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(c.points.size()) - 1))].point; };
  for (int i = 0; i < n; ++i) {
    HomPoly line;
    do {
      const long mode = rng.uniform_int(0, 2);
      const ProjPoint a = pick();
      const ProjPoint b = mode == 0 ? pick() : ProjPoint::affine(rng.small_rational(9, 9), rng.small_rational(9, 9));
      if (mode == 2)
        line = line_through(ProjPoint::affine(rng.small_rational(9, 9), rng.small_rational(9, 9)), b);
      else if (!(a == b))
        line = line_through(a, b);
    } while (line.degree() != 1 || line.is_zero() || detail::is_line_at_infinity(line));
    Rational w(raw[static_cast<std::size_t>(i)], total);
    w.canonicalize();
    t.lines.push_back({line, w});
  }
  return t;
}

std::string pairing_report(Outcome& out, int& count)
{
  Rng rng(2024);
  Json j = Json::array();
  count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& certs = pairing_certificates();
    const PotentialCertificate& c = certs[static_cast<std::size_t>(trial) % certs.size()];
    const ArrangementCurrent t = random_arrangement(rng, c);
    const Prop21Report r = prop21_check(t, c);
    Rational lhs;
    for (const auto& wp : c.points) lhs += wp.weight * lelong_exact(t, wp.point);
    out.require(r.lhs == lhs, "trial " + std::to_string(trial) + ": left side mismatch");
    out.require(r.lhs <= c.gamma && r.holds, "trial " + std::to_string(trial) + ": " + to_string(r.lhs) + " > " + to_string(c.gamma));
    j.push_back(io::to_json(r));
    ++count;
  }
  return j.dump();
}

Outcome criterion_pairing()
{
  Outcome out;
  pairing_certificates();
  const auto t0 = Clock::now();
  int count = 0;
  pairing_report(out, count);
  const double t = seconds_since(t0);
  out.require(count >= 50, std::to_string(count) + " pairs");
  out.require(t < 60.0, "took " + std::to_string(t) + " s");
  if (out.pass) out.detail = std::to_string(count) + " pairs over " + std::to_string(pairing_certificates().size()) +
                             " certificates, zero violations, " + std::to_string(t) + " s";
  return out;
}

Outcome criterion_determinism()
{
  Outcome out, scratch;
  double ignored = 0;
  std::set<std::pair<std::string, std::string>> pairs;
  int count = 0;
  const std::vector<std::pair<std::string, std::function<std::string()>>> runs{
      {"dimension", [&] { return dimension_report(kGenericSeed0, scratch, ignored); }},
      {"msequence", [&] { return msequence_report(kGenericSeed0 + 1, scratch, ignored); }},
      {"lemma2", [&] { return lemma2_report(lemma2_cases()[3], scratch, ignored, pairs); }},
      {"case4", [&] { return case4_report(scratch, ignored); }},
      {"sharpness", [&] { return sharpness_report(scratch, ignored); }},
      {"enumeration", [&] { return enumeration_report(scratch, ignored); }},
      {"pairing", [&] { return pairing_report(scratch, count); }},
  };
  for (const auto& [name, run] : runs) out.require(run() == run(), name + " reports differ between runs");
  out.require(estimator_report(scratch, 1) == estimator_report(scratch, 1), "estimator reports differ between runs");
  out.require(estimator_report(scratch, 1) == estimator_report(scratch, 3), "estimator reports depend on the job count");
  Json a = io::to_json(make_instance("figure3", 9)), b = io::to_json(make_instance("figure3", 9));
  out.require(a.dump() == b.dump(), "instance files differ between runs");
  if (out.pass) out.detail = "9 report kinds byte-identical on rerun, estimates identical for 1 and 3 jobs";
  return out;
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 dimension count", criterion_dimension},
      {"2 generic m-sequence", criterion_msequence},
      {"3 ratio-three certificates", criterion_lemma2},
      {"4 case 4 weight 13", criterion_case4},
      {"5 sharpness example", criterion_sharpness},
      {"6 incidence enumeration", criterion_enumeration},
      {"7 multiplicity oracle", criterion_multiplicity},
      {"8 estimator consistency", criterion_estimators},
      {"9 pairing inequality", criterion_pairing},
      {"10 determinism", criterion_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
