#ifndef LELONG_TESTS_MULTIPLICITY_CHECK_HPP
#define LELONG_TESTS_MULTIPLICITY_CHECK_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <lelong/curves.hpp>

#include "generators.hpp"
#include "resultant_oracle.hpp"

namespace lelong::testing {

struct MultiplicityRun {
  int pairs = 0;   ///< coprime pairs examined
  int points = 0;  ///< rational common zeros compared
  std::vector<std::string> failures;
};

/// Random coprime pairs of degree <= 4 meeting at a random rational point;
/// compares the local algorithm with the resultant oracle at every rational
/// common zero and checks the Bezout balance and the order lower bound.
inline MultiplicityRun run_multiplicity_comparison(std::uint64_t seed, int wanted_pairs)
{
  Rng rng(seed);
  MultiplicityRun run;
  while (run.pairs < wanted_pairs) {
    const ProjPoint x = random_affine_point(rng, 5, 3);
    const int d1 = static_cast<int>(rng.uniform_int(1, 4)), d2 = static_cast<int>(rng.uniform_int(1, 4));
    const HomPoly p = random_local_form(rng, d1, static_cast<int>(rng.uniform_int(1, std::min(d1, 2))), x, 4);
    const HomPoly q = random_local_form(rng, d2, static_cast<int>(rng.uniform_int(1, std::min(d2, 2))), x, 4);
    if (gcd_homogeneous(p, q).degree() > 0) continue;
    ++run.pairs;
    const BezoutTable t = bezout_table(p, q);
    int sum = 0;
    for (const auto& rec : t.records) {
      ++run.points;
      const auto oracle = resultant_multiplicity(p, q, rec.point);
      std::ostringstream where;
      where << p.to_string() << " / " << q.to_string() << " at " << rec.point.to_string();
      if (!oracle)
        run.failures.push_back("oracle found no shear: " + where.str());
      else if (*oracle != rec.multiplicity)
        run.failures.push_back("local " + std::to_string(rec.multiplicity) + " vs oracle " + std::to_string(*oracle) + ": " +
                               where.str());
      if (Order(rec.multiplicity) < vanishing_order(p, rec.point) * vanishing_order(q, rec.point))
        run.failures.push_back("below order product: " + where.str());
      sum += rec.multiplicity;
    }
    if (sum + t.residual != d1 * d2 || t.residual < 0)
      run.failures.push_back("Bezout imbalance: " + p.to_string() + " / " + q.to_string());
  }
  return run;
}

}  // namespace lelong::testing

#endif  // LELONG_TESTS_MULTIPLICITY_CHECK_HPP
