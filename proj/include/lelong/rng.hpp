#ifndef LELONG_RNG_HPP
#define LELONG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lelong/rational.hpp"

namespace lelong {

/// Seeded generator with platform-independent derived draws. The standard
/// distributions are implementation-defined, so every mapping from raw
/// 64-bit output to a value is written out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
  {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal draw (Box-Muller, one value per call).
  double normal()
  {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// n/d with 1 <= d <= max_den and |n/d| <= max_abs.
  Rational small_rational(int max_den = 100, int max_abs = 10)
  {
    const std::int64_t d = uniform_int(1, max_den);
    const std::int64_t n = uniform_int(-max_abs * d, max_abs * d);
    Rational q(Integer(static_cast<long>(n)), Integer(static_cast<long>(d)));
    q.canonicalize();
    return q;
  }

  /// Nonzero integer in [-bound, bound].
  long nonzero_int(long bound)
  {
    long v = 0;
    while (v == 0) v = static_cast<long>(uniform_int(-bound, bound));
    return v;
  }

  template <typename T>
  void shuffle(std::vector<T>& v)
  {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i - 1)));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Independent child generator for a numbered sub-task.
  Rng fork(std::uint64_t stream)
  {
    std::seed_seq seq{static_cast<std::uint32_t>(next()), static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 e(seq);
    return Rng(e());
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lelong

#endif  // LELONG_RNG_HPP
