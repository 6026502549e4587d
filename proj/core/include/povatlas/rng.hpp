#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace povatlas {

// Deterministic random stream. Distribution mapping is done by hand so that
// results do not depend on the standard library's (implementation-defined)
// distribution code, only on the standardized mt19937_64 engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // uniform in [0, 1) with 53-bit resolution
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // unbiased integer in [0, n), n >= 1
  std::uint64_t below(std::uint64_t n);

  // uniform point in the closed disk of given radius (rejection sampling)
  std::array<double, 2> in_disk(double radius);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent stream for a named purpose (and optional index) derived from
  // this stream's seed; stable across runs with the same seed.
  Rng fork(std::string_view tag, std::uint64_t index = 0) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace povatlas
