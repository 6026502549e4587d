#include "povatlas/rng.hpp"

namespace povatlas {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
  // rejection to avoid modulo bias
  std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

std::array<double, 2> Rng::in_disk(double radius) {
  for (;;) {
    double x = uniform(-1.0, 1.0);
    double y = uniform(-1.0, 1.0);
    if (x * x + y * y <= 1.0) return {radius * x, radius * y};
  }
}

Rng Rng::fork(std::string_view tag, std::uint64_t index) const {
  std::uint64_t h = splitmix64(seed_ ^ splitmix64(fnv1a(tag) + index));
  return Rng(h);
}

}  // namespace povatlas
