#pragma once

#include <cstdint>

namespace glw {

// splitmix64; self-contained so seeded runs are byte-identical on every
// platform (the standard library distributions are not portable).
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed + 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

 private:
  uint64_t s_;
};

}  // namespace glw
