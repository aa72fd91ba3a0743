#pragma once

#include <cstdint>
#include <random>

namespace grandmorrey {

// Deterministic random source. mt19937_64 output is fixed by the standard, and
// all reductions to doubles/ints are explicit here, so identical seeds give
// identical streams on every platform. Never use std:: distributions (their
// output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // uniform in {0, ..., n-1}; modulo bias is irrelevant at test scales
  int index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

  double sign() { return (eng_() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace grandmorrey
