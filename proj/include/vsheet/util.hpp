#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>

namespace vsheet {

// Deterministic uniform generator. The raw 64-bit stream comes from
// std::mt19937_64; the double mapping is done by hand so the produced
// sequence does not depend on the standard library's distribution
// implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [lo, hi]
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// All floating-point file output goes through this: 17 significant digits
// round-trip a double exactly.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace vsheet
