#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vsheet::verify {

struct Check {
  std::string name;
  double measured;
  double threshold;
  bool pass;
  std::string detail;
};

inline Check make_check(std::string name, double measured, double threshold,
                        std::string detail = {}) {
  return Check{std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

// Residual of the trivial solution over a random parameter sweep
// (c, sigma, gamma) in [-2,2] x (0,3] x [-2,2].
std::vector<Check> trivial_suite(std::uint64_t seed, int n_points = 100);

// d0 at the circle against the plain mean, h0 against the Hilbert transform,
// for f in {1, cos kx, sin kx : k <= k_max} at the given resolution.
std::vector<Check> operators_suite(int quad = 256, int k_max = 8);

// Finite-difference Jacobian of the steady map at the trivial solution
// against the analytic multiplier blocks, including cross-mode leakage.
std::vector<Check> jacobian_suite(std::uint64_t seed, int n_params = 20);

// Velocity field of the circular sheet inside/outside, plus the
// tangential-jump identity on a perturbed state.
std::vector<Check> velocity_suite(std::uint64_t seed);

// Small-amplitude evolution frequencies against sqrt(det) of the multiplier
// blocks, modes 2..k_max at gamma = 0 (the parity-pair dispersion is exact
// only without the transport term that gamma introduces).
std::vector<Check> dispersion_suite(int k_max = 8);

std::vector<Check> all_suites(std::uint64_t seed);

}  // namespace vsheet::verify
