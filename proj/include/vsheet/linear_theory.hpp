#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>

#include "vsheet/steady.hpp"

namespace vsheet::linear {

using steady::ParamPoint;
using spectral::EvenSeries;
using spectral::OddSeries;

enum class Kind { speed, tension, vorticity };
enum class Sign { plus, minus };

const char* kind_name(Kind k);
char sign_char(Sign s);

// The 2x2 multiplier block of the linearization at the trivial solution for
// absolute wavenumber n:
//
//   [ -(c + gamma/2) n                          n/2              ]
//   [ sigma - gamma^2 + (gamma^2/2) n - sigma n^2   (c + gamma/2) n ]
//
// acting on the coefficient pair (a_n, b_n) of (cos, sin); the first output
// component multiplies sin(n x), the second cos(n x). Trace is zero.
Eigen::Matrix2d block(int n, const ParamPoint& p);

// Closed-form determinant
//   -(c + gamma/2)^2 n^2 + (n/4) (2 sigma n^2 - gamma^2 n + 2 (gamma^2 - sigma)),
// equal to the determinant of block(n, p) as an algebraic identity.
double det_block(int n, const ParamPoint& p);

// Modewise action of the linearized operator on a parity-restricted state:
// (a_n, b_n) -> M_{n m} (a_n, b_n), emitted as (odd, even) series.
std::pair<OddSeries, EvenSeries> apply_linear(const ParamPoint& p,
                                              const contour::SheetState& state);

// Block-diagonal assembly of the blocks M_{n m}, n = 1..n_max, in the
// interleaved ordering (a_1, b_1, a_2, b_2, ...). Used for singular-value
// diagnostics of kernel dimension.
Eigen::MatrixXd assembled_jacobian(const ParamPoint& p, int m, int n_max);

// Admissibility of (m, sigma, gamma) for the speed family: the quadratic
// 2 sigma n^2 - gamma^2 n + 2 (gamma^2 - sigma) must be positive at n = m.
// Either gamma^2 lies strictly inside the band (4 sigma (2 - sqrt 3),
// 4 sigma (2 + sqrt 3)) (then every m works), or it lies outside the closed
// band and m must avoid the root interval [m_minus, m_plus].
struct Admissibility {
  bool in_s1 = false;
  bool in_s2 = false;
  std::optional<double> m_minus, m_plus;
  bool admissible() const { return in_s1 || in_s2; }
};

Admissibility admissibility(int m, double sigma, double gamma);

// c_m^{+-} = -gamma/2 +- (1/2) sqrt(2 sigma m - gamma^2 + 2 (gamma^2 - sigma)/m);
// empty when the radicand is negative.
std::optional<double> threshold_c(int m, double sigma, double gamma, Sign sign);

// sigma_m = ([(2c + gamma)^2 + gamma^2] m - 2 gamma^2) / (2 (m^2 - 1)), m >= 2;
// empty when the numerator is nonpositive (m <= 2 gamma^2 / ((2c+gamma)^2 + gamma^2)).
std::optional<double> threshold_sigma(int m, double c, double gamma);
// The same quantity through the algebraically regrouped numerator
// m (2c + gamma)^2 + (m - 2) gamma^2; both evaluations must agree to rounding.
std::optional<double> threshold_sigma_alt(int m, double c, double gamma);

// gamma_m^{+-} = +- sqrt(sigma (m + 1)), m >= 2.
double threshold_gamma(int m, double sigma, Sign sign);

// Spectral-collision diagnostic: the ratio k2 whose positive-integer values
// make a second mode k*m bifurcate at the same parameter value.
//   speed:     k2 = (gamma^2 - sigma) / (sigma m^2)
//   tension:   k2 = ((2m-1) gamma^2 - (2c+gamma)^2) / (m (2c+gamma)^2 + (m-2) gamma^2)
//   vorticity: thresholds are strictly monotone in the mode, so only the
//              trivial k = 1 solves the collision equation.
struct CollisionReport {
  bool ok;
  double k2;
  bool near_integer_warning;  // within 1e-6 of a positive integer
};

CollisionReport collision_check(Kind kind, int m, const ParamPoint& p);

// Kernel vector x0, cokernel vector y0 (as coefficient pairs on
// (cos(mx), sin(mx)) resp. (sin(mx), cos(mx))), and the transversality
// pairing <d_p L x0, y0> in closed form:
//   speed:     x0 = (1, +-sqrt(rad)), y0 = (-+sqrt(rad), 1), pairing +-2m sqrt(rad)
//   tension:   x0 = (1, 2c+gamma),    y0 = (-(2c+gamma), 1), pairing 1 - m^2
//   vorticity: x0 = (1, gamma_m),     y0 = (-gamma_m, 1),    pairing 2 gamma_m (m-1)
struct KernelData {
  Eigen::Vector2d x0, y0;
  double pairing;
};

// A located bifurcation point: which parameter bifurcates, its value, the
// full parameter triple, kernel data, and the admissibility verdict.
struct BifurcationPoint {
  Kind kind;
  Sign sign;
  int m;
  double value = 0.0;
  ParamPoint params;  // with the threshold substituted into its slot
  Eigen::Vector2d x0 = Eigen::Vector2d::Zero();
  Eigen::Vector2d y0 = Eigen::Vector2d::Zero();
  double pairing = 0.0;
  double collision_k2 = 0.0;
  bool admissible = false;
  std::string reason;  // empty when admissible
};

// Throws InadmissibleError when the threshold is not real/positive or a
// collision occurs; otherwise verifies numerically that M_m annihilates x0
// and M_m^T annihilates y0.
KernelData kernel_vectors(Kind kind, int m, Sign sign, const ParamPoint& at_threshold);

// Locates the bifurcation point for the given family from the fixed
// parameters in `fixed` (the bifurcating slot is ignored). Never throws on
// inadmissibility; the verdict is in the returned record.
BifurcationPoint locate(Kind kind, int m, Sign sign, const ParamPoint& fixed);

// Exact parameter-derivative column of the steady map at an arbitrary state,
// packed like steady::pack_residual. Used as the analytic Newton column and
// for transversality cross-checks.
Eigen::VectorXd param_derivative(Kind kind, const ParamPoint& p, const contour::SheetState& state,
                                 const contour::Grid& g);

}  // namespace vsheet::linear
