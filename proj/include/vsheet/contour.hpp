#pragma once

#include <Eigen/Dense>
#include <functional>

#include "vsheet/spectral.hpp"

namespace vsheet::contour {

using spectral::EvenSeries;
using spectral::Grid;
using spectral::OddSeries;

// Spectral profile pair of an m-fold interface: the radial perturbation eta
// (even) and the velocity potential psi (odd). The curve is
// z(x) = R(x) e^{ix} with R = sqrt(1 + 2 eta); admissibility requires
// 1 + 2 eta > 0 everywhere. The vorticity density is never stored: it is
// always reconstituted as omega = gamma + psi_x, which keeps the mean
// vorticity structural.
struct SheetState {
  SheetState(EvenSeries eta_in, OddSeries psi_in);

  static SheetState zero(int foldness, int modes);

  int foldness() const { return eta.foldness(); }
  int modes() const { return eta.modes(); }

  EvenSeries eta;
  OddSeries psi;
};

// state + t * dir, coefficientwise.
SheetState axpy(const SheetState& state, const SheetState& dir, double t);

// || eta ||_{s + 1/4} + || psi ||_{s - 1/4}
double x_norm(const SheetState& state, double s);

struct QuadratureConfig {
  // positive floor for the singular-kernel denominator
  double denom_floor = 1e-12;
};

// Geometry samples shared by the singular-integral kernels: eta and
// R = sqrt(1 + 2 eta) at the primary nodes (evaluation points) and at the
// half-offset nodes (quadrature points). Construction throws DomainError
// when 1 + 2 eta <= 0 anywhere.
struct InterfaceSamples {
  const Grid* grid;
  Eigen::VectorXd eta_p, eta_o;  // primary / offset
  Eigen::VectorXd r_p, r_o;
};

InterfaceSamples sample_interface(const SheetState& state, const Grid& g);
// Value-level variant (used by the time integrator, whose states are not
// parity restricted).
InterfaceSamples sample_interface(const Grid& g, const Eigen::VectorXd& eta_primary,
                                  const Eigen::VectorXd& eta_offset);

// R(x_j) = sqrt(1 + 2 eta(x_j)) at the primary nodes; DomainError when the
// radicand is nonpositive anywhere.
Eigen::VectorXd radius(const SheetState& state, const Grid& g);
Eigen::VectorXd radius_values(const Eigen::VectorXd& eta_values);

// Principal-value operators evaluated at the primary nodes by the
// offset-node trapezoid rule: the quadrature samples live at the half-offset
// nodes, which never meet the singularity, and for periodic analytic
// integrands the rule is spectrally accurate. Integrals use the normalized
// measure (1/2pi) dx, i.e. a plain average over the offset nodes.
//
//   d0: kernel (1 - (R(y)/R(x)) cos(x-y)) / den(x,y)
//   h0: kernel  R(x) R(y) sin(x-y)        / den(x,y)
//   den(x,y) = 1 + eta(x) + eta(y) - R(x) R(y) cos(x-y)  ( = |z(x)-z(y)|^2 / 2 )
//
// f is sampled on the offset grid.
Eigen::VectorXd d0_apply(const InterfaceSamples& s, const Eigen::VectorXd& f_offset,
                         const QuadratureConfig& cfg = {});
Eigen::VectorXd h0_apply(const InterfaceSamples& s, const Eigen::VectorXd& f_offset,
                         const QuadratureConfig& cfg = {});
void d0_h0_apply(const InterfaceSamples& s, const Eigen::VectorXd& f_offset,
                 Eigen::VectorXd& d0_out, Eigen::VectorXd& h0_out,
                 const QuadratureConfig& cfg = {});

// Typed wrappers on SheetState.
Eigen::VectorXd d0(const SheetState& state, const Eigen::VectorXd& f_offset, const Grid& g,
                   const QuadratureConfig& cfg = {});
Eigen::VectorXd h0(const SheetState& state, const Eigen::VectorXd& f_offset, const Grid& g,
                   const QuadratureConfig& cfg = {});

// eta_x * d0 + h0 (the full tangential singular operator); maps even f to
// odd output for admissible even eta.
Eigen::VectorXd h_full(const SheetState& state, const Eigen::VectorXd& f_offset, const Grid& g,
                       const QuadratureConfig& cfg = {});
Eigen::VectorXd h_full_values(const InterfaceSamples& s, const Eigen::VectorXd& eta_x_primary,
                              const Eigen::VectorXd& f_offset, const QuadratureConfig& cfg = {});

// Difference between the rule at the grid's resolution and at twice that
// resolution, in the max norm; a consistency diagnostic for d0/h0.
// f is supplied as a function so it can be resampled.
struct QuadratureDefect {
  double d0_defect;
  double h0_defect;
};
QuadratureDefect quadrature_defect(const SheetState& state, const std::function<double(double)>& f,
                                   const Grid& g, const QuadratureConfig& cfg = {});

// Curvature of the curve z = sqrt(1 + 2 eta) e^{ix} from spectral
// derivatives of eta; equals 1 on the unit circle.
Eigen::VectorXd curvature(const SheetState& state, const Grid& g);
Eigen::VectorXd curvature_values(const Eigen::VectorXd& eta, const Eigen::VectorXd& eta_x,
                                 const Eigen::VectorXd& eta_xx);

enum class PointOwner { inside, outside, on_interface };

struct CurvePoint {
  Eigen::Vector2d position;
  PointOwner owner;
};

CurvePoint classify_point(const SheetState& state, const Grid& g, const Eigen::Vector2d& p);

// omega = gamma + psi_x sampled at the primary nodes.
Eigen::VectorXd omega_values(const SheetState& state, double gamma, const Grid& g);

// Off-interface velocity induced by the sheet, by the plain trapezoid rule
// on the primary nodes (the integrand is smooth away from the curve).
// Throws TooCloseError when the point is within 2 * (2pi/Q) of the curve.
// Perp convention: (a, b)^perp = (-b, a), so the circular sheet with
// omega = gamma produces gamma * x^perp / |x|^2 outside and 0 inside.
Eigen::Vector2d biot_savart_velocity(const SheetState& state, double gamma,
                                     const Eigen::Vector2d& point, const Grid& g);

// Tangential traces of the velocity on both sides of the interface. The
// average is the Birkhoff-Rott principal-value integral (offset-node rule);
// the one-sided traces differ from it by -/+ (omega/2) z_x / |z_x|^2. The
// perp convention inside the Birkhoff-Rott kernel is (a, b)^perp = (b, -a),
// chosen so that the interior trace of the circular sheet vanishes and the
// tangential jump satisfies (v_minus - v_plus) . z_x = omega identically.
struct TraceVelocities {
  Eigen::Matrix2Xd v_minus, v_plus;
  Eigen::VectorXd vm_tangential, vp_tangential;  // v . z_x
  Eigen::VectorXd omega_primary;
};

TraceVelocities trace_velocities(const SheetState& state, double gamma, const Grid& g,
                                 const QuadratureConfig& cfg = {});

}  // namespace vsheet::contour
