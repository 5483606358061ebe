#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "vsheet/contour.hpp"
#include "vsheet/steady.hpp"

namespace vsheet::evolution {

using contour::Grid;
using contour::SheetState;
using spectral::EvenSeries;
using spectral::OddSeries;
using steady::ParamPoint;

// The time-dependent problem leaves the parity-restricted class immediately
// (a cosine bump starts to rotate), so trajectories live in the full m-fold
// space. A field is stored as one complex amplitude per fold mode:
//
//     f(x) = sum_{n=1..N} Re( coef_n e^{i n m x} ),
//
// i.e. coef_n = (cos amplitude) - i (sin amplitude). Means stay zero
// structurally: there is no n = 0 slot.
struct ModalState {
  int m = 1;
  Eigen::VectorXcd eta, psi;

  int modes() const { return static_cast<int>(eta.size()); }
};

ModalState to_modal(const SheetState& state);

// || . ||_{s+1/4} + || . ||_{s-1/4} with <n m> weights on |coef|, matching
// the parity-restricted norm on parity-restricted data.
double modal_x_norm(const ModalState& u, double s);

Eigen::VectorXd modal_values(const Eigen::VectorXcd& coeffs, int m, const Eigen::VectorXd& xs);
Eigen::VectorXcd modal_analyze(const Eigen::VectorXd& values, const Grid& g, int m, int n_modes);

struct EvolutionConfig {
  double dt = 1e-3;
  double t_final = 0.1;
  double filter_fraction = 1.0 / 3.0;  // top fraction of modes zeroed in the nonlinear term
  int stride = 10;                     // snapshot every this many steps
  double blowup_limit = 1e6;
  double stability_bound = 2.0;        // dt * (max linear frequency) must stay below this
};

// Full right-hand side of the evolution system at speed zero,
//   eta_t = -(1/2) H(eta)[omega],   psi_t = -(omega/2) D0(eta)[omega] - sigma K(eta),
// omega = gamma + psi_x, the psi equation mean-projected (structurally: the
// modal analysis has no mean slot). Returns modal coefficient derivatives.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> rhs_modal(double sigma, double gamma,
                                                        const ModalState& u, const Grid& g);

// Parity-shaped wrapper: at an (even, odd) state the instantaneous time
// derivative is (odd, even).
std::pair<OddSeries, EvenSeries> rhs(double sigma, double gamma, const SheetState& state,
                                     const Grid& g);

// Grid mean of the pointwise eta_t assembly. The continuum flow preserves
// the mean of eta exactly (and the mean of omega is structural here), so a
// nonzero value measures quadrature and aliasing leakage.
double eta_mean_drift(double sigma, double gamma, const ModalState& u, const Grid& g);

// Exact propagator of the linearized dynamics: per absolute wavenumber
// k = n m the modal pair (H, Psi) evolves by exp(-tau A(k)) with
//   A(k) = [ i kappa   k/2 ] ,  kappa = (gamma/2) k,
//          [ D(k)    i kappa]    D(k) = sigma - gamma^2 + (gamma^2/2) k - sigma k^2,
// computed in closed form from the traceless square A - i kappa.
ModalState propagate_linear(double sigma, double gamma, const ModalState& u, double tau);

// Largest linear frequency magnitude over the retained modes; the stability
// check requires dt * this <= stability_bound.
double max_linear_frequency(double sigma, double gamma, int m, int n_modes);

// One step of the integrating-factor midpoint scheme: the linear part is
// advanced by the exact modal exponential, the nonlinear remainder
// explicitly; the dealiasing filter is applied to the nonlinear term only.
ModalState step(const EvolutionConfig& cfg, double sigma, double gamma, const ModalState& u,
                const Grid& g);

struct Trajectory {
  std::vector<double> t;
  std::vector<ModalState> states;
};

// Integrates to t_final with a uniform step of at most cfg.dt (shrunk so the
// final time is hit exactly). Refuses sigma <= 0 and steps violating the
// stability bound.
Trajectory evolve(const EvolutionConfig& cfg, double sigma, double gamma, const ModalState& u0,
                  const Grid& g);

struct TravelReport {
  double max_shape_error;  // max over snapshots of the X-norm mismatch
};

// Evolves a steady profile with speed c under the speed-zero dynamics and
// compares every snapshot against the initial profile rigidly translated by
// c t (modal phase e^{i n m c t}).
TravelReport verify_traveling(const SheetState& profile, const ParamPoint& params,
                              const EvolutionConfig& cfg, const Grid& g);

}  // namespace vsheet::evolution
