#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vsheet/contour.hpp"

namespace vsheet::steady {

using contour::Grid;
using contour::QuadratureConfig;
using contour::SheetState;
using spectral::AnalyzeOptions;
using spectral::EvenSeries;
using spectral::OddSeries;

// The three parameters of the steady problem: rotation speed c, surface
// tension sigma > 0, mean vorticity gamma.
struct ParamPoint {
  double c = 0.0;
  double sigma = 1.0;
  double gamma = 0.0;

  void validate() const;
};

struct EvalConfig {
  QuadratureConfig quadrature{};
  AnalyzeOptions analyze{};
  double norm_s = 2.0;  // regularity index of the reported residual norm
};

// Residual of the steady map: r1 (odd) from the kinematic equation, r2
// (even, mean-projected) from the dynamic one, and the norm
// ||r1||_{s - 5/4} + ||r2||_{s - 7/4}.
struct Residual {
  OddSeries r1;
  EvenSeries r2;
  double y_norm;
};

// First component:  c eta_x + (1/2) H(eta)[psi_x + gamma]
// (linearity of the operator in its argument folds the two kernel terms of
// the kinematic equation into one pass), projected onto sines.
OddSeries f1(const ParamPoint& p, const SheetState& state, const Grid& g,
             const EvalConfig& cfg = {});

// Second component: c psi_x + (omega/2) D0(eta)[omega] + sigma K(eta) with
// omega = gamma + psi_x, mean-projected before analysis (the dynamic
// equation holds modulo constants).
EvenSeries f2(const ParamPoint& p, const SheetState& state, const Grid& g,
              const EvalConfig& cfg = {});

Residual residual(const ParamPoint& p, const SheetState& state, const Grid& g,
                  const EvalConfig& cfg = {});

// Packing convention used by Jacobians and Newton: a state becomes
// [eta_1..eta_N, psi_1..psi_N]; a residual becomes [r1_1..r1_N, r2_1..r2_N].
Eigen::VectorXd pack_state(const SheetState& state);
SheetState unpack_state(int foldness, const Eigen::VectorXd& packed);
Eigen::VectorXd pack_residual(const Residual& r);

struct FdJacobian {
  Eigen::MatrixXd matrix;     // rows: packed residual, cols: directions
  double richardson_defect;   // max relative column disagreement vs eps/2
  bool step_warning;          // defect above 1e-4
};

// Centered finite differences (F(state + eps d) - F(state - eps d)) / (2 eps)
// in coefficient space, with an automatic half-step Richardson comparison.
// At state = 0 the columns must match the analytic multiplier blocks.
FdJacobian fd_jacobian(const ParamPoint& p, const SheetState& state,
                       const std::vector<SheetState>& directions, double eps, const Grid& g,
                       const EvalConfig& cfg = {});

// The 2N unit coefficient directions of an (m, N) state, ordered like
// pack_state.
std::vector<SheetState> unit_directions(int foldness, int modes);

}  // namespace vsheet::steady
