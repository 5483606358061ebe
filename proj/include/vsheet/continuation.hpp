#pragma once

#include <vector>

#include "vsheet/linear_theory.hpp"

namespace vsheet::continuation {

using contour::SheetState;
using linear::BifurcationPoint;
using linear::Kind;
using linear::Sign;
using steady::ParamPoint;

struct TraceOptions {
  int modes = 16;   // fold-mode truncation N
  int quad = 256;   // collocation size Q (>= 4 m N)
  int direction = +1;
  double newton_tol = 1e-11;        // residual norm target (s = 2)
  int max_newton = 25;
  double trust_amplitude = 0.05;    // |s| beyond which results are not validated
  double predictor_residual_max = 1e-2;
  double tail_tol = 1e-10;          // top-mode energy fraction allowed per step
  double norm_s = 2.0;
};

struct BranchStep {
  double s;             // amplitude (the cos(mx) coefficient of eta, exactly)
  double param_value;   // the bifurcating parameter at this step
  SheetState state;
  double residual_norm;
  int newton_iters;
  double tail_ratio;
};

struct Branch {
  BifurcationPoint point;
  std::vector<BranchStep> steps;  // strictly monotone in |s|
  int direction;
  TraceOptions options;
};

// Newton continuation of the branch emanating from an admissible
// bifurcation point. The cos(mx) coefficient of eta is pinned to s = k * ds
// (this removes both the kernel direction and the trivial family), the
// bifurcating parameter joins the unknowns, and the initial Jacobian is the
// analytic multiplier-block approximation with a finite-difference refresh
// whenever contraction stalls.
Branch trace_branch(const BifurcationPoint& point, double ds, int steps,
                    const TraceOptions& opts = {});

struct Asymptotics {
  double p0_extrapolated;     // parameter value extrapolated to s = 0
  double tangent_defect;      // max_k ||state_k - s_k x0||_X / s_k^2
  double power_law_exponent;  // slope of log|p(s) - p0| vs log s
};

Asymptotics branch_asymptotics(const Branch& branch, double norm_s = 2.0);

// Residual norms of every step re-evaluated at quad_factor times the
// quadrature resolution.
std::vector<double> certify_branch(const Branch& branch, int quad_factor = 2);

}  // namespace vsheet::continuation
