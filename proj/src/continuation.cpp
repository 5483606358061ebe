#include "vsheet/continuation.hpp"

#include <cmath>
#include <stdexcept>

#include "vsheet/errors.hpp"

namespace vsheet::continuation {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using spectral::EvenSeries;
using spectral::Grid;
using spectral::OddSeries;

// Unknown packing for the augmented system: u = [p, a_2..a_N, b_1..b_N];
// a_1 is pinned to the amplitude s. Equations are the packed residual
// [r1_1..r1_N, r2_1..r2_N].
struct Packing {
  int m, n;

  int dim() const { return 2 * n; }

  SheetState state(double s, const VectorXd& u) const {
    VectorXd a = VectorXd::Zero(n), b = VectorXd::Zero(n);
    a(0) = s;
    a.tail(n - 1) = u.segment(1, n - 1);
    b = u.tail(n);
    return SheetState(EvenSeries(m, std::move(a)), OddSeries(m, std::move(b)));
  }

  ParamPoint params(const BifurcationPoint& point, const VectorXd& u) const {
    ParamPoint p = point.params;
    switch (point.kind) {
      case Kind::speed: p.c = u(0); break;
      case Kind::tension: p.sigma = u(0); break;
      case Kind::vorticity: p.gamma = u(0); break;
    }
    return p;
  }
};

// Analytic quasi-Newton matrix: multiplier blocks for the coefficient
// columns (exact at s = 0) and the exact parameter-derivative column at the
// current state.
MatrixXd analytic_jacobian(const BifurcationPoint& point, const Packing& pk, const ParamPoint& p,
                           const SheetState& state, const Grid& g) {
  const int n = pk.n;
  MatrixXd j = MatrixXd::Zero(pk.dim(), pk.dim());
  j.col(0) = linear::param_derivative(point.kind, p, state, g);
  for (int mode = 1; mode <= n; ++mode) {
    const Eigen::Matrix2d mm = linear::block(mode * pk.m, p);
    if (mode >= 2) {
      const int col = mode - 1;  // a_mode lives at u(col)
      j(mode - 1, col) = mm(0, 0);
      j(n + mode - 1, col) = mm(1, 0);
    }
    const int colb = n + mode - 1;  // b_mode
    j(mode - 1, colb) = mm(0, 1);
    j(n + mode - 1, colb) = mm(1, 1);
  }
  return j;
}

MatrixXd fd_jacobian_full(const BifurcationPoint& point, const Packing& pk, double s,
                          const VectorXd& u, const Grid& g, const steady::EvalConfig& cfg) {
  const int dim = pk.dim();
  MatrixXd j(dim, dim);
  const double eps = 1e-7;
  for (int col = 0; col < dim; ++col) {
    VectorXd up = u, um = u;
    const double h = eps * std::max(1.0, std::abs(u(col)));
    up(col) += h;
    um(col) -= h;
    const VectorXd rp =
        steady::pack_residual(steady::residual(pk.params(point, up), pk.state(s, up), g, cfg));
    const VectorXd rm =
        steady::pack_residual(steady::residual(pk.params(point, um), pk.state(s, um), g, cfg));
    j.col(col) = (rp - rm) / (2.0 * h);
  }
  return j;
}

double tail_energy_ratio(const SheetState& state) {
  const VectorXd& a = state.eta.coeffs();
  const VectorXd& b = state.psi.coeffs();
  const int n = state.modes();
  const double total = a.squaredNorm() + b.squaredNorm();
  if (total == 0.0) return 0.0;
  double tail = 0.0;
  for (int i = std::max(0, n - 2); i < n; ++i) tail += a(i) * a(i) + b(i) * b(i);
  return tail / total;
}

}  // namespace

Branch trace_branch(const BifurcationPoint& point, double ds, int steps,
                    const TraceOptions& opts) {
  if (!point.admissible)
    throw InadmissibleError("trace_branch: bifurcation point is not admissible: " + point.reason);
  if (!(ds > 0.0 && ds <= 0.05)) throw std::invalid_argument("trace_branch: ds must be in (0, 0.05]");
  if (steps < 1) throw std::invalid_argument("trace_branch: steps must be >= 1");
  if (steps * ds > opts.trust_amplitude + 1e-15)
    throw std::invalid_argument("trace_branch: steps*ds exceeds the trust amplitude");
  if (opts.direction != 1 && opts.direction != -1)
    throw std::invalid_argument("trace_branch: direction must be +1 or -1");
  if (opts.quad < 4 * point.m * opts.modes)
    throw std::invalid_argument("trace_branch: quad must be >= 4*m*modes");

  const Grid grid(opts.quad);
  const Packing pk{point.m, opts.modes};
  steady::EvalConfig cfg;
  cfg.norm_s = opts.norm_s;

  Branch branch;
  branch.point = point;
  branch.direction = opts.direction;
  branch.options = opts;

  // s = 0 embedding of the bifurcation point, used by the secant predictor
  VectorXd u_prev2 = VectorXd::Zero(pk.dim());
  u_prev2(0) = point.value;
  VectorXd u_prev = u_prev2;

  for (int k = 1; k <= steps; ++k) {
    const double s = k * ds * opts.direction;

    VectorXd u;
    if (k == 1) {
      // tangent predictor s * x0 (a_1 is pinned; only the psi component
      // enters the unknowns)
      u = u_prev;
      u(pk.n) = s * point.x0(1);
    } else {
      u = 2.0 * u_prev - u_prev2;  // secant through the two previous steps
    }

    SheetState state = pk.state(s, u);
    ParamPoint params = pk.params(point, u);
    steady::Residual res = steady::residual(params, state, grid, cfg);
    if (res.y_norm > opts.predictor_residual_max)
      throw StepTooLargeError("trace_branch: predictor residual " + std::to_string(res.y_norm) +
                              " exceeds the safeguard");

    MatrixXd jac = analytic_jacobian(point, pk, params, state, grid);
    Eigen::PartialPivLU<MatrixXd> lu(jac);

    int iters = 0;
    double prev_norm = res.y_norm;
    int refreshes = 0;
    while (res.y_norm > opts.newton_tol) {
      if (++iters > opts.max_newton)
        throw NewtonDivergenceError("trace_branch: no contraction within max_newton iterations");
      const VectorXd delta = lu.solve(-steady::pack_residual(res));
      u += delta;
      state = pk.state(s, u);
      params = pk.params(point, u);
      res = steady::residual(params, state, grid, cfg);
      if (res.y_norm > 0.5 * prev_norm && res.y_norm > opts.newton_tol) {
        if (refreshes >= 3)
          throw NewtonDivergenceError("trace_branch: contraction stalled after FD refreshes");
        jac = fd_jacobian_full(point, pk, s, u, grid, cfg);
        lu.compute(jac);
        ++refreshes;
      }
      prev_norm = res.y_norm;
    }

    const double tail = tail_energy_ratio(state);
    if (tail > opts.tail_tol)
      throw AliasError("trace_branch: top-mode energy ratio " + std::to_string(tail) +
                           " exceeds the truncation tolerance",
                       tail);

    branch.steps.push_back(BranchStep{s, u(0), state, res.y_norm, iters, tail});
    u_prev2 = u_prev;
    u_prev = u;
  }
  return branch;
}

Asymptotics branch_asymptotics(const Branch& branch, double norm_s) {
  const auto& steps = branch.steps;
  if (steps.size() < 3)
    throw std::invalid_argument("branch_asymptotics: need at least three steps");

  // p(s) is even in s along these branches; fit p = p0 + A s^2 + B s^4.
  const int k = static_cast<int>(steps.size());
  Eigen::MatrixXd vand(k, 3);
  Eigen::VectorXd rhs(k);
  for (int i = 0; i < k; ++i) {
    const double s2 = steps[i].s * steps[i].s;
    vand(i, 0) = 1.0;
    vand(i, 1) = s2;
    vand(i, 2) = s2 * s2;
    rhs(i) = steps[i].param_value;
  }
  const Eigen::Vector3d coef = vand.colPivHouseholderQr().solve(rhs);

  Asymptotics out;
  out.p0_extrapolated = coef(0);

  const SheetState& first = steps.front().state;
  const int m = first.foldness(), n = first.modes();
  double defect = 0.0;
  for (const BranchStep& st : steps) {
    Eigen::VectorXd a = st.state.eta.coeffs();
    Eigen::VectorXd b = st.state.psi.coeffs();
    a(0) -= st.s * branch.point.x0(0);
    b(0) -= st.s * branch.point.x0(1);
    const SheetState diff(EvenSeries(m, a), OddSeries(m, b));
    defect = std::max(defect, contour::x_norm(diff, norm_s) / (st.s * st.s));
  }
  out.tangent_defect = defect;

  // power-law exponent of |p(s) - p0| (skip steps at rounding level)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int cnt = 0;
  for (const BranchStep& st : steps) {
    const double dp = std::abs(st.param_value - out.p0_extrapolated);
    if (dp < 1e-14) continue;
    const double lx = std::log(std::abs(st.s)), ly = std::log(dp);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  out.power_law_exponent =
      cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  (void)n;
  return out;
}

std::vector<double> certify_branch(const Branch& branch, int quad_factor) {
  if (quad_factor < 2) throw std::invalid_argument("certify_branch: quad_factor must be >= 2");
  const Grid fine(quad_factor * branch.options.quad);
  steady::EvalConfig cfg;
  cfg.norm_s = branch.options.norm_s;
  std::vector<double> norms;
  norms.reserve(branch.steps.size());
  for (const BranchStep& st : branch.steps) {
    ParamPoint p = branch.point.params;
    switch (branch.point.kind) {
      case Kind::speed: p.c = st.param_value; break;
      case Kind::tension: p.sigma = st.param_value; break;
      case Kind::vorticity: p.gamma = st.param_value; break;
    }
    norms.push_back(steady::residual(p, st.state, fine, cfg).y_norm);
  }
  return norms;
}

}  // namespace vsheet::continuation
