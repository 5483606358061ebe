#include "vsheet/steady.hpp"

#include <cmath>
#include <stdexcept>

#include "vsheet/errors.hpp"

namespace vsheet::steady {

namespace {

void check_grid(const SheetState& state, const Grid& g) {
  // 4x oversampling: the quotient/root nonlinearities are not polynomial,
  // so exact dealiasing is impossible; the alias guard bounds the rest.
  if (g.q() < 4 * state.foldness() * state.modes())
    throw std::invalid_argument("steady: grid too coarse, need q >= 4*m*N");
}

struct Assembly {
  Eigen::VectorXd f1_values, f2_values;
};

// Pointwise assembly of both components; the mean of the second is removed
// here so the analysis never sees it.
Assembly assemble(const ParamPoint& p, const SheetState& state, const Grid& g,
                  const QuadratureConfig& qcfg) {
  const contour::InterfaceSamples s = contour::sample_interface(state, g);
  const EvenSeries psi_x_series = spectral::derivative(state.psi);
  const OddSeries eta_x_series = spectral::derivative(state.eta);

  const Eigen::VectorXd eta_x = spectral::evaluate(eta_x_series, g);
  const Eigen::VectorXd psi_x_p = spectral::evaluate(psi_x_series, g);
  const Eigen::VectorXd omega_o =
      Eigen::VectorXd::Constant(g.q(), p.gamma) + spectral::evaluate_offset(psi_x_series, g);
  const Eigen::VectorXd omega_p = Eigen::VectorXd::Constant(g.q(), p.gamma) + psi_x_p;

  Eigen::VectorXd d0v, h0v;
  contour::d0_h0_apply(s, omega_o, d0v, h0v, qcfg);

  Assembly a;
  a.f1_values = p.c * eta_x + 0.5 * (eta_x.cwiseProduct(d0v) + h0v);
  a.f2_values = p.c * psi_x_p + 0.5 * omega_p.cwiseProduct(d0v) +
                p.sigma * contour::curvature(state, g);
  a.f2_values.array() -= a.f2_values.mean();
  return a;
}

}  // namespace

void ParamPoint::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("ParamPoint: sigma must be positive");
  if (!std::isfinite(c) || !std::isfinite(sigma) || !std::isfinite(gamma))
    throw std::invalid_argument("ParamPoint: parameters must be finite");
}

OddSeries f1(const ParamPoint& p, const SheetState& state, const Grid& g, const EvalConfig& cfg) {
  p.validate();
  check_grid(state, g);
  const Assembly a = assemble(p, state, g, cfg.quadrature);
  return spectral::analyze_odd(a.f1_values, g, state.foldness(), state.modes(), cfg.analyze).series;
}

EvenSeries f2(const ParamPoint& p, const SheetState& state, const Grid& g, const EvalConfig& cfg) {
  p.validate();
  check_grid(state, g);
  const Assembly a = assemble(p, state, g, cfg.quadrature);
  return spectral::analyze_even(a.f2_values, g, state.foldness(), state.modes(), cfg.analyze).series;
}

Residual residual(const ParamPoint& p, const SheetState& state, const Grid& g,
                  const EvalConfig& cfg) {
  p.validate();
  check_grid(state, g);
  const Assembly a = assemble(p, state, g, cfg.quadrature);
  const int m = state.foldness(), n = state.modes();
  OddSeries r1 = spectral::analyze_odd(a.f1_values, g, m, n, cfg.analyze).series;
  EvenSeries r2 = spectral::analyze_even(a.f2_values, g, m, n, cfg.analyze).series;
  const double norm = spectral::sobolev_norm(r1, cfg.norm_s - 1.25) +
                      spectral::sobolev_norm(r2, cfg.norm_s - 1.75);
  return Residual{std::move(r1), std::move(r2), norm};
}

Eigen::VectorXd pack_state(const SheetState& state) {
  const int n = state.modes();
  Eigen::VectorXd v(2 * n);
  v.head(n) = state.eta.coeffs();
  v.tail(n) = state.psi.coeffs();
  return v;
}

SheetState unpack_state(int foldness, const Eigen::VectorXd& packed) {
  if (packed.size() % 2 != 0) throw std::invalid_argument("unpack_state: odd length");
  const int n = static_cast<int>(packed.size()) / 2;
  return SheetState(EvenSeries(foldness, packed.head(n)), OddSeries(foldness, packed.tail(n)));
}

Eigen::VectorXd pack_residual(const Residual& r) {
  const int n = r.r1.modes();
  Eigen::VectorXd v(2 * n);
  v.head(n) = r.r1.coeffs();
  v.tail(n) = r.r2.coeffs();
  return v;
}

namespace {

Eigen::MatrixXd fd_matrix(const ParamPoint& p, const SheetState& state,
                          const std::vector<SheetState>& directions, double eps, const Grid& g,
                          const EvalConfig& cfg) {
  const int rows = 2 * state.modes();
  Eigen::MatrixXd j(rows, static_cast<int>(directions.size()));
  for (std::size_t col = 0; col < directions.size(); ++col) {
    const Eigen::VectorXd plus =
        pack_residual(residual(p, contour::axpy(state, directions[col], eps), g, cfg));
    const Eigen::VectorXd minus =
        pack_residual(residual(p, contour::axpy(state, directions[col], -eps), g, cfg));
    j.col(static_cast<int>(col)) = (plus - minus) / (2.0 * eps);
  }
  return j;
}

}  // namespace

FdJacobian fd_jacobian(const ParamPoint& p, const SheetState& state,
                       const std::vector<SheetState>& directions, double eps, const Grid& g,
                       const EvalConfig& cfg) {
  if (!(eps >= 1e-7 && eps <= 1e-3))
    throw std::invalid_argument("fd_jacobian: eps must lie in [1e-7, 1e-3]");
  if (directions.empty()) throw std::invalid_argument("fd_jacobian: no directions");

  FdJacobian out;
  out.matrix = fd_matrix(p, state, directions, eps, g, cfg);
  const Eigen::MatrixXd half = fd_matrix(p, state, directions, 0.5 * eps, g, cfg);
  const double scale = std::max(out.matrix.norm(), 1e-300);
  out.richardson_defect = (out.matrix - half).norm() / scale;
  out.step_warning = out.richardson_defect > 1e-4;
  return out;
}

std::vector<SheetState> unit_directions(int foldness, int modes) {
  std::vector<SheetState> dirs;
  dirs.reserve(2 * modes);
  for (int i = 0; i < 2 * modes; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * modes);
    v(i) = 1.0;
    dirs.push_back(unpack_state(foldness, v));
  }
  return dirs;
}

}  // namespace vsheet::steady
