#include "vsheet/contour.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vsheet/errors.hpp"

namespace vsheet::contour {

namespace {

constexpr double kPi = std::numbers::pi;

// Compensated (Kahan) accumulator. The singular kernels reach O(Q) at the
// nearest offset node; plain summation would leave O(Q * eps) junk, which is
// visible against the 1e-12 residual budgets.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

Eigen::VectorXd sqrt_radicand(const Eigen::VectorXd& eta) {
  Eigen::VectorXd r(eta.size());
  for (int i = 0; i < eta.size(); ++i) {
    const double rad = 1.0 + 2.0 * eta(i);
    if (!(rad > 0.0)) throw DomainError("1 + 2*eta <= 0: curve leaves the admissible class");
    r(i) = std::sqrt(rad);
  }
  return r;
}

}  // namespace

SheetState::SheetState(EvenSeries eta_in, OddSeries psi_in)
    : eta(std::move(eta_in)), psi(std::move(psi_in)) {
  if (eta.foldness() != psi.foldness())
    throw std::invalid_argument("SheetState: eta and psi must share the foldness");
  if (eta.modes() != psi.modes())
    throw std::invalid_argument("SheetState: eta and psi must share the mode count");
}

SheetState SheetState::zero(int foldness, int modes) {
  return SheetState(EvenSeries::zero(foldness, modes), OddSeries::zero(foldness, modes));
}

SheetState axpy(const SheetState& state, const SheetState& dir, double t) {
  if (state.foldness() != dir.foldness())
    throw std::invalid_argument("axpy: foldness mismatch");
  const int n = std::max(state.modes(), dir.modes());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n), b = Eigen::VectorXd::Zero(n);
  a.head(state.modes()) = state.eta.coeffs();
  b.head(state.modes()) = state.psi.coeffs();
  a.head(dir.modes()) += t * dir.eta.coeffs();
  b.head(dir.modes()) += t * dir.psi.coeffs();
  return SheetState(EvenSeries(state.foldness(), std::move(a)),
                    OddSeries(state.foldness(), std::move(b)));
}

double x_norm(const SheetState& state, double s) {
  return spectral::sobolev_norm(state.eta, s + 0.25) + spectral::sobolev_norm(state.psi, s - 0.25);
}

Eigen::VectorXd radius_values(const Eigen::VectorXd& eta_values) {
  return sqrt_radicand(eta_values);
}

Eigen::VectorXd radius(const SheetState& state, const Grid& g) {
  return radius_values(spectral::evaluate(state.eta, g));
}

InterfaceSamples sample_interface(const Grid& g, const Eigen::VectorXd& eta_primary,
                                  const Eigen::VectorXd& eta_offset) {
  InterfaceSamples s;
  s.grid = &g;
  s.eta_p = eta_primary;
  s.eta_o = eta_offset;
  s.r_p = sqrt_radicand(s.eta_p);
  s.r_o = sqrt_radicand(s.eta_o);
  return s;
}

InterfaceSamples sample_interface(const SheetState& state, const Grid& g) {
  return sample_interface(g, spectral::evaluate(state.eta, g),
                          spectral::evaluate_offset(state.eta, g));
}

void d0_h0_apply(const InterfaceSamples& s, const Eigen::VectorXd& f_offset,
                 Eigen::VectorXd& d0_out, Eigen::VectorXd& h0_out, const QuadratureConfig& cfg) {
  const Grid& g = *s.grid;
  const int q = g.q();
  if (f_offset.size() != q) throw std::invalid_argument("d0/h0: f must be sampled on the offset grid");
  d0_out.resize(q);
  h0_out.resize(q);
  for (int j = 0; j < q; ++j) {
    Kahan sd, sh;
    const double ep = s.eta_p(j), rp = s.r_p(j);
    for (int k = 0; k < q; ++k) {
      const int d = j - k >= 0 ? j - k : j - k + q;
      const double cd = g.cos_diff(d);
      const double den = 1.0 + ep + s.eta_o(k) - rp * s.r_o(k) * cd;
      if (den < cfg.denom_floor)
        throw DomainError("singular-kernel denominator below the positive floor");
      const double fk = f_offset(k);
      sd.add((1.0 - (s.r_o(k) / rp) * cd) / den * fk);
      sh.add(rp * s.r_o(k) * g.sin_diff(d) / den * fk);
    }
    d0_out(j) = sd.sum / q;
    h0_out(j) = sh.sum / q;
  }
}

Eigen::VectorXd d0_apply(const InterfaceSamples& s, const Eigen::VectorXd& f_offset,
                         const QuadratureConfig& cfg) {
  Eigen::VectorXd d, h;
  d0_h0_apply(s, f_offset, d, h, cfg);
  return d;
}

Eigen::VectorXd h0_apply(const InterfaceSamples& s, const Eigen::VectorXd& f_offset,
                         const QuadratureConfig& cfg) {
  Eigen::VectorXd d, h;
  d0_h0_apply(s, f_offset, d, h, cfg);
  return h;
}

Eigen::VectorXd d0(const SheetState& state, const Eigen::VectorXd& f_offset, const Grid& g,
                   const QuadratureConfig& cfg) {
  return d0_apply(sample_interface(state, g), f_offset, cfg);
}

Eigen::VectorXd h0(const SheetState& state, const Eigen::VectorXd& f_offset, const Grid& g,
                   const QuadratureConfig& cfg) {
  return h0_apply(sample_interface(state, g), f_offset, cfg);
}

Eigen::VectorXd h_full_values(const InterfaceSamples& s, const Eigen::VectorXd& eta_x_primary,
                              const Eigen::VectorXd& f_offset, const QuadratureConfig& cfg) {
  Eigen::VectorXd d, h;
  d0_h0_apply(s, f_offset, d, h, cfg);
  return eta_x_primary.cwiseProduct(d) + h;
}

Eigen::VectorXd h_full(const SheetState& state, const Eigen::VectorXd& f_offset, const Grid& g,
                       const QuadratureConfig& cfg) {
  const InterfaceSamples s = sample_interface(state, g);
  const Eigen::VectorXd eta_x = spectral::evaluate(spectral::derivative(state.eta), g);
  return h_full_values(s, eta_x, f_offset, cfg);
}

QuadratureDefect quadrature_defect(const SheetState& state, const std::function<double(double)>& f,
                                   const Grid& g, const QuadratureConfig& cfg) {
  const Grid g2(2 * g.q());
  auto sample = [&f](const Eigen::VectorXd& xs) {
    Eigen::VectorXd v(xs.size());
    for (int i = 0; i < xs.size(); ++i) v(i) = f(xs(i));
    return v;
  };
  Eigen::VectorXd d1, h1, d2, h2;
  d0_h0_apply(sample_interface(state, g), sample(g.offset_nodes()), d1, h1, cfg);
  d0_h0_apply(sample_interface(state, g2), sample(g2.offset_nodes()), d2, h2, cfg);
  // g2's even-indexed primary nodes coincide with g's primary nodes
  double dd = 0.0, dh = 0.0;
  for (int j = 0; j < g.q(); ++j) {
    dd = std::max(dd, std::abs(d1(j) - d2(2 * j)));
    dh = std::max(dh, std::abs(h1(j) - h2(2 * j)));
  }
  return QuadratureDefect{dd, dh};
}

Eigen::VectorXd curvature_values(const Eigen::VectorXd& eta, const Eigen::VectorXd& eta_x,
                                 const Eigen::VectorXd& eta_xx) {
  const int n = static_cast<int>(eta.size());
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    const double r2 = 1.0 + 2.0 * eta(i);
    if (!(r2 > 0.0)) throw DomainError("curvature: 1 + 2*eta <= 0");
    const double t2 = eta_x(i) * eta_x(i) / r2;  // (eta_x / R)^2
    const double w = r2 + t2;                    // |z_x|^2
    out(i) = (eta_xx(i) - 2.0 * t2) / (w * std::sqrt(w)) - 1.0 / std::sqrt(w);
  }
  return out;
}

Eigen::VectorXd curvature(const SheetState& state, const Grid& g) {
  const OddSeries eta_x = spectral::derivative(state.eta);
  const EvenSeries eta_xx = spectral::derivative(eta_x);
  return curvature_values(spectral::evaluate(state.eta, g), spectral::evaluate(eta_x, g),
                          spectral::evaluate(eta_xx, g));
}

namespace {

// z(theta) = R(theta) e^{i theta} as a plane point
Eigen::Vector2d curve_point(const SheetState& state, double theta) {
  const double r = std::sqrt(1.0 + 2.0 * spectral::evaluate_at(state.eta, theta));
  return {r * std::cos(theta), r * std::sin(theta)};
}

double curve_distance(const SheetState& state, const Grid& g, const Eigen::Vector2d& p) {
  const int fine = 4 * g.q();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fine; ++i) {
    const double theta = 2.0 * kPi * i / fine;
    best = std::min(best, (p - curve_point(state, theta)).norm());
  }
  return best;
}

}  // namespace

CurvePoint classify_point(const SheetState& state, const Grid& g, const Eigen::Vector2d& p) {
  const double theta = std::atan2(p.y(), p.x());
  const double rad = 1.0 + 2.0 * spectral::evaluate_at(state.eta, theta);
  if (!(rad > 0.0)) throw DomainError("classify_point: curve not admissible at this angle");
  const double r_curve = std::sqrt(rad);
  const double r = p.norm();
  PointOwner owner;
  if (curve_distance(state, g, p) <= 2.0 * g.spacing())
    owner = PointOwner::on_interface;
  else
    owner = r < r_curve ? PointOwner::inside : PointOwner::outside;
  return CurvePoint{p, owner};
}

Eigen::VectorXd omega_values(const SheetState& state, double gamma, const Grid& g) {
  return Eigen::VectorXd::Constant(g.q(), gamma) +
         spectral::evaluate(spectral::derivative(state.psi), g);
}

Eigen::Vector2d biot_savart_velocity(const SheetState& state, double gamma,
                                     const Eigen::Vector2d& point, const Grid& g) {
  if (curve_distance(state, g, point) <= 2.0 * g.spacing())
    throw TooCloseError("biot_savart_velocity: point within two grid spacings of the curve");
  const Eigen::VectorXd omega = omega_values(state, gamma, g);
  const Eigen::VectorXd r = radius(state, g);
  Kahan ux, uy;
  for (int j = 0; j < g.q(); ++j) {
    const double theta = g.nodes()(j);
    const Eigen::Vector2d z(r(j) * std::cos(theta), r(j) * std::sin(theta));
    const Eigen::Vector2d d = point - z;
    const double w = omega(j) / d.squaredNorm();
    ux.add(-d.y() * w);  // (a,b)^perp = (-b, a)
    uy.add(d.x() * w);
  }
  return Eigen::Vector2d(ux.sum / g.q(), uy.sum / g.q());
}

TraceVelocities trace_velocities(const SheetState& state, double gamma, const Grid& g,
                                 const QuadratureConfig& cfg) {
  const int q = g.q();
  const InterfaceSamples s = sample_interface(state, g);
  const OddSeries eta_x_series = spectral::derivative(state.eta);
  const Eigen::VectorXd eta_x = spectral::evaluate(eta_x_series, g);
  const Eigen::VectorXd omega_p = omega_values(state, gamma, g);
  const Eigen::VectorXd omega_o =
      Eigen::VectorXd::Constant(q, gamma) +
      spectral::evaluate_offset(spectral::derivative(state.psi), g);

  // curve points at primary and offset nodes
  Eigen::Matrix2Xd z_p(2, q), z_o(2, q), z_x(2, q);
  for (int j = 0; j < q; ++j) {
    const double tp = g.nodes()(j), to = g.offset_nodes()(j);
    z_p.col(j) << s.r_p(j) * std::cos(tp), s.r_p(j) * std::sin(tp);
    z_o.col(j) << s.r_o(j) * std::cos(to), s.r_o(j) * std::sin(to);
    // z_x = (eta_x / R) e^{ix} + R i e^{ix}
    const double a = eta_x(j) / s.r_p(j);
    z_x.col(j) << a * std::cos(tp) - s.r_p(j) * std::sin(tp),
        a * std::sin(tp) + s.r_p(j) * std::cos(tp);
  }

  TraceVelocities out;
  out.v_minus.resize(2, q);
  out.v_plus.resize(2, q);
  out.vm_tangential.resize(q);
  out.vp_tangential.resize(q);
  out.omega_primary = omega_p;

  for (int j = 0; j < q; ++j) {
    Kahan bx, by;
    const double ep = s.eta_p(j), rp = s.r_p(j);
    for (int k = 0; k < q; ++k) {
      const int d = j - k >= 0 ? j - k : j - k + q;
      const double den = 1.0 + ep + s.eta_o(k) - rp * s.r_o(k) * g.cos_diff(d);
      if (den < cfg.denom_floor)
        throw DomainError("trace_velocities: kernel denominator below the floor");
      // |z(x)-z(y)|^2 = 2 den; perp = (b, -a)
      const Eigen::Vector2d diff = z_p.col(j) - z_o.col(k);
      const double w = omega_o(k) / (2.0 * den);
      bx.add(diff.y() * w);
      by.add(-diff.x() * w);
    }
    const Eigen::Vector2d br(bx.sum / q, by.sum / q);
    const Eigen::Vector2d tang = z_x.col(j) / z_x.col(j).squaredNorm();
    out.v_minus.col(j) = br + 0.5 * omega_p(j) * tang;
    out.v_plus.col(j) = br - 0.5 * omega_p(j) * tang;
    out.vm_tangential(j) = out.v_minus.col(j).dot(z_x.col(j));
    out.vp_tangential(j) = out.v_plus.col(j).dot(z_x.col(j));
  }
  return out;
}

}  // namespace vsheet::contour
