#include "vsheet/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "vsheet/errors.hpp"

namespace vsheet::evolution {

namespace {

using std::complex;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr complex<double> kI{0.0, 1.0};

double multiplier_d(double sigma, double gamma, double k) {
  return sigma - gamma * gamma + 0.5 * gamma * gamma * k - sigma * k * k;
}

// exp(-tau A(k)) applied to (h, p): with A = i kappa I + B, B = [[0, k/2], [D, 0]],
// B^2 = (k D / 2) I, one has exp(-tau A) = e^{-i kappa tau} (cosh(mu tau) I
// - sinh(mu tau)/mu B), mu = sqrt(k D / 2).
void apply_exponential(double sigma, double gamma, double k, double tau, complex<double>& h,
                       complex<double>& p) {
  const double kappa = 0.5 * gamma * k;
  const double d = multiplier_d(sigma, gamma, k);
  const complex<double> mu = std::sqrt(complex<double>(0.5 * k * d, 0.0));
  const complex<double> mt = mu * tau;
  const complex<double> ch = std::cosh(mt);
  complex<double> sh_over_mu;
  if (std::abs(mt) < 1e-6) {
    sh_over_mu = tau * (1.0 + mt * mt / 6.0);  // sinh(mu tau)/mu, small-argument series
  } else {
    sh_over_mu = std::sinh(mt) / mu;
  }
  const complex<double> phase = std::exp(-kI * kappa * tau);
  const complex<double> h_new = phase * (ch * h - sh_over_mu * (0.5 * k * p));
  const complex<double> p_new = phase * (ch * p - sh_over_mu * (d * h));
  h = h_new;
  p = p_new;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("evolution: sigma must be positive (the problem is ill-posed otherwise)");
}

int filter_keep(const EvolutionConfig& cfg, int n_modes) {
  if (!(cfg.filter_fraction >= 0.0 && cfg.filter_fraction < 1.0))
    throw std::invalid_argument("evolution: filter_fraction must lie in [0, 1)");
  return static_cast<int>(std::floor((1.0 - cfg.filter_fraction) * n_modes + 1e-9));
}

void apply_filter(std::pair<VectorXcd, VectorXcd>& term, int keep) {
  for (int n = keep; n < term.first.size(); ++n) {
    term.first(n) = 0.0;
    term.second(n) = 0.0;
  }
}

struct RhsValues {
  VectorXd eta_dot, psi_dot;  // pointwise, psi_dot not yet mean-projected
};

RhsValues rhs_values(double sigma, double gamma, const ModalState& u, const Grid& g) {
  const int q = g.q();
  const int m = u.m;
  if (q < 4 * m * u.modes())
    throw std::invalid_argument("evolution: grid too coarse, need q >= 4*m*N");

  const VectorXd eta_p = modal_values(u.eta, m, g.nodes());
  const VectorXd eta_o = modal_values(u.eta, m, g.offset_nodes());
  const contour::InterfaceSamples s = contour::sample_interface(g, eta_p, eta_o);

  VectorXcd eta_x_c(u.modes()), eta_xx_c(u.modes()), psi_x_c(u.modes());
  for (int n = 1; n <= u.modes(); ++n) {
    const complex<double> ik(0.0, static_cast<double>(n) * m);
    eta_x_c(n - 1) = ik * u.eta(n - 1);
    eta_xx_c(n - 1) = ik * ik * u.eta(n - 1);
    psi_x_c(n - 1) = ik * u.psi(n - 1);
  }
  const VectorXd eta_x = modal_values(eta_x_c, m, g.nodes());
  const VectorXd eta_xx = modal_values(eta_xx_c, m, g.nodes());
  const VectorXd omega_p = VectorXd::Constant(q, gamma) + modal_values(psi_x_c, m, g.nodes());
  const VectorXd omega_o = VectorXd::Constant(q, gamma) + modal_values(psi_x_c, m, g.offset_nodes());

  VectorXd d0v, h0v;
  contour::d0_h0_apply(s, omega_o, d0v, h0v);

  RhsValues out;
  out.eta_dot = -0.5 * (eta_x.cwiseProduct(d0v) + h0v);
  out.psi_dot = -0.5 * omega_p.cwiseProduct(d0v) -
                sigma * contour::curvature_values(eta_p, eta_x, eta_xx);
  return out;
}

}  // namespace

ModalState to_modal(const SheetState& state) {
  ModalState u;
  u.m = state.foldness();
  const int n = state.modes();
  u.eta.resize(n);
  u.psi.resize(n);
  for (int i = 0; i < n; ++i) {
    u.eta(i) = complex<double>(state.eta.coeffs()(i), 0.0);
    u.psi(i) = complex<double>(0.0, -state.psi.coeffs()(i));
  }
  return u;
}

double modal_x_norm(const ModalState& u, double s) {
  double eta_acc = 0.0, psi_acc = 0.0;
  for (int n = 1; n <= u.modes(); ++n) {
    const double k = std::max(1.0, static_cast<double>(n) * u.m);
    eta_acc += std::pow(k, 2.0 * (s + 0.25)) * std::norm(u.eta(n - 1));
    psi_acc += std::pow(k, 2.0 * (s - 0.25)) * std::norm(u.psi(n - 1));
  }
  return std::sqrt(eta_acc) + std::sqrt(psi_acc);
}

Eigen::VectorXd modal_values(const VectorXcd& coeffs, int m, const VectorXd& xs) {
  VectorXd out(xs.size());
  for (int j = 0; j < xs.size(); ++j) {
    const double mx = m * xs(j);
    const complex<double> w(std::cos(mx), std::sin(mx));
    complex<double> z(1.0, 0.0);
    double acc = 0.0;
    for (int n = 0; n < coeffs.size(); ++n) {
      z *= w;
      acc += (coeffs(n) * z).real();
    }
    out(j) = acc;
  }
  return out;
}

Eigen::VectorXcd modal_analyze(const VectorXd& values, const Grid& g, int m, int n_modes) {
  if (g.q() < 2 * m * n_modes + 2)
    throw std::invalid_argument("modal_analyze: grid too coarse, need q >= 2*m*N + 2");
  VectorXcd out = VectorXcd::Zero(n_modes);
  for (int j = 0; j < g.q(); ++j) {
    const double mx = m * g.nodes()(j);
    const complex<double> w(std::cos(mx), -std::sin(mx));  // e^{-i m x_j}
    complex<double> z(1.0, 0.0);
    for (int n = 0; n < n_modes; ++n) {
      z *= w;
      out(n) += values(j) * z;
    }
  }
  out *= 2.0 / g.q();
  return out;
}

std::pair<VectorXcd, VectorXcd> rhs_modal(double sigma, double gamma, const ModalState& u,
                                          const Grid& g) {
  check_sigma(sigma);
  const RhsValues v = rhs_values(sigma, gamma, u, g);
  return {modal_analyze(v.eta_dot, g, u.m, u.modes()),
          modal_analyze(v.psi_dot, g, u.m, u.modes())};
}

std::pair<OddSeries, EvenSeries> rhs(double sigma, double gamma, const SheetState& state,
                                     const Grid& g) {
  check_sigma(sigma);
  const ModalState u = to_modal(state);
  const RhsValues v = rhs_values(sigma, gamma, u, g);
  Eigen::VectorXd psi_dot = v.psi_dot;
  psi_dot.array() -= psi_dot.mean();
  const int m = state.foldness(), n = state.modes();
  return {spectral::analyze_odd(v.eta_dot, g, m, n).series,
          spectral::analyze_even(psi_dot, g, m, n).series};
}

double eta_mean_drift(double sigma, double gamma, const ModalState& u, const Grid& g) {
  return rhs_values(sigma, gamma, u, g).eta_dot.mean();
}

ModalState propagate_linear(double sigma, double gamma, const ModalState& u, double tau) {
  check_sigma(sigma);
  ModalState out = u;
  for (int n = 1; n <= u.modes(); ++n) {
    apply_exponential(sigma, gamma, static_cast<double>(n) * u.m, tau, out.eta(n - 1),
                      out.psi(n - 1));
  }
  return out;
}

double max_linear_frequency(double sigma, double gamma, int m, int n_modes) {
  double best = 0.0;
  for (int n = 1; n <= n_modes; ++n) {
    const double k = static_cast<double>(n) * m;
    const double kappa = std::abs(0.5 * gamma * k);
    const double mu = std::sqrt(std::abs(0.5 * k * multiplier_d(sigma, gamma, k)));
    best = std::max(best, kappa + mu);
  }
  return best;
}

namespace {

std::pair<VectorXcd, VectorXcd> nonlinear_remainder(double sigma, double gamma,
                                                    const ModalState& u, const Grid& g) {
  auto full = rhs_modal(sigma, gamma, u, g);
  // remainder = rhs + A u (the linear part is subtracted as -A u)
  for (int n = 1; n <= u.modes(); ++n) {
    const double k = static_cast<double>(n) * u.m;
    const complex<double> ikappa(0.0, 0.5 * gamma * k);
    full.first(n - 1) += ikappa * u.eta(n - 1) + 0.5 * k * u.psi(n - 1);
    full.second(n - 1) += multiplier_d(sigma, gamma, k) * u.eta(n - 1) + ikappa * u.psi(n - 1);
  }
  return full;
}

void check_blowup(const ModalState& u, double limit) {
  for (int n = 0; n < u.modes(); ++n) {
    if (!(std::abs(u.eta(n)) < limit) || !(std::abs(u.psi(n)) < limit))
      throw BlowupError("evolution: coefficient magnitude exceeded the blow-up limit");
  }
}

ModalState add_scaled(const ModalState& u, const std::pair<VectorXcd, VectorXcd>& d, double t) {
  ModalState out = u;
  out.eta += t * d.first;
  out.psi += t * d.second;
  return out;
}

}  // namespace

ModalState step(const EvolutionConfig& cfg, double sigma, double gamma, const ModalState& u,
                const Grid& g) {
  check_sigma(sigma);
  const int keep = filter_keep(cfg, u.modes());
  const double dt = cfg.dt;

  auto k1 = nonlinear_remainder(sigma, gamma, u, g);
  apply_filter(k1, keep);
  const ModalState u_half = propagate_linear(sigma, gamma, add_scaled(u, k1, 0.5 * dt), 0.5 * dt);

  auto k2 = nonlinear_remainder(sigma, gamma, u_half, g);
  apply_filter(k2, keep);
  ModalState out = propagate_linear(sigma, gamma, u, 0.5 * dt);
  out = add_scaled(out, k2, dt);
  out = propagate_linear(sigma, gamma, out, 0.5 * dt);

  check_blowup(out, cfg.blowup_limit);
  return out;
}

Trajectory evolve(const EvolutionConfig& cfg, double sigma, double gamma, const ModalState& u0,
                  const Grid& g) {
  check_sigma(sigma);
  if (!(cfg.dt > 0.0 && cfg.t_final > 0.0))
    throw std::invalid_argument("evolve: dt and t_final must be positive");
  const double omega_max = max_linear_frequency(sigma, gamma, u0.m, u0.modes());
  if (cfg.dt * omega_max > cfg.stability_bound)
    throw std::invalid_argument("evolve: dt * max linear frequency exceeds the stability bound");

  const int n_steps = static_cast<int>(std::ceil(cfg.t_final / cfg.dt - 1e-12));
  EvolutionConfig local = cfg;
  local.dt = cfg.t_final / n_steps;  // land on t_final exactly

  Trajectory tr;
  tr.t.push_back(0.0);
  tr.states.push_back(u0);
  ModalState u = u0;
  for (int i = 1; i <= n_steps; ++i) {
    u = step(local, sigma, gamma, u, g);
    if (i % cfg.stride == 0 || i == n_steps) {
      tr.t.push_back(i * local.dt);
      tr.states.push_back(u);
    }
  }
  return tr;
}

TravelReport verify_traveling(const SheetState& profile, const ParamPoint& params,
                              const EvolutionConfig& cfg, const Grid& g) {
  params.validate();
  const ModalState u0 = to_modal(profile);
  const Trajectory tr = evolve(cfg, params.sigma, params.gamma, u0, g);

  // The steady profiles solve  c f_x + (nonlinear terms) = 0, so under the
  // speed-zero dynamics they translate as x -> x + c t, i.e. the modal
  // amplitudes rotate by e^{+ i n m c t}.
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    ModalState expected = u0;
    for (int n = 1; n <= u0.modes(); ++n) {
      const complex<double> phase =
          std::exp(kI * (static_cast<double>(n) * u0.m * params.c * tr.t[i]));
      expected.eta(n - 1) *= phase;
      expected.psi(n - 1) *= phase;
    }
    ModalState diff = tr.states[i];
    diff.eta -= expected.eta;
    diff.psi -= expected.psi;
    worst = std::max(worst, modal_x_norm(diff, 2.0));
  }
  return TravelReport{worst};
}

}  // namespace vsheet::evolution
