#include "vsheet/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "vsheet/contour.hpp"
#include "vsheet/evolution.hpp"
#include "vsheet/linear_theory.hpp"
#include "vsheet/steady.hpp"
#include "vsheet/util.hpp"

namespace vsheet::verify {

namespace {

constexpr double kPi = std::numbers::pi;

using contour::Grid;
using contour::SheetState;
using steady::ParamPoint;

ParamPoint random_params(Rng& rng) {
  ParamPoint p;
  p.c = rng.uniform(-2.0, 2.0);
  p.sigma = 3.0 * (1.0 - rng.uniform());  // (0, 3]
  p.gamma = rng.uniform(-2.0, 2.0);
  return p;
}

std::string fmt_detail(double measured, double threshold) {
  std::ostringstream os;
  os << "measured " << fmt17(measured) << " vs tolerance " << fmt17(threshold);
  return os.str();
}

}  // namespace

std::vector<Check> trivial_suite(std::uint64_t seed, int n_points) {
  Rng rng(seed);
  const Grid g(256);
  double worst = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const ParamPoint p = random_params(rng);
    const SheetState zero = SheetState::zero(2, 8);
    worst = std::max(worst, steady::residual(p, zero, g).y_norm);
  }
  Check c = make_check("trivial-solution sweep (" + std::to_string(n_points) + " points)", worst,
                       1e-12);
  c.detail = fmt_detail(worst, 1e-12);
  return {c};
}

std::vector<Check> operators_suite(int quad, int k_max) {
  const Grid g(quad);
  const SheetState circle = SheetState::zero(1, 4);
  const contour::InterfaceSamples s = contour::sample_interface(circle, g);

  double worst_d0 = 0.0, worst_h0 = 0.0;
  auto run = [&](const std::function<double(double)>& f, const std::function<double(double)>& hf,
                 double mean) {
    Eigen::VectorXd fo(g.q());
    for (int k = 0; k < g.q(); ++k) fo(k) = f(g.offset_nodes()(k));
    Eigen::VectorXd d0v, h0v;
    contour::d0_h0_apply(s, fo, d0v, h0v);
    for (int j = 0; j < g.q(); ++j) {
      worst_d0 = std::max(worst_d0, std::abs(d0v(j) - mean));
      worst_h0 = std::max(worst_h0, std::abs(h0v(j) - hf(g.nodes()(j))));
    }
  };

  run([](double) { return 1.0; }, [](double) { return 0.0; }, 1.0);
  for (int k = 1; k <= k_max; ++k) {
    run([k](double y) { return std::cos(k * y); }, [k](double x) { return std::sin(k * x); }, 0.0);
    run([k](double y) { return std::sin(k * y); }, [k](double x) { return -std::cos(k * x); }, 0.0);
  }

  Check cd = make_check("d0 at the circle vs mean (k <= " + std::to_string(k_max) + ")", worst_d0,
                        1e-11);
  cd.detail = fmt_detail(worst_d0, 1e-11);
  Check ch = make_check("h0 at the circle vs Hilbert transform", worst_h0, 1e-11);
  ch.detail = fmt_detail(worst_h0, 1e-11);
  return {cd, ch};
}

std::vector<Check> jacobian_suite(std::uint64_t seed, int n_params) {
  Rng rng(seed);
  const Grid g(256);
  double worst_rel = 0.0, worst_leak = 0.0;
  for (int i = 0; i < n_params; ++i) {
    const ParamPoint p = random_params(rng);
    for (int m : {2, 3}) {
      const int n_modes = 4;
      const SheetState zero = SheetState::zero(m, n_modes);
      const auto dirs = steady::unit_directions(m, n_modes);
      const steady::FdJacobian fd = steady::fd_jacobian(p, zero, dirs, 1e-5, g);

      double block_scale = 0.0;
      for (int n = 1; n <= n_modes; ++n)
        block_scale = std::max(block_scale, linear::block(n * m, p).norm());

      for (int n = 1; n <= n_modes; ++n) {
        const Eigen::Matrix2d mn = linear::block(n * m, p);
        // packed rows: r1_n at n-1, r2_n at n_modes + n - 1;
        // packed cols: a_n at n-1, b_n at n_modes + n - 1
        Eigen::Matrix2d got;
        got << fd.matrix(n - 1, n - 1), fd.matrix(n - 1, n_modes + n - 1),
            fd.matrix(n_modes + n - 1, n - 1), fd.matrix(n_modes + n - 1, n_modes + n - 1);
        worst_rel = std::max(worst_rel, (got - mn).norm() / mn.norm());
      }
      // cross-mode leakage: entries outside the per-mode 2x2 blocks
      for (int row = 0; row < 2 * n_modes; ++row) {
        const int row_mode = row % n_modes;
        for (int col = 0; col < 2 * n_modes; ++col) {
          if (col % n_modes == row_mode) continue;
          worst_leak = std::max(worst_leak, std::abs(fd.matrix(row, col)) / block_scale);
        }
      }
    }
  }
  Check ca = make_check("FD Jacobian vs multiplier blocks (n=1..4, m in {2,3})", worst_rel, 1e-6);
  ca.detail = fmt_detail(worst_rel, 1e-6);
  Check cl = make_check("cross-mode leakage of the FD Jacobian", worst_leak, 1e-8);
  cl.detail = fmt_detail(worst_leak, 1e-8);
  return {ca, cl};
}

std::vector<Check> velocity_suite(std::uint64_t seed) {
  Rng rng(seed);
  const Grid g(256);
  const double gamma = 2.0;
  const SheetState circle = SheetState::zero(2, 8);

  double worst_in = 0.0, worst_out = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const double r_in = rng.uniform(0.05, 0.8);
    const Eigen::Vector2d pin(r_in * std::cos(theta), r_in * std::sin(theta));
    worst_in = std::max(worst_in,
                        contour::biot_savart_velocity(circle, gamma, pin, g).norm());

    const double r_out = rng.uniform(1.2, 3.0);
    const Eigen::Vector2d pout(r_out * std::cos(theta), r_out * std::sin(theta));
    const Eigen::Vector2d expected =
        gamma * Eigen::Vector2d(-pout.y(), pout.x()) / pout.squaredNorm();
    worst_out = std::max(
        worst_out, (contour::biot_savart_velocity(circle, gamma, pout, g) - expected).norm());
  }

  // tangential jump on a perturbed state
  Eigen::VectorXd a = Eigen::VectorXd::Zero(4), b = Eigen::VectorXd::Zero(4);
  a(0) = 4e-3;
  a(1) = -1.5e-3;
  b(0) = 3e-3;
  b(2) = 1e-3;
  const SheetState pert(spectral::EvenSeries(2, a), spectral::OddSeries(2, b));
  const contour::TraceVelocities tv = contour::trace_velocities(pert, 1.0, g);
  double worst_jump = 0.0;
  for (int j = 0; j < g.q(); ++j)
    worst_jump = std::max(worst_jump,
                          std::abs(tv.vm_tangential(j) - tv.vp_tangential(j) - tv.omega_primary(j)));

  Check ci = make_check("interior velocity of the circular sheet", worst_in, 1e-10);
  ci.detail = fmt_detail(worst_in, 1e-10);
  Check co = make_check("exterior velocity vs gamma x^perp/|x|^2", worst_out, 1e-10);
  co.detail = fmt_detail(worst_out, 1e-10);
  Check cj = make_check("tangential-trace jump equals omega (perturbed state)", worst_jump, 1e-8);
  cj.detail = fmt_detail(worst_jump, 1e-8);
  return {ci, co, cj};
}

std::vector<Check> dispersion_suite(int k_max) {
  // gamma = 0: every mode of the linearization oscillates exactly at
  // sqrt(det M_k); measured here from zero crossings of the cosine
  // amplitude under the full nonlinear stepper at tiny amplitude.
  const double sigma = 1.0, gamma = 0.0;
  const int n_modes = k_max;
  const Grid g(4 * n_modes >= 64 ? 4 * n_modes : 64);

  double worst = 0.0;
  std::ostringstream detail;
  for (int k = 2; k <= k_max; ++k) {
    ParamPoint p;
    p.c = 0.0;
    p.sigma = sigma;
    p.gamma = gamma;
    const double det = linear::det_block(k, p);
    const double omega_exact = std::sqrt(det);
    const double period = 2.0 * kPi / omega_exact;

    evolution::ModalState u;
    u.m = 1;
    u.eta = Eigen::VectorXcd::Zero(n_modes);
    u.psi = Eigen::VectorXcd::Zero(n_modes);
    u.eta(k - 1) = 1e-8;

    evolution::EvolutionConfig cfg;
    cfg.dt = period / 1024.0;
    cfg.t_final = 3.25 * period;
    cfg.stride = 1;
    const evolution::Trajectory tr = evolution::evolve(cfg, sigma, gamma, u, g);

    std::vector<double> crossings;
    for (std::size_t i = 1; i < tr.t.size(); ++i) {
      const double v0 = tr.states[i - 1].eta(k - 1).real();
      const double v1 = tr.states[i].eta(k - 1).real();
      if ((v0 > 0.0) != (v1 > 0.0)) {
        const double frac = v0 / (v0 - v1);
        crossings.push_back(tr.t[i - 1] + frac * (tr.t[i] - tr.t[i - 1]));
      }
    }
    if (crossings.size() < 2) {
      worst = std::max(worst, 1.0);
      continue;
    }
    const double spacing = (crossings.back() - crossings.front()) / (crossings.size() - 1);
    const double omega_measured = kPi / spacing;
    worst = std::max(worst, std::abs(omega_measured - omega_exact) / omega_exact);
    detail << "k=" << k << ": " << fmt17(omega_measured) << " vs " << fmt17(omega_exact) << "; ";
  }
  Check c = make_check("mode frequencies vs sqrt(det) (k = 2.." + std::to_string(k_max) + ")",
                       worst, 5e-3);
  c.detail = detail.str();
  return {c};
}

std::vector<Check> all_suites(std::uint64_t seed) {
  std::vector<Check> out;
  for (auto&& suite : {trivial_suite(seed, 100), operators_suite(), jacobian_suite(seed),
                       velocity_suite(seed), dispersion_suite()}) {
    out.insert(out.end(), suite.begin(), suite.end());
  }
  return out;
}

}  // namespace vsheet::verify
