#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "vsheet/contour.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/util.hpp"

using namespace vsheet;
using namespace vsheet::contour;

namespace {

constexpr double kPi = std::numbers::pi;

SheetState single_mode_eta(int m, int n_modes, int n, double amp) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n_modes);
  a(n - 1) = amp;
  return SheetState(spectral::EvenSeries(m, a), spectral::OddSeries::zero(m, n_modes));
}

Eigen::VectorXd sample(const std::function<double(double)>& f, const Eigen::VectorXd& xs) {
  Eigen::VectorXd v(xs.size());
  for (int i = 0; i < xs.size(); ++i) v(i) = f(xs(i));
  return v;
}

// Quadrature of the closed-form first derivative of d0 in eta at the circle:
//   (1/2) p.v. int (etahat(x) - etahat(y)) / sin^2((x-y)/2) f(y) dy
//   - 2 etahat(x) int f dy,
// by the same offset-node rule (the integrand has a simple pole).
Eigen::VectorXd d0_eta_derivative_reference(const spectral::EvenSeries& etahat,
                                            const std::function<double(double)>& f, const Grid& g) {
  const Eigen::VectorXd eh_p = spectral::evaluate(etahat, g);
  const Eigen::VectorXd eh_o = spectral::evaluate_offset(etahat, g);
  const Eigen::VectorXd f_o = sample(f, g.offset_nodes());
  const int q = g.q();
  Eigen::VectorXd out(q);
  for (int j = 0; j < q; ++j) {
    double acc = 0.0, mean = 0.0;
    for (int k = 0; k < q; ++k) {
      const double half = 0.5 * (g.nodes()(j) - g.offset_nodes()(k));
      const double s = std::sin(half);
      acc += 0.5 * (eh_p(j) - eh_o(k)) / (s * s) * f_o(k);
      mean += f_o(k);
    }
    out(j) = acc / q - 2.0 * eh_p(j) * mean / q;
  }
  return out;
}

}  // namespace

TEST_CASE("radius") {
  const Grid g(64);
  const SheetState zero = SheetState::zero(2, 4);
  CHECK((radius(zero, g) - Eigen::VectorXd::Ones(64)).cwiseAbs().maxCoeff() < 1e-15);

  const SheetState s = single_mode_eta(2, 4, 1, 0.005);
  CHECK(radius(s, g)(0) == doctest::Approx(std::sqrt(1.01)).epsilon(1e-14));
  CHECK(radius(s, g)(0) == doctest::Approx(1.0049875621120890).epsilon(1e-12));

  // synthetic inadmissible data through the value-level entry
  CHECK_THROWS_AS(radius_values(Eigen::VectorXd::Constant(8, -0.6)), DomainError);
  // and through a large single mode: 1 + 2*0.8 cos(2x) < 0 near x = pi/2
  CHECK_THROWS_AS(radius(single_mode_eta(2, 4, 1, 0.8), g), DomainError);
}

TEST_CASE("d0/h0 at the circle reproduce the mean and the Hilbert transform") {
  const Grid g(128);
  const SheetState zero = SheetState::zero(1, 4);
  const InterfaceSamples s = sample_interface(zero, g);

  Eigen::VectorXd d0v, h0v;
  d0_h0_apply(s, Eigen::VectorXd::Ones(g.q()), d0v, h0v);
  CHECK((d0v - Eigen::VectorXd::Ones(g.q())).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(h0v.cwiseAbs().maxCoeff() < 1e-13);

  for (int k = 1; k <= 6; ++k) {
    d0_h0_apply(s, sample([k](double y) { return std::cos(k * y); }, g.offset_nodes()), d0v, h0v);
    CHECK(d0v.cwiseAbs().maxCoeff() < 1e-13);
    const Eigen::VectorXd expected = sample([k](double x) { return std::sin(k * x); }, g.nodes());
    CHECK((h0v - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("quadrature consistency under grid doubling") {
  Eigen::VectorXd a(3), b(3);
  a << 0.01, -0.004, 0.002;
  b << 0.0, 0.0, 0.0;
  const SheetState s(spectral::EvenSeries(2, a), spectral::OddSeries(2, b));
  const Grid g(128);
  const QuadratureDefect d =
      quadrature_defect(s, [](double y) { return 1.0 + 0.3 * std::cos(2.0 * y); }, g);
  CHECK(d.d0_defect < 1e-10);
  CHECK(d.h0_defect < 1e-10);
}

TEST_CASE("linearization oracles: d0/h0/h_full/curvature differentials") {
  const Grid g(256);
  const int m = 2, nm = 4;
  const SheetState zero = SheetState::zero(m, nm);
  Eigen::VectorXd ah = Eigen::VectorXd::Zero(nm);
  ah(0) = 1.0;
  ah(1) = -0.5;
  const spectral::EvenSeries etahat(m, ah);

  auto op_at = [&](double eps, auto&& op) {
    Eigen::VectorXd a = eps * ah;
    const SheetState st(spectral::EvenSeries(m, a), spectral::OddSeries::zero(m, nm));
    return op(st);
  };
  auto fd = [&](double eps, auto&& op) {
    return ((op_at(eps, op) - op_at(-eps, op)) / (2.0 * eps)).eval();
  };

  const auto f = [](double y) { return 1.0 + 0.4 * std::cos(2.0 * y) - 0.1 * std::cos(4.0 * y); };
  const Eigen::VectorXd f_o = sample(f, g.offset_nodes());
  const double f_mean = f_o.mean();

  SUBCASE("d0 derivative vs closed form, O(eps^2) decay") {
    auto op = [&](const SheetState& st) { return d0(st, f_o, g); };
    const Eigen::VectorXd ref = d0_eta_derivative_reference(etahat, f, g);
    const double e1 = (fd(1e-3, op) - ref).cwiseAbs().maxCoeff();
    const double e2 = (fd(5e-4, op) - ref).cwiseAbs().maxCoeff();
    CHECK(e1 < 1e-5);
    CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.2));
  }

  SUBCASE("d0 derivative with f = 1 equals |D| etahat - 2 etahat") {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.q());
    auto op = [&](const SheetState& st) { return d0(st, ones, g); };
    // |D| cos(kx) = k cos(kx): (2 - 2) * cos(2x) - (4 - 2) * 0.5 cos(4x)
    Eigen::VectorXd ref(g.q());
    for (int j = 0; j < g.q(); ++j)
      ref(j) = (2.0 - 2.0) * std::cos(2.0 * g.nodes()(j)) +
               (4.0 - 2.0) * (-0.5) * std::cos(4.0 * g.nodes()(j));
    const double e1 = (fd(1e-3, op) - ref).cwiseAbs().maxCoeff();
    CHECK(e1 < 1e-5);
  }

  SUBCASE("h0 derivative vanishes") {
    auto op = [&](const SheetState& st) { return h0(st, f_o, g); };
    const double e1 = fd(1e-3, op).cwiseAbs().maxCoeff();
    const double e2 = fd(5e-4, op).cwiseAbs().maxCoeff();
    CHECK(e1 < 1e-5);
    CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.2));
  }

  SUBCASE("h_full derivative equals etahat_x times the mean of f") {
    auto op = [&](const SheetState& st) { return h_full(st, f_o, g); };
    const Eigen::VectorXd ref =
        f_mean * spectral::evaluate(spectral::derivative(etahat), g);
    const double e1 = (fd(1e-3, op) - ref).cwiseAbs().maxCoeff();
    const double e2 = (fd(5e-4, op) - ref).cwiseAbs().maxCoeff();
    CHECK(e1 < 1e-5);
    CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.2));
  }

  SUBCASE("curvature derivative equals etahat + etahat_xx") {
    auto op = [&](const SheetState& st) { return curvature(st, g); };
    const Eigen::VectorXd ref =
        spectral::evaluate(etahat, g) +
        spectral::evaluate(spectral::derivative(spectral::derivative(etahat)), g);
    const double e1 = (fd(1e-3, op) - ref).cwiseAbs().maxCoeff();
    const double e2 = (fd(5e-4, op) - ref).cwiseAbs().maxCoeff();
    CHECK(e1 < 1e-4);
    CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.2));
  }
  (void)zero;
}

TEST_CASE("curvature of the circle and the leading-order coefficient") {
  const Grid g(128);
  CHECK((curvature(SheetState::zero(3, 4), g) - Eigen::VectorXd::Ones(g.q())).cwiseAbs().maxCoeff() <
        1e-14);

  // eta = eps cos(3x): K = 1 + (1 - 9) eps cos(3x) + O(eps^2)
  const double eps = 1e-4;
  const SheetState s = single_mode_eta(3, 4, 1, eps);
  const Eigen::VectorXd k = curvature(s, g);
  for (int j = 0; j < g.q(); ++j) {
    const double lead = 1.0 - 8.0 * eps * std::cos(3.0 * g.nodes()(j));
    CHECK(std::abs(k(j) - lead) < 20.0 * eps * eps);
  }
}

TEST_CASE("curvature agrees with the parametric formula via DFT differentiation") {
  // independent route: sample z = R e^{ix}, differentiate the complex
  // samples by DFT, and form -(z_x^perp . z_xx)/|z_x|^3 pointwise
  const Grid g(256);
  Eigen::VectorXd a(3);
  a << 0.02, -0.007, 0.003;
  const SheetState s(spectral::EvenSeries(2, a), spectral::OddSeries::zero(2, 3));

  const int q = g.q();
  const Eigen::VectorXd r = radius(s, g);
  Eigen::VectorXcd z(q);
  for (int j = 0; j < q; ++j)
    z(j) = r(j) * std::complex<double>(std::cos(g.nodes()(j)), std::sin(g.nodes()(j)));

  // dense DFT differentiation (test-only; q^2 cost)
  Eigen::VectorXcd zh = Eigen::VectorXcd::Zero(q);
  for (int kk = 0; kk < q; ++kk)
    for (int j = 0; j < q; ++j)
      zh(kk) += z(j) * std::exp(std::complex<double>(0, -2.0 * kPi * kk * j / q));
  zh /= q;
  auto dft_derivative = [&](int order) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(q);
    for (int kk = 0; kk < q; ++kk) {
      const int wave = kk <= q / 2 ? kk : kk - q;  // signed wavenumber
      if (wave == q / 2) continue;                 // drop the unmatched Nyquist mode
      std::complex<double> mult = std::pow(std::complex<double>(0, wave), order);
      for (int j = 0; j < q; ++j)
        out(j) += mult * zh(kk) * std::exp(std::complex<double>(0, 2.0 * kPi * kk * j / q));
    }
    return out;
  };
  const Eigen::VectorXcd zx = dft_derivative(1);
  const Eigen::VectorXcd zxx = dft_derivative(2);

  const Eigen::VectorXd kv = curvature(s, g);
  for (int j = 0; j < q; ++j) {
    const Eigen::Vector2d t(zx(j).real(), zx(j).imag());
    const Eigen::Vector2d n(-t.y(), t.x());  // z_x^perp
    const Eigen::Vector2d acc(zxx(j).real(), zxx(j).imag());
    const double kappa = -n.dot(acc) / std::pow(t.norm(), 3.0);
    CHECK(std::abs(kappa - kv(j)) < 1e-10);
  }
}

TEST_CASE("parity and foldness of the singular operators") {
  const Grid g(240);  // divisible by 3 so the fold shift maps nodes to nodes
  Eigen::VectorXd a(3), b(3);
  a << 0.01, 0.004, -0.002;
  b << 0.0, 0.0, 0.0;
  const SheetState s(spectral::EvenSeries(3, a), spectral::OddSeries(3, b));
  const auto f = [](double y) { return 0.7 + 0.2 * std::cos(3.0 * y); };
  const Eigen::VectorXd f_o = sample(f, g.offset_nodes());

  const InterfaceSamples smp = sample_interface(s, g);
  const Eigen::VectorXd eta_x = spectral::evaluate(spectral::derivative(s.eta), g);
  Eigen::VectorXd d0v, h0v;
  d0_h0_apply(smp, f_o, d0v, h0v);
  const Eigen::VectorXd hf = eta_x.cwiseProduct(d0v) + h0v;

  const int q = g.q();
  for (int j = 1; j < q; ++j) {
    CHECK(d0v(q - j) == doctest::Approx(d0v(j)).epsilon(1e-11));   // even
    CHECK(h0v(q - j) == doctest::Approx(-h0v(j)).epsilon(1e-11));  // odd
    CHECK(hf(q - j) == doctest::Approx(-hf(j)).epsilon(1e-11));
  }
  const int shift = q / 3;
  for (int j = 0; j < q; ++j) {
    CHECK(hf((j + shift) % q) == doctest::Approx(hf(j)).epsilon(1e-11));
    CHECK(d0v((j + shift) % q) == doctest::Approx(d0v(j)).epsilon(1e-11));
  }
}

TEST_CASE("biot-savart velocity of the circular sheet") {
  const Grid g(256);
  const SheetState circle = SheetState::zero(2, 4);
  const double gamma = 2.0;

  const Eigen::Vector2d inside = biot_savart_velocity(circle, gamma, {0.5, 0.0}, g);
  CHECK(inside.norm() < 1e-10);

  const Eigen::Vector2d outside = biot_savart_velocity(circle, gamma, {2.0, 0.0}, g);
  CHECK(outside.x() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(outside.y() == doctest::Approx(1.0).epsilon(1e-10));

  const Eigen::Vector2d nowhere = biot_savart_velocity(circle, 0.0, {1.7, 0.4}, g);
  CHECK(nowhere.norm() < 1e-14);

  CHECK_THROWS_AS(biot_savart_velocity(circle, gamma, {1.01, 0.0}, g), TooCloseError);
}

TEST_CASE("point classification") {
  const Grid g(128);
  const SheetState circle = SheetState::zero(2, 4);
  CHECK(classify_point(circle, g, {0.3, 0.2}).owner == PointOwner::inside);
  CHECK(classify_point(circle, g, {1.6, -0.4}).owner == PointOwner::outside);
  CHECK(classify_point(circle, g, {1.01, 0.0}).owner == PointOwner::on_interface);
}

TEST_CASE("trace velocities: trivial state") {
  const Grid g(256);
  const SheetState circle = SheetState::zero(2, 4);
  const TraceVelocities tv = trace_velocities(circle, 1.0, g);
  // interior fluid at rest
  CHECK(tv.vm_tangential.cwiseAbs().maxCoeff() < 1e-12);
  // jump identity
  for (int j = 0; j < g.q(); ++j)
    CHECK(tv.vm_tangential(j) - tv.vp_tangential(j) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace velocities: perturbed state") {
  const Grid g(256);
  Eigen::VectorXd a(3), b(3);
  a << 5e-3, -2e-3, 0.0;
  b << 4e-3, 0.0, 1e-3;
  const SheetState s(spectral::EvenSeries(2, a), spectral::OddSeries(2, b));
  const double gamma = 1.3;
  const TraceVelocities tv = trace_velocities(s, gamma, g);

  // jump equals omega at every node
  for (int j = 0; j < g.q(); ++j)
    CHECK(std::abs(tv.vm_tangential(j) - tv.vp_tangential(j) - tv.omega_primary(j)) < 1e-8);

  // normal components agree (the one-sided corrections are tangential)
  const Eigen::VectorXd eta_x = spectral::evaluate(spectral::derivative(s.eta), g);
  const Eigen::VectorXd r = radius(s, g);
  for (int j = 0; j < g.q(); ++j) {
    const double t = g.nodes()(j);
    const double ax = eta_x(j) / r(j);
    const Eigen::Vector2d zx(ax * std::cos(t) - r(j) * std::sin(t),
                             ax * std::sin(t) + r(j) * std::cos(t));
    const Eigen::Vector2d nrm(-zx.y(), zx.x());
    CHECK(std::abs((tv.v_minus.col(j) - tv.v_plus.col(j)).dot(nrm)) < 1e-12);
  }

  // The Birkhoff-Rott trace decomposes against the kernel operators: with
  // the clockwise perp, BR . z_x^perp = (1/2) (eta_x D0 + H0)[omega] and
  // BR . z_x = -(1/2) (R^2 D0 - (eta_x/R^2) H0)[omega]. The traces were
  // assembled from coordinates, the right-hand sides from the closed-form
  // kernels, so this cross-checks the geometric identities.
  const Eigen::VectorXd omega_o =
      Eigen::VectorXd::Constant(g.q(), gamma) +
      spectral::evaluate_offset(spectral::derivative(s.psi), g);
  const InterfaceSamples smp = sample_interface(s, g);
  Eigen::VectorXd d0v, h0v;
  d0_h0_apply(smp, omega_o, d0v, h0v);
  for (int j = 0; j < g.q(); ++j) {
    const double t = g.nodes()(j);
    const double ax = eta_x(j) / r(j);
    const Eigen::Vector2d zx(ax * std::cos(t) - r(j) * std::sin(t),
                             ax * std::sin(t) + r(j) * std::cos(t));
    const Eigen::Vector2d zx_perp_cw(zx.y(), -zx.x());
    const Eigen::Vector2d br = 0.5 * (tv.v_minus.col(j) + tv.v_plus.col(j));
    const double r2 = r(j) * r(j);
    CHECK(std::abs(br.dot(zx_perp_cw) - 0.5 * (eta_x(j) * d0v(j) + h0v(j))) < 1e-11);
    CHECK(std::abs(br.dot(zx) + 0.5 * (r2 * d0v(j) - eta_x(j) / r2 * h0v(j))) < 1e-11);
  }
}

TEST_CASE("denominator guard") {
  const Grid g(64);
  // eta with min(1 + 2 eta) barely positive but a self-approaching curve is
  // not representable here; instead force the guard with a hostile floor
  const SheetState s = single_mode_eta(2, 4, 1, 0.01);
  QuadratureConfig cfg;
  cfg.denom_floor = 10.0;  // everything is below such a floor
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(g.q());
  CHECK_THROWS_AS(d0(s, f, g, cfg), DomainError );
}
