#include "vsheet/linear_theory.hpp"

#include <cmath>
#include <stdexcept>

#include "vsheet/errors.hpp"

namespace vsheet::linear {

namespace {

constexpr double kIntegerTol = 1e-10;
constexpr double kIntegerWarnBand = 1e-6;
constexpr double kSqrt3 = 1.7320508075688772;

double dist_to_positive_integer(double x) {
  if (x < 0.5) return 1.0 - x;  // nearest element of {1, 2, ...} from below
  return std::abs(x - std::round(x));
}

double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

// radicand of the speed threshold: 2 sigma m - gamma^2 + 2 (gamma^2 - sigma)/m
double speed_radicand(int m, double sigma, double gamma) {
  return 2.0 * sigma * m - gamma * gamma + 2.0 * (gamma * gamma - sigma) / m;
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::speed: return "speed";
    case Kind::tension: return "tension";
    case Kind::vorticity: return "vorticity";
  }
  return "?";
}

char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

Eigen::Matrix2d block(int n, const ParamPoint& p) {
  if (n < 1) throw std::invalid_argument("block: n must be >= 1");
  const double kappa = (p.c + 0.5 * p.gamma) * n;
  Eigen::Matrix2d m;
  m << -kappa, 0.5 * n,
      p.sigma - p.gamma * p.gamma + 0.5 * p.gamma * p.gamma * n - p.sigma * n * n, kappa;
  return m;
}

double det_block(int n, const ParamPoint& p) {
  if (n < 1) throw std::invalid_argument("det_block: n must be >= 1");
  const double kappa = (p.c + 0.5 * p.gamma) * n;
  return -kappa * kappa +
         0.25 * n *
             (2.0 * p.sigma * n * n - p.gamma * p.gamma * n + 2.0 * (p.gamma * p.gamma - p.sigma));
}

std::pair<OddSeries, EvenSeries> apply_linear(const ParamPoint& p,
                                              const contour::SheetState& state) {
  const int m = state.foldness(), n_modes = state.modes();
  Eigen::VectorXd r1(n_modes), r2(n_modes);
  for (int n = 1; n <= n_modes; ++n) {
    const Eigen::Matrix2d mn = block(n * m, p);
    const Eigen::Vector2d out = mn * Eigen::Vector2d(state.eta.coeff(n), state.psi.coeff(n));
    r1(n - 1) = out(0);
    r2(n - 1) = out(1);
  }
  return {OddSeries(m, std::move(r1)), EvenSeries(m, std::move(r2))};
}

Eigen::MatrixXd assembled_jacobian(const ParamPoint& p, int m, int n_max) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_max, 2 * n_max);
  for (int n = 1; n <= n_max; ++n) j.block<2, 2>(2 * (n - 1), 2 * (n - 1)) = block(n * m, p);
  return j;
}

Admissibility admissibility(int m, double sigma, double gamma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("admissibility: sigma must be positive");
  if (m < 1) throw std::invalid_argument("admissibility: m must be >= 1");
  Admissibility a;
  const double g2 = gamma * gamma;
  const double lo = 4.0 * sigma * (2.0 - kSqrt3);
  const double hi = 4.0 * sigma * (2.0 + kSqrt3);
  if (g2 > lo && g2 < hi) {
    a.in_s1 = true;
    return a;
  }
  const double disc = (g2 - 8.0 * sigma) * (g2 - 8.0 * sigma) - 48.0 * sigma * sigma;
  if (disc >= 0.0 && (g2 < lo || g2 > hi)) {
    const double root = std::sqrt(disc);
    a.m_minus = (g2 - root) / (4.0 * sigma);
    a.m_plus = (g2 + root) / (4.0 * sigma);
    a.in_s2 = m < *a.m_minus || m > *a.m_plus;
  }
  return a;
}

std::optional<double> threshold_c(int m, double sigma, double gamma, Sign sign) {
  if (m < 1) throw std::invalid_argument("threshold_c: m must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("threshold_c: sigma must be positive");
  const double rad = speed_radicand(m, sigma, gamma);
  if (rad < 0.0) return std::nullopt;
  return -0.5 * gamma + sign_value(sign) * 0.5 * std::sqrt(rad);
}

std::optional<double> threshold_sigma(int m, double c, double gamma) {
  if (m < 2) throw std::invalid_argument("threshold_sigma: m must be >= 2");
  const double alpha = (2.0 * c + gamma) * (2.0 * c + gamma) + gamma * gamma;
  if (alpha == 0.0) throw std::invalid_argument("threshold_sigma: (c, gamma) must not be (0, 0)");
  const double num = alpha * m - 2.0 * gamma * gamma;
  if (num <= 0.0) return std::nullopt;
  return num / (2.0 * (static_cast<double>(m) * m - 1.0));
}

std::optional<double> threshold_sigma_alt(int m, double c, double gamma) {
  if (m < 2) throw std::invalid_argument("threshold_sigma_alt: m must be >= 2");
  const double tc = 2.0 * c + gamma;
  if (tc == 0.0 && gamma == 0.0)
    throw std::invalid_argument("threshold_sigma_alt: (c, gamma) must not be (0, 0)");
  const double num = m * tc * tc + (m - 2.0) * gamma * gamma;
  if (num <= 0.0) return std::nullopt;
  return num / (2.0 * (static_cast<double>(m) * m - 1.0));
}

double threshold_gamma(int m, double sigma, Sign sign) {
  if (m < 2) throw std::invalid_argument("threshold_gamma: m must be >= 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("threshold_gamma: sigma must be positive");
  return sign_value(sign) * std::sqrt(sigma * (m + 1.0));
}

CollisionReport collision_check(Kind kind, int m, const ParamPoint& p) {
  CollisionReport r{true, 0.0, false};
  switch (kind) {
    case Kind::speed:
      r.k2 = (p.gamma * p.gamma - p.sigma) / (p.sigma * m * m);
      break;
    case Kind::tension: {
      const double tc = 2.0 * p.c + p.gamma;
      const double g2 = p.gamma * p.gamma;
      r.k2 = ((2.0 * m - 1.0) * g2 - tc * tc) / (m * tc * tc + (m - 2.0) * g2);
      break;
    }
    case Kind::vorticity:
      // thresholds strictly increase with the mode; only the trivial
      // self-collision k = 1 exists
      r.k2 = 1.0;
      return r;
  }
  const double dist = dist_to_positive_integer(r.k2);
  r.ok = !(r.k2 >= 0.5 && dist <= kIntegerTol);
  r.near_integer_warning = r.ok && r.k2 >= 0.5 && dist <= kIntegerWarnBand;
  return r;
}

namespace {

void verify_annihilation(int m, const ParamPoint& p, const KernelData& kd) {
  const Eigen::Matrix2d mm = block(m, p);
  const double scale = std::max(mm.norm(), 1.0);
  if ((mm * kd.x0).norm() > 1e-9 * scale * kd.x0.norm())
    throw InadmissibleError("kernel_vectors: x0 is not annihilated by the block");
  if ((mm.transpose() * kd.y0).norm() > 1e-9 * scale * kd.y0.norm())
    throw InadmissibleError("kernel_vectors: y0 is not annihilated by the transposed block");
}

}  // namespace

KernelData kernel_vectors(Kind kind, int m, Sign sign, const ParamPoint& p) {
  KernelData kd;
  switch (kind) {
    case Kind::speed: {
      const double rad = speed_radicand(m, p.sigma, p.gamma);
      if (rad <= 0.0) throw InadmissibleError("kernel_vectors: speed radicand nonpositive");
      const double root = std::sqrt(rad);
      const double s = sign_value(sign);
      kd.x0 = Eigen::Vector2d(1.0, s * root);
      kd.y0 = Eigen::Vector2d(-s * root, 1.0);
      kd.pairing = s * 2.0 * m * root;
      break;
    }
    case Kind::tension: {
      if (m < 2) throw InadmissibleError("kernel_vectors: tension family needs m >= 2");
      const double tc = 2.0 * p.c + p.gamma;
      kd.x0 = Eigen::Vector2d(1.0, tc);
      kd.y0 = Eigen::Vector2d(-tc, 1.0);
      kd.pairing = 1.0 - static_cast<double>(m) * m;
      break;
    }
    case Kind::vorticity: {
      if (m < 2) throw InadmissibleError("kernel_vectors: vorticity family needs m >= 2");
      const double gm = threshold_gamma(m, p.sigma, sign);
      kd.x0 = Eigen::Vector2d(1.0, gm);
      kd.y0 = Eigen::Vector2d(-gm, 1.0);
      kd.pairing = 2.0 * gm * (m - 1.0);
      break;
    }
  }
  if (!collision_check(kind, m, p).ok)
    throw InadmissibleError("kernel_vectors: spectral collision at this parameter point");
  verify_annihilation(m, p, kd);
  return kd;
}

BifurcationPoint locate(Kind kind, int m, Sign sign, const ParamPoint& fixed) {
  BifurcationPoint bp;
  bp.kind = kind;
  bp.sign = sign;
  bp.m = m;
  bp.params = fixed;

  switch (kind) {
    case Kind::speed: {
      if (!(fixed.sigma > 0.0)) {
        bp.reason = "sigma must be positive";
        return bp;
      }
      const Admissibility adm = admissibility(m, fixed.sigma, fixed.gamma);
      if (!adm.admissible()) {
        bp.reason = "(m, sigma, gamma) outside the admissible set";
        if (adm.m_minus)
          bp.reason += " (m inside [" + std::to_string(*adm.m_minus) + ", " +
                       std::to_string(*adm.m_plus) + "])";
        return bp;
      }
      const auto c = threshold_c(m, fixed.sigma, fixed.gamma, sign);
      if (!c) {
        bp.reason = "speed radicand negative";
        return bp;
      }
      bp.value = *c;
      bp.params.c = *c;
      break;
    }
    case Kind::tension: {
      if (m < 2) {
        bp.reason = "tension family needs m >= 2";
        return bp;
      }
      if (fixed.c == 0.0 && fixed.gamma == 0.0) {
        bp.reason = "(c, gamma) must not be (0, 0)";
        return bp;
      }
      const auto s = threshold_sigma(m, fixed.c, fixed.gamma);
      if (!s) {
        bp.reason = "sigma threshold nonpositive: m <= 2 gamma^2 / ((2c+gamma)^2 + gamma^2)";
        return bp;
      }
      bp.value = *s;
      bp.params.sigma = *s;
      break;
    }
    case Kind::vorticity: {
      if (m < 2) {
        bp.reason = "vorticity family needs m >= 2";
        return bp;
      }
      if (!(fixed.sigma > 0.0)) {
        bp.reason = "sigma must be positive";
        return bp;
      }
      bp.value = threshold_gamma(m, fixed.sigma, sign);
      bp.params.gamma = bp.value;
      bp.params.c = 0.0;
      break;
    }
  }

  const CollisionReport cr = collision_check(kind, m, bp.params);
  bp.collision_k2 = cr.k2;
  if (!cr.ok) {
    bp.reason = "spectral collision: k2 = " + std::to_string(cr.k2) + " is a positive integer";
    return bp;
  }

  const KernelData kd = kernel_vectors(kind, m, sign, bp.params);
  bp.x0 = kd.x0;
  bp.y0 = kd.y0;
  bp.pairing = kd.pairing;
  bp.admissible = true;
  return bp;
}

Eigen::VectorXd param_derivative(Kind kind, const ParamPoint& p, const contour::SheetState& state,
                                 const contour::Grid& g) {
  const int m = state.foldness(), n = state.modes();
  Eigen::VectorXd col(2 * n);
  switch (kind) {
    case Kind::speed: {
      // d/dc of the steady map is (eta_x, psi_x)
      col.head(n) = spectral::derivative(state.eta).coeffs();
      col.tail(n) = spectral::derivative(state.psi).coeffs();
      break;
    }
    case Kind::tension: {
      // d/dsigma is (0, K(eta)), mean-projected
      Eigen::VectorXd kv = contour::curvature(state, g);
      kv.array() -= kv.mean();
      col.head(n).setZero();
      col.tail(n) = spectral::analyze_even(kv, g, m, n).series.coeffs();
      break;
    }
    case Kind::vorticity: {
      // d/dgamma is ( (1/2) H(eta)[1],
      //               (1/2) D0(eta)[omega] + (omega/2) D0(eta)[1] ), projected
      const contour::InterfaceSamples s = contour::sample_interface(state, g);
      const Eigen::VectorXd eta_x = spectral::evaluate(spectral::derivative(state.eta), g);
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.q());
      const Eigen::VectorXd omega_o =
          Eigen::VectorXd::Constant(g.q(), p.gamma) +
          spectral::evaluate_offset(spectral::derivative(state.psi), g);
      const Eigen::VectorXd omega_p = contour::omega_values(state, p.gamma, g);
      Eigen::VectorXd d0_one, h0_one, d0_omega, h0_omega;
      contour::d0_h0_apply(s, ones, d0_one, h0_one);
      contour::d0_h0_apply(s, omega_o, d0_omega, h0_omega);
      const Eigen::VectorXd r1v = 0.5 * (eta_x.cwiseProduct(d0_one) + h0_one);
      Eigen::VectorXd r2v = 0.5 * d0_omega + 0.5 * omega_p.cwiseProduct(d0_one);
      r2v.array() -= r2v.mean();
      col.head(n) = spectral::analyze_odd(r1v, g, m, n).series.coeffs();
      col.tail(n) = spectral::analyze_even(r2v, g, m, n).series.coeffs();
      break;
    }
  }
  return col;
}

}  // namespace vsheet::linear
