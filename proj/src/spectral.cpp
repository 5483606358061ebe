#include "vsheet/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace vsheet::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

void check_foldness(int m) {
  if (m < 1) throw std::invalid_argument("foldness must be a positive integer");
}

// Evaluate sum_n Re(c_n * w^n) (cos path) or Im (sin path) at one node via a
// complex power recurrence; N is small so the recurrence rounding stays at
// a few ulps.
template <bool kCosine>
double trig_sum(const Eigen::VectorXd& c, double mx) {
  const std::complex<double> w(std::cos(mx), std::sin(mx));
  std::complex<double> z(1.0, 0.0);
  double acc = 0.0;
  for (int n = 0; n < c.size(); ++n) {
    z *= w;
    acc += c(n) * (kCosine ? z.real() : z.imag());
  }
  return acc;
}

template <bool kCosine>
Eigen::VectorXd trig_sum_nodes(const Eigen::VectorXd& c, int m, const Eigen::VectorXd& xs) {
  Eigen::VectorXd out(xs.size());
  for (int j = 0; j < xs.size(); ++j) out(j) = trig_sum<kCosine>(c, m * xs(j));
  return out;
}

struct Projection {
  Eigen::VectorXd cos_coeffs, sin_coeffs;
  double mean;
  double total_energy;
};

// Simultaneous projection of samples onto cos(n m x) and sin(n m x),
// n = 1..N, via the discrete inner products; exact for band-limited input
// because n*m < Q/2 is enforced by the caller.
Projection project(const Eigen::VectorXd& v, const Grid& g, int m, int n_modes) {
  const int q = g.q();
  Projection p;
  p.cos_coeffs = Eigen::VectorXd::Zero(n_modes);
  p.sin_coeffs = Eigen::VectorXd::Zero(n_modes);
  double mean = 0.0, energy = 0.0;
  for (int j = 0; j < q; ++j) {
    const double vj = v(j);
    mean += vj;
    energy += vj * vj;
    const double mx = m * g.nodes()(j);
    const std::complex<double> w(std::cos(mx), std::sin(mx));
    std::complex<double> z(1.0, 0.0);
    for (int n = 0; n < n_modes; ++n) {
      z *= w;
      p.cos_coeffs(n) += vj * z.real();
      p.sin_coeffs(n) += vj * z.imag();
    }
  }
  p.cos_coeffs *= 2.0 / q;
  p.sin_coeffs *= 2.0 / q;
  p.mean = mean / q;
  p.total_energy = energy / q;
  return p;
}

AliasReport make_report(const Projection& p, bool even_wanted) {
  AliasReport r;
  r.total_energy = p.total_energy;
  const double cos_e = 0.5 * p.cos_coeffs.squaredNorm();
  const double sin_e = 0.5 * p.sin_coeffs.squaredNorm();
  r.retained_energy = even_wanted ? cos_e : sin_e;
  r.wrong_parity_energy = even_wanted ? sin_e : cos_e;
  r.mean_energy = p.mean * p.mean;
  r.other_energy = r.total_energy - r.retained_energy - r.wrong_parity_energy - r.mean_energy;
  if (r.other_energy < 0.0) r.other_energy = 0.0;
  return r;
}

void guard_alias(const AliasReport& r, const AnalyzeOptions& opts) {
  if (r.discarded_energy() > opts.alias_tol * r.total_energy + opts.alias_floor) {
    throw AliasError("analyze: discarded-mode energy fraction " +
                         std::to_string(r.discarded_fraction()) +
                         " exceeds tolerance " + std::to_string(opts.alias_tol),
                     r.discarded_fraction());
  }
}

void check_analyze_args(const Grid& g, int m, int n_modes) {
  check_foldness(m);
  if (n_modes < 1) throw std::invalid_argument("analyze: n_modes must be >= 1");
  if (g.q() < 2 * m * n_modes + 2)
    throw std::invalid_argument("analyze: grid too coarse, need q >= 2*m*N + 2");
}

}  // namespace

EvenSeries::EvenSeries(int foldness, Eigen::VectorXd coeffs) : m_(foldness), a_(std::move(coeffs)) {
  check_foldness(m_);
  if (a_.size() < 1) throw std::invalid_argument("series needs at least one mode");
  if (!a_.allFinite()) throw std::invalid_argument("series coefficients must be finite");
}

OddSeries::OddSeries(int foldness, Eigen::VectorXd coeffs) : m_(foldness), b_(std::move(coeffs)) {
  check_foldness(m_);
  if (b_.size() < 1) throw std::invalid_argument("series needs at least one mode");
  if (!b_.allFinite()) throw std::invalid_argument("series coefficients must be finite");
}

EvenSeries EvenSeries::zero(int foldness, int modes) {
  return EvenSeries(foldness, Eigen::VectorXd::Zero(modes));
}

OddSeries OddSeries::zero(int foldness, int modes) {
  return OddSeries(foldness, Eigen::VectorXd::Zero(modes));
}

Grid::Grid(int q) : q_(q) {
  if (q < 4 || q % 2 != 0) throw std::invalid_argument("grid size must be even and >= 4");
  nodes_.resize(q);
  offset_.resize(q);
  cos_diff_.resize(q);
  sin_diff_.resize(q);
  for (int j = 0; j < q; ++j) {
    nodes_(j) = 2.0 * kPi * j / q;
    offset_(j) = (2.0 * j + 1.0) * kPi / q;
    const double theta = (2.0 * j - 1.0) * kPi / q;
    cos_diff_(j) = std::cos(theta);
    sin_diff_(j) = std::sin(theta);
  }
}

double Grid::spacing() const { return 2.0 * kPi / q_; }

Eigen::VectorXd evaluate(const EvenSeries& f, const Eigen::VectorXd& xs) {
  return trig_sum_nodes<true>(f.coeffs(), f.foldness(), xs);
}

Eigen::VectorXd evaluate(const OddSeries& f, const Eigen::VectorXd& xs) {
  return trig_sum_nodes<false>(f.coeffs(), f.foldness(), xs);
}

Eigen::VectorXd evaluate(const EvenSeries& f, const Grid& g) { return evaluate(f, g.nodes()); }
Eigen::VectorXd evaluate(const OddSeries& f, const Grid& g) { return evaluate(f, g.nodes()); }

Eigen::VectorXd evaluate_offset(const EvenSeries& f, const Grid& g) {
  return evaluate(f, g.offset_nodes());
}

Eigen::VectorXd evaluate_offset(const OddSeries& f, const Grid& g) {
  return evaluate(f, g.offset_nodes());
}

double evaluate_at(const EvenSeries& f, double x) {
  return trig_sum<true>(f.coeffs(), f.foldness() * x);
}

double evaluate_at(const OddSeries& f, double x) {
  return trig_sum<false>(f.coeffs(), f.foldness() * x);
}

EvenAnalysis analyze_even(const Eigen::VectorXd& values, const Grid& g, int m, int n_modes,
                          const AnalyzeOptions& opts) {
  check_analyze_args(g, m, n_modes);
  if (values.size() != g.q()) throw std::invalid_argument("analyze: values/grid size mismatch");
  const Projection p = project(values, g, m, n_modes);
  AliasReport report = make_report(p, /*even_wanted=*/true);
  guard_alias(report, opts);
  return EvenAnalysis{EvenSeries(m, p.cos_coeffs), report};
}

OddAnalysis analyze_odd(const Eigen::VectorXd& values, const Grid& g, int m, int n_modes,
                        const AnalyzeOptions& opts) {
  check_analyze_args(g, m, n_modes);
  if (values.size() != g.q()) throw std::invalid_argument("analyze: values/grid size mismatch");
  const Projection p = project(values, g, m, n_modes);
  AliasReport report = make_report(p, /*even_wanted=*/false);
  guard_alias(report, opts);
  return OddAnalysis{OddSeries(m, p.sin_coeffs), report};
}

OddSeries derivative(const EvenSeries& f) {
  Eigen::VectorXd b(f.modes());
  for (int n = 1; n <= f.modes(); ++n) b(n - 1) = -n * f.foldness() * f.coeff(n);
  return OddSeries(f.foldness(), std::move(b));
}

EvenSeries derivative(const OddSeries& f) {
  Eigen::VectorXd a(f.modes());
  for (int n = 1; n <= f.modes(); ++n) a(n - 1) = n * f.foldness() * f.coeff(n);
  return EvenSeries(f.foldness(), std::move(a));
}

OddSeries hilbert(const EvenSeries& f) { return OddSeries(f.foldness(), f.coeffs()); }

EvenSeries hilbert(const OddSeries& f) { return EvenSeries(f.foldness(), -f.coeffs()); }

namespace {
double weighted_norm(const Eigen::VectorXd& c, int m, double s) {
  double acc = 0.0;
  for (int n = 1; n <= c.size(); ++n) {
    const double k = std::max(1.0, static_cast<double>(n) * m);
    acc += std::pow(k, 2.0 * s) * c(n - 1) * c(n - 1);
  }
  return std::sqrt(acc);
}
}  // namespace

double sobolev_norm(const EvenSeries& f, double s) { return weighted_norm(f.coeffs(), f.foldness(), s); }
double sobolev_norm(const OddSeries& f, double s) { return weighted_norm(f.coeffs(), f.foldness(), s); }

}  // namespace vsheet::spectral
