#pragma once

#include <Eigen/Dense>

#include "vsheet/errors.hpp"

namespace vsheet::spectral {

// Parity-restricted m-fold trigonometric series. An EvenSeries stores the
// coefficients a_1..a_N of
//
//     f(x) = sum_{n=1..N} a_n cos(n m x),
//
// an OddSeries the coefficients b_1..b_N of sum b_n sin(n m x). The n = 0
// mode is excluded by construction, so every represented function has zero
// mean; means are handled structurally, never as stored data.
class EvenSeries {
 public:
  EvenSeries(int foldness, Eigen::VectorXd coeffs);
  static EvenSeries zero(int foldness, int modes);

  int foldness() const { return m_; }
  int modes() const { return static_cast<int>(a_.size()); }
  const Eigen::VectorXd& coeffs() const { return a_; }
  // 1-based fold index
  double coeff(int n) const { return a_(n - 1); }

 private:
  int m_;
  Eigen::VectorXd a_;
};

class OddSeries {
 public:
  OddSeries(int foldness, Eigen::VectorXd coeffs);
  static OddSeries zero(int foldness, int modes);

  int foldness() const { return m_; }
  int modes() const { return static_cast<int>(b_.size()); }
  const Eigen::VectorXd& coeffs() const { return b_; }
  double coeff(int n) const { return b_(n - 1); }

 private:
  int m_;
  Eigen::VectorXd b_;
};

// Uniform periodic collocation grid with Q (even) primary nodes
// x_j = 2*pi*j/Q and the half-offset nodes w_k = (2k+1)*pi/Q used by the
// principal-value quadrature. The offset nodes never meet a primary node.
// The half-spacing difference angles x_j - w_k take only the Q values
// (2d-1)*pi/Q, d = (j-k) mod Q; their cos/sin tables are precomputed here.
class Grid {
 public:
  explicit Grid(int q);

  int q() const { return q_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& offset_nodes() const { return offset_; }
  double spacing() const;

  double cos_diff(int d) const { return cos_diff_(d); }
  double sin_diff(int d) const { return sin_diff_(d); }

 private:
  int q_;
  Eigen::VectorXd nodes_, offset_;
  Eigen::VectorXd cos_diff_, sin_diff_;
};

// Pointwise evaluation of the trigonometric sum; exact for the represented
// polynomial up to rounding.
Eigen::VectorXd evaluate(const EvenSeries& f, const Eigen::VectorXd& xs);
Eigen::VectorXd evaluate(const OddSeries& f, const Eigen::VectorXd& xs);
Eigen::VectorXd evaluate(const EvenSeries& f, const Grid& g);
Eigen::VectorXd evaluate(const OddSeries& f, const Grid& g);
Eigen::VectorXd evaluate_offset(const EvenSeries& f, const Grid& g);
Eigen::VectorXd evaluate_offset(const OddSeries& f, const Grid& g);
double evaluate_at(const EvenSeries& f, double x);
double evaluate_at(const OddSeries& f, double x);

// Grid-measured energy split produced by analyze. All energies are in the
// Parseval sense: mean over the grid of f^2 equals
// mean^2 + (1/2) * sum of squared mode coefficients for band-limited input.
struct AliasReport {
  double total_energy = 0.0;
  double retained_energy = 0.0;     // modes n*m, n <= N, requested parity
  double wrong_parity_energy = 0.0; // modes n*m, n <= N, opposite parity
  double mean_energy = 0.0;
  double other_energy = 0.0;        // truncation tail + non-m-fold content

  double discarded_energy() const { return total_energy - retained_energy; }
  double discarded_fraction() const {
    return total_energy > 0.0 ? discarded_energy() / total_energy : 0.0;
  }
};

struct AnalyzeOptions {
  // AliasError fires when discarded > alias_tol * total + alias_floor.
  // The absolute floor keeps near-zero inputs (converged residuals) from
  // tripping the relative test on rounding noise.
  double alias_tol = 1e-6;
  double alias_floor = 1e-24;
};

struct EvenAnalysis {
  EvenSeries series;
  AliasReport report;
};

struct OddAnalysis {
  OddSeries series;
  AliasReport report;
};

// Discrete projection of primary-grid samples onto the first n_modes modes
// of the given parity and foldness. Requires q >= 2*m*n_modes + 2. Throws
// AliasError when the discarded energy exceeds the configured fraction.
EvenAnalysis analyze_even(const Eigen::VectorXd& values, const Grid& g, int m,
                          int n_modes, const AnalyzeOptions& opts = {});
OddAnalysis analyze_odd(const Eigen::VectorXd& values, const Grid& g, int m,
                        int n_modes, const AnalyzeOptions& opts = {});

// d/dx applied coefficientwise; parity flips.
OddSeries derivative(const EvenSeries& f);
EvenSeries derivative(const OddSeries& f);

// Periodic Hilbert transform: cos(k.) -> sin(k.), sin(k.) -> -cos(k.);
// together with derivative this realizes |D| = d/dx o H coefficientwise.
OddSeries hilbert(const EvenSeries& f);
EvenSeries hilbert(const OddSeries& f);

// ( sum_n <n*m>^{2s} c_n^2 )^{1/2} with <k> = max(1, k); the weight uses the
// absolute wavenumber n*m so norms are comparable across foldness.
double sobolev_norm(const EvenSeries& f, double s);
double sobolev_norm(const OddSeries& f, double s);

}  // namespace vsheet::spectral
