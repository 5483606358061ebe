// Acceptance suite: one criterion per section, each printing a single
// pass/fail line with the measured value against its pinned tolerance.
// Usage: acceptance [criterion-number]; exits nonzero when any run fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "vsheet/continuation.hpp"
#include "vsheet/evolution.hpp"
#include "vsheet/linear_theory.hpp"
#include "vsheet/util.hpp"
#include "vsheet/verify.hpp"

namespace {

using namespace vsheet;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what << " ("
            << detail << ")\n";
  if (!pass) ++g_failures;
}

void report_value(int criterion, const std::string& what, double measured, double tol) {
  report(criterion, what, measured <= tol,
         "measured " + fmt17(measured) + " <= " + fmt17(tol));
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
  const auto t0 = Clock::now();
  const auto checks = verify::trivial_suite(20260809, 100);
  const double elapsed = seconds_since(t0);
  report_value(1, "trivial-solution residual over 100 random parameter points",
               checks[0].measured, 1e-12);
  report(1, "runtime budget", elapsed < 5.0, "elapsed " + fmt17(elapsed) + " s < 5 s");
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
  const auto checks = verify::operators_suite(256, 8);
  report_value(2, "d0 at the circle vs mean f (f = 1, cos kx, sin kx, k <= 8, Q = 256)",
               checks[0].measured, 1e-11);
  report_value(2, "h0 at the circle vs Hilbert transform", checks[1].measured, 1e-11);
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
  const auto checks = verify::jacobian_suite(20260809, 20);
  report_value(3, "FD Jacobian vs multiplier blocks, n = 1..4, m in {2,3}, 20 parameter points",
               checks[0].measured, 1e-6);
  report_value(3, "cross-mode leakage", checks[1].measured, 1e-8);
}

// ------------------------------------------------- sweep shared by 4 and 5
struct SweepPoint {
  linear::BifurcationPoint bp;
};

std::vector<SweepPoint> admissible_sweep(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<SweepPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count && attempts < 100 * count) {
    ++attempts;
    const int which = attempts % 3;
    const int m = rng.uniform_int(2, 5);
    steady::ParamPoint fixed;
    fixed.c = rng.uniform(-1.5, 1.5);
    fixed.sigma = 0.4 + 2.0 * rng.uniform();
    fixed.gamma = rng.uniform(-1.5, 1.5);
    const linear::Kind kind = which == 0   ? linear::Kind::speed
                              : which == 1 ? linear::Kind::tension
                                           : linear::Kind::vorticity;
    const linear::Sign sign = rng.uniform() < 0.5 ? linear::Sign::plus : linear::Sign::minus;
    linear::BifurcationPoint bp;
    try {
      bp = linear::locate(kind, m, sign, fixed);
    } catch (const Error&) {
      continue;
    }
    if (!bp.admissible) continue;
    const linear::CollisionReport cr = linear::collision_check(kind, m, bp.params);
    if (cr.near_integer_warning) continue;  // spec-flagged warning band
    out.push_back(SweepPoint{bp});
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
  const auto sweep = admissible_sweep(424242, 50);
  report(4, "sweep population", sweep.size() == 50,
         "located " + std::to_string(sweep.size()) + " admissible points");

  double worst_det = 0.0;
  for (const auto& sp : sweep) {
    const double scale = linear::block(sp.bp.m, sp.bp.params).squaredNorm();
    worst_det = std::max(worst_det,
                         std::abs(linear::det_block(sp.bp.m, sp.bp.params)) / scale);
  }
  report_value(4, "determinant at the located thresholds (relative)", worst_det, 1e-12);

  Rng rng(5150);
  double worst_forms = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double c = rng.uniform(-2.0, 2.0), gamma = rng.uniform(-2.0, 2.0);
    const int m = rng.uniform_int(2, 6);
    if (c == 0.0 && gamma == 0.0) continue;
    const auto a = linear::threshold_sigma(m, c, gamma);
    const auto b = linear::threshold_sigma_alt(m, c, gamma);
    if (!a || !b) continue;
    worst_forms = std::max(worst_forms, std::abs(*a - *b) / std::abs(*a));
  }
  report_value(4, "two printed forms of the tension threshold agree", worst_forms, 1e-14);
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
  const auto sweep = admissible_sweep(424242, 50);
  Rng rng(99);

  bool sv_ok = true;
  std::string sv_detail;
  double worst_orth = 0.0, worst_pairing = 0.0;
  for (const auto& sp : sweep) {
    const Eigen::MatrixXd jac = linear::assembled_jacobian(sp.bp.params, sp.bp.m, 8);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const Eigen::VectorXd sv = svd.singularValues();
    int tiny = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) < 1e-8) ++tiny;
    const double second_smallest = sv(sv.size() - 2);
    if (tiny != 1 || second_smallest <= 1e-2) {
      sv_ok = false;
      sv_detail = "kind " + std::string(linear::kind_name(sp.bp.kind)) + " m " +
                  std::to_string(sp.bp.m) + ": " + std::to_string(tiny) +
                  " tiny, second smallest " + fmt17(second_smallest);
    }

    // cokernel orthogonality over random states
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd a(8), b(8);
      for (int i = 0; i < 8; ++i) {
        a(i) = rng.uniform(-1.0, 1.0);
        b(i) = rng.uniform(-1.0, 1.0);
      }
      const double nrm = std::sqrt(a.squaredNorm() + b.squaredNorm());
      const contour::SheetState u(spectral::EvenSeries(sp.bp.m, a / nrm),
                                  spectral::OddSeries(sp.bp.m, b / nrm));
      const auto [r1, r2] = linear::apply_linear(sp.bp.params, u);
      worst_orth = std::max(
          worst_orth, std::abs(r1.coeff(1) * sp.bp.y0(0) + r2.coeff(1) * sp.bp.y0(1)));
    }

    // transversality pairing by parameter finite differences
    const double h = 1e-5;
    steady::ParamPoint pp = sp.bp.params, pm = sp.bp.params;
    switch (sp.bp.kind) {
      case linear::Kind::speed: pp.c += h; pm.c -= h; break;
      case linear::Kind::tension: pp.sigma += h; pm.sigma -= h; break;
      case linear::Kind::vorticity: pp.gamma += h; pm.gamma -= h; break;
    }
    const Eigen::Vector2d dmx =
        ((linear::block(sp.bp.m, pp) - linear::block(sp.bp.m, pm)) / (2.0 * h)) * sp.bp.x0;
    worst_pairing = std::max(worst_pairing,
                             std::abs(dmx.dot(sp.bp.y0) - sp.bp.pairing) / std::abs(sp.bp.pairing));
  }

  report(5, "exactly one singular value < 1e-8, second smallest > 1e-2, modes n*m with n <= 8",
         sv_ok, sv_ok ? "all 50 points" : sv_detail);
  report_value(5, "cokernel orthogonality <L u, y0> over random u", worst_orth, 1e-12);
  report_value(5, "FD transversality pairing vs closed form (relative)", worst_pairing, 1e-8);
}

// ---------------------------------------------------------------- criterion 6
struct BranchCase {
  const char* label;
  linear::Kind kind;
  linear::Sign sign;
  steady::ParamPoint fixed;
};

void criterion_6() {
  const std::vector<BranchCase> cases = {
      {"speed m=2 sigma=1 gamma=0 +", linear::Kind::speed, linear::Sign::plus, {0.0, 1.0, 0.0}},
      {"tension m=2 c=1 gamma=1", linear::Kind::tension, linear::Sign::plus, {1.0, 1.0, 1.0}},
      {"vorticity m=2 sigma=1 +", linear::Kind::vorticity, linear::Sign::plus, {0.0, 1.0, 0.0}},
  };
  for (const BranchCase& bc : cases) {
    const auto t0 = Clock::now();
    const linear::BifurcationPoint bp = linear::locate(bc.kind, 2, bc.sign, bc.fixed);
    if (!bp.admissible) {
      report(6, std::string(bc.label) + " admissibility", false, bp.reason);
      continue;
    }
    continuation::TraceOptions opts;  // N = 16, Q = 256
    const continuation::Branch br = continuation::trace_branch(bp, 1e-3, 10, opts);

    double worst_res = 0.0;
    for (const auto& st : br.steps) worst_res = std::max(worst_res, st.residual_norm);
    report_value(6, std::string(bc.label) + ": residual norms over 10 steps", worst_res, 1e-10);

    const continuation::Asymptotics asym = continuation::branch_asymptotics(br);
    report_value(6, std::string(bc.label) + ": |extrapolated p0 - closed-form threshold|",
                 std::abs(asym.p0_extrapolated - bp.value), 1e-6);

    // stability of the tangent-defect constant under ds halving (same final
    // amplitude, twice the steps)
    const continuation::Branch half = continuation::trace_branch(bp, 5e-4, 20, opts);
    const continuation::Asymptotics asym_half = continuation::branch_asymptotics(half);
    const double rel_change =
        std::abs(asym_half.tangent_defect - asym.tangent_defect) / asym.tangent_defect;
    report(6,
           std::string(bc.label) + ": tangent defect ||state - s x0||/s^2 stable under ds halving",
           rel_change <= 0.1,
           "C(ds) = " + fmt17(asym.tangent_defect) + ", C(ds/2) = " +
               fmt17(asym_half.tangent_defect) + ", relative change " + fmt17(rel_change));

    const double elapsed = seconds_since(t0);
    report(6, std::string(bc.label) + ": runtime budget", elapsed < 60.0,
           "elapsed " + fmt17(elapsed) + " s < 60 s");
  }
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
  const auto checks = verify::velocity_suite(20260809);
  report_value(7, "interior velocity of the circle (gamma = 2, 20 points, |x| <= 0.8)",
               checks[0].measured, 1e-10);
  report_value(7, "exterior velocity vs gamma x^perp/|x|^2 (20 points, |x| >= 1.2)",
               checks[1].measured, 1e-10);
  report_value(7, "tangential-trace jump equals omega on a perturbed state", checks[2].measured,
               1e-8);
}

// ---------------------------------------------------------------- criterion 8
void criterion_8() {
  const auto checks = verify::dispersion_suite(8);
  report_value(8, "mode frequencies vs sqrt(det M_n(0, sigma, gamma)), n m <= 8, det > 0",
               checks[0].measured, 5e-3);
}

// ---------------------------------------------------------------- criterion 9
void criterion_9() {
  const contour::Grid g(256);
  continuation::TraceOptions opts;  // N = 16, Q = 256

  // stationary family: evolve a vorticity-branch step and measure drift
  {
    const auto bp =
        linear::locate(linear::Kind::vorticity, 2, linear::Sign::plus, {0.0, 1.0, 0.0});
    const continuation::Branch br = continuation::trace_branch(bp, 1e-3, 5, opts);
    const continuation::BranchStep& st = br.steps.back();  // s = 5e-3
    steady::ParamPoint p = bp.params;
    p.gamma = st.param_value;
    p.c = 0.0;
    evolution::EvolutionConfig cfg;
    cfg.dt = 2e-4;
    cfg.t_final = 0.1;
    cfg.stride = 50;
    const evolution::TravelReport rep = evolution::verify_traveling(st.state, p, cfg, g);
    report_value(9, "stationary vorticity-branch step: X-norm drift over t = 0.1",
                 rep.max_shape_error, 1e-7);
  }

  // traveling family: phase-shift match and dt-refinement order
  {
    const auto bp = linear::locate(linear::Kind::speed, 2, linear::Sign::plus, {0.0, 1.0, 0.0});
    const continuation::Branch br = continuation::trace_branch(bp, 1e-3, 5, opts);
    const continuation::BranchStep& st = br.steps.back();
    steady::ParamPoint p = bp.params;
    p.c = st.param_value;

    auto shape_error = [&](double dt) {
      evolution::EvolutionConfig cfg;
      cfg.dt = dt;
      cfg.t_final = 0.05;
      cfg.stride = 1 << 30;  // compare at the final time only
      return evolution::verify_traveling(st.state, p, cfg, g).max_shape_error;
    };

    report_value(9, "speed-branch step: phase-shifted profile match at t = 0.05, dt = 1e-4",
                 shape_error(1e-4), 1e-6);

    const double e1 = shape_error(1e-3), e2 = shape_error(5e-4), e3 = shape_error(2.5e-4);
    // least-squares slope of log e against log dt over the three runs
    const double x1 = std::log(1e-3), x2 = std::log(5e-4), x3 = std::log(2.5e-4);
    const double y1 = std::log(e1), y2 = std::log(e2), y3 = std::log(e3);
    const double xbar = (x1 + x2 + x3) / 3.0, ybar = (y1 + y2 + y3) / 3.0;
    const double order = ((x1 - xbar) * (y1 - ybar) + (x2 - xbar) * (y2 - ybar) +
                          (x3 - xbar) * (y3 - ybar)) /
                         ((x1 - xbar) * (x1 - xbar) + (x2 - xbar) * (x2 - xbar) +
                          (x3 - xbar) * (x3 - xbar));
    report(9, "dt-refinement convergence order >= 2", order >= 2.0,
           "errors " + fmt17(e1) + ", " + fmt17(e2) + ", " + fmt17(e3) + "; order " +
               fmt17(order));
  }
}

}  // namespace

int main(int argc, char** argv) {
  const int which = argc > 1 ? std::atoi(argv[1]) : 0;
  using Fn = void (*)();
  const Fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                         criterion_6, criterion_7, criterion_8, criterion_9};
  try {
    if (which >= 1 && which <= 9) {
      criteria[which - 1]();
    } else {
      for (Fn fn : criteria) fn();
    }
  } catch (const std::exception& e) {
    std::cout << "[FAIL] unexpected exception: " << e.what() << "\n";
    return 1;
  }
  if (g_failures > 0) {
    std::cout << g_failures << " criterion check(s) failed\n";
    return 1;
  }
  std::cout << "all criterion checks passed\n";
  return 0;
}
