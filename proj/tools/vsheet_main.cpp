// Command-line surface of the vortex-sheet toolkit: linear spectrum tables,
// bifurcation thresholds and kernel reports, branch tracing, verification
// suites, and time evolution with traveling-wave checks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vsheet/branch_io.hpp"
#include "vsheet/continuation.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/evolution.hpp"
#include "vsheet/linear_theory.hpp"
#include "vsheet/util.hpp"
#include "vsheet/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace vsheet;

// exit codes: 0 success, 2 usage, 3 inadmissible, 4 numerical failure, 5 I/O
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInadmissible = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitIo = 5;

struct CommonFlags {
  int modes = 16;
  int quad = 256;
  double tol = 1e-10;
  std::string out;
  std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--modes", flags.modes, "fold-mode truncation N")->check(CLI::PositiveNumber);
  cmd->add_option("--quad", flags.quad, "collocation size Q")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", flags.tol, "residual tolerance");
  cmd->add_option("--out", flags.out, "output directory (default: current)");
  cmd->add_option("--seed", flags.seed, "seed for randomized sweeps");
}

fs::path out_dir(const CommonFlags& flags) {
  fs::path dir = flags.out.empty() ? fs::path(".") : fs::path(flags.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FileError("cannot create output directory " + dir.string());
  return dir;
}

linear::Kind parse_kind(const std::string& s) {
  if (s == "speed") return linear::Kind::speed;
  if (s == "tension") return linear::Kind::tension;
  if (s == "vorticity") return linear::Kind::vorticity;
  throw CLI::ValidationError("--kind", "must be one of speed|tension|vorticity");
}

linear::Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return linear::Sign::plus;
  if (s == "-" || s == "minus") return linear::Sign::minus;
  throw CLI::ValidationError("--sign", "must be + or -");
}

int run_spectrum(double c, double sigma, double gamma, int nmax, const CommonFlags& flags) {
  steady::ParamPoint p{c, sigma, gamma};
  p.validate();
  std::ostringstream os;
  os << "# format=1\n";
  os << "n,detMn,frequency_or_growth,stable\n";
  for (int n = 1; n <= nmax; ++n) {
    const double det = linear::det_block(n, p);
    os << n << ',' << fmt17(det) << ',' << fmt17(std::sqrt(std::abs(det))) << ','
       << (det > 0.0 ? 1 : 0) << "\n";
  }
  if (flags.out.empty()) {
    std::cout << os.str();
  } else {
    const fs::path path = out_dir(flags) / "spectrum.csv";
    std::ofstream f(path);
    if (!f) throw FileError("cannot open " + path.string());
    f << os.str();
    std::cout << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

void print_point(const linear::BifurcationPoint& bp) {
  std::cout << "kind: " << linear::kind_name(bp.kind) << "\n";
  std::cout << "m: " << bp.m << "\n";
  std::cout << "sign: " << linear::sign_char(bp.sign) << "\n";
  std::cout << "threshold: " << fmt17(bp.value) << "\n";
  std::cout << "params: c=" << fmt17(bp.params.c) << " sigma=" << fmt17(bp.params.sigma)
            << " gamma=" << fmt17(bp.params.gamma) << "\n";
  std::cout << "collision_k2: " << fmt17(bp.collision_k2) << "\n";
  if (bp.admissible) {
    std::cout << "kernel_x0: (" << fmt17(bp.x0(0)) << ", " << fmt17(bp.x0(1)) << ")\n";
    std::cout << "cokernel_y0: (" << fmt17(bp.y0(0)) << ", " << fmt17(bp.y0(1)) << ")\n";
    std::cout << "pairing: " << fmt17(bp.pairing) << "\n";
    std::cout << "det_at_threshold: " << fmt17(linear::det_block(bp.m, bp.params)) << "\n";
  } else {
    std::cout << "refused: " << bp.reason << "\n";
  }
}

int run_thresholds(const std::string& kind_s, int m, double c, double sigma, double gamma,
                   bool both_signs, const std::string& sign_s) {
  const linear::Kind kind = parse_kind(kind_s);
  steady::ParamPoint fixed{c, sigma, gamma};

  // admissibility context for the speed family
  if (kind == linear::Kind::speed) {
    const linear::Admissibility adm = linear::admissibility(m, sigma, gamma);
    std::cout << "admissible_set: in_band=" << (adm.in_s1 ? 1 : 0)
              << " outside_root_interval=" << (adm.in_s2 ? 1 : 0);
    if (adm.m_minus)
      std::cout << " root_interval=[" << fmt17(*adm.m_minus) << ", " << fmt17(*adm.m_plus) << "]";
    std::cout << "\n";
  }

  bool any_admissible = false;
  auto report = [&](linear::Sign sign) {
    const linear::BifurcationPoint bp = linear::locate(kind, m, sign, fixed);
    print_point(bp);
    any_admissible = any_admissible || bp.admissible;
  };

  if (kind == linear::Kind::tension) {
    report(linear::Sign::plus);
  } else if (both_signs) {
    report(linear::Sign::plus);
    std::cout << "\n";
    report(linear::Sign::minus);
  } else {
    report(parse_sign(sign_s));
  }
  return any_admissible ? kExitOk : kExitInadmissible;
}

int run_branch(const std::string& kind_s, int m, const std::string& sign_s, double c, double sigma,
               double gamma, double ds, int steps, int direction, const CommonFlags& flags) {
  const linear::Kind kind = parse_kind(kind_s);
  const linear::Sign sign = parse_sign(sign_s);
  const linear::BifurcationPoint bp = linear::locate(kind, m, sign, steady::ParamPoint{c, sigma, gamma});
  if (!bp.admissible) {
    std::cout << "refused: " << bp.reason << "\n";
    return kExitInadmissible;
  }

  continuation::TraceOptions opts;
  opts.modes = flags.modes;
  opts.quad = flags.quad;
  opts.newton_tol = flags.tol * 0.1;
  opts.direction = direction;

  continuation::Branch branch;
  std::string failure;
  try {
    branch = continuation::trace_branch(bp, ds, steps, opts);
  } catch (const NewtonDivergenceError& e) {
    failure = e.what();  // surface the failure but keep the last good steps
  }
  if (branch.steps.empty()) {
    std::cout << "branch failed before the first step: " << failure << "\n";
    return kExitNumerical;
  }

  const continuation::Asymptotics asym = continuation::branch_asymptotics(branch);
  const std::vector<double> certified = continuation::certify_branch(branch);

  const fs::path csv = out_dir(flags) / io::branch_filename(kind, m, sign);
  io::write_branch(branch, asym, certified, csv);
  std::cout << io::branch_summary_json(branch, asym, certified) << "\n";
  std::cout << "wrote " << csv.string() << "\n";
  if (!failure.empty()) {
    std::cout << "warning: trace stopped early: " << failure << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run_verify(const std::string& suite, const CommonFlags& flags) {
  std::vector<verify::Check> checks;
  if (suite == "trivial")
    checks = verify::trivial_suite(flags.seed, 100);
  else if (suite == "operators")
    checks = verify::operators_suite();
  else if (suite == "jacobian")
    checks = verify::jacobian_suite(flags.seed);
  else if (suite == "velocity")
    checks = verify::velocity_suite(flags.seed);
  else if (suite == "dispersion")
    checks = verify::dispersion_suite();
  else if (suite == "all")
    checks = verify::all_suites(flags.seed);
  else
    throw CLI::ValidationError("suite", "must be trivial|jacobian|operators|velocity|dispersion|all");

  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": measured " << fmt17(c.measured)
              << " tolerance " << fmt17(c.threshold) << "\n";
  }
  return all_pass ? kExitOk : kExitNumerical;
}

int run_evolve(const std::string& branch_file, int row, double dt, double t_final, int stride,
               const CommonFlags& flags) {
  const io::LoadedBranch lb = io::read_branch(branch_file);
  if (row < 0 || row >= static_cast<int>(lb.branch.steps.size()))
    throw std::invalid_argument("evolve: row out of range");
  const continuation::BranchStep& st = lb.branch.steps[row];

  steady::ParamPoint p = lb.branch.point.params;
  switch (lb.branch.point.kind) {
    case linear::Kind::speed: p.c = st.param_value; break;
    case linear::Kind::tension: p.sigma = st.param_value; break;
    case linear::Kind::vorticity: p.gamma = st.param_value; break;
  }

  evolution::EvolutionConfig cfg;
  cfg.dt = dt;
  cfg.t_final = t_final;
  cfg.stride = stride;

  const contour::Grid g(flags.quad);
  const evolution::Trajectory tr =
      evolution::evolve(cfg, p.sigma, p.gamma, evolution::to_modal(st.state), g);
  const evolution::TravelReport rep = evolution::verify_traveling(st.state, p, cfg, g);

  const fs::path path = out_dir(flags) / "trajectory.csv";
  io::write_trajectory(tr, path);
  std::cout << "wrote " << path.string() << "\n";
  std::cout << "rows: " << tr.t.size() << "\n";
  std::cout << "params: c=" << fmt17(p.c) << " sigma=" << fmt17(p.sigma)
            << " gamma=" << fmt17(p.gamma) << "\n";
  std::cout << "traveling_shape_error: " << fmt17(rep.max_shape_error) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for uniformly rotating vortex sheets with surface tension"};
  app.require_subcommand(1);

  CommonFlags flags;

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "per-mode determinant and stability table");
  double sp_c = 0.0, sp_sigma = 1.0, sp_gamma = 0.0;
  int sp_nmax = 8;
  spectrum->add_option("--c", sp_c, "rotation speed");
  spectrum->add_option("--sigma", sp_sigma, "surface tension")->check(CLI::PositiveNumber);
  spectrum->add_option("--gamma", sp_gamma, "mean vorticity");
  spectrum->add_option("--nmax", sp_nmax, "largest wavenumber")->check(CLI::PositiveNumber);
  add_common(spectrum, flags);

  // thresholds / kernel
  std::string th_kind = "speed", th_sign = "+";
  int th_m = 2;
  double th_c = 0.0, th_sigma = 1.0, th_gamma = 0.0;
  bool th_both = true;
  auto add_threshold_flags = [&](CLI::App* cmd) {
    cmd->add_option("--kind", th_kind, "speed|tension|vorticity")->required();
    cmd->add_option("--m", th_m, "foldness")->check(CLI::PositiveNumber);
    cmd->add_option("--c", th_c, "fixed speed (tension family)");
    cmd->add_option("--sigma", th_sigma, "fixed surface tension");
    cmd->add_option("--gamma", th_gamma, "fixed mean vorticity");
    cmd->add_option("--sign", th_sign, "branch sign when not reporting both");
    cmd->add_flag("--both,!--single", th_both, "report both signs (default)");
    add_common(cmd, flags);
  };
  auto* thresholds =
      app.add_subcommand("thresholds", "bifurcation thresholds, admissibility, kernel data");
  add_threshold_flags(thresholds);
  auto* kernel = app.add_subcommand("kernel", "alias of thresholds");
  add_threshold_flags(kernel);

  // branch
  std::string br_kind = "speed", br_sign = "+";
  int br_m = 2, br_steps = 10, br_dir = 1;
  double br_c = 0.0, br_sigma = 1.0, br_gamma = 0.0, br_ds = 1e-3;
  auto* branch = app.add_subcommand("branch", "trace a bifurcating branch");
  branch->add_option("--kind", br_kind, "speed|tension|vorticity")->required();
  branch->add_option("--m", br_m, "foldness")->check(CLI::PositiveNumber);
  branch->add_option("--sign", br_sign, "threshold sign");
  branch->add_option("--c", br_c, "fixed speed (tension family)");
  branch->add_option("--sigma", br_sigma, "fixed surface tension");
  branch->add_option("--gamma", br_gamma, "fixed mean vorticity");
  branch->add_option("--ds", br_ds, "amplitude step")->check(CLI::PositiveNumber);
  branch->add_option("--steps", br_steps, "number of steps")->check(CLI::PositiveNumber);
  branch->add_option("--direction", br_dir, "amplitude direction (+1 or -1)");
  add_common(branch, flags);

  // verify
  std::string vf_suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", vf_suite, "trivial|jacobian|operators|velocity|dispersion|all");
  add_common(verify_cmd, flags);

  // evolve
  std::string ev_file;
  int ev_row = 0, ev_stride = 10;
  double ev_dt = 1e-4, ev_tfinal = 0.05;
  auto* evolve_cmd = app.add_subcommand("evolve", "evolve a branch row and check rigid travel");
  evolve_cmd->add_option("file", ev_file, "branch csv (with its .json sidecar)")->required();
  evolve_cmd->add_option("--row", ev_row, "step index within the branch");
  evolve_cmd->add_option("--dt", ev_dt, "time step")->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--t-final", ev_tfinal, "final time")->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--stride", ev_stride, "snapshot stride")->check(CLI::PositiveNumber);
  add_common(evolve_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(sp_c, sp_sigma, sp_gamma, sp_nmax, flags);
    if (thresholds->parsed() || kernel->parsed())
      return run_thresholds(th_kind, th_m, th_c, th_sigma, th_gamma, th_both, th_sign);
    if (branch->parsed())
      return run_branch(br_kind, br_m, br_sign, br_c, br_sigma, br_gamma, br_ds, br_steps, br_dir,
                        flags);
    if (verify_cmd->parsed()) return run_verify(vf_suite, flags);
    if (evolve_cmd->parsed())
      return run_evolve(ev_file, ev_row, ev_dt, ev_tfinal, ev_stride, flags);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InadmissibleError& e) {
    std::cerr << "inadmissible: " << e.what() << "\n";
    return kExitInadmissible;
  } catch (const FileError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
