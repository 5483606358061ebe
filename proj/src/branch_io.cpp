#include "vsheet/branch_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vsheet/errors.hpp"
#include "vsheet/util.hpp"

namespace vsheet::io {

namespace {

using nlohmann::json;

linear::Kind kind_from_name(const std::string& name) {
  if (name == "speed") return linear::Kind::speed;
  if (name == "tension") return linear::Kind::tension;
  if (name == "vorticity") return linear::Kind::vorticity;
  throw FileError("unknown branch kind: " + name);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".json");
  return p;
}

}  // namespace

std::string branch_filename(linear::Kind kind, int m, linear::Sign sign) {
  std::ostringstream os;
  os << "branch_" << linear::kind_name(kind) << "_" << m << "_" << linear::sign_char(sign)
     << ".csv";
  return os.str();
}

std::string branch_summary_json(const Branch& branch, const continuation::Asymptotics& asym,
                                const std::vector<double>& certified_norms) {
  const linear::BifurcationPoint& bp = branch.point;
  json j;
  j["kind"] = linear::kind_name(bp.kind);
  j["sign"] = std::string(1, linear::sign_char(bp.sign));
  j["m"] = bp.m;
  j["threshold"] = bp.value;
  j["params"] = {{"c", bp.params.c}, {"sigma", bp.params.sigma}, {"gamma", bp.params.gamma}};
  j["kernel_x0"] = {bp.x0(0), bp.x0(1)};
  j["cokernel_y0"] = {bp.y0(0), bp.y0(1)};
  j["pairing"] = bp.pairing;
  j["collision_k2"] = bp.collision_k2;
  j["modes"] = branch.options.modes;
  j["quad"] = branch.options.quad;
  j["direction"] = branch.direction;
  j["steps"] = branch.steps.size();
  j["p0_extrapolated"] = asym.p0_extrapolated;
  j["tangent_defect"] = asym.tangent_defect;
  j["power_law_exponent"] = asym.power_law_exponent;
  double max_res = 0.0;
  for (const auto& st : branch.steps) max_res = std::max(max_res, st.residual_norm);
  j["max_residual"] = max_res;
  if (!certified_norms.empty()) {
    double cmax = 0.0;
    for (double v : certified_norms) cmax = std::max(cmax, v);
    j["certified_max_residual"] = cmax;
  }
  return j.dump(2);
}

void write_branch(const Branch& branch, const continuation::Asymptotics& asym,
                  const std::vector<double>& certified_norms,
                  const std::filesystem::path& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw FileError("cannot open " + csv_path.string() + " for writing");
  const int n = branch.options.modes;
  out << "# format=1\n";
  out << "s,param,residual,newton_iters";
  for (int i = 1; i <= n; ++i) out << ",eta_" << i;
  for (int i = 1; i <= n; ++i) out << ",psi_" << i;
  out << "\n";
  for (const auto& st : branch.steps) {
    out << fmt17(st.s) << ',' << fmt17(st.param_value) << ',' << fmt17(st.residual_norm) << ','
        << st.newton_iters;
    for (int i = 0; i < n; ++i) out << ',' << fmt17(st.state.eta.coeffs()(i));
    for (int i = 0; i < n; ++i) out << ',' << fmt17(st.state.psi.coeffs()(i));
    out << "\n";
  }
  if (!out) throw FileError("write failure on " + csv_path.string());
  out.close();

  std::ofstream js(sidecar_path(csv_path));
  if (!js) throw FileError("cannot open branch sidecar for writing");
  js << branch_summary_json(branch, asym, certified_norms) << "\n";
}

LoadedBranch read_branch(const std::filesystem::path& csv_path) {
  std::ifstream js(sidecar_path(csv_path));
  if (!js) throw FileError("missing branch sidecar " + sidecar_path(csv_path).string());
  json meta;
  try {
    js >> meta;
  } catch (const std::exception& e) {
    throw FileError(std::string("bad branch sidecar: ") + e.what());
  }

  LoadedBranch lb;
  Branch& br = lb.branch;
  br.point.kind = kind_from_name(meta.at("kind").get<std::string>());
  br.point.sign = meta.at("sign").get<std::string>() == "-" ? linear::Sign::minus
                                                            : linear::Sign::plus;
  br.point.m = meta.at("m").get<int>();
  br.point.value = meta.at("threshold").get<double>();
  br.point.params.c = meta.at("params").at("c").get<double>();
  br.point.params.sigma = meta.at("params").at("sigma").get<double>();
  br.point.params.gamma = meta.at("params").at("gamma").get<double>();
  br.point.x0 << meta.at("kernel_x0")[0].get<double>(), meta.at("kernel_x0")[1].get<double>();
  br.point.y0 << meta.at("cokernel_y0")[0].get<double>(), meta.at("cokernel_y0")[1].get<double>();
  br.point.pairing = meta.at("pairing").get<double>();
  br.point.admissible = true;
  br.options.modes = meta.at("modes").get<int>();
  br.options.quad = meta.at("quad").get<int>();
  br.direction = meta.at("direction").get<int>();

  std::ifstream in(csv_path);
  if (!in) throw FileError("cannot open " + csv_path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# format=1", 0) != 0)
    throw FileError("branch csv: missing '# format=1' first line");
  if (!std::getline(in, line)) throw FileError("branch csv: missing header");

  const int n = br.options.modes;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> vals;
    while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
    if (static_cast<int>(vals.size()) != 4 + 2 * n)
      throw FileError("branch csv: wrong column count");
    Eigen::VectorXd a(n), b(n);
    for (int i = 0; i < n; ++i) a(i) = vals[4 + i];
    for (int i = 0; i < n; ++i) b(i) = vals[4 + n + i];
    br.steps.push_back(continuation::BranchStep{
        vals[0], vals[1],
        contour::SheetState(spectral::EvenSeries(br.point.m, a), spectral::OddSeries(br.point.m, b)),
        vals[2], static_cast<int>(vals[3]), 0.0});
  }
  if (br.steps.empty()) throw FileError("branch csv: no steps");
  return lb;
}

void write_trajectory(const evolution::Trajectory& tr, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot open " + path.string() + " for writing");
  if (tr.states.empty()) throw std::invalid_argument("write_trajectory: empty trajectory");
  const int n = tr.states.front().modes();
  out << "# format=1\n";
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",eta_cos_" << i;
  for (int i = 1; i <= n; ++i) out << ",eta_sin_" << i;
  for (int i = 1; i <= n; ++i) out << ",psi_cos_" << i;
  for (int i = 1; i <= n; ++i) out << ",psi_sin_" << i;
  out << "\n";
  for (std::size_t r = 0; r < tr.t.size(); ++r) {
    const evolution::ModalState& u = tr.states[r];
    out << fmt17(tr.t[r]);
    // coef = cos amplitude - i sin amplitude
    for (int i = 0; i < n; ++i) out << ',' << fmt17(u.eta(i).real());
    for (int i = 0; i < n; ++i) out << ',' << fmt17(-u.eta(i).imag());
    for (int i = 0; i < n; ++i) out << ',' << fmt17(u.psi(i).real());
    for (int i = 0; i < n; ++i) out << ',' << fmt17(-u.psi(i).imag());
    out << "\n";
  }
  if (!out) throw FileError("write failure on " + path.string());
}

}  // namespace vsheet::io
