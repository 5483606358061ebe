#pragma once

#include <filesystem>
#include <string>

#include "vsheet/continuation.hpp"
#include "vsheet/evolution.hpp"

namespace vsheet::io {

using continuation::Branch;

// branch_<kind>_<m>_<sign>.csv
std::string branch_filename(linear::Kind kind, int m, linear::Sign sign);

// Versioned CSV: first line "# format=1", then the header
// s,param,residual,newton_iters,eta_1..eta_N,psi_1..psi_N, one row per step,
// floats at 17 significant digits. A sidecar <stem>.json carries the
// bifurcation-point data and branch summary so the file pair is
// self-describing.
void write_branch(const Branch& branch, const continuation::Asymptotics& asym,
                  const std::vector<double>& certified_norms, const std::filesystem::path& csv_path);

struct LoadedBranch {
  Branch branch;  // point + steps reconstructed from the file pair
};

LoadedBranch read_branch(const std::filesystem::path& csv_path);

// JSON summary text for a traced branch (also what cmd_branch prints).
std::string branch_summary_json(const Branch& branch, const continuation::Asymptotics& asym,
                                const std::vector<double>& certified_norms);

// Trajectory CSV: "# format=1", header
// t,eta_cos_1..N,eta_sin_1..N,psi_cos_1..N,psi_sin_1..N.
void write_trajectory(const evolution::Trajectory& tr, const std::filesystem::path& path);

}  // namespace vsheet::io
