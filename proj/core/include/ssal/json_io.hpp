#pragma once

#include <optional>
#include <string>

#include "ssal/model.hpp"
#include "ssal/oracle.hpp"
#include "ssal/solver.hpp"

namespace ssal {

/// On-disk instance = problem plus optional experiment metadata.
///
/// Schema (all arrays are row-major nested lists of doubles):
///   {
///     "n": int,
///     "objective": {"kind": "quadratic_form", "M": [[..]]}
///                | {"kind": "least_squares", "A": [[..]], "b": [..]},
///     "x_set": { "box": {"lower": [..], "upper": [..]},
///                "simplex": true,
///                "return_halfspace": {"mu": [..], "rho0": real},
///                "quad_risk": {"d": [..], "sigma0": real} },   // all optional
///     "y_set": {"a": [..], "b": [..], "K": int},
///     "id": string,            // optional
///     "f_true": [..],          // optional ground-truth signal
///     "noise_sigma2": real     // optional
///   }
struct InstanceFile {
  ProblemSpec spec;
  std::string id;
  std::optional<Vector> f_true;
  std::optional<double> noise_sigma2;
};

InstanceFile parse_instance(const std::string& json_text);
InstanceFile load_instance(const std::string& path);

std::string instance_to_json(const InstanceFile& inst, int indent = 2);
void save_instance(const InstanceFile& inst, const std::string& path);

std::string report_to_json(const SolveReport& report, int indent = 2);
std::string oracle_to_json(const OracleResult& result, int indent = 2);

}  // namespace ssal
