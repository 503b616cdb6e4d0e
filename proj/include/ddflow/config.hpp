#pragma once

#include <string>
#include <vector>

#include "ddflow/experiments.hpp"
#include "ddflow/scheme.hpp"

namespace ddflow {

/// Fields a run can write as snapshots.
inline const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names = {"rho_plus", "rho_minus", "theta_plus",
                                                 "theta_minus", "velocity"};
  return names;
}

struct RunConfig {
  SimParams params;
  std::string preset_name;  // empty for a fully custom run
  AnalyticInit init_plus;
  AnalyticInit init_minus;
  std::vector<double> snapshot_times;
  std::string output_dir = "out";
  std::vector<std::string> emit_fields = {"theta_plus"};
};

/// Parses the line-oriented `key = value` format (`#` starts a comment,
/// dotted keys nest). Throws kParseError with the line number on malformed
/// input and kValidationError naming the violated constraint.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Serializes a config so that parse_config reproduces it exactly.
std::string to_config_text(const RunConfig& cfg);

RunConfig config_from_preset(const std::string& name);

}  // namespace ddflow
