#pragma once

#include <iosfwd>
#include <string>

#include "ddflow/config.hpp"
#include "ddflow/error.hpp"
#include "ddflow/experiments.hpp"

namespace ddflow {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitAudit = 4,
};

int exit_code_for(ErrorKind kind);

/// Single machine-parsable stderr line: `error kind=<Kind> message="<text>"`.
std::string error_line(const Error& e);

/// Snapshot file name `<field>_n<step>.csv`.
std::string snapshot_file_name(const std::string& field, int step);

/// Step index nearest to time t.
int nearest_step(const SimParams& params, double t);

Preset preset_from_config(const RunConfig& cfg);

/// Runs the configuration and writes diagnostics.csv, config.cfg and the
/// requested snapshots into cfg.output_dir.
RunResult cmd_run(const RunConfig& cfg);
RunResult cmd_preset(const std::string& name, const std::string& out_dir);
/// Writes refinement.csv into cfg.output_dir. Threads are capped by
/// SIM_THREADS when set.
RefinementReport cmd_refine(const RunConfig& cfg, int levels);

struct AuditResult {
  bool ok = true;
  std::string violation;  // e.g. "gradient positivity"
  std::string detail;
};

/// Re-verifies the monitored bounds of a run directory from its
/// diagnostics.csv and snapshot files.
AuditResult cmd_audit(const std::string& dir);

/// Worker cap from SIM_THREADS, falling back to hardware concurrency.
int thread_cap();

}  // namespace ddflow
