#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ddflow/scheme.hpp"
#include "ddflow/simulation.hpp"

namespace ddflow {

/// (1/6) exp(-10 (d1^2 + d2^2)) with d_k the periodic distance of x_k to 1/2.
double gaussian_initial(double x1, double x2);

struct FourierMode {
  int p1 = 0;
  int p2 = 0;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};

/// Analytic periodic initial profile: a scaled Gaussian plus Fourier modes.
/// Evaluates identically on every grid, so refinement levels share nodes.
struct AnalyticInit {
  double gaussian_scale = 0.0;
  std::vector<FourierMode> modes;

  double operator()(double x1, double x2) const;
  GridField sample(int n) const;
};

struct Preset {
  std::string name;
  SimParams params;
  AnalyticInit init_plus;
  AnalyticInit init_minus;
  std::vector<double> snapshot_times;
};

/// "case1", "case2", "stationary" or "pure-transport"; kUnknownPreset otherwise.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

RunResult run_preset(const Preset& p, const RunHooks& hooks = {});

struct RefinementLevel {
  int grid = 0;
  int steps = 0;
};

struct RefinementRow {
  int level = 0;  // finer level of the compared pair
  int grid = 0;
  int steps = 0;
  double err_linf_plus = 0.0;
  double err_l2_plus = 0.0;
  double err_linf_minus = 0.0;
  double err_l2_minus = 0.0;
  double order_linf = 0.0;  // NaN when not reportable
  double order_l2 = 0.0;
};

struct RefinementReport {
  std::vector<RefinementLevel> levels;
  std::vector<RefinementRow> rows;  // one per successive pair
  std::vector<RunResult> runs;
};

/// Runs `levels` grids N, 2N, 4N, ... at the base preset's dt/dx and compares
/// successive final states at the coarser level's nodes. Levels run on up to
/// `max_threads` workers (0 = hardware concurrency).
RefinementReport refinement_study(const Preset& base, int levels, int max_threads = 0);

extern const char* const kRefinementHeader;
void write_refinement_csv(std::ostream& os, const RefinementReport& report);

}  // namespace ddflow
