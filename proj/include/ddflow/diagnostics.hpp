#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ddflow/field.hpp"
#include "ddflow/spectral.hpp"

namespace ddflow {

/// f(x) = x ln(x + e).
double entropy_f(double x);
/// g(x) = x ln x with g(0) = 0.
double entropy_g(double x);

enum class EntropyKind { kF, kG };

/// sum over both species of dx^2 phi(theta_x1 + L). Arguments down to
/// -1e-12 are floored at zero; anything lower throws kNegativeArgument.
double entropy(const State& state, double total_density, EntropyKind which);

/// D = sum_m c(sigma_bar)_m |c(theta+ - theta-)_m|^2.
double dissipation(const State& state, const SpectrumField& sigma_hat);

struct VelocityNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

/// L2 norm and H1 seminorm of sigma_bar * rho_diff from its DFT coefficients;
/// the seminorm weights each mode by (2 pi |m|)^2 with signed frequencies.
VelocityNorms velocity_h1_diagnostics(const GridField& rho_diff,
                                      const SpectrumField& sigma_hat);

/// (next.rho - prev.rho) / dt for both species.
std::pair<GridField, GridField> discrete_time_derivative(const State& prev,
                                                         const State& next, double dt);

/// (2 pi / 3) M (M - 1) (M + 1).
double sigma_derivative_bound(int order);

struct SigmaSlopeCheck {
  bool ok = false;
  double max_slope = 0.0;
  double bound = 0.0;
};

/// Finite-difference slopes of sigma_M on an N' = 4M grid against the
/// analytic derivative bound plus 1e-6 M^3 slack.
SigmaSlopeCheck sigma_derivative_bound_check(int order);

/// Pass/fail of each bound monitored along a run.
struct BoundFlags {
  bool linf = true;
  bool deviation = true;
  bool positivity = true;
  bool entropy_step = true;
  bool entropy_cumulative = true;
  bool velocity = true;
  bool dissipation = true;

  bool all() const {
    return linf && deviation && positivity && entropy_step && entropy_cumulative &&
           velocity && dissipation;
  }
  /// Human-readable name of the first failing bound, empty if all pass.
  std::string first_failure() const;
};

struct DiagnosticsRecord {
  int n = 0;
  double t = 0.0;
  double entropy_f = 0.0;
  double entropy_g = 0.0;
  double dissipation = 0.0;
  double linf_rho_plus = 0.0;
  double linf_rho_minus = 0.0;
  double deviation_plus = 0.0;
  double deviation_minus = 0.0;
  double theta_min_plus_L = 0.0;
  double lambda_max = 0.0;
  double velocity_l2 = 0.0;
  double velocity_h1_semi = 0.0;
  int fp_iters = 0;
  BoundFlags bounds;

  bool finite() const;
};

/// Constants the bound checks compare against.
struct BoundContext {
  int order = 1;
  double total_density = 1.0;
  double stress_sup = 0.0;
  double dt = 0.0;
  double initial_linf = 0.0;       // max over species of |rho^0|_inf
  double initial_entropy_f = 0.0;  // entropy_f at n = 0

  double velocity_bound() const {
    return 4.0 * order * order * total_density + stress_sup;
  }
};

/// Evaluates every bound for `cur` given the previous record and the running
/// sum of dt * D up to and including `cur`.
BoundFlags check_bounds(const BoundContext& ctx, const DiagnosticsRecord* prev,
                        const DiagnosticsRecord& cur, double cumulative_dissipation);

/// Measures `state`; `lambda_plus` is the velocity field used to reach it.
DiagnosticsRecord measure(const State& state, double total_density,
                          const SpectrumField& sigma_hat, const GridField& lambda_plus,
                          int fp_iters);

extern const char* const kDiagnosticsHeader;
void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r);
/// Parses a diagnostics.csv produced by write_diagnostics_row.
std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is);

}  // namespace ddflow
