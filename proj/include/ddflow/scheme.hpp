#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ddflow/field.hpp"
#include "ddflow/spectral.hpp"

namespace ddflow {

/// External shear stress a(t) = a0 + a1 * t (continuous on [0, T]).
struct StressSpec {
  enum class Kind { kZero, kConstant, kLinear };

  Kind kind = Kind::kZero;
  double a0 = 0.0;
  double a1 = 0.0;

  static StressSpec zero() { return {}; }
  static StressSpec constant(double a0) { return {Kind::kConstant, a0, 0.0}; }
  static StressSpec linear(double a0, double a1) { return {Kind::kLinear, a0, a1}; }

  double operator()(double t) const;
  /// sup over [0, T] of |a|, closed form.
  double sup_norm(double final_time) const;
};

std::string to_string(StressSpec::Kind kind);
StressSpec::Kind parse_stress_kind(const std::string& s);

enum class CflMode { kStrict, kPractical };

std::string to_string(CflMode mode);
CflMode parse_cfl_mode(const std::string& s);

struct SimParams {
  int order = 1;        // Fejer order M
  int grid = 8;         // N
  double final_time = 1.0;
  int steps = 1;        // N_T
  double total_density = 1.0;  // L
  StressSpec stress;
  double fp_tol = 1e-12;  // relative to max(1, |rho^n|_inf)
  int fp_max_iter = 200;
  CflMode cfl_mode = CflMode::kStrict;
  // Fejer order used to regularize the initial data; 0 means `order`.
  int smooth_order = 0;

  double dt() const { return final_time / steps; }
  double dx() const { return 1.0 / grid; }
  double time_at(int n) const { return n * dt(); }
  int effective_smooth_order() const { return smooth_order > 0 ? smooth_order : order; }
  /// 4 M^2 L + |a|_inf, the a priori bound on the discrete velocity.
  double velocity_bound() const;

  /// Throws kInvalidParams naming the violated constraint.
  void validate() const;
};

struct CflReport {
  bool strict_ok = false;
  double ratio = 0.0;                   // dt/dx
  double ratio_bound_transport = 0.0;   // 1 / (4 (4 M^2 L + |a|))
  double ratio_bound_contraction = 0.0; // 1 / (18 M^2 L)
  double dt_bound = 0.0;                // 1 / (2 L (4 M^2 L + |a|))
  double contraction_q = 0.0;           // 18 M^2 L dt/dx
};

/// Evaluates both step restrictions. In strict mode a violation throws
/// kCflViolation; in practical mode it is only reported.
CflReport cfl_check(const SimParams& params);

/// Largest dt/dx strictly admissible for (M, L, |a|), scaled by `safety` < 1.
double strict_ratio(int order, double total_density, double stress_sup, double safety);

/// Discrete Fejer smoothing: DFT coefficients times w(m1) w(m2) using signed
/// frequencies.
GridField smooth_initial(const GridField& rho0, int order);

/// Nonlocal velocity operator lambda = -(a + sigma_bar * rho_diff) for the
/// + species; the - species gets the opposite sign.
class VelocityOperator {
 public:
  VelocityOperator(int order, int n);
  explicit VelocityOperator(SigmaField sigma);

  int order() const noexcept { return sigma_.order; }
  int size() const noexcept { return sigma_.values.size(); }
  const SigmaField& sigma() const noexcept { return sigma_; }
  const SpectrumField& sigma_hat() const noexcept { return sigma_hat_; }

  /// sigma_bar * v (the dx^2-weighted circular convolution), spectrally.
  GridField convolve(const GridField& v) const;
  /// lambda^+ at every node.
  GridField lambda_plus(const GridField& rho_diff, double a_val) const;

 private:
  SigmaField sigma_;
  SpectrumField sigma_hat_;
};

std::pair<GridField, GridField> velocity(const GridField& rho_diff, double a_val,
                                         const SigmaField& sigma);

struct StepReport {
  int n = 0;
  int fp_iters = 0;
  double fp_residual = 0.0;
  double fp_tolerance = 0.0;       // absolute tolerance used for this step
  double initial_difference = 0.0; // |F(v0) - v0|_inf
  double lambda_max = 0.0;
  double contraction_q = 0.0;
  double theta_min_plus_L = 0.0;
};

struct StepResult {
  State state;
  StepReport report;
};

/// One semi-implicit upwind step from `state` to t_next, solving the implicit
/// velocity by Banach iteration from `guess` (defaults to the step-n fields).
StepResult fixed_point_step(const State& state, const SimParams& params,
                            const VelocityOperator& op, double t_next,
                            const std::optional<std::pair<GridField, GridField>>& guess =
                                std::nullopt);

/// Iteration count implied by the contraction factor q for a first
/// successive difference `initial_residual` and tolerance `tol`.
int contraction_iteration_bound(double q, double initial_residual, double tol);

}  // namespace ddflow
