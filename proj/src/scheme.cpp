#include "ddflow/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddflow/error.hpp"

namespace ddflow {

double StressSpec::operator()(double t) const {
  switch (kind) {
    case Kind::kZero: return 0.0;
    case Kind::kConstant: return a0;
    case Kind::kLinear: return a0 + a1 * t;
  }
  return 0.0;
}

double StressSpec::sup_norm(double final_time) const {
  switch (kind) {
    case Kind::kZero: return 0.0;
    case Kind::kConstant: return std::abs(a0);
    case Kind::kLinear: return std::max(std::abs(a0), std::abs(a0 + a1 * final_time));
  }
  return 0.0;
}

std::string to_string(StressSpec::Kind kind) {
  switch (kind) {
    case StressSpec::Kind::kZero: return "zero";
    case StressSpec::Kind::kConstant: return "constant";
    case StressSpec::Kind::kLinear: return "linear";
  }
  return "zero";
}

StressSpec::Kind parse_stress_kind(const std::string& s) {
  if (s == "zero") return StressSpec::Kind::kZero;
  if (s == "constant") return StressSpec::Kind::kConstant;
  if (s == "linear") return StressSpec::Kind::kLinear;
  throw Error(ErrorKind::kValidationError,
              "stress.kind must be zero, constant or linear (got '" + s + "')");
}

std::string to_string(CflMode mode) {
  return mode == CflMode::kStrict ? "strict" : "practical";
}

CflMode parse_cfl_mode(const std::string& s) {
  if (s == "strict") return CflMode::kStrict;
  if (s == "practical") return CflMode::kPractical;
  throw Error(ErrorKind::kValidationError,
              "cfl_mode must be strict or practical (got '" + s + "')");
}

double SimParams::velocity_bound() const {
  return 4.0 * order * order * total_density + stress.sup_norm(final_time);
}

void SimParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::kInvalidParams, what); };
  if (grid < 1) fail("N must be >= 1");
  if (order < 1) fail("M must be >= 1");
  if (order > grid) fail("M must not exceed N");
  if (smooth_order < 0 || smooth_order > grid) fail("smooth_order must lie in [0, N]");
  if (steps < 0) fail("N_T must be >= 0");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) fail("T must be positive (dt = 0 is not a valid step)");
  if (!(total_density > 0.0)) fail("L must be positive");
  if (!(fp_tol > 0.0)) fail("fp_tol must be positive");
  if (fp_max_iter < 1) fail("fp_max_iter must be >= 1");
  if (!std::isfinite(stress.sup_norm(final_time))) fail("stress must be finite on [0, T]");
}

CflReport cfl_check(const SimParams& params) {
  params.validate();
  if (params.steps == 0) {
    throw Error(ErrorKind::kInvalidParams, "cfl_check needs N_T >= 1");
  }
  const double m2l = static_cast<double>(params.order) * params.order * params.total_density;
  const double vbound = params.velocity_bound();
  CflReport r;
  r.ratio = params.dt() / params.dx();
  r.ratio_bound_transport = 1.0 / (4.0 * vbound);
  r.ratio_bound_contraction = 1.0 / (18.0 * m2l);
  r.dt_bound = 1.0 / (2.0 * params.total_density * vbound);
  r.contraction_q = 18.0 * m2l * r.ratio;
  r.strict_ok = r.ratio < std::min(r.ratio_bound_transport, r.ratio_bound_contraction) &&
                params.dt() < r.dt_bound;
  if (!r.strict_ok && params.cfl_mode == CflMode::kStrict) {
    throw Error(ErrorKind::kCflViolation,
                "dt/dx = " + format_double(r.ratio) + " must be < min(" +
                    format_double(r.ratio_bound_transport) + ", " +
                    format_double(r.ratio_bound_contraction) + ") and dt = " +
                    format_double(params.dt()) + " < " + format_double(r.dt_bound));
  }
  return r;
}

double strict_ratio(int order, double total_density, double stress_sup, double safety) {
  const double m2l = static_cast<double>(order) * order * total_density;
  return safety * std::min(1.0 / (4.0 * (4.0 * m2l + stress_sup)), 1.0 / (18.0 * m2l));
}

GridField smooth_initial(const GridField& rho0, int order) {
  if (order < 1) throw Error(ErrorKind::kInvalidParams, "smoothing order must be >= 1");
  const int n = rho0.size();
  SpectrumField c = dft2(rho0);
  for (int m1 = 0; m1 < n; ++m1) {
    const double w1 = fejer_weight(signed_frequency(m1, n), order);
    for (int m2 = 0; m2 < n; ++m2) {
      c(m1, m2) *= w1 * fejer_weight(signed_frequency(m2, n), order);
    }
  }
  return idft2(c);
}

VelocityOperator::VelocityOperator(int order, int n)
    : VelocityOperator(build_sigma_field(order, n)) {}

VelocityOperator::VelocityOperator(SigmaField sigma)
    : sigma_(std::move(sigma)), sigma_hat_(sigma_dft_coeffs(sigma_)) {}

GridField VelocityOperator::convolve(const GridField& v) const {
  if (v.size() != size()) {
    throw Error(ErrorKind::kSizeMismatch, "velocity: field size does not match sigma grid");
  }
  SpectrumField c = dft2(v);
  for (std::size_t k = 0; k < c.coeffs().size(); ++k) {
    c.coeffs()[k] *= sigma_hat_.coeffs()[k].real();
  }
  return idft2(c);
}

GridField VelocityOperator::lambda_plus(const GridField& rho_diff, double a_val) const {
  GridField lam = convolve(rho_diff);
  for (double& x : lam.values()) x = -(a_val + x);
  return lam;
}

std::pair<GridField, GridField> velocity(const GridField& rho_diff, double a_val,
                                         const SigmaField& sigma) {
  const VelocityOperator op(sigma);
  GridField plus = op.lambda_plus(rho_diff, a_val);
  GridField minus = plus * -1.0;
  return {std::move(plus), std::move(minus)};
}

namespace {

inline double pos_part(double x) { return 0.5 * (x + std::abs(x)); }
inline double neg_part(double x) { return 0.5 * (std::abs(x) - x); }

// rho + dt [lam_+ (theta_{i+1/2} + L) - lam_- (theta_{i-1/2} + L)]
void upwind_update(const GridField& rho, const GridField& theta, const GridField& lam,
                   double dt, double total_density, GridField& out) {
  const int n = rho.size();
  for (int i = 0; i < n; ++i) {
    const int im = (i + n - 1) % n;
    for (int j = 0; j < n; ++j) {
      const double l = lam(i, j);
      out(i, j) = rho(i, j) + dt * (pos_part(l) * (theta(i, j) + total_density) -
                                    neg_part(l) * (theta(im, j) + total_density));
    }
  }
}

double max_abs_diff(const GridField& a, const GridField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  }
  return m;
}

bool all_finite(const GridField& v) {
  return std::all_of(v.values().begin(), v.values().end(),
                     [](double x) { return std::isfinite(x); });
}

struct FixedPointMap {
  const State& state;
  const VelocityOperator& op;
  double a_val;
  double dt;
  double total_density;

  // Returns (F+(v), F-(v)) and max |lambda(v)|.
  std::pair<GridField, GridField> operator()(const GridField& vp, const GridField& vm,
                                             double* lambda_max) const {
    const GridField lam = op.lambda_plus(vp - vm, a_val);
    if (lambda_max) *lambda_max = linf(lam);
    const GridField lam_minus = lam * -1.0;
    GridField np(vp.size());
    GridField nm(vm.size());
    upwind_update(state.rho_plus(), state.theta_plus_x1(), lam, dt, total_density, np);
    upwind_update(state.rho_minus(), state.theta_minus_x1(), lam_minus, dt, total_density, nm);
    return {std::move(np), std::move(nm)};
  }
};

}  // namespace

int contraction_iteration_bound(double q, double initial_residual, double tol) {
  if (initial_residual <= tol) return 1;
  if (!(q > 0.0) || q >= 1.0) return std::numeric_limits<int>::max();
  const double k = std::log(tol / initial_residual) / std::log(q);
  return static_cast<int>(std::ceil(std::max(0.0, k))) + 1;
}

StepResult fixed_point_step(const State& state, const SimParams& params,
                            const VelocityOperator& op, double t_next,
                            const std::optional<std::pair<GridField, GridField>>& guess) {
  const int n = state.size();
  if (op.size() != n) throw Error(ErrorKind::kSizeMismatch, "operator/state grid mismatch");
  const double dt = t_next - state.t();
  const double ratio = dt * n;
  const double L = params.total_density;

  StepReport report;
  report.n = state.n() + 1;
  report.contraction_q =
      18.0 * static_cast<double>(params.order) * params.order * L * ratio;
  const double scale =
      std::max({1.0, linf(state.rho_plus()), linf(state.rho_minus())});
  report.fp_tolerance = params.fp_tol * scale;

  const FixedPointMap map{state, op, params.stress(t_next), dt, L};

  GridField vp = guess ? guess->first : state.rho_plus();
  GridField vm = guess ? guess->second : state.rho_minus();
  require_same_size(vp, state.rho_plus());
  require_same_size(vm, state.rho_minus());

  double prev_diff = std::numeric_limits<double>::infinity();
  int growth = 0;
  bool converged = false;
  for (int k = 1; k <= params.fp_max_iter; ++k) {
    auto [np, nm] = map(vp, vm, nullptr);
    if (!all_finite(np) || !all_finite(nm)) {
      throw Error(ErrorKind::kNumericalBlowup,
                  "non-finite iterate at step " + std::to_string(report.n) +
                      ", fixed-point iteration " + std::to_string(k));
    }
    const double diff = std::max(max_abs_diff(np, vp), max_abs_diff(nm, vm));
    if (k == 1) report.initial_difference = diff;
    vp = std::move(np);
    vm = std::move(nm);
    report.fp_iters = k;
    if (diff <= report.fp_tolerance) {
      converged = true;
      break;
    }
    growth = diff > prev_diff ? growth + 1 : 0;
    if (growth >= 5) {
      throw Error(ErrorKind::kFixedPointDiverged,
                  "successive differences grew for 5 iterations at step " +
                      std::to_string(report.n) + " (last " + format_double(diff) + ")");
    }
    prev_diff = diff;
  }
  if (!converged) {
    throw Error(ErrorKind::kFixedPointDiverged,
                "no convergence within " + std::to_string(params.fp_max_iter) +
                    " iterations at step " + std::to_string(report.n));
  }

  // Residual of the scheme equation at the accepted iterate.
  auto [rp, rm] = map(vp, vm, &report.lambda_max);
  report.fp_residual = std::max(max_abs_diff(rp, vp), max_abs_diff(rm, vm));
  const double residual_bound = report.fp_tolerance * (1.0 + ratio * report.lambda_max);
  if (!(report.fp_residual <= residual_bound)) {
    throw Error(ErrorKind::kFixedPointDiverged,
                "scheme residual " + format_double(report.fp_residual) + " exceeds " +
                    format_double(residual_bound) + " at step " + std::to_string(report.n));
  }

  State next(report.n, t_next, std::move(vp), std::move(vm));
  report.theta_min_plus_L =
      std::min(min_value(next.theta_plus_x1()), min_value(next.theta_minus_x1())) + L;
  if (params.cfl_mode == CflMode::kStrict && report.theta_min_plus_L < -1e-12) {
    throw Error(ErrorKind::kPositivityLost,
                "theta + L = " + format_double(report.theta_min_plus_L) + " at step " +
                    std::to_string(report.n));
  }
  return {std::move(next), report};
}

}  // namespace ddflow
