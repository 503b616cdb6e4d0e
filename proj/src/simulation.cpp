#include "ddflow/simulation.hpp"

#include <exception>
#include <string>

#include "ddflow/error.hpp"

namespace ddflow {

namespace {

template <class Fn, class... Args>
void call_hook(const Fn& fn, Args&&... args) {
  if (!fn) return;
  try {
    fn(std::forward<Args>(args)...);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kSinkFailure, e.what());
  }
}

}  // namespace

RunResult run(const SimParams& params, const GridField& initial_plus,
              const GridField& initial_minus, const RunHooks& hooks) {
  params.validate();
  if (initial_plus.size() != params.grid || initial_minus.size() != params.grid) {
    throw Error(ErrorKind::kSizeMismatch, "initial data size does not match N");
  }
  RunResult result;
  if (params.steps > 0) result.cfl = cfl_check(params);

  const bool strict = params.cfl_mode == CflMode::kStrict;
  const double L = params.total_density;
  const VelocityOperator op(params.order, params.grid);
  const int smooth = params.effective_smooth_order();

  State state(0, 0.0, smooth_initial(initial_plus, smooth),
              smooth_initial(initial_minus, smooth));
  result.initial = state;

  BoundContext ctx;
  ctx.order = params.order;
  ctx.total_density = L;
  ctx.stress_sup = params.stress.sup_norm(params.final_time);
  ctx.dt = params.dt();
  ctx.initial_linf = std::max(linf(state.rho_plus()), linf(state.rho_minus()));

  DiagnosticsRecord rec = measure(state, L, op.sigma_hat(),
                                  op.lambda_plus(state.rho_difference(), params.stress(0.0)), 0);
  ctx.initial_entropy_f = rec.entropy_f;
  rec.bounds = check_bounds(ctx, nullptr, rec, 0.0);
  if (strict && !rec.bounds.positivity) {
    throw Error(ErrorKind::kPositivityLost,
                "regularized initial data violate theta + L >= 0 (min " +
                    format_double(rec.theta_min_plus_L) + ")");
  }
  result.initial_record = rec;
  call_hook(hooks.on_state, state, rec);

  double cumulative = 0.0;
  for (int n = 0; n < params.steps; ++n) {
    const double t_next = params.time_at(n + 1);
    StepResult step = fixed_point_step(state, params, op, t_next);
    state = std::move(step.state);

    const DiagnosticsRecord prev = rec;
    rec = measure(state, L, op.sigma_hat(),
                  op.lambda_plus(state.rho_difference(), params.stress(t_next)),
                  step.report.fp_iters);
    cumulative += params.dt() * rec.dissipation;
    rec.bounds = check_bounds(ctx, &prev, rec, cumulative);
    if (!rec.finite()) {
      throw Error(ErrorKind::kNumericalBlowup,
                  "non-finite diagnostics at step " + std::to_string(rec.n));
    }
    if (strict && !rec.bounds.all()) {
      throw Error(ErrorKind::kBoundViolation,
                  rec.bounds.first_failure() + " violated at step " + std::to_string(rec.n));
    }
    call_hook(hooks.on_step, step.report);
    call_hook(hooks.on_state, state, rec);
    result.reports.push_back(step.report);
    result.records.push_back(rec);
  }
  result.final_state = state;
  return result;
}

}  // namespace ddflow
