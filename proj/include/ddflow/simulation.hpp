#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ddflow/diagnostics.hpp"
#include "ddflow/scheme.hpp"

namespace ddflow {

/// Output hooks invoked from the time loop thread. `on_state` sees the
/// initial state (n = 0) and every accepted step. Exceptions escaping a hook
/// abort the run as kSinkFailure.
struct RunHooks {
  std::function<void(const State&, const DiagnosticsRecord&)> on_state;
  std::function<void(const StepReport&)> on_step;
};

struct RunResult {
  State initial;
  State final_state;
  DiagnosticsRecord initial_record;
  std::vector<DiagnosticsRecord> records;  // steps 1..N_T
  std::vector<StepReport> reports;
  std::optional<CflReport> cfl;
};

/// Regularizes the sampled initial data, then marches N_T steps. Strict mode
/// stops with kBoundViolation at the first failing bound; practical mode only
/// records the flags and stops on non-finite values or fixed-point failure.
RunResult run(const SimParams& params, const GridField& initial_plus,
              const GridField& initial_minus, const RunHooks& hooks = {});

}  // namespace ddflow
