#include "ddflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "ddflow/error.hpp"

namespace ddflow {

double gaussian_initial(double x1, double x2) {
  auto dist = [](double x) {
    const double d = std::abs(x - 0.5);
    return std::min(d, 1.0 - d);
  };
  const double d1 = dist(x1);
  const double d2 = dist(x2);
  return std::exp(-10.0 * (d1 * d1 + d2 * d2)) / 6.0;
}

double AnalyticInit::operator()(double x1, double x2) const {
  double v = gaussian_scale != 0.0 ? gaussian_scale * gaussian_initial(x1, x2) : 0.0;
  for (const auto& m : modes) {
    const double phase = 2.0 * std::numbers::pi * (m.p1 * x1 + m.p2 * x2);
    v += m.cos_amp * std::cos(phase) + m.sin_amp * std::sin(phase);
  }
  return v;
}

GridField AnalyticInit::sample(int n) const {
  return GridField::sample(n, [this](double x1, double x2) { return (*this)(x1, x2); });
}

std::vector<std::string> preset_names() {
  return {"case1", "case2", "stationary", "pure-transport"};
}

Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "case1" || name == "case2") {
    p.params.order = 50;
    p.params.grid = 50;
    p.params.total_density = 1.0;
    p.params.steps = 200;
    p.params.final_time = 3.38;
    p.params.stress = StressSpec::linear(0.0, 3.0);
    p.params.cfl_mode = CflMode::kPractical;
    p.init_plus.gaussian_scale = 1.0;
    p.init_minus.gaussian_scale = name == "case1" ? 1.0 : 0.5;
    p.snapshot_times = {0.0, 1.98, 3.38};
    return p;
  }
  if (name == "stationary") {
    p.params.order = 2;
    p.params.grid = 16;
    p.params.total_density = 1.0;
    p.params.steps = 100;
    p.params.final_time = 0.05;
    p.params.stress = StressSpec::zero();
    // Band-limited below M, so the smoothed data agree on shared nodes of every grid.
    const std::vector<FourierMode> modes = {{1, 0, 0.05, 0.0}, {1, 1, 0.0, 0.03},
                                            {0, 1, 0.02, 0.01}};
    p.init_plus.modes = modes;
    p.init_minus.modes = modes;
    p.snapshot_times = {0.0, 0.05};
    return p;
  }
  if (name == "pure-transport") {
    // sigma vanishes for M = 1, so lambda+ = -a = 1 everywhere.
    p.params.order = 1;
    p.params.grid = 16;
    p.params.total_density = 1.0;
    p.params.steps = 100;
    p.params.final_time = 0.25;
    p.params.stress = StressSpec::constant(-1.0);
    p.params.smooth_order = 8;
    p.init_plus.gaussian_scale = 1.0;
    p.init_minus.gaussian_scale = 1.0;
    p.snapshot_times = {0.0, 0.25};
    return p;
  }
  throw Error(ErrorKind::kUnknownPreset, "unknown preset '" + name + "'");
}

RunResult run_preset(const Preset& p, const RunHooks& hooks) {
  return run(p.params, p.init_plus.sample(p.params.grid), p.init_minus.sample(p.params.grid),
             hooks);
}

namespace {

struct PairError {
  double linf = 0.0;
  double l2 = 0.0;
};

// Compares two final-time fields through the Q1 reconstruction at t = T on
// the nodes of the coarser grid, which are shared with every finer level.
PairError compare_on_shared_nodes(const GridField& coarse, const GridField& fine) {
  PairError e;
  double sum = 0.0;
  const int n = coarse.size();
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = bilinear_eval(coarse, i * h, j * h) - bilinear_eval(fine, i * h, j * h);
      e.linf = std::max(e.linf, std::abs(d));
      sum += d * d;
    }
  }
  e.l2 = std::sqrt(sum) * h;
  return e;
}

double observed_order(double coarse_err, double fine_err) {
  if (coarse_err > 1e-13 && fine_err > 1e-13) return std::log2(coarse_err / fine_err);
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

RefinementReport refinement_study(const Preset& base, int levels, int max_threads) {
  if (levels < 2) throw Error(ErrorKind::kInvalidParams, "refinement needs at least 2 levels");
  RefinementReport report;
  std::vector<SimParams> level_params;
  for (int l = 0; l < levels; ++l) {
    SimParams p = base.params;
    p.grid = base.params.grid << l;
    p.steps = base.params.steps << l;
    p.cfl_mode = CflMode::kStrict;
    level_params.push_back(p);
    report.levels.push_back({p.grid, p.steps});
  }

  unsigned workers = max_threads > 0 ? static_cast<unsigned>(max_threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  report.runs.resize(levels);
  // Finest levels first so the longest runs start early.
  std::vector<int> order(levels);
  for (int l = 0; l < levels; ++l) order[l] = levels - 1 - l;
  for (std::size_t start = 0; start < order.size(); start += workers) {
    std::vector<std::future<RunResult>> batch;
    const std::size_t stop = std::min(order.size(), start + workers);
    for (std::size_t k = start; k < stop; ++k) {
      const SimParams& p = level_params[order[k]];
      batch.push_back(std::async(std::launch::async, [&base, p] {
        return run(p, base.init_plus.sample(p.grid), base.init_minus.sample(p.grid));
      }));
    }
    for (std::size_t k = start; k < stop; ++k) {
      report.runs[order[k]] = batch[k - start].get();
    }
  }

  for (int l = 1; l < levels; ++l) {
    const State& a = report.runs[l - 1].final_state;
    const State& b = report.runs[l].final_state;
    const PairError ep = compare_on_shared_nodes(a.rho_plus(), b.rho_plus());
    const PairError em = compare_on_shared_nodes(a.rho_minus(), b.rho_minus());
    RefinementRow row;
    row.level = l;
    row.grid = level_params[l].grid;
    row.steps = level_params[l].steps;
    row.err_linf_plus = ep.linf;
    row.err_l2_plus = ep.l2;
    row.err_linf_minus = em.linf;
    row.err_l2_minus = em.l2;
    row.order_linf = row.order_l2 = std::numeric_limits<double>::quiet_NaN();
    if (!report.rows.empty()) {
      const RefinementRow& prev = report.rows.back();
      row.order_linf = observed_order(std::max(prev.err_linf_plus, prev.err_linf_minus),
                                      std::max(row.err_linf_plus, row.err_linf_minus));
      row.order_l2 = observed_order(std::max(prev.err_l2_plus, prev.err_l2_minus),
                                    std::max(row.err_l2_plus, row.err_l2_minus));
    }
    report.rows.push_back(row);
  }
  return report;
}

const char* const kRefinementHeader =
    "level,N,N_T,err_linf_plus,err_l2_plus,err_linf_minus,err_l2_minus,order_linf,order_l2";

void write_refinement_csv(std::ostream& os, const RefinementReport& report) {
  os << kRefinementHeader << '\n';
  for (const auto& r : report.rows) {
    os << r.level << ',' << r.grid << ',' << r.steps << ',' << format_double(r.err_linf_plus)
       << ',' << format_double(r.err_l2_plus) << ',' << format_double(r.err_linf_minus) << ','
       << format_double(r.err_l2_minus) << ',' << format_double(r.order_linf) << ','
       << format_double(r.order_l2) << '\n';
  }
}

}  // namespace ddflow
