#include "ddflow/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

namespace ddflow {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParseError:
    case ErrorKind::kValidationError:
    case ErrorKind::kInvalidParams:
    case ErrorKind::kUnknownPreset:
    case ErrorKind::kCflViolation:
    case ErrorKind::kIoError:
      return kExitConfig;
    default:
      return kExitNumerical;
  }
}

std::string error_line(const Error& e) {
  std::string msg = e.what();
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  std::string quoted;
  for (char c : msg) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  return "error kind=" + std::string(to_string(e.kind())) + " message=\"" + quoted + "\"";
}

std::string snapshot_file_name(const std::string& field, int step) {
  return field + "_n" + std::to_string(step) + ".csv";
}

int nearest_step(const SimParams& params, double t) {
  if (params.steps == 0) return 0;
  const long s = std::lround(t / params.dt());
  return static_cast<int>(std::clamp<long>(s, 0, params.steps));
}

Preset preset_from_config(const RunConfig& cfg) {
  Preset p;
  p.name = cfg.preset_name.empty() ? "custom" : cfg.preset_name;
  p.params = cfg.params;
  p.init_plus = cfg.init_plus;
  p.init_minus = cfg.init_minus;
  p.snapshot_times = cfg.snapshot_times;
  return p;
}

int thread_cap() {
  if (const char* env = std::getenv("SIM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::kIoError, "cannot create output directory " + dir);
  }
}

GridField snapshot_field(const std::string& name, const State& s, const GridField& lambda,
                         double L) {
  if (name == "rho_plus") return s.rho_plus();
  if (name == "rho_minus") return s.rho_minus();
  GridField v = name == "theta_plus"    ? s.theta_plus_x1()
                : name == "theta_minus" ? s.theta_minus_x1()
                                        : lambda;
  if (name != "velocity") {
    for (double& x : v.values()) x += L;
  }
  return v;
}

}  // namespace

RunResult cmd_run(const RunConfig& cfg) {
  ensure_dir(cfg.output_dir);
  const fs::path dir(cfg.output_dir);
  {
    std::ofstream os(dir / "config.cfg");
    os << to_config_text(cfg);
    if (!os) throw Error(ErrorKind::kIoError, "cannot write config.cfg");
  }

  std::vector<int> snap_steps;
  for (double t : cfg.snapshot_times) snap_steps.push_back(nearest_step(cfg.params, t));

  std::ofstream diag(dir / "diagnostics.csv");
  if (!diag) throw Error(ErrorKind::kIoError, "cannot write diagnostics.csv");
  diag << kDiagnosticsHeader << '\n';

  const SimParams& p = cfg.params;
  std::unique_ptr<VelocityOperator> op;
  const bool wants_velocity = std::find(cfg.emit_fields.begin(), cfg.emit_fields.end(),
                                        "velocity") != cfg.emit_fields.end();
  if (wants_velocity) op = std::make_unique<VelocityOperator>(p.order, p.grid);

  RunHooks hooks;
  hooks.on_state = [&](const State& s, const DiagnosticsRecord& rec) {
    write_diagnostics_row(diag, rec);
    diag.flush();
    if (!diag) throw std::runtime_error("write to diagnostics.csv failed");
    if (std::find(snap_steps.begin(), snap_steps.end(), s.n()) == snap_steps.end()) return;
    GridField lambda(s.size());
    if (op) lambda = op->lambda_plus(s.rho_difference(), p.stress(s.t()));
    for (const auto& f : cfg.emit_fields) {
      write_field_csv((dir / snapshot_file_name(f, s.n())).string(),
                      snapshot_field(f, s, lambda, p.total_density), s.t(), f);
    }
  };
  return run(p, cfg.init_plus.sample(p.grid), cfg.init_minus.sample(p.grid), hooks);
}

RunResult cmd_preset(const std::string& name, const std::string& out_dir) {
  RunConfig cfg = config_from_preset(name);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  return cmd_run(cfg);
}

RefinementReport cmd_refine(const RunConfig& cfg, int levels) {
  ensure_dir(cfg.output_dir);
  const RefinementReport report =
      refinement_study(preset_from_config(cfg), levels, thread_cap());
  std::ofstream os(fs::path(cfg.output_dir) / "refinement.csv");
  write_refinement_csv(os, report);
  if (!os) throw Error(ErrorKind::kIoError, "cannot write refinement.csv");
  return report;
}

namespace {

struct SnapshotFile {
  std::string field;
  int step = 0;
  fs::path path;
};

std::vector<SnapshotFile> list_snapshots(const fs::path& dir) {
  static const std::regex pattern(R"(([a-z_]+)_n(\d+)\.csv)");
  std::vector<SnapshotFile> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) continue;
    const std::string field = m[1];
    if (std::find(field_names().begin(), field_names().end(), field) == field_names().end()) {
      continue;
    }
    out.push_back({field, std::stoi(m[2]), entry.path()});
  }
  std::sort(out.begin(), out.end(), [](const SnapshotFile& a, const SnapshotFile& b) {
    return a.step != b.step ? a.step < b.step : a.field < b.field;
  });
  return out;
}

AuditResult violation(const std::string& what, const std::string& detail) {
  return {false, what, detail};
}

}  // namespace

AuditResult cmd_audit(const std::string& dir_str) {
  const fs::path dir(dir_str);
  if (!fs::is_directory(dir)) throw Error(ErrorKind::kIoError, "no run directory " + dir_str);
  const RunConfig cfg = load_config((dir / "config.cfg").string());
  const SimParams& p = cfg.params;
  const double L = p.total_density;

  std::ifstream is(dir / "diagnostics.csv");
  if (!is) throw Error(ErrorKind::kIoError, "missing diagnostics.csv in " + dir_str);
  const std::vector<DiagnosticsRecord> rows = read_diagnostics_csv(is);
  if (rows.empty() || rows.front().n != 0) {
    throw Error(ErrorKind::kParseError, "diagnostics.csv must start with the n = 0 row");
  }

  BoundContext ctx;
  ctx.order = p.order;
  ctx.total_density = L;
  ctx.stress_sup = p.stress.sup_norm(p.final_time);
  ctx.dt = p.dt();
  ctx.initial_linf = std::max(rows[0].linf_rho_plus, rows[0].linf_rho_minus);
  ctx.initial_entropy_f = rows[0].entropy_f;

  std::map<int, std::size_t> index;
  std::vector<double> cumulative(rows.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const DiagnosticsRecord& r = rows[k];
    if (k > 0) acc += ctx.dt * r.dissipation;
    cumulative[k] = acc;
    index[r.n] = k;
    const BoundFlags f = check_bounds(ctx, k > 0 ? &rows[k - 1] : nullptr, r, acc);
    if (!r.finite()) return violation("non-finite diagnostics", "step " + std::to_string(r.n));
    if (!f.all()) {
      return violation(f.first_failure(), "diagnostics.csv step " + std::to_string(r.n));
    }
  }

  // Snapshots are checked directly; paired densities are re-measured and
  // must reproduce the logged diagnostics.
  const double vbound = ctx.velocity_bound();
  std::map<int, std::map<std::string, GridField>> by_step;
  for (const auto& snap : list_snapshots(dir)) {
    const Snapshot s = read_field_csv(snap.path.string());
    const std::string where = snap.path.filename().string();
    if (s.field.size() != p.grid) return violation("snapshot grid", where);
    const double t = s.t;
    if (snap.field == "theta_plus" || snap.field == "theta_minus") {
      if (min_value(s.field) < -1e-12) return violation("gradient positivity", where);
    } else if (snap.field == "velocity") {
      if (linf(s.field) > vbound + 1e-10) return violation("velocity bound", where);
    } else {
      const GridField theta = theta_x1(s.field);
      if (min_value(theta) + L < -1e-12) return violation("gradient positivity", where);
      if (linf(s.field) > ctx.initial_linf + L * vbound * t + 1e-8) {
        return violation("linf bound", where);
      }
      if (deviation_from_x1_mean(s.field) > 2.0 * L + 1e-10) {
        return violation("deviation bound", where);
      }
    }
    by_step[snap.step].emplace(snap.field, s.field);
  }

  const VelocityOperator op(p.order, p.grid);
  for (auto& [step, fields] : by_step) {
    if (!fields.count("rho_plus") || !fields.count("rho_minus")) continue;
    const auto it = index.find(step);
    if (it == index.end()) return violation("snapshot without diagnostics", std::to_string(step));
    const DiagnosticsRecord& logged = rows[it->second];
    const State s(step, logged.t, fields.at("rho_plus"), fields.at("rho_minus"));
    DiagnosticsRecord r = measure(s, L, op.sigma_hat(),
                                  op.lambda_plus(s.rho_difference(), p.stress(logged.t)),
                                  logged.fp_iters);
    const double cum = it->second > 0 ? cumulative[it->second - 1] + ctx.dt * r.dissipation : 0.0;
    const BoundFlags f =
        check_bounds(ctx, it->second > 0 ? &rows[it->second - 1] : nullptr, r, cum);
    const std::string where = "snapshot step " + std::to_string(step);
    if (!f.all()) return violation(f.first_failure(), where);
    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
    };
    if (!close(r.linf_rho_plus, logged.linf_rho_plus) ||
        !close(r.linf_rho_minus, logged.linf_rho_minus) ||
        !close(r.entropy_f, logged.entropy_f) || !close(r.dissipation, logged.dissipation)) {
      return violation("snapshot mismatch", where + " disagrees with diagnostics.csv");
    }
  }
  return {};
}

}  // namespace ddflow
