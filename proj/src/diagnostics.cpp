#include "ddflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ddflow/error.hpp"

namespace ddflow {

double entropy_f(double x) { return x * std::log(x + std::numbers::e); }

double entropy_g(double x) {
  if (x < 1e-300) return 0.0;
  return x * std::log(x);
}

namespace {

double entropy_sum(const State& state, double total_density, EntropyKind which,
                   bool strict) {
  const double w = state.rho_plus().dx() * state.rho_plus().dx();
  double sum = 0.0;
  for (const GridField* theta : {&state.theta_plus_x1(), &state.theta_minus_x1()}) {
    for (double th : theta->values()) {
      double x = th + total_density;
      if (strict && x < -1e-12) {
        throw Error(ErrorKind::kNegativeArgument,
                    "entropy argument theta + L = " + format_double(x) + " below slack");
      }
      x = std::max(x, 0.0);
      sum += which == EntropyKind::kF ? entropy_f(x) : entropy_g(x);
    }
  }
  return w * sum;
}

}  // namespace

double entropy(const State& state, double total_density, EntropyKind which) {
  return entropy_sum(state, total_density, which, true);
}

double dissipation(const State& state, const SpectrumField& sigma_hat) {
  const SpectrumField c = dft2(state.theta_plus_x1() - state.theta_minus_x1());
  if (c.size() != sigma_hat.size()) {
    throw Error(ErrorKind::kSizeMismatch, "dissipation: sigma spectrum size mismatch");
  }
  double d = 0.0;
  for (std::size_t k = 0; k < c.coeffs().size(); ++k) {
    d += sigma_hat.coeffs()[k].real() * std::norm(c.coeffs()[k]);
  }
  return d;
}

VelocityNorms velocity_h1_diagnostics(const GridField& rho_diff,
                                      const SpectrumField& sigma_hat) {
  const SpectrumField c = dft2(rho_diff);
  if (c.size() != sigma_hat.size()) {
    throw Error(ErrorKind::kSizeMismatch, "velocity norms: sigma spectrum size mismatch");
  }
  const int n = c.size();
  const double two_pi = 2.0 * std::numbers::pi;
  double l2 = 0.0;
  double h1 = 0.0;
  for (int m1 = 0; m1 < n; ++m1) {
    const double k1 = two_pi * signed_frequency(m1, n);
    for (int m2 = 0; m2 < n; ++m2) {
      const double k2 = two_pi * signed_frequency(m2, n);
      const double a = std::norm(sigma_hat(m1, m2).real() * c(m1, m2));
      l2 += a;
      h1 += (k1 * k1 + k2 * k2) * a;
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

std::pair<GridField, GridField> discrete_time_derivative(const State& prev,
                                                         const State& next, double dt) {
  require_same_size(prev.rho_plus(), next.rho_plus());
  GridField tp = next.rho_plus() - prev.rho_plus();
  GridField tm = next.rho_minus() - prev.rho_minus();
  tp *= 1.0 / dt;
  tm *= 1.0 / dt;
  return {std::move(tp), std::move(tm)};
}

double sigma_derivative_bound(int order) {
  const double m = order;
  return 2.0 * std::numbers::pi / 3.0 * m * (m - 1.0) * (m + 1.0);
}

SigmaSlopeCheck sigma_derivative_bound_check(int order) {
  const int fine = 4 * order;
  const SigmaField sigma = build_sigma_field(order, fine);
  const GridField s1 = theta_x1(sigma.values);
  const GridField s2 = theta_x2(sigma.values);
  SigmaSlopeCheck out;
  out.max_slope = std::max(linf(s1), linf(s2));
  out.bound = sigma_derivative_bound(order);
  out.ok = out.max_slope <= out.bound + 1e-6 * order * order * order;
  return out;
}

std::string BoundFlags::first_failure() const {
  if (!positivity) return "gradient positivity";
  if (!linf) return "linf bound";
  if (!deviation) return "deviation bound";
  if (!velocity) return "velocity bound";
  if (!dissipation) return "dissipation sign";
  if (!entropy_step) return "one-step entropy";
  if (!entropy_cumulative) return "cumulative entropy";
  return {};
}

bool DiagnosticsRecord::finite() const {
  for (double x : {t, entropy_f, entropy_g, dissipation, linf_rho_plus, linf_rho_minus,
                   deviation_plus, deviation_minus, theta_min_plus_L, lambda_max,
                   velocity_l2, velocity_h1_semi}) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

BoundFlags check_bounds(const BoundContext& ctx, const DiagnosticsRecord* prev,
                        const DiagnosticsRecord& cur, double cumulative_dissipation) {
  const double L = ctx.total_density;
  BoundFlags f;
  f.linf = std::max(cur.linf_rho_plus, cur.linf_rho_minus) <=
           ctx.initial_linf + L * ctx.velocity_bound() * cur.t + 1e-8;
  f.deviation = std::max(cur.deviation_plus, cur.deviation_minus) <= 2.0 * L + 1e-10;
  f.positivity = cur.theta_min_plus_L >= -1e-12;
  f.velocity = cur.lambda_max <= ctx.velocity_bound() + 1e-10;
  f.dissipation = cur.dissipation >= -1e-12;
  if (prev) {
    f.entropy_step = cur.entropy_g + ctx.dt * cur.dissipation <= prev->entropy_g + 1e-8;
  }
  const double budget = 2.0 * (entropy_f(std::numbers::e) + L * std::numbers::ln2);
  f.entropy_cumulative =
      cur.entropy_f + cumulative_dissipation <= ctx.initial_entropy_f + budget + 1e-6;
  return f;
}

DiagnosticsRecord measure(const State& state, double total_density,
                          const SpectrumField& sigma_hat, const GridField& lambda_plus,
                          int fp_iters) {
  DiagnosticsRecord r;
  r.n = state.n();
  r.t = state.t();
  r.theta_min_plus_L =
      std::min(min_value(state.theta_plus_x1()), min_value(state.theta_minus_x1())) +
      total_density;
  // Outside the admissible set (practical mode only) the arguments are floored
  // so the record stays finite; the positivity flag carries the failure.
  r.entropy_f = entropy_sum(state, total_density, EntropyKind::kF, false);
  r.entropy_g = entropy_sum(state, total_density, EntropyKind::kG, false);
  r.dissipation = dissipation(state, sigma_hat);
  r.linf_rho_plus = linf(state.rho_plus());
  r.linf_rho_minus = linf(state.rho_minus());
  r.deviation_plus = deviation_from_x1_mean(state.rho_plus());
  r.deviation_minus = deviation_from_x1_mean(state.rho_minus());
  r.lambda_max = linf(lambda_plus);
  const VelocityNorms v = velocity_h1_diagnostics(state.rho_difference(), sigma_hat);
  r.velocity_l2 = v.l2;
  r.velocity_h1_semi = v.h1_semi;
  r.fp_iters = fp_iters;
  return r;
}

const char* const kDiagnosticsHeader =
    "n,t,entropy_f,entropy_g,dissipation,linf_rho_plus,linf_rho_minus,deviation_plus,"
    "deviation_minus,theta_min_plus_L,lambda_max,velocity_l2,velocity_h1_semi,fp_iters,"
    "bounds_ok";

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r) {
  os << r.n << ',' << format_double(r.t) << ',' << format_double(r.entropy_f) << ','
     << format_double(r.entropy_g) << ',' << format_double(r.dissipation) << ','
     << format_double(r.linf_rho_plus) << ',' << format_double(r.linf_rho_minus) << ','
     << format_double(r.deviation_plus) << ',' << format_double(r.deviation_minus) << ','
     << format_double(r.theta_min_plus_L) << ',' << format_double(r.lambda_max) << ','
     << format_double(r.velocity_l2) << ',' << format_double(r.velocity_h1_semi) << ','
     << r.fp_iters << ',' << (r.bounds.all() ? 1 : 0) << '\n';
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kDiagnosticsHeader) {
    throw Error(ErrorKind::kParseError, "diagnostics.csv: unexpected header");
  }
  std::vector<DiagnosticsRecord> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 15) {
      throw Error(ErrorKind::kParseError,
                  "diagnostics.csv line " + std::to_string(lineno) + ": expected 15 columns");
    }
    auto num = [&](int k) { return std::strtod(cells[k].c_str(), nullptr); };
    DiagnosticsRecord r;
    r.n = std::stoi(cells[0]);
    r.t = num(1);
    r.entropy_f = num(2);
    r.entropy_g = num(3);
    r.dissipation = num(4);
    r.linf_rho_plus = num(5);
    r.linf_rho_minus = num(6);
    r.deviation_plus = num(7);
    r.deviation_minus = num(8);
    r.theta_min_plus_L = num(9);
    r.lambda_max = num(10);
    r.velocity_l2 = num(11);
    r.velocity_h1_semi = num(12);
    r.fp_iters = std::stoi(cells[13]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ddflow
