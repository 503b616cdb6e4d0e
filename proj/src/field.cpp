#include "ddflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ddflow/error.hpp"

namespace ddflow {

GridField::GridField(int n, double fill)
    : n_(n), values_(static_cast<std::size_t>(n) * n, fill) {
  if (n < 1) throw Error(ErrorKind::kInvalidParams, "grid size must be >= 1");
}

GridField::GridField(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n < 1) throw Error(ErrorKind::kInvalidParams, "grid size must be >= 1");
  if (values_.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::kSizeMismatch, "value count does not match N*N");
  }
}

GridField& GridField::operator+=(const GridField& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

GridField& GridField::operator-=(const GridField& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

GridField& GridField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

void require_same_size(const GridField& a, const GridField& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kSizeMismatch,
                "grid sizes differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
}

GridField theta_x1(const GridField& v) {
  const int n = v.size();
  GridField out(n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n;
    for (int j = 0; j < n; ++j) out(i, j) = (v(ip, j) - v(i, j)) * n;
  }
  return out;
}

GridField theta_x2(const GridField& v) {
  const int n = v.size();
  GridField out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = (v(i, (j + 1) % n) - v(i, j)) * n;
  }
  return out;
}

std::vector<double> mean_x1(const GridField& v) {
  const int n = v.size();
  std::vector<double> mean(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) mean[j] += v(i, j);
  }
  for (double& m : mean) m *= v.dx();
  return mean;
}

double deviation_from_x1_mean(const GridField& v) {
  const auto mean = mean_x1(v);
  double dev = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    for (int j = 0; j < v.size(); ++j) dev = std::max(dev, std::abs(v(i, j) - mean[j]));
  }
  return dev;
}

double linf(const GridField& v) {
  double m = 0.0;
  for (double x : v.values()) m = std::max(m, std::abs(x));
  return m;
}

double l2_scaled(const GridField& v) {
  double s = 0.0;
  for (double x : v.values()) s += x * x;
  return std::sqrt(s) * v.dx();
}

double min_value(const GridField& v) {
  return *std::min_element(v.values().begin(), v.values().end());
}

double max_value(const GridField& v) {
  return *std::max_element(v.values().begin(), v.values().end());
}

GridField lift_x1(const GridField& v, double total_density) {
  GridField out = v;
  for (int i = 0; i < v.size(); ++i) {
    for (int j = 0; j < v.size(); ++j) out(i, j) += total_density * i * v.dx();
  }
  return out;
}

State::State(int n, double t, GridField rho_plus, GridField rho_minus)
    : n_(n), t_(t), rho_plus_(std::move(rho_plus)), rho_minus_(std::move(rho_minus)) {
  require_same_size(rho_plus_, rho_minus_);
  theta_plus_x1_ = theta_x1(rho_plus_);
  theta_minus_x1_ = theta_x1(rho_minus_);
  theta_plus_x2_ = theta_x2(rho_plus_);
  theta_minus_x2_ = theta_x2(rho_minus_);
}

namespace {

struct CellCoords {
  int i, j;
  double s1, s2;  // local coordinates in [0,1)
};

CellCoords locate(int n, double x1, double x2) {
  const double u1 = (x1 - std::floor(x1)) * n;
  const double u2 = (x2 - std::floor(x2)) * n;
  int i = static_cast<int>(std::floor(u1));
  int j = static_cast<int>(std::floor(u2));
  double s1 = u1 - i;
  double s2 = u2 - j;
  // Guard against u == n from rounding.
  if (i >= n) { i = n - 1; s1 = 1.0; }
  if (j >= n) { j = n - 1; s2 = 1.0; }
  return {i, j, s1, s2};
}

double bilinear(const GridField& v, const CellCoords& c) {
  return c.s1 * c.s2 * v.at(c.i + 1, c.j + 1) +
         (1.0 - c.s1) * c.s2 * v.at(c.i, c.j + 1) +
         c.s1 * (1.0 - c.s2) * v.at(c.i + 1, c.j) +
         (1.0 - c.s1) * (1.0 - c.s2) * v.at(c.i, c.j);
}

}  // namespace

double bilinear_eval(const GridField& v, double x1, double x2) {
  return bilinear(v, locate(v.size(), x1, x2));
}

std::pair<double, double> q1_eval(const State& prev, const State& next, double t,
                                  double x1, double x2) {
  require_same_size(prev.rho_plus(), next.rho_plus());
  const double span = next.t() - prev.t();
  constexpr double kSlack = 1e-12;
  if (t < prev.t() - kSlack * std::max(1.0, std::abs(prev.t())) ||
      t > next.t() + kSlack * std::max(1.0, std::abs(next.t()))) {
    throw Error(ErrorKind::kTimeOutOfBracket, "q1_eval: time outside [t_n, t_{n+1}]");
  }
  const double w = span > 0.0 ? std::clamp((t - prev.t()) / span, 0.0, 1.0) : 0.0;
  const CellCoords c = locate(prev.size(), x1, x2);
  return {w * bilinear(next.rho_plus(), c) + (1.0 - w) * bilinear(prev.rho_plus(), c),
          w * bilinear(next.rho_minus(), c) + (1.0 - w) * bilinear(prev.rho_minus(), c)};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(std::ostream& os, const GridField& v, double t,
                     const std::string& name) {
  os << "# N=" << v.size() << " t=" << format_double(t) << " name=" << name << '\n';
  for (int i = 0; i < v.size(); ++i) {
    for (int j = 0; j < v.size(); ++j) {
      if (j) os << ',';
      os << format_double(v(i, j));
    }
    os << '\n';
  }
}

void write_field_csv(const std::string& path, const GridField& v, double t,
                     const std::string& name) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::kIoError, "cannot open " + path + " for writing");
  write_field_csv(os, v, t, name);
  if (!os) throw Error(ErrorKind::kIoError, "write failed: " + path);
}

Snapshot read_field_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# ", 0) != 0) {
    throw Error(ErrorKind::kParseError, "snapshot: missing '# N=.. t=.. name=..' header");
  }
  int n = 0;
  Snapshot snap;
  std::istringstream hs(header.substr(2));
  std::string tok;
  while (hs >> tok) {
    if (tok.rfind("N=", 0) == 0) n = std::stoi(tok.substr(2));
    else if (tok.rfind("t=", 0) == 0) snap.t = std::stod(tok.substr(2));
    else if (tok.rfind("name=", 0) == 0) snap.name = tok.substr(5);
  }
  if (n < 1) throw Error(ErrorKind::kParseError, "snapshot: bad N in header");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) {
      throw Error(ErrorKind::kParseError, "snapshot: expected " + std::to_string(n) + " rows");
    }
    std::istringstream ls(line);
    std::string cell;
    int count = 0;
    while (std::getline(ls, cell, ',')) {
      values.push_back(std::strtod(cell.c_str(), nullptr));
      ++count;
    }
    if (count != n) {
      throw Error(ErrorKind::kParseError,
                  "snapshot: row " + std::to_string(i) + " has " + std::to_string(count) +
                      " values, expected " + std::to_string(n));
    }
  }
  snap.field = GridField(n, std::move(values));
  return snap;
}

Snapshot read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::kIoError, "cannot open " + path);
  return read_field_csv(is);
}

}  // namespace ddflow
