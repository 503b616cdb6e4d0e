#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ddflow {

/// Real-valued field on the N x N periodic grid of the unit torus.
///
/// Node (i, j) sits at (i * dx, j * dx) with dx = 1/N. Storage is row-major
/// in i, so row i holds the N values along x2 for fixed x1. Indices passed to
/// `at` are reduced modulo N; `operator()` expects them in [0, N).
class GridField {
 public:
  GridField() = default;
  explicit GridField(int n, double fill = 0.0);
  GridField(int n, std::vector<double> values);

  template <class F>
  static GridField sample(int n, F&& fn) {
    GridField out(n);
    const double dx = 1.0 / n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out(i, j) = fn(i * dx, j * dx);
    }
    return out;
  }

  int size() const noexcept { return n_; }
  double dx() const noexcept { return 1.0 / n_; }

  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_ + j]; }

  double at(int i, int j) const { return (*this)(wrap(i), wrap(j)); }
  int wrap(int i) const noexcept { return ((i % n_) + n_) % n_; }

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  GridField& operator+=(const GridField& other);
  GridField& operator-=(const GridField& other);
  GridField& operator*=(double s);

  friend GridField operator+(GridField a, const GridField& b) { return a += b; }
  friend GridField operator-(GridField a, const GridField& b) { return a -= b; }
  friend GridField operator*(GridField a, double s) { return a *= s; }
  friend GridField operator*(double s, GridField a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

void require_same_size(const GridField& a, const GridField& b);

/// Forward difference along x1 divided by dx: (v[i+1,j] - v[i,j]) / dx.
GridField theta_x1(const GridField& v);
/// Forward difference along x2 divided by dx: (v[i,j+1] - v[i,j]) / dx.
GridField theta_x2(const GridField& v);

/// x1-mean of each column j: sum_i dx * v[i,j].
std::vector<double> mean_x1(const GridField& v);

/// max_{i,j} |v[i,j] - <v>_j|.
double deviation_from_x1_mean(const GridField& v);

double linf(const GridField& v);
/// sqrt(sum dx^2 v^2), the discrete L2 norm on the unit torus.
double l2_scaled(const GridField& v);
double min_value(const GridField& v);
double max_value(const GridField& v);

/// Non-periodic lift rho[i,j] + L * i * dx for output only.
GridField lift_x1(const GridField& v, double total_density);

/// Scheme state at time index n.
///
/// The x1/x2 difference stencils are cached at construction; the densities
/// are immutable, so the caches cannot go stale.
class State {
 public:
  State() = default;
  State(int n, double t, GridField rho_plus, GridField rho_minus);

  int n() const noexcept { return n_; }
  double t() const noexcept { return t_; }
  int size() const noexcept { return rho_plus_.size(); }

  const GridField& rho_plus() const noexcept { return rho_plus_; }
  const GridField& rho_minus() const noexcept { return rho_minus_; }
  const GridField& theta_plus_x1() const noexcept { return theta_plus_x1_; }
  const GridField& theta_minus_x1() const noexcept { return theta_minus_x1_; }
  const GridField& theta_plus_x2() const noexcept { return theta_plus_x2_; }
  const GridField& theta_minus_x2() const noexcept { return theta_minus_x2_; }

  GridField rho_difference() const { return rho_plus_ - rho_minus_; }

 private:
  int n_ = 0;
  double t_ = 0.0;
  GridField rho_plus_;
  GridField rho_minus_;
  GridField theta_plus_x1_;
  GridField theta_minus_x1_;
  GridField theta_plus_x2_;
  GridField theta_minus_x2_;
};

/// Space-time Q1 reconstruction between two consecutive states, bilinear in
/// space and linear in time. Throws kTimeOutOfBracket when t lies outside
/// [prev.t(), next.t()].
std::pair<double, double> q1_eval(const State& prev, const State& next, double t,
                                  double x1, double x2);

/// Bilinear interpolation of a single field at (x1, x2), periodic.
double bilinear_eval(const GridField& v, double x1, double x2);

// Snapshot CSV: header "# N=<N> t=<t> name=<name>", then one line per i.
struct Snapshot {
  std::string name;
  double t = 0.0;
  GridField field;
};

void write_field_csv(std::ostream& os, const GridField& v, double t,
                     const std::string& name);
void write_field_csv(const std::string& path, const GridField& v, double t,
                     const std::string& name);
Snapshot read_field_csv(std::istream& is);
Snapshot read_field_csv(const std::string& path);

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double x);

}  // namespace ddflow
