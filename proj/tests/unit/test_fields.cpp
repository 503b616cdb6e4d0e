#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "ddflow/error.hpp"
#include "ddflow/field.hpp"
#include "oracles.hpp"

using namespace ddflow;

namespace {

GridField from_fn(int n, double (*fn)(int, int)) {
  GridField v(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = fn(i, j);
  return v;
}

}  // namespace

TEST(ThetaX1, ConstantGivesZero) {
  EXPECT_EQ(linf(theta_x1(GridField(5, 3.0))), 0.0);
  EXPECT_EQ(linf(theta_x2(GridField(5, 3.0))), 0.0);
}

TEST(ThetaX1, RampHasSeamColumn) {
  const int n = 8;
  GridField v(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = i * 1.0 / n;
  const GridField t = theta_x1(v);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == n - 1) {
        EXPECT_NEAR(t(i, j), -(n - 1.0), 1e-12);
      } else {
        EXPECT_NEAR(t(i, j), 1.0, 1e-12);
      }
    }
  }
}

TEST(ThetaX1, TelescopesOnCycles) {
  std::mt19937_64 rng(1);
  const GridField v = oracle::random_field(8, rng);
  const GridField t1 = theta_x1(v);
  const GridField t2 = theta_x2(v);
  for (int k = 0; k < 8; ++k) {
    double row = 0.0;
    double col = 0.0;
    for (int l = 0; l < 8; ++l) {
      row += t1(l, k);
      col += t2(k, l);
    }
    EXPECT_NEAR(row, 0.0, 1e-12);
    EXPECT_NEAR(col, 0.0, 1e-12);
  }
}

TEST(MeanX1, Examples) {
  for (double m : mean_x1(GridField(4, 2.5))) EXPECT_DOUBLE_EQ(m, 2.5);
  const GridField alt = from_fn(6, [](int i, int) { return i % 2 ? -1.0 : 1.0; });
  for (double m : mean_x1(alt)) EXPECT_NEAR(m, 0.0, 1e-15);
  std::mt19937_64 rng(2);
  const GridField v = oracle::random_field(7, rng);
  const auto means = mean_x1(v);
  for (int j = 0; j < 7; ++j) {
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += v(i, j);
    EXPECT_NEAR(means[j], s / 7.0, 1e-14);
  }
}

TEST(Deviation, Examples) {
  EXPECT_EQ(deviation_from_x1_mean(GridField(4, 1.0)), 0.0);
  const GridField h = from_fn(6, [](int, int j) { return std::sin(1.0 * j); });
  EXPECT_NEAR(deviation_from_x1_mean(h), 0.0, 1e-15);
}

TEST(Deviation, InvariantUnderColumnShift) {
  std::mt19937_64 rng(3);
  const GridField v = oracle::random_field(8, rng);
  const GridField h = from_fn(8, [](int, int j) { return 3.0 * j - 1.0; });
  EXPECT_NEAR(deviation_from_x1_mean(v + h), deviation_from_x1_mean(v), 1e-13);
}

TEST(Norms, Examples) {
  EXPECT_EQ(linf(GridField(4)), 0.0);
  EXPECT_EQ(l2_scaled(GridField(4)), 0.0);
  EXPECT_DOUBLE_EQ(linf(GridField(5, 1.0)), 1.0);
  EXPECT_NEAR(l2_scaled(GridField(5, 1.0)), 1.0, 1e-15);
  const GridField chk = from_fn(6, [](int i, int j) { return (i + j) % 2 ? -1.0 : 1.0; });
  EXPECT_EQ(linf(chk), 1.0);
  EXPECT_NEAR(l2_scaled(chk), 1.0, 1e-15);
}

// Rejection-sampled cyclic sequences with w[i+1] - w[i] + L dx >= 0 stay
// within 2L of their mean.
TEST(PoincareWirtinger, RandomAdmissibleSequences) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  int accepted = 0;
  for (int trial = 0; trial < 200000 && accepted < 400; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 14);
    const double L = 0.5 + std::abs(d(rng));
    const double dx = 1.0 / n;
    std::vector<double> w(n);
    for (double& x : w) x = 3.0 * L * d(rng) * (trial % 2 ? 1.0 : dx * n / 4.0);
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && w[(i + 1) % n] - w[i] + L * dx >= 0.0;
    if (!ok) continue;
    ++accepted;
    double mean = 0.0;
    for (double x : w) mean += x / n;
    double dev = 0.0;
    for (double x : w) dev = std::max(dev, std::abs(x - mean));
    EXPECT_LE(dev, 2.0 * L + 1e-12);
  }
  EXPECT_GT(accepted, 50);
}

TEST(State, CachesDifferenceStencils) {
  std::mt19937_64 rng(5);
  const GridField a = oracle::random_field(6, rng);
  const GridField b = oracle::random_field(6, rng);
  const State s(3, 0.5, a, b);
  EXPECT_EQ(s.n(), 3);
  EXPECT_EQ(oracle::max_abs_diff(s.theta_plus_x1(), theta_x1(a)), 0.0);
  EXPECT_EQ(oracle::max_abs_diff(s.theta_minus_x2(), theta_x2(b)), 0.0);
  EXPECT_EQ(oracle::max_abs_diff(s.rho_difference(), a - b), 0.0);
  EXPECT_THROW(State(0, 0.0, GridField(4), GridField(5)), Error);
}

TEST(Q1, ReproducesNodes) {
  std::mt19937_64 rng(6);
  const State p(0, 1.0, oracle::random_field(5, rng), oracle::random_field(5, rng));
  const State q(1, 1.5, oracle::random_field(5, rng), oracle::random_field(5, rng));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const auto [vp, vm] = q1_eval(p, q, 1.0, i * 0.2, j * 0.2);
      EXPECT_NEAR(vp, p.rho_plus()(i, j), 1e-14);
      EXPECT_NEAR(vm, p.rho_minus()(i, j), 1e-14);
    }
  }
}

TEST(Q1, LinearInX2Midpoint) {
  const int n = 8;
  GridField v(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = 2.0 * j;
  const State s(0, 0.0, v, v);
  const State t(1, 1.0, v, v);
  const auto [a, b] = q1_eval(s, t, 0.3, 2.5 / n, 3.5 / n);
  EXPECT_NEAR(a, 0.5 * (v(2, 3) + v(2, 4)), 1e-13);
  EXPECT_NEAR(b, a, 0.0);
}

TEST(Q1, MatchesTensorExpansion) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const State p(0, 0.2, oracle::random_field(6, rng), oracle::random_field(6, rng));
  const State q(1, 0.7, oracle::random_field(6, rng), oracle::random_field(6, rng));
  for (int k = 0; k < 200; ++k) {
    const double t = 0.2 + 0.5 * u(rng);
    const double x1 = u(rng);
    const double x2 = u(rng);
    const auto [vp, vm] = q1_eval(p, q, t, x1, x2);
    EXPECT_NEAR(vp, oracle::q1(p.rho_plus(), q.rho_plus(), 0.2, 0.7, t, x1, x2), 1e-12);
    EXPECT_NEAR(vm, oracle::q1(p.rho_minus(), q.rho_minus(), 0.2, 0.7, t, x1, x2), 1e-12);
  }
}

TEST(Q1, NoOvershoot) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const State p(0, 0.0, oracle::random_field(4, rng), oracle::random_field(4, rng));
  const State q(1, 1.0, oracle::random_field(4, rng), oracle::random_field(4, rng));
  const double lo = std::min({min_value(p.rho_plus()), min_value(q.rho_plus())});
  const double hi = std::max({max_value(p.rho_plus()), max_value(q.rho_plus())});
  for (int k = 0; k < 500; ++k) {
    const double v = q1_eval(p, q, u(rng), u(rng), u(rng)).first;
    EXPECT_GE(v, lo - 1e-14);
    EXPECT_LE(v, hi + 1e-14);
  }
}

TEST(Q1, TimeOutsideBracketThrows) {
  const State p(0, 0.0, GridField(4), GridField(4));
  const State q(1, 1.0, GridField(4), GridField(4));
  try {
    q1_eval(p, q, 1.5, 0.1, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTimeOutOfBracket);
  }
}

TEST(SnapshotCsv, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(9);
  GridField v = oracle::random_field(7, rng, 1e3);
  v(0, 0) = 1e-300;
  v(1, 1) = -0.1;
  v(2, 2) = std::nextafter(1.0, 2.0);
  std::stringstream ss;
  write_field_csv(ss, v, 1.98, "theta_plus");
  const Snapshot s = read_field_csv(ss);
  EXPECT_EQ(s.name, "theta_plus");
  EXPECT_EQ(s.t, 1.98);
  ASSERT_EQ(s.field.size(), 7);
  for (std::size_t k = 0; k < v.values().size(); ++k) EXPECT_EQ(s.field.values()[k], v.values()[k]);
}

TEST(SnapshotCsv, HeaderContract) {
  std::stringstream ss;
  write_field_csv(ss, GridField(2, 0.5), 0.25, "rho_plus");
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "# N=2 t=0.25 name=rho_plus");
  std::getline(ss, line);
  EXPECT_EQ(line, "0.5,0.5");
}

TEST(SnapshotCsv, MalformedInputThrowsParseError) {
  std::stringstream ss("# N=2 t=0 name=x\n1,2\n3\n");
  try {
    read_field_csv(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
  }
}

TEST(Lift, AddsLinearRamp) {
  const GridField l = lift_x1(GridField(4, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(l(3, 1), 1.0 + 2.0 * 0.75);
}
