#include <gtest/gtest.h>

#include <random>

#include "ddflow/error.hpp"
#include "ddflow/spectral.hpp"
#include "oracles.hpp"

using namespace ddflow;

TEST(KernelCoeff, Examples) {
  EXPECT_EQ(kernel_coeff(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(kernel_coeff(1, 1), 0.25);
  EXPECT_EQ(kernel_coeff(3, 0), 0.0);
  EXPECT_DOUBLE_EQ(kernel_coeff(2, 1), 0.16);
  EXPECT_DOUBLE_EQ(kernel_coeff(-2, 1), 0.16);
}

TEST(KernelCoeff, BoundedByQuarter) {
  for (int a = -20; a <= 20; ++a) {
    for (int b = -20; b <= 20; ++b) {
      EXPECT_GE(kernel_coeff(a, b), 0.0);
      EXPECT_LE(kernel_coeff(a, b), 0.25);
    }
  }
}

TEST(FejerWeight, Examples) {
  EXPECT_EQ(fejer_weight(0, 4), 1.0);
  EXPECT_EQ(fejer_weight(2, 4), 0.5);
  EXPECT_EQ(fejer_weight(-2, 4), 0.5);
  EXPECT_EQ(fejer_weight(4, 4), 0.0);
  EXPECT_EQ(fejer_weight(7, 4), 0.0);
}

TEST(SigmaCoeff, Examples) {
  EXPECT_DOUBLE_EQ(sigma_coeff(1, 1, 2), 0.0625);
  EXPECT_EQ(sigma_coeff(1, 1, 1), 0.0);
  EXPECT_EQ(sigma_coeff(0, 5, 8), 0.0);
}

TEST(SigmaCoeff, SupportedOnOpenSquare) {
  for (int order = 1; order <= 6; ++order) {
    for (int a = -8; a <= 8; ++a) {
      for (int b = -8; b <= 8; ++b) {
        const double c = sigma_coeff(a, b, order);
        EXPECT_GE(c, 0.0);
        if (std::abs(a) >= order || std::abs(b) >= order) EXPECT_EQ(c, 0.0);
      }
    }
  }
}

TEST(SignedFrequency, NyquistMapsPositive) {
  EXPECT_EQ(signed_frequency(0, 8), 0);
  EXPECT_EQ(signed_frequency(3, 8), 3);
  EXPECT_EQ(signed_frequency(4, 8), 4);
  EXPECT_EQ(signed_frequency(5, 8), -3);
  EXPECT_EQ(signed_frequency(7, 8), -1);
  EXPECT_EQ(signed_frequency(2, 5), 2);
  EXPECT_EQ(signed_frequency(3, 5), -2);
}

TEST(Dft, ConstantField) {
  const SpectrumField c = dft2(GridField(6, 5.0));
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const double expect = (a == 0 && b == 0) ? 5.0 : 0.0;
      EXPECT_NEAR(std::abs(c(a, b) - Complex(expect, 0.0)), 0.0, 1e-13);
    }
  }
}

TEST(Dft, CosineAlongX1) {
  const int n = 8;
  GridField v(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = std::cos(2.0 * std::numbers::pi * i / n);
  const SpectrumField c = dft2(v);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double expect = (b == 0 && (a == 1 || a == n - 1)) ? 0.5 : 0.0;
      EXPECT_NEAR(std::abs(c(a, b) - Complex(expect, 0.0)), 0.0, 1e-13) << a << "," << b;
    }
  }
}

class SpectralOracle : public ::testing::TestWithParam<int> {};

TEST_P(SpectralOracle, DftMatchesDirectSum) {
  const int n = GetParam();
  std::mt19937_64 rng(100 + n);
  const GridField v = oracle::random_field(n, rng);
  const SpectrumField c = dft2(v);
  const auto ref = oracle::dft(v);
  for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_LE(std::abs(c.coeffs()[k] - ref[k]), 1e-10);
  const GridField back = idft2(c);
  EXPECT_LE(oracle::max_abs_diff(back, v), 1e-10);
  EXPECT_LE(oracle::max_abs_diff(oracle::idft(ref, n), back), 1e-10);
}

TEST_P(SpectralOracle, ConvolutionMatchesDirectSum) {
  const int n = GetParam();
  std::mt19937_64 rng(200 + n);
  const GridField v = oracle::random_field(n, rng);
  const GridField w = oracle::random_field(n, rng);
  EXPECT_LE(oracle::max_abs_diff(convolve_scaled(v, w), oracle::convolve(v, w)), 1e-10);
}

TEST_P(SpectralOracle, Parseval) {
  const int n = GetParam();
  std::mt19937_64 rng(300 + n);
  const GridField v = oracle::random_field(n, rng);
  const SpectrumField c = dft2(v);
  double lhs = 0.0;
  for (const auto& z : c.coeffs()) lhs += std::norm(z);
  double rhs = 0.0;
  for (double x : v.values()) rhs += x * x;
  rhs /= static_cast<double>(n) * n;
  EXPECT_LE(std::abs(lhs - rhs), 1e-10 * rhs);
}

INSTANTIATE_TEST_SUITE_P(Sizes, SpectralOracle, ::testing::Values(2, 3, 4, 5, 8, 16));

TEST(Convolve, ZeroAndConstant) {
  std::mt19937_64 rng(7);
  const GridField v = oracle::random_field(8, rng);
  EXPECT_EQ(linf(convolve_scaled(v, GridField(8))), 0.0);
  double mass = 0.0;
  for (double x : v.values()) mass += x;
  mass /= 64.0;
  const GridField c = convolve_scaled(GridField(8, 1.0), v);
  for (double x : c.values()) EXPECT_NEAR(x, mass, 1e-13);
}

TEST(Convolve, SizeMismatchThrows) {
  try {
    convolve_scaled(GridField(4), GridField(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeMismatch);
  }
}

TEST(SigmaField, OrderOneIsZero) {
  for (int n : {1, 3, 8}) EXPECT_EQ(linf(build_sigma_field(1, n).values), 0.0);
}

TEST(SigmaField, OrderTwoOnEightGrid) {
  const SigmaField s = build_sigma_field(2, 8);
  EXPECT_LE(linf(s.values), 4.0);
  EXPECT_NEAR(s.values(0, 0), 0.25, 1e-14);
  EXPECT_NEAR(s.values(0, 0), oracle::sigma_at(2, 0.0, 0.0), 1e-14);
}

TEST(SigmaField, MatchesPointwiseCosineSeries) {
  for (int order : {2, 3, 5}) {
    const int n = 3 * order + 1;
    const SigmaField s = build_sigma_field(order, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        EXPECT_NEAR(s.values(i, j), oracle::sigma_at(order, i * 1.0 / n, j * 1.0 / n), 1e-12);
  }
}

TEST(SigmaField, RejectsOrderAboveGrid) {
  try {
    build_sigma_field(5, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidParams);
  }
  EXPECT_THROW(build_sigma_field(0, 4), Error);
}

TEST(SigmaField, SupBoundedBySquareOfOrder) {
  for (int n = 1; n <= 24; ++n) {
    for (int order = 1; order <= n; ++order) {
      EXPECT_LE(linf(build_sigma_field(order, n).values), 1.0 * order * order)
          << "M=" << order << " N=" << n;
    }
  }
}

TEST(SigmaCoeffs, OrderOneVanishes) {
  const SpectrumField c = sigma_dft_coeffs(1, 6);
  for (const auto& z : c.coeffs()) EXPECT_EQ(std::abs(z), 0.0);
}

TEST(SigmaCoeffs, EqualWeightedAliasingSum) {
  for (auto [order, n] : {std::pair{2, 4}, {3, 4}, {4, 4}, {3, 5}, {6, 8}, {5, 16}}) {
    const SpectrumField c = sigma_dft_coeffs(order, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        EXPECT_NEAR(c(a, b).real(), oracle::aliased_sigma_coeff(order, n, a, b), 1e-10)
            << "M=" << order << " N=" << n << " m=(" << a << "," << b << ")";
  }
  EXPECT_NEAR(sigma_dft_coeffs(2, 4)(1, 1).real(), 0.0625, 1e-12);
}

TEST(SigmaCoeffs, RealNonnegativeBoundedSymmetric) {
  for (int n : {4, 7, 12}) {
    for (int order = 1; order <= n; ++order) {
      const SpectrumField c = sigma_dft_coeffs(order, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          EXPECT_EQ(c(a, b).imag(), 0.0);
          EXPECT_GE(c(a, b).real(), -1e-12);
          EXPECT_LE(c(a, b).real(), 4.0);
          EXPECT_NEAR(c(a, b).real(), c.at(-a, -b).real(), 1e-12);
        }
      }
    }
  }
}

TEST(SigmaCoeffs, AnnihilatesX1IndependentFields) {
  std::mt19937_64 rng(11);
  for (int order : {2, 4, 8}) {
    const int n = 16;
    const GridField sigma = build_sigma_field(order, n).values;
    std::uniform_real_distribution<double> d(-1, 1);
    std::vector<double> h(n);
    for (double& x : h) x = d(rng);
    GridField v(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v(i, j) = h[j];
    EXPECT_LE(linf(convolve_scaled(sigma, v)), 1e-10);
  }
}
