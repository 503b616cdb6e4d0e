#pragma once

#include <complex>
#include <vector>

#include "ddflow/field.hpp"

namespace ddflow {

using Complex = std::complex<double>;

/// Fourier coefficient m1^2 m2^2 / |m|^4 of the kernel realizing R1^2 R2^2;
/// zero at the origin and on both axes.
double kernel_coeff(int m1, int m2);

/// Fejer (triangular) weight 1 - |p|/M for |p| < M, else 0.
double fejer_weight(int p, int order);

/// Coefficient of the Fejer-smoothed kernel: product weight times kernel_coeff.
double sigma_coeff(int m1, int m2, int order);

/// Signed representative of m in (-N/2, N/2]; the Nyquist index maps to +N/2.
int signed_frequency(int m, int n);

/// DFT coefficients over m in (Z/NZ)^2 with the 1/N^2 forward normalization.
class SpectrumField {
 public:
  SpectrumField() = default;
  explicit SpectrumField(int n);
  SpectrumField(int n, std::vector<Complex> coeffs);

  int size() const noexcept { return n_; }
  Complex& operator()(int m1, int m2) { return c_[static_cast<std::size_t>(m1) * n_ + m2]; }
  Complex operator()(int m1, int m2) const { return c_[static_cast<std::size_t>(m1) * n_ + m2]; }
  Complex at(int m1, int m2) const {
    return (*this)(((m1 % n_) + n_) % n_, ((m2 % n_) + n_) % n_);
  }

  const std::vector<Complex>& coeffs() const noexcept { return c_; }
  std::vector<Complex>& coeffs() noexcept { return c_; }

 private:
  int n_ = 0;
  std::vector<Complex> c_;
};

/// c_m = (1/N^2) sum_n v_n exp(-2 pi i m.n / N), computed with FFTW.
SpectrumField dft2(const GridField& v);
/// Inverse of dft2 (unnormalized synthesis), returning the real part.
GridField idft2(const SpectrumField& c);
/// Complex synthesis without discarding the imaginary part.
std::vector<Complex> idft2_complex(const SpectrumField& c);

/// out[i,j] = sum_{l,r} dx^2 v[l,r] w[i-l, j-r], cyclic.
GridField convolve_scaled(const GridField& v, const GridField& w);

/// Node samples of the Cesaro mean of order M of the kernel series on an N grid.
struct SigmaField {
  int order = 0;
  GridField values;
};

/// Synthesizes sigma_M at the nodes by direct summation over the
/// (2M-1)^2 surviving modes. Requires 1 <= M <= N. Throws kImagResidue when
/// the synthesized imaginary part exceeds 1e-10.
SigmaField build_sigma_field(int order, int n);

/// dft2 of the sampled sigma field. All coefficients are real, lie in [0, 4]
/// and are symmetric; throws kNegativeCoeff below -1e-12 and kImagResidue
/// when an imaginary part exceeds 1e-10.
SpectrumField sigma_dft_coeffs(int order, int n);
SpectrumField sigma_dft_coeffs(const SigmaField& sigma);

}  // namespace ddflow
