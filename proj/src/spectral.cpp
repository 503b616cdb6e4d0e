#include "ddflow/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "ddflow/error.hpp"

namespace ddflow {

double kernel_coeff(int m1, int m2) {
  if (m1 == 0 || m2 == 0) return 0.0;
  const double a = static_cast<double>(m1) * m1;
  const double b = static_cast<double>(m2) * m2;
  const double s = a + b;
  return a * b / (s * s);
}

double fejer_weight(int p, int order) {
  const int ap = p < 0 ? -p : p;
  if (ap >= order) return 0.0;
  return 1.0 - static_cast<double>(ap) / order;
}

double sigma_coeff(int m1, int m2, int order) {
  return fejer_weight(m1, order) * fejer_weight(m2, order) * kernel_coeff(m1, m2);
}

int signed_frequency(int m, int n) {
  const int r = ((m % n) + n) % n;
  return 2 * r > n ? r - n : r;
}

SpectrumField::SpectrumField(int n) : n_(n), c_(static_cast<std::size_t>(n) * n) {
  if (n < 1) throw Error(ErrorKind::kInvalidParams, "grid size must be >= 1");
}

SpectrumField::SpectrumField(int n, std::vector<Complex> coeffs)
    : n_(n), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<std::size_t>(n) * n) {
    throw Error(ErrorKind::kSizeMismatch, "coefficient count does not match N*N");
  }
}

namespace {

// FFTW planning is not thread safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Fft2 {
 public:
  explicit Fft2(int n) : n_(n) {
    const std::size_t count = static_cast<std::size_t>(n) * n;
    in_ = fftw_alloc_complex(count);
    out_ = fftw_alloc_complex(count);
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(n, n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft2() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(in_);
    fftw_free(out_);
  }
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  SpectrumField forward(const GridField& v) {
    const std::size_t count = v.values().size();
    for (std::size_t k = 0; k < count; ++k) {
      in_[k][0] = v.values()[k];
      in_[k][1] = 0.0;
    }
    fftw_execute(forward_);
    SpectrumField c(n_);
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (std::size_t k = 0; k < count; ++k) {
      c.coeffs()[k] = Complex(out_[k][0], out_[k][1]) * scale;
    }
    return c;
  }

  std::vector<Complex> backward(const SpectrumField& c) {
    const std::size_t count = c.coeffs().size();
    for (std::size_t k = 0; k < count; ++k) {
      in_[k][0] = c.coeffs()[k].real();
      in_[k][1] = c.coeffs()[k].imag();
    }
    fftw_execute(backward_);
    std::vector<Complex> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = Complex(out_[k][0], out_[k][1]);
    return out;
  }

 private:
  int n_;
  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

Fft2& fft_for(int n) {
  thread_local std::map<int, std::unique_ptr<Fft2>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft2>(n);
  return *slot;
}

}  // namespace

SpectrumField dft2(const GridField& v) { return fft_for(v.size()).forward(v); }

std::vector<Complex> idft2_complex(const SpectrumField& c) {
  return fft_for(c.size()).backward(c);
}

GridField idft2(const SpectrumField& c) {
  const auto z = idft2_complex(c);
  GridField out(c.size());
  for (std::size_t k = 0; k < z.size(); ++k) out.values()[k] = z[k].real();
  return out;
}

GridField convolve_scaled(const GridField& v, const GridField& w) {
  require_same_size(v, w);
  SpectrumField cv = dft2(v);
  const SpectrumField cw = dft2(w);
  for (std::size_t k = 0; k < cv.coeffs().size(); ++k) cv.coeffs()[k] *= cw.coeffs()[k];
  return idft2(cv);
}

SigmaField build_sigma_field(int order, int n) {
  if (order < 1 || order > n) {
    throw Error(ErrorKind::kInvalidParams,
                "sigma field needs 1 <= M <= N (M=" + std::to_string(order) +
                    ", N=" + std::to_string(n) + ")");
  }
  // e^{2 pi i k / N} for k in [0, N)
  std::vector<Complex> twiddle(n);
  for (int k = 0; k < n; ++k) {
    const double phase = 2.0 * std::numbers::pi * k / n;
    twiddle[k] = Complex(std::cos(phase), std::sin(phase));
  }
  auto expo = [&](int m, int i) {
    const long long k = (static_cast<long long>(m) * i) % n;
    return twiddle[static_cast<std::size_t>(k < 0 ? k + n : k)];
  };

  // Separable synthesis: partial[m1][j] = sum_{m2} c(m1,m2) e(m2 x_j).
  const int width = 2 * order - 1;
  std::vector<Complex> partial(static_cast<std::size_t>(width) * n, Complex{});
  for (int m1 = -(order - 1); m1 <= order - 1; ++m1) {
    for (int j = 0; j < n; ++j) {
      Complex acc{};
      for (int m2 = -(order - 1); m2 <= order - 1; ++m2) {
        const double c = sigma_coeff(m1, m2, order);
        if (c != 0.0) acc += c * expo(m2, j);
      }
      partial[static_cast<std::size_t>(m1 + order - 1) * n + j] = acc;
    }
  }

  SigmaField sigma{order, GridField(n)};
  double residue = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex acc{};
      for (int m1 = -(order - 1); m1 <= order - 1; ++m1) {
        acc += expo(m1, i) * partial[static_cast<std::size_t>(m1 + order - 1) * n + j];
      }
      residue = std::max(residue, std::abs(acc.imag()));
      sigma.values(i, j) = acc.real();
    }
  }
  if (residue > 1e-10) {
    throw Error(ErrorKind::kImagResidue,
                "sigma synthesis left imaginary residue " + format_double(residue));
  }
  return sigma;
}

SpectrumField sigma_dft_coeffs(const SigmaField& sigma) {
  SpectrumField c = dft2(sigma.values);
  for (int m1 = 0; m1 < c.size(); ++m1) {
    for (int m2 = 0; m2 < c.size(); ++m2) {
      const Complex z = c(m1, m2);
      if (std::abs(z.imag()) > 1e-10) {
        throw Error(ErrorKind::kImagResidue, "sigma DFT coefficient has imaginary part " +
                                                 format_double(z.imag()));
      }
      if (z.real() < -1e-12) {
        throw Error(ErrorKind::kNegativeCoeff,
                    "sigma DFT coefficient (" + std::to_string(m1) + "," + std::to_string(m2) +
                        ") = " + format_double(z.real()) + " is negative");
      }
      c(m1, m2) = Complex(z.real(), 0.0);
    }
  }
  return c;
}

SpectrumField sigma_dft_coeffs(int order, int n) {
  return sigma_dft_coeffs(build_sigma_field(order, n));
}

}  // namespace ddflow
