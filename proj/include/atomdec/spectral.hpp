#ifndef ATOMDEC_SPECTRAL_HPP
#define ATOMDEC_SPECTRAL_HPP

#include <array>

#include "atomdec/grid_function.hpp"

namespace atomdec {

// X_k = sum_t x_t e^{-2 pi i k t / n}
Vector dft(const Vector& x);
// x_t = (1/n) sum_k X_k e^{2 pi i k t / n}
Vector idft(const Vector& X);

// Row-major n x n variants (axis 0 slow).
Vector dft2(const Vector& x, long n);
Vector idft2(const Vector& X, long n);

// Signed frequency of DFT bin k: k for k < n/2, k - n otherwise (the Nyquist
// bin maps to -n/2).
inline long signed_frequency(long k, long n) { return k < n / 2 ? k : k - n; }
// Inverse of signed_frequency for |j| < n/2.
inline long dft_bin(long j, long n) { return j >= 0 ? j : j + n; }

using MultiIndex = std::array<int, 2>;

// Fourier coefficients of a periodic box grid function, cached so that many
// partial derivatives can be taken from a single forward transform.
// Differentiation is exact for trigonometric polynomials of degree < n/2;
// the Nyquist bin is dropped for odd orders.
// Transform coefficients below 1e3 eps of the largest are dropped as
// rounding noise before differentiating.
class SpectralField {
public:
  explicit SpectralField(const GridFunction& f);

  // Samples of d^alpha f on the grid (alpha[1] ignored in 1-D).
  Vector derivative(const MultiIndex& alpha) const;

  const GridShape& shape() const { return shape_; }
  const Vector& coefficients() const { return coeffs_; }

private:
  GridShape shape_;
  Vector samples_;
  Vector coeffs_;  // unnormalized DFT
};

GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha);

} // namespace atomdec

#endif
