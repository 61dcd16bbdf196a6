#include "atomdec/spectral.hpp"

#include <limits>

#include <unsupported/Eigen/FFT>

namespace atomdec {

Vector dft(const Vector& x) {
  // kissfft mishandles a single point
  if (x.size() <= 1)
    return x;
  Eigen::FFT<Real> fft;
  Vector X(x.size());
  fft.fwd(X, x);
  return X;
}

Vector idft(const Vector& X) {
  if (X.size() <= 1)
    return X;
  Eigen::FFT<Real> fft;
  Vector x(X.size());
  fft.inv(x, X);
  return x;
}

namespace {

template <bool Forward>
Vector transform2(const Vector& x, long n) {
  if (x.size() != n * n)
    throw InputError("2-D transform: size mismatch");
  Eigen::FFT<Real> fft;
  Matrix a = Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      x.data(), n, n);
  Vector in(n), out(n);
  for (long r = 0; r < n; ++r) {
    in = a.row(r).transpose();
    if constexpr (Forward) fft.fwd(out, in); else fft.inv(out, in);
    a.row(r) = out.transpose();
  }
  for (long c = 0; c < n; ++c) {
    in = a.col(c);
    if constexpr (Forward) fft.fwd(out, in); else fft.inv(out, in);
    a.col(c) = out;
  }
  Vector y(n * n);
  Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(y.data(), n, n) = a;
  return y;
}

Scalar derivative_factor(long k, long n, Real period, int order) {
  if (order == 0)
    return 1.0;
  if (order % 2 == 1 && k == n / 2)
    return 0.0;
  const Scalar w(0.0, two_pi * Real(signed_frequency(k, n)) / period);
  Scalar out = 1.0;
  for (int i = 0; i < order; ++i)
    out *= w;
  return out;
}

} // namespace

Vector dft2(const Vector& x, long n) { return transform2<true>(x, n); }
Vector idft2(const Vector& X, long n) { return transform2<false>(X, n); }

SpectralField::SpectralField(const GridFunction& f) : shape_(f.shape()), samples_(f.samples()) {
  if (shape_.kind != DomainKind::box || !shape_.period)
    throw InputError("spectral differentiation needs a periodic box grid");
  coeffs_ = shape_.dim == 1 ? dft(f.samples()) : dft2(f.samples(), shape_.n);
  // below this the transform is rounding noise, which d^alpha would amplify by |k|^|alpha|
  const Real floor = 1e3 * std::numeric_limits<Real>::epsilon() * coeffs_.cwiseAbs().maxCoeff();
  for (long k = 0; k < coeffs_.size(); ++k)
    if (std::abs(coeffs_(k)) <= floor)
      coeffs_(k) = 0.0;
}

Vector SpectralField::derivative(const MultiIndex& alpha) const {
  const long n = shape_.n;
  const Real period = *shape_.period;
  if (alpha[0] < 0 || alpha[1] < 0)
    throw InputError("negative derivative order");
  if (shape_.dim == 1) {
    if (alpha[0] == 0)
      return samples_;
    Vector c(n);
    for (long k = 0; k < n; ++k)
      c(k) = coeffs_(k) * derivative_factor(k, n, period, alpha[0]);
    return idft(c);
  }
  if (alpha[0] == 0 && alpha[1] == 0)
    return samples_;
  Vector c(n * n);
  for (long k0 = 0; k0 < n; ++k0) {
    const Scalar f0 = derivative_factor(k0, n, period, alpha[0]);
    for (long k1 = 0; k1 < n; ++k1)
      c(k0 * n + k1) = coeffs_(k0 * n + k1) * f0 * derivative_factor(k1, n, period, alpha[1]);
  }
  return idft2(c, n);
}

GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha) {
  return f.with_samples(SpectralField(f).derivative(alpha));
}

} // namespace atomdec
