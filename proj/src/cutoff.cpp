#include "atomdec/cutoff.hpp"

#include <cmath>

namespace atomdec {

namespace {
constexpr int gauss_nodes = 24;
constexpr Real panel_width = 0.125;
} // namespace

SmoothStep::SmoothStep(CutoffProfile profile)
  : profile_(profile), rule_(gauss_legendre(gauss_nodes)) {
  if (!(profile.sharpness >= 0.0) || !(profile.bump_weight > 0.0))
    throw InputError("cutoff profile needs sharpness >= 0 and a positive bump weight");
  bessel_scale_ = std::cyl_bessel_i(0.0, profile.sharpness);
  total_ = 2.0 * left_mass(0.0);
}

Real SmoothStep::kernel(Real t) const {
  const Real u = 1.0 - t * t;
  if (!(u > 0.0))
    return 0.0;
  const Real bump = std::exp(profile_.bump_weight * (1.0 - 1.0 / u));
  return bump * std::cyl_bessel_i(0.0, profile_.sharpness * std::sqrt(u)) / bessel_scale_;
}

Real SmoothStep::left_mass(Real t) const {
  const Real length = t + 1.0;
  if (length <= 0.0)
    return 0.0;
  const int panels = std::max(1, int(std::ceil(length / panel_width)));
  return integrate([this](Real s) { return kernel(s); }, -1.0, t, rule_, panels);
}

Real SmoothStep::operator()(Real s) const {
  if (s <= 0.0)
    return 0.0;
  if (s >= 1.0)
    return 1.0;
  const Real t = 2.0 * s - 1.0;
  // integrate only over the left half; the kernel is even
  if (t <= 0.0)
    return left_mass(t) / total_;
  return 1.0 - left_mass(-t) / total_;
}

CutoffFunction::CutoffFunction(Real M, Real rho, int dim, long n, CutoffProfile profile)
  : M_(M), rho_(rho), dim_(dim), step_profile_(profile), step_(profile),
    samples_(GridFunction::zeros(GridShape::box(dim, 2.0 * M, n, true))) {
  const GridShape shape = GridShape::box(dim, 2.0 * M, n, true);
  RealVector axis(n);
  for (long i = 0; i < n; ++i)
    axis(i) = (*this)(shape.coordinate(i));
  if (dim == 1) {
    samples_ = GridFunction(shape, axis.cast<Scalar>());
  } else {
    Vector v(shape.size());
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        v(shape.flat(i, j)) = axis(i) * axis(j);
    samples_ = GridFunction(shape, std::move(v));
  }
}

Real CutoffFunction::operator()(Real x) const {
  const Real a = plateau_edge();
  const Real b = support_edge();
  return 1.0 - step_((std::abs(x) - a) / (b - a));
}

CutoffFunction build_cutoff(Real M, Real rho, long N, int dim, CutoffProfile profile) {
  if (!(M > 0.0))
    throw InputError("cutoff needs M > 0");
  if (!(rho > 0.0 && rho < 1.0))
    throw InputError("plateau fraction must lie in (0, 1)");
  if (!is_power_of_two(N) || N < 256)
    throw InputError("cutoff grid order must be a power of two >= 256");
  if (dim != 1 && dim != 2)
    throw InputError("cutoff dimension must be 1 or 2");
  if (!(profile.support_margin >= 0.0 && profile.support_margin < 0.25))
    throw InputError("support margin must lie in [0, 1/4)");
  const Real band = 2.0 * M * (1.0 - profile.support_margin) - (1.0 + rho) * M;
  const Real cell = 4.0 * M / Real(N);
  if (band < 4.0 * cell)
    throw InputError("transition band of the cutoff is narrower than 4 grid cells (rho too large for N)");
  return CutoffFunction(M, rho, dim, N, profile);
}

} // namespace atomdec
