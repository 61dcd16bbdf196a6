#ifndef ATOMDEC_CUTOFF_HPP
#define ATOMDEC_CUTOFF_HPP

#include "atomdec/grid_function.hpp"
#include "atomdec/quadrature.hpp"

namespace atomdec {

// Transition kernel w(t) = exp(eps (1 - 1/(1 - t^2))) I0(beta sqrt(1 - t^2)) / I0(beta)
// on (-1, 1), zero outside. The bump factor makes it C-infinity with compact
// support; the Bessel factor concentrates it so that the step below has
// Fourier coefficients that drop fast over the resolved range.
struct CutoffProfile {
  Real sharpness = 34.0;    // beta
  Real bump_weight = 0.5;   // eps
  Real support_margin = 1.0 / 64.0;  // delta: support ends at 2M(1 - delta)
};

// Rising step s -> S(s): 0 for s <= 0, 1 for s >= 1, S(s) + S(1 - s) = 1.
class SmoothStep {
public:
  explicit SmoothStep(CutoffProfile profile = {});

  Real kernel(Real t) const;
  Real operator()(Real s) const;

private:
  Real left_mass(Real t) const;  // integral of w over [-1, t], t <= 0

  CutoffProfile profile_;
  GaussRule rule_;
  Real bessel_scale_;
  Real total_;
};

// phi = 1 on [-(1+rho)M, (1+rho)M]^dim, 0 outside [-2M(1-delta), 2M(1-delta)]^dim,
// tensor product of a radial-in-|x| profile across axes.
class CutoffFunction {
public:
  CutoffFunction(Real M, Real rho, int dim, long n, CutoffProfile profile = {});

  Real M() const { return M_; }
  Real plateau_fraction() const { return rho_; }
  int dim() const { return dim_; }
  const CutoffProfile& profile() const { return step_profile_; }
  Real plateau_edge() const { return (1.0 + rho_) * M_; }
  Real support_edge() const { return 2.0 * M_ * (1.0 - step_profile_.support_margin); }

  Real operator()(Real x) const;
  Real operator()(Real x, Real y) const { return (*this)(x) * (*this)(y); }

  // Samples on [-2M, 2M)^dim with n nodes per axis, period 4M.
  const GridFunction& samples() const { return samples_; }

private:
  Real M_;
  Real rho_;
  int dim_;
  CutoffProfile step_profile_;
  SmoothStep step_;
  GridFunction samples_;
};

// Throws InputError unless 0 < rho < 1, N is a power of two >= 256 and the
// transition band spans at least 4 grid cells.
CutoffFunction build_cutoff(Real M, Real rho, long N, int dim = 1, CutoffProfile profile = {});

} // namespace atomdec

#endif
