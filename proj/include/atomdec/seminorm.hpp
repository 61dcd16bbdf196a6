#ifndef ATOMDEC_SEMINORM_HPP
#define ATOMDEC_SEMINORM_HPP

#include <string>
#include <vector>

#include "atomdec/grid_function.hpp"
#include "atomdec/spectral.hpp"

namespace atomdec {

enum class SeminormKind { derivative_sup, weighted_stft, weighted_disc_sup };

std::string to_string(SeminormKind kind);

// An indexed family {p_n}, n = 0..max_order(), acting on the coordinate
// vectors of one representation (grid samples, Taylor coefficients).
class SeminormFamily {
public:
  virtual ~SeminormFamily() = default;

  virtual SeminormKind kind() const = 0;
  virtual int max_order() const = 0;
  // Unchecked evaluation; use seminorm_eval for validated access.
  virtual Real evaluate(const Vector& f, int n) const = 0;
  // p_0(f), ..., p_{n_max}(f); override when members share work.
  virtual std::vector<Real> evaluate_upto(const Vector& f, int n_max) const;
  // True when p_n <= p_{n+1} (Frechet gradings); false for the decreasing
  // weights v_{n+1} <= v_n of an inductive limit.
  virtual bool increasing() const { return true; }
};

Real seminorm_eval(const SeminormFamily& family, const Vector& f, int n);

// q_n(f) = sup { |d^alpha f(x)| : x in K, |alpha| <= n } with K = [-M, M]^dim,
// derivatives taken spectrally on the periodic grid, sup over grid nodes in K.
class DerivativeSup final : public SeminormFamily {
public:
  DerivativeSup(GridShape grid, Real k_half_width, int max_order);

  SeminormKind kind() const override { return SeminormKind::derivative_sup; }
  int max_order() const override { return max_order_; }
  Real evaluate(const Vector& f, int n) const override;
  std::vector<Real> evaluate_upto(const Vector& f, int n_max) const override;

  const GridShape& grid() const { return grid_; }
  Real k_half_width() const { return k_half_width_; }
  // Flat indices of the grid nodes lying in K.
  const std::vector<long>& nodes_in_k() const { return nodes_in_k_; }

  Real evaluate(const GridFunction& f, int n) const;

private:
  GridShape grid_;
  Real k_half_width_;
  int max_order_;
  std::vector<long> nodes_in_k_;
};

} // namespace atomdec

#endif
