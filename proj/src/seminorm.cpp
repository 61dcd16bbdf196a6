#include "atomdec/seminorm.hpp"

#include <algorithm>
#include <cmath>

namespace atomdec {

std::string to_string(SeminormKind kind) {
  switch (kind) {
  case SeminormKind::derivative_sup: return "derivative-sup";
  case SeminormKind::weighted_stft: return "weighted-stft";
  case SeminormKind::weighted_disc_sup: return "weighted-disc-sup";
  }
  return "unknown";
}

std::vector<Real> SeminormFamily::evaluate_upto(const Vector& f, int n_max) const {
  std::vector<Real> out;
  for (int n = 0; n <= n_max; ++n)
    out.push_back(evaluate(f, n));
  return out;
}

Real seminorm_eval(const SeminormFamily& family, const Vector& f, int n) {
  if (n < 0 || n > family.max_order())
    throw InputError("seminorm order " + std::to_string(n) + " outside 0.." + std::to_string(family.max_order()));
  return family.evaluate(f, n);
}

DerivativeSup::DerivativeSup(GridShape grid, Real k_half_width, int max_order)
  : grid_(grid), k_half_width_(k_half_width), max_order_(max_order) {
  grid_.validate();
  if (grid_.kind != DomainKind::box || !grid_.period)
    throw InputError("derivative-sup seminorms need a periodic box grid");
  if (!(k_half_width > 0.0) || k_half_width > grid_.half_width)
    throw InputError("K must be a nonempty box inside the grid box");
  if (max_order < 0)
    throw InputError("negative maximal order");
  const Real slack = 1e-12 * k_half_width;
  std::vector<long> axis;
  for (long i = 0; i < grid_.n; ++i)
    if (std::abs(grid_.coordinate(i)) <= k_half_width + slack)
      axis.push_back(i);
  if (grid_.dim == 1) {
    nodes_in_k_ = axis;
  } else {
    for (long i : axis)
      for (long j : axis)
        nodes_in_k_.push_back(grid_.flat(i, j));
  }
}

namespace {
Real sup_on(const Vector& v, const std::vector<long>& nodes) {
  Real m = 0.0;
  for (long i : nodes)
    m = std::max(m, std::abs(v(i)));
  return m;
}
} // namespace

std::vector<Real> DerivativeSup::evaluate_upto(const Vector& f, int n_max) const {
  if (f.size() != grid_.size())
    throw InputError("derivative-sup: element does not live on the seminorm's grid");
  SpectralField field(GridFunction(grid_, f));
  std::vector<Real> out;
  Real running = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    // members of exact order n; the sup over |alpha| <= n accumulates
    if (grid_.dim == 1) {
      running = std::max(running, sup_on(field.derivative({n, 0}), nodes_in_k_));
    } else {
      for (int a = 0; a <= n; ++a)
        running = std::max(running, sup_on(field.derivative({a, n - a}), nodes_in_k_));
    }
    out.push_back(running);
  }
  return out;
}

Real DerivativeSup::evaluate(const Vector& f, int n) const { return evaluate_upto(f, n).back(); }

Real DerivativeSup::evaluate(const GridFunction& f, int n) const {
  if (!(f.shape() == grid_))
    throw InputError("derivative-sup: grid mismatch");
  if (n < 0 || n > max_order_)
    throw InputError("seminorm order out of range");
  return evaluate(f.samples(), n);
}

} // namespace atomdec
