#include "atomdec/disc.hpp"

#include <algorithm>
#include <cmath>

namespace atomdec {

namespace {

Real breakpoint(int k) { return 1.0 - std::ldexp(1.0, -k); }

// Area centroid radius of {r1 <= r < r2, |theta - mid| < width/2}.
Real centroid_radius(Real r1, Real r2, Real width) {
  const Real half = 0.5 * width;
  const Real radial = (2.0 / 3.0) * (r2 * r2 * r2 - r1 * r1 * r1) / (r2 * r2 - r1 * r1);
  return radial * std::sin(half) / half;
}

Real diameter(const DiscCell& c) {
  const Scalar corners[4] = {std::polar(c.r_inner, c.theta_begin), std::polar(c.r_inner, c.theta_end),
                             std::polar(c.r_outer, c.theta_begin), std::polar(c.r_outer, c.theta_end)};
  Real d = 0.0;
  for (const auto& p : corners)
    for (const auto& q : corners)
      d = std::max(d, std::abs(p - q));
  if (c.theta_end - c.theta_begin >= pi)
    d = std::max(d, 2.0 * c.r_outer);
  return d;
}

} // namespace

int AngularLaw::sectors(int annulus) const {
  if (constant)
    return *constant;
  const long grown = long(multiplier) << std::min(annulus, 40);
  return int(std::max<long>(min_sectors, grown));
}

DiscPartition::DiscPartition(int depth, AngularLaw law) : depth_(depth), law_(law) {
  if (depth < 1 || depth > 20)
    throw InputError("partition depth K must lie in 1..20");
  if (law.constant ? *law.constant < 1 : (law.multiplier < 1 || law.min_sectors < 1))
    throw InputError("angular law needs positive sector counts");
  if (!(law.rotation >= 0.0 && law.rotation < 1.0))
    throw InputError("angular rotation must lie in [0, 1)");
  for (int k = 0; k <= depth; ++k) {
    const Real r1 = breakpoint(k);
    const Real r2 = k < depth ? breakpoint(k + 1) : 1.0;
    const int count = law.sectors(k);
    const Real width = two_pi / Real(count);
    const Real ring = 0.5 * width * (r2 * r2 - r1 * r1);
    for (int i = 0; i < count; ++i) {
      DiscCell c;
      c.annulus = k;
      c.r_inner = r1;
      c.r_outer = r2;
      c.theta_begin = (Real(i) + law.rotation) * width;
      c.theta_end = c.theta_begin + width;
      c.area = ring;
      const Real mid = c.theta_begin + 0.5 * width;
      Real rc;
      if (count == 1 && r1 == 0.0)
        rc = 0.0;
      else {
        rc = centroid_radius(r1, r2, width);
        if (!(rc > r1 && rc < r2))
          rc = 0.5 * (r1 + r2);
      }
      c.point = std::polar(rc, mid);
      cells_.push_back(c);
    }
    ends_.push_back(long(cells_.size()));
  }
}

Real DiscPartition::total_area() const {
  // Neumaier summation; deep partitions have tens of thousands of cells
  Real s = 0.0, carry = 0.0;
  for (const auto& c : cells_) {
    const Real t = s + c.area;
    carry += std::abs(s) >= std::abs(c.area) ? (s - t) + c.area : (c.area - t) + s;
    s = t;
  }
  return s + carry;
}

std::vector<Real> DiscPartition::areas() const {
  std::vector<Real> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_)
    out.push_back(c.area);
  return out;
}

std::vector<Scalar> DiscPartition::points() const {
  std::vector<Scalar> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_)
    out.push_back(c.point);
  return out;
}

Real DiscPartition::max_relative_diameter() const {
  Real best = 0.0;
  for (const auto& c : cells_)
    best = std::max(best, diameter(c) / (1.0 - std::abs(c.point)));
  return best;
}

DiscPartition build_partition(int K, AngularLaw law) { return DiscPartition(K, law); }

LinearOperator s_operator(const std::vector<Real>& areas, const std::vector<Scalar>& points, int N) {
  if (N < 1)
    throw InputError("Taylor order N must be at least 1");
  if (areas.size() != points.size())
    throw InputError("areas and sample points differ in length");
  const long size = N + 1;
  Matrix S = Matrix::Zero(size, size);
  Vector powers(size);
  for (std::size_t j = 0; j < areas.size(); ++j) {
    const Scalar lambda = points[j];
    powers(0) = 1.0;
    for (long m = 1; m < size; ++m)
      powers(m) = powers(m - 1) * lambda;
    // row n: (n+1) m_j conj(lambda)^n times lambda^m
    S.noalias() += areas[j] * powers.conjugate() * powers.transpose();
  }
  for (long n = 0; n < size; ++n)
    S.row(n) *= Real(n + 1);
  return LinearOperator(std::move(S));
}

LinearOperator s_operator(const DiscPartition& part, int N) { return s_operator(part.areas(), part.points(), N); }

Scalar taylor_eval(const Vector& c, Scalar z) {
  Scalar acc = 0.0;
  for (long n = c.size() - 1; n >= 0; --n)
    acc = acc * z + c(n);
  return acc;
}

Real disc_weight(Real r, int n) {
  if (n == 0)
    return 1.0;
  const Real L = std::abs(std::log1p(-r));
  if (L < 1.0)
    return 1.0;
  return std::pow(L, -n);
}

PolarGrid PolarGrid::standard(int boundary_exponent, int angles) {
  if (boundary_exponent < 1 || angles < 1)
    throw InputError("polar grid needs a positive boundary exponent and angle count");
  std::vector<Real> r;
  for (int i = 0; i < 64; ++i)
    r.push_back(0.5 * Real(i) / 64.0);
  for (int s = 16; s <= 16 * boundary_exponent; ++s)
    r.push_back(1.0 - std::exp2(-Real(s) / 16.0));
  PolarGrid g;
  g.radii = Eigen::Map<RealVector>(r.data(), long(r.size()));
  g.angles = angles;
  return g;
}

Real weighted_norm(const Vector& taylor, int n, const PolarGrid& grid) {
  if (n < 0)
    throw InputError("negative weight order");
  for (long i = 0; i < grid.radii.size(); ++i)
    if (!(grid.radii(i) >= 0.0 && grid.radii(i) < 1.0))
      throw InputError("polar grid radii must lie in [0, 1)");
  return weighted_sup([&](Scalar z) { return taylor_eval(taylor, z); }, n, grid);
}

WeightedDiscSup::WeightedDiscSup(PolarGrid grid, int max_order) : grid_(std::move(grid)), max_order_(max_order) {
  if (max_order < 0)
    throw InputError("negative maximal order");
  for (long i = 0; i < grid_.radii.size(); ++i)
    if (!(grid_.radii(i) >= 0.0 && grid_.radii(i) < 1.0))
      throw InputError("polar grid radii must lie in [0, 1)");
}

std::vector<Real> WeightedDiscSup::evaluate_upto(const Vector& f, int n_max) const {
  std::vector<Real> out(std::size_t(n_max + 1), 0.0);
  for (long i = 0; i < grid_.radii.size(); ++i) {
    const Real r = grid_.radii(i);
    Real m = 0.0;
    for (int k = 0; k < grid_.angles; ++k)
      m = std::max(m, std::abs(taylor_eval(f, std::polar(r, two_pi * Real(k) / Real(grid_.angles)))));
    for (int n = 0; n <= n_max; ++n)
      out[std::size_t(n)] = std::max(out[std::size_t(n)], m * disc_weight(r, n));
  }
  return out;
}

Real WeightedDiscSup::evaluate(const Vector& f, int n) const { return evaluate_upto(f, n).back(); }

DiscDecomposition::DiscDecomposition(DiscPartition part, int N, PolarGrid grid, int max_order, Real condition_gate)
  : part_(std::make_shared<const DiscPartition>(std::move(part))), N_(N) {
  s_ = std::make_shared<const LinearOperator>(s_operator(*part_, N));
  if (!(s_->condition <= condition_gate))
    throw GateRefusal("S operator condition estimate exceeds the gate", s_->condition);
  lu_ = std::make_shared<const Eigen::PartialPivLU<Matrix>>(s_->matrix);
  indices_ = std::make_shared<const IndexSet>(IndexSet::sequential(part_->size()));
  seminorms_ = std::make_shared<const WeightedDiscSup>(std::move(grid), max_order);
}

Vector DiscDecomposition::atom(long k) const {
  const auto& c = part_->cells()[std::size_t(k)];
  Vector out(N_ + 1);
  Scalar p = c.area;
  const Scalar lc = std::conj(c.point);
  for (long n = 0; n <= N_; ++n) {
    out(n) = Real(n + 1) * p;
    p *= lc;
  }
  return out;
}

Vector DiscDecomposition::analyze(const Vector& f) const {
  if (f.size() != N_ + 1)
    throw InputError("disc-hv: Taylor coefficient vector has the wrong length");
  const Vector g = lu_->solve(f);
  Vector u(part_->size());
  for (long j = 0; j < u.size(); ++j)
    u(j) = taylor_eval(g, part_->cells()[std::size_t(j)].point);
  return u;
}

Vector DiscDecomposition::synthesize(const Vector& alpha, long count) const {
  if (alpha.size() != part_->size() || count < 0 || count > part_->size())
    throw InputError("disc-hv: coefficient vector does not match the partition");
  Vector out = Vector::Zero(N_ + 1);
  for (long j = 0; j < count; ++j) {
    if (alpha(j) == Scalar(0.0))
      continue;
    const auto& c = part_->cells()[std::size_t(j)];
    Scalar p = alpha(j) * c.area;
    const Scalar lc = std::conj(c.point);
    for (long n = 0; n <= N_; ++n) {
      out(n) += Real(n + 1) * p;
      p *= lc;
    }
  }
  return out;
}

std::vector<int> DiscDecomposition::default_ngrid() const {
  // tails beyond whole annuli: after annulus 0, about K/3, about 2K/3 and K-1
  const int K = part_->depth();
  std::vector<int> ks{0, K / 3, (2 * K) / 3, K - 1};
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<int> out;
  for (int k : ks)
    out.push_back(int(part_->cells_through(k)));
  return out;
}

} // namespace atomdec
