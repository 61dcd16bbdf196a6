#include "atomdec/exp_cinfty.hpp"

#include <algorithm>
#include <cmath>

#include "atomdec/spectral.hpp"

namespace atomdec {

namespace {

constexpr int interpolation_width = 12;
constexpr Real removal_margin = 1e-6;

bool same_box(const GridShape& a, const GridShape& b) {
  return a.kind == DomainKind::box && b.kind == DomainKind::box && a.dim == b.dim && a.n == b.n &&
         std::abs(a.half_width - b.half_width) <= 1e-12 * b.half_width;
}

// (-1)^j e^{2 pi i (j i mod N)/N} = e^{2 pi i j x_i/(4M)} at x_i = -2M + 4M i/N
Scalar lattice_phase(long j, long i, long N) {
  const long long r = ((static_cast<long long>(j) * i) % N + N) % N;
  const Scalar e = std::polar(1.0, two_pi * Real(r) / Real(N));
  return (j % 2 == 0) ? e : -e;
}

Real parity(long j) { return (j % 2 == 0) ? 1.0 : -1.0; }

// Lagrange interpolation of equispaced samples s_m at -M + m h.
Scalar interpolate(const Vector& s, Real M, Real h, Real y) {
  const long count = s.size();
  const Real u = (y + M) / h;
  const long nearest = std::lround(u);
  if (nearest >= 0 && nearest < count && std::abs(u - Real(nearest)) < 1e-12)
    return s(nearest);
  const long w = std::min<long>(interpolation_width, count);
  const long start = std::clamp<long>(long(std::floor(u)) - w / 2 + 1, 0, count - w);
  Scalar acc = 0.0;
  for (long i = 0; i < w; ++i) {
    Real basis = 1.0;
    for (long k = 0; k < w; ++k)
      if (k != i)
        basis *= (u - Real(start + k)) / Real(i - k);
    acc += basis * s(start + i);
  }
  return acc;
}

// Reflection extension of samples on K (nodes -M + m h, m = 0..count-1),
// multiplied by the cutoff, on the full box.
Vector reflect_extend(const Vector& k_samples, const CutoffFunction& cutoff, const ReflectionRule& rule,
                      long N) {
  const Real M = cutoff.M();
  const GridShape full = full_box(M, 1, N);
  const Real h = full.spacing();
  const long k_first = N / 4;
  Vector out = Vector::Zero(N);
  for (long i = 0; i < N; ++i) {
    const long m = i - k_first;
    if (m >= 0 && m <= N / 2) {
      out(i) = m < k_samples.size() ? k_samples(m) : interpolate(k_samples, M, h, M);
      continue;
    }
    const Real x = full.coordinate(i);
    const Real phi = cutoff(x);
    if (phi == 0.0)
      continue;
    const Real side = x > 0.0 ? 1.0 : -1.0;
    const Real s = std::abs(x) - M;
    Scalar value = 0.0;
    for (int k = 0; k <= rule.order; ++k)
      value += rule.weights(k) * interpolate(k_samples, M, h, side * (M - rule.scales(k) * s));
    out(i) = phi * value;
  }
  return out;
}

Vector k_part(const Vector& full_samples, long N) {
  return full_samples.segment(N / 4, N / 2 + 1);
}

// a_j from the unnormalized transform X of full-box samples.
Vector pick_coefficients(const Vector& X, long N, int dim, const IndexSet& indices) {
  Vector a(indices.size());
  const Real scale = dim == 1 ? 1.0 / Real(N) : 1.0 / (Real(N) * Real(N));
  for (long k = 0; k < indices.size(); ++k) {
    const auto& j = indices[k];
    if (dim == 1)
      a(k) = parity(j[0]) * scale * X(dft_bin(j[0], N));
    else
      a(k) = parity(j[0] + j[1]) * scale * X(dft_bin(j[0], N) * N + dft_bin(j[1], N));
  }
  return a;
}

Vector transform(const Vector& samples, long N, int dim) {
  return dim == 1 ? dft(samples) : dft2(samples, N);
}

} // namespace

std::string to_string(ExtensionBackend backend) {
  return backend == ExtensionBackend::caller_global ? "caller-global" : "reflection";
}

ExtensionBackend parse_backend(const std::string& name) {
  if (name == "caller-global")
    return ExtensionBackend::caller_global;
  if (name == "reflection")
    return ExtensionBackend::reflection;
  throw InputError("unknown extension backend '" + name + "'");
}

ReflectionRule reflection_rule(int order) {
  if (order < 0 || order > 16)
    throw InputError("reflection order must lie in 0..16");
  ReflectionRule rule;
  rule.order = order;
  rule.scales.resize(order + 1);
  for (int k = 0; k <= order; ++k)
    rule.scales(k) = 2.0 / Real(k + 1);
  // c_k is the Lagrange basis polynomial of the nodes -b_i evaluated at 1;
  // the product form keeps full relative accuracy where a Vandermonde solve does not
  rule.weights.resize(order + 1);
  for (int k = 0; k <= order; ++k) {
    Real c = 1.0;
    for (int i = 0; i <= order; ++i)
      if (i != k)
        c *= (1.0 + rule.scales(i)) / (rule.scales(i) - rule.scales(k));
    rule.weights(k) = c;
  }
  return rule;
}

GridShape full_box(Real M, int dim, long N) { return GridShape::box(dim, 2.0 * M, N, true); }

GridShape k_box(Real M, long N) { return GridShape::box(1, M, N / 2, false); }

GridFunction extend(const GridFunction& f, ExtensionBackend backend, const CutoffFunction& cutoff,
                    int reflection_order) {
  const GridShape full = cutoff.samples().shape();
  const long N = full.n;
  if (backend == ExtensionBackend::caller_global) {
    if (!same_box(f.shape(), full))
      throw InputError("caller-global extension needs samples on the full box [-2M, 2M]^p");
    return GridFunction(full, cutoff.samples().samples().cwiseProduct(f.samples()));
  }
  if (f.dim() != 1 || cutoff.dim() != 1)
    throw Unsupported("reflection extension is only available in one dimension");
  const auto rule = reflection_rule(reflection_order);
  if (same_box(f.shape(), full))
    return GridFunction(full, reflect_extend(k_part(f.samples(), N), cutoff, rule, N));
  if (same_box(f.shape(), k_box(cutoff.M(), N)))
    return GridFunction(full, reflect_extend(f.samples(), cutoff, rule, N));
  throw InputError("reflection extension needs samples on K or on the full box");
}

CoefficientSeq fourier_coeffs(const GridFunction& hf) {
  const GridShape& shape = hf.shape();
  if (shape.kind != DomainKind::box || !shape.period)
    throw InputError("fourier_coeffs needs a periodized box grid function");
  const long N = shape.n;
  auto indices = std::make_shared<const IndexSet>(IndexSet::shells(shape.dim, int(N / 2 - 1)));
  return CoefficientSeq(indices, pick_coefficients(transform(hf.samples(), N, shape.dim), N, shape.dim, *indices));
}

DecayReport decay_report(const CoefficientSeq& alpha, int m_max) {
  const int J = alpha.indices().max_magnitude();
  return decay_report(alpha, m_max, std::max(1, J / 4), J);
}

DecayReport decay_report(const CoefficientSeq& alpha, int m_max, int fit_lo, int fit_hi) {
  if (m_max < 0 || m_max > 10)
    throw InputError("decay_report: m_max must lie in 0..10");
  DecayReport report;
  report.fit_lo = fit_lo;
  report.fit_hi = fit_hi;
  const auto& idx = alpha.indices();
  for (int m = 0; m <= m_max; ++m) {
    Real sup = 0.0;
    for (long k = 0; k < alpha.size(); ++k) {
      const Real norm = std::hypot(Real(idx[k][0]), Real(idx[k][1]));
      const Real weight = m == 0 ? 1.0 : std::pow(norm, m);
      sup = std::max(sup, std::abs(alpha[k]) * weight);
    }
    report.rows.push_back({m, sup});
  }

  Real sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long count = 0;
  for (long k = 0; k < alpha.size(); ++k) {
    const int mag = idx.magnitude(k);
    const Real a = std::abs(alpha[k]);
    if (mag < fit_lo || mag > fit_hi || mag == 0 || a == 0.0)
      continue;
    const Real x = std::log(std::hypot(Real(idx[k][0]), Real(idx[k][1])));
    const Real y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  report.fit_points = count;
  const Real denom = Real(count) * sxx - sx * sx;
  if (count >= 2 && denom > 0.0)
    report.slope = (Real(count) * sxy - sx * sy) / denom;
  return report;
}

ExpDecomposition::ExpDecomposition(ExpConfig config) : config_(config) {
  if (config.dim != 1 && config.dim != 2)
    throw InputError("exp-cinfty supports dimensions 1 and 2");
  if (config.backend == ExtensionBackend::reflection && config.dim != 1)
    throw Unsupported("reflection extension is only available in one dimension");
  if (config.J < 1 || config.J > config.N / 2 - 1)
    throw InputError("J must lie in 1..N/2-1");
  if (config.max_order < 0)
    throw InputError("negative seminorm order");
  if (config.backend == ExtensionBackend::reflection)
    reflection_rule(config.reflection_order);  // validates the order
  cutoff_ = std::make_shared<const CutoffFunction>(build_cutoff(config.M, config.rho, config.N, config.dim,
                                                                config.profile));
  base_indices_ = std::make_shared<const IndexSet>(IndexSet::shells(config.dim, config.J));
  indices_ = base_indices_;
  seminorms_ = std::make_shared<const DerivativeSup>(full_box(config.M, config.dim, config.N), config.M,
                                                     config.max_order);
}

long ExpDecomposition::dimension() const {
  return config_.dim == 1 ? config_.N : config_.N * config_.N;
}

Vector ExpDecomposition::atom_at(const LatticeIndex& j) const {
  const long N = config_.N;
  if (config_.dim == 1) {
    Vector v(N);
    for (long i = 0; i < N; ++i)
      v(i) = lattice_phase(j[0], i, N);
    return v;
  }
  Vector a(N), b(N);
  for (long i = 0; i < N; ++i) {
    a(i) = lattice_phase(j[0], i, N);
    b(i) = lattice_phase(j[1], i, N);
  }
  Vector v(N * N);
  for (long i = 0; i < N; ++i)
    v.segment(i * N, N) = a(i) * b;
  return v;
}

Vector ExpDecomposition::extension(const Vector& f) const {
  if (f.size() != dimension())
    throw InputError("exp-cinfty: element does not live on the full box grid");
  if (config_.backend == ExtensionBackend::caller_global)
    return cutoff_->samples().samples().cwiseProduct(f);
  return reflect_extend(k_part(f, config_.N), *cutoff_, reflection_rule(config_.reflection_order), config_.N);
}

Vector ExpDecomposition::base_analyze(const Vector& f) const {
  return pick_coefficients(transform(extension(f), config_.N, config_.dim), config_.N, config_.dim,
                           *base_indices_);
}

Vector ExpDecomposition::with_removal(Vector base) const {
  if (!removal_)
    return base;
  const Removal& r = *removal_;
  const Scalar c = base(r.base_position) / r.denominator;
  Vector out(indices_->size());
  for (long k = 0; k < out.size(); ++k) {
    const long b = k < r.base_position ? k : k + 1;
    out(k) = base(b) + c * r.self_coefficients(b);
  }
  return out;
}

Vector ExpDecomposition::analyze(const Vector& f) const { return with_removal(base_analyze(f)); }

Vector ExpDecomposition::analyze_grid(const GridFunction& f) const {
  const GridShape full = full_box(config_.M, config_.dim, config_.N);
  if (same_box(f.shape(), full))
    return analyze(f.samples());
  if (config_.backend == ExtensionBackend::reflection && same_box(f.shape(), k_box(config_.M, config_.N))) {
    const Vector hf = reflect_extend(f.samples(), *cutoff_, reflection_rule(config_.reflection_order), config_.N);
    return with_removal(pick_coefficients(transform(hf, config_.N, 1), config_.N, 1, *base_indices_));
  }
  throw InputError("exp-cinfty: grid function is not on the decomposition's box");
}

Vector ExpDecomposition::synthesize(const Vector& alpha, long count) const {
  const long N = config_.N;
  if (alpha.size() != indices_->size() || count < 0 || count > indices_->size())
    throw InputError("exp-cinfty: coefficient vector does not match the index set");
  Vector X = Vector::Zero(dimension());
  for (long k = 0; k < count; ++k) {
    const auto& j = (*indices_)[k];
    if (config_.dim == 1)
      X(dft_bin(j[0], N)) += parity(j[0]) * alpha(k);
    else
      X(dft_bin(j[0], N) * N + dft_bin(j[1], N)) += parity(j[0] + j[1]) * alpha(k);
  }
  if (config_.dim == 1)
    return Real(N) * idft(X);
  return Real(N) * Real(N) * idft2(X, N);
}

std::optional<LatticeIndex> ExpDecomposition::removed() const {
  if (!removal_)
    return std::nullopt;
  return removal_->j0;
}

const ExpDecomposition::Removal& ExpDecomposition::removal() const {
  if (!removal_)
    throw InputError("exp-cinfty: no atom has been removed");
  return *removal_;
}

Vector ExpDecomposition::removal_apply(const Vector& f) const {
  const Removal& r = removal();
  return f - base_analyze(f)(r.base_position) * atom_at(r.j0);
}

Vector ExpDecomposition::removal_inverse_apply(const Vector& f) const {
  const Removal& r = removal();
  return f + (base_analyze(f)(r.base_position) / r.denominator) * atom_at(r.j0);
}

Scalar ExpDecomposition::removal_self_value() const { return 1.0 - removal().denominator; }

ExpDecomposition ExpDecomposition::without(const LatticeIndex& j0) const {
  if (removal_)
    throw InputError("exp-cinfty: only one atom can be removed");
  const long pos = base_indices_->position(j0);
  if (pos < 0)
    throw InputError("exp-cinfty: removal index outside the truncation");
  Removal r;
  r.j0 = j0;
  r.base_position = pos;
  r.self_coefficients = base_analyze(atom_at(j0));
  r.denominator = 1.0 - r.self_coefficients(pos);
  if (std::abs(r.denominator) <= removal_margin)
    throw GateRefusal("removal refused: |1 - u_j0(e_j0)| is within the 1e-6 margin", std::abs(r.denominator));

  std::vector<LatticeIndex> kept;
  kept.reserve(std::size_t(base_indices_->size() - 1));
  for (long k = 0; k < base_indices_->size(); ++k)
    if (k != pos)
      kept.push_back((*base_indices_)[k]);

  ExpDecomposition out = *this;
  out.indices_ = std::make_shared<const IndexSet>(config_.dim, std::move(kept));
  out.removal_ = std::make_shared<const Removal>(std::move(r));
  return out;
}

RemovalResult remove_atom(const ExpDecomposition& decomp, const LatticeIndex& j0, const std::vector<Vector>& probes,
                          int residual_order) {
  ExpDecomposition reduced = decomp.without(j0);
  RemovalResult result{reduced, reduced.removal_self_value(), 0.0, residual_order, {}, {}, true};
  result.margin = std::abs(1.0 - result.self_value);
  const int J = decomp.truncation();
  for (const auto& f : probes) {
    const Real before = reproduction_residual(decomp, f, residual_order, J);
    const Real after = reproduction_residual(reduced, f, residual_order, J);
    result.residual_before.push_back(before);
    result.residual_after.push_back(after);
    if (after > 10.0 * before + 1e-12)
      result.within_factor = false;
  }
  return result;
}

} // namespace atomdec
