#include "atomdec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atomdec/disc.hpp"
#include "atomdec/exp_cinfty.hpp"
#include "atomdec/gabor.hpp"
#include "atomdec/perturbation.hpp"
#include "atomdec/spectral.hpp"

namespace atomdec {

namespace {

long nearest_node(const GridShape& shape, Real x) {
  const long i = std::lround((x + shape.half_width) / shape.spacing());
  return std::clamp<long>(i, 0, shape.n - 1);
}

std::string label(const std::string& kind, Real x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s@%g", kind.c_str(), x);
  return buf;
}

std::vector<Functional> exp_functionals(const ExpDecomposition& d) {
  const GridShape shape = *d.grid();
  const Real M = d.config().M;
  std::vector<Functional> out;
  for (Real s : {-0.8, -0.4, 0.0, 0.3, 0.7}) {
    const long i = nearest_node(shape, s * M);
    const long flat = shape.flat(i, shape.dim == 2 ? i : 0);
    out.push_back({label("eval", s * M), [flat](const Vector& f) { return f(flat); }});
  }
  for (Real s : {-0.5, 0.1, 0.6}) {
    const long i = nearest_node(shape, s * M);
    const long flat = shape.flat(i, shape.dim == 2 ? i : 0);
    out.push_back({label("deriv", s * M), [shape, flat](const Vector& f) {
                     return SpectralField(GridFunction(shape, f)).derivative({1, 0})(flat);
                   }});
  }
  return out;
}

std::vector<Functional> gabor_functionals(const GaborDecomposition& d) {
  const GaborSystem& sys = d.system();
  const long L = sys.L();
  std::vector<Functional> out;
  for (long t : {0L, 3L, L / 8, L - 5, L / 2}) {
    out.push_back({"eval@" + std::to_string(t), [t](const Vector& f) { return f(t); }});
  }
  for (long t : {1L, L / 4, L - L / 8}) {
    out.push_back({"diff@" + std::to_string(t), [t, L](const Vector& f) {
                     return 0.5 * (f((t + 1) % L) - f((t - 1 + L) % L));
                   }});
  }
  for (const LatticeIndex& lam : {LatticeIndex{0, 0}, LatticeIndex{1, 0}, LatticeIndex{0, 1}, LatticeIndex{-1, 1}}) {
    const long x = ((lam[0] * sys.a()) % L + L) % L, xi = ((lam[1] * sys.b()) % L + L) % L;
    const Vector atom = tf_shift(sys.window(), x, xi);
    out.push_back({"coef@(" + std::to_string(lam[0]) + "," + std::to_string(lam[1]) + ")",
                   [atom](const Vector& f) { return atom.dot(f); }});
  }
  return out;
}

std::vector<Functional> disc_functionals() {
  std::vector<Functional> out;
  const Scalar points[5] = {{0.0, 0.0}, {0.3, 0.0}, {0.0, -0.5}, {0.6, 0.2}, {-0.7, 0.0}};
  for (const Scalar& z : points) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "eval@(%g,%g)", z.real(), z.imag());
    out.push_back({buf, [z](const Vector& c) { return taylor_eval(c, z); }});
  }
  const Scalar dpoints[3] = {{0.0, 0.0}, {0.4, 0.0}, {0.0, -0.3}};
  for (const Scalar& z : dpoints) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "deriv@(%g,%g)", z.real(), z.imag());
    out.push_back({buf, [z](const Vector& c) {
                     Scalar acc = 0.0;
                     for (long n = c.size() - 1; n >= 1; --n)
                       acc = acc * z + Real(n) * c(n);
                     return acc;
                   }});
  }
  return out;
}

} // namespace

Real probe_level(const AtomicDecomposition& decomp, const ProbeSet& probes) {
  Real level = 0.0;
  for (const auto& f : probes.elements)
    level = std::max(level, seminorm_eval(decomp.seminorms(), f, probes.bound_order));
  return level;
}

bool certified(const AtomicDecomposition& decomp, const ProbeSet& probes) {
  return probe_level(decomp, probes) <= probes.bound;
}

ProbeSet make_probe_set(const AtomicDecomposition& decomp, std::vector<Vector> elements,
                        std::vector<Functional> functionals, int bound_order) {
  ProbeSet set{std::move(elements), std::move(functionals), bound_order, 0.0};
  for (const auto& f : set.elements)
    if (f.size() != decomp.dimension())
      throw InputError("probe element does not live in the decomposition's representation");
  set.bound = 1.01 * probe_level(decomp, set);
  return set;
}

std::vector<Functional> default_functionals(const AtomicDecomposition& decomp) {
  if (const auto* p = dynamic_cast<const PerturbedDecomposition*>(&decomp))
    return default_functionals(*p->problem().base);
  if (const auto* e = dynamic_cast<const ExpDecomposition*>(&decomp))
    return exp_functionals(*e);
  if (const auto* g = dynamic_cast<const GaborDecomposition*>(&decomp))
    return gabor_functionals(*g);
  if (dynamic_cast<const DiscDecomposition*>(&decomp))
    return disc_functionals();
  std::vector<Functional> out;
  const long step = std::max<long>(1, decomp.dimension() / 5);
  for (long k = 0; k < decomp.dimension() && out.size() < 5; k += step)
    out.push_back({"coord@" + std::to_string(k), [k](const Vector& f) { return f(k); }});
  return out;
}

Vector tail_apply(const AtomicDecomposition& decomp, int n, const Vector& f) {
  const int J = decomp.truncation();
  if (n < 0 || n > J)
    throw InputError("tail index n = " + std::to_string(n) + " outside 0.." + std::to_string(J));
  if (n == J)
    return Vector::Zero(decomp.dimension());
  Vector alpha = decomp.analyze(f);
  alpha.head(decomp.indices().count_within(n)).setZero();
  return decomp.synthesize(alpha, decomp.size());
}

ShrinkingReport shrinking_curve(const AtomicDecomposition& decomp, const ProbeSet& probes,
                                const std::vector<int>& ngrid) {
  ShrinkingReport report;
  report.ngrid = ngrid;
  for (const auto& fn : probes.functionals)
    report.curves.push_back({fn.id, std::vector<Real>(ngrid.size(), 0.0)});
  for (const auto& f : probes.elements)
    for (std::size_t i = 0; i < ngrid.size(); ++i) {
      const Vector tail = tail_apply(decomp, ngrid[i], f);
      for (std::size_t c = 0; c < probes.functionals.size(); ++c)
        report.curves[c].values[i] = std::max(report.curves[c].values[i], std::abs(probes.functionals[c].apply(tail)));
    }
  report.min_decrease = std::numeric_limits<Real>::infinity();
  for (const auto& curve : report.curves) {
    if (curve.values.empty())
      continue;
    const Real first = curve.values.front(), last = curve.values.back();
    if (first == 0.0 && last == 0.0)
      continue;
    if (!(last <= first / 10.0))
      report.consistent = false;
    report.min_decrease = std::min(report.min_decrease, last == 0.0 ? std::numeric_limits<Real>::infinity() : first / last);
  }
  return report;
}

BoundedCompletenessReport boundedly_complete_probe(const AtomicDecomposition& decomp, const CoefficientSeq& c,
                                                   const std::vector<int>& ngrid, const std::vector<int>& orders) {
  if (orders.empty())
    throw InputError("boundedly complete probe needs at least one seminorm order");
  const int top = *std::max_element(orders.begin(), orders.end());
  if (*std::min_element(orders.begin(), orders.end()) < 0 || top > decomp.seminorms().max_order())
    throw InputError("seminorm order out of range");
  const Vector full = embed(decomp, c);

  BoundedCompletenessReport report;
  report.ngrid = ngrid;
  for (int p : orders)
    report.series.push_back({p, {}, true});
  for (std::size_t i = 0; i + 1 < ngrid.size(); ++i) {
    const long lo = decomp.indices().count_within(ngrid[i]);
    const long hi = decomp.indices().count_within(ngrid[i + 1]);
    Vector alpha = Vector::Zero(full.size());
    alpha.segment(lo, hi - lo) = full.segment(lo, hi - lo);
    const auto values = decomp.seminorms().evaluate_upto(decomp.synthesize(alpha, hi), top);
    for (auto& s : report.series)
      s.increments.push_back(values[std::size_t(s.order)]);
  }
  for (auto& s : report.series) {
    for (std::size_t i = 1; i + 1 < s.increments.size(); ++i) {
      const Real a = s.increments[i], b = s.increments[i + 1];
      if (!(b < a || (a == 0.0 && b == 0.0)))
        s.consistent = false;
    }
    report.consistent = report.consistent && s.consistent;
  }
  return report;
}

std::vector<int> resolve_ngrid(const AtomicDecomposition& decomp, std::vector<int> requested) {
  if (requested.empty())
    requested = decomp.default_ngrid();
  const int J = decomp.truncation();
  std::vector<int> out;
  for (int n : requested) {
    if (n < 0)
      throw InputError("negative n-grid entry");
    if (n <= J)
      out.push_back(n);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw InputError("n-grid must be strictly increasing");
  if (out.size() < 2)
    throw InputError("n-grid needs at least two points within the truncation");
  return out;
}

} // namespace atomdec
