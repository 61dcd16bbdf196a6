#include "atomdec/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace atomdec {

ContractionEstimate contraction_estimate(const OperatorFn& T, const SeminormFamily& family, int p0,
                                         const std::vector<Vector>& probes, int max_order, Real margin) {
  max_order = std::min(max_order, family.max_order());
  if (p0 < 0 || p0 > max_order)
    throw InputError("designated seminorm p0 outside the evaluated orders");
  ContractionEstimate est;
  est.p0 = p0;
  est.margin = margin;
  est.constants.assign(std::size_t(max_order + 1), 0.0);
  for (const auto& x : probes) {
    const Real base = family.evaluate(x, p0);
    const auto values = family.evaluate_upto(T(x), max_order);
    ++est.probes;
    if (base == 0.0) {
      if (*std::max_element(values.begin(), values.end()) > 1e-12)
        est.hypothesis_violation = true;
      continue;
    }
    for (int p = 0; p <= max_order; ++p)
      est.constants[std::size_t(p)] = std::max(est.constants[std::size_t(p)], values[std::size_t(p)] / base);
  }
  est.c = est.constants[std::size_t(p0)];
  est.contraction = !est.hypothesis_violation && est.c < 1.0 - margin;
  return est;
}

int neumann_depth(Real c, Real tol) {
  if (!(tol > 0.0))
    throw InputError("Neumann tolerance must be positive");
  if (!(c >= 0.0 && c < 1.0))
    throw GateRefusal("Neumann series needs a contraction constant c < 1", c);
  int K = 0;
  while (std::pow(c, K + 1) / (1.0 - c) > tol) {
    ++K;
    if (K > 100000)
      throw GateRefusal("Neumann depth exceeds 100000 terms", c);
  }
  return K;
}

NeumannInverse::NeumannInverse(OperatorFn T, Real c, int depth) : T_(std::move(T)), c_(c), depth_(depth) {
  if (!(c >= 0.0 && c < 1.0))
    throw GateRefusal("Neumann series needs a contraction constant c < 1", c);
  if (depth < 0)
    throw InputError("negative Neumann depth");
}

Real NeumannInverse::residual_bound() const { return std::pow(c_, depth_ + 1) / (1.0 - c_); }

Vector NeumannInverse::apply(const Vector& x) const {
  Vector acc = x;
  Vector term = x;
  for (int k = 1; k <= depth_; ++k) {
    term = T_(term);
    acc += term;
  }
  return acc;
}

NeumannInverse neumann_invert(OperatorFn T, Real c, Real tol) {
  const int K = neumann_depth(c, tol);
  return NeumannInverse(std::move(T), c, K);
}

std::string to_string(PerturbMode mode) { return mode == PerturbMode::atoms ? "atoms" : "duals"; }

namespace {

long replaced_count(const PerturbationProblem& p) {
  if (!p.base)
    throw InputError("perturbation problem without a base decomposition");
  const long dim = p.base->dimension();
  if (p.mode == PerturbMode::atoms) {
    if (p.shift.rows() != dim || p.shift.cols() > p.base->size())
      throw InputError("atom replacements must be a dim x count matrix with count <= truncation size");
    return p.shift.cols();
  }
  if (p.shift.cols() != dim || p.shift.rows() > p.base->size())
    throw InputError("dual replacements must be a count x dim matrix with count <= truncation size");
  return p.shift.rows();
}

} // namespace

OperatorFn perturbation_operator(const PerturbationProblem& problem) {
  const long count = replaced_count(problem);
  auto base = problem.base;
  const Matrix shift = problem.shift;
  if (problem.mode == PerturbMode::atoms)
    return [base, shift, count](const Vector& x) -> Vector {
      return -(shift * base->analyze(x).head(count));
    };
  return [base, shift, count](const Vector& x) -> Vector {
    Vector alpha = Vector::Zero(base->size());
    alpha.head(count) = shift * x;
    return -base->synthesize(alpha, count);
  };
}

PerturbedDecomposition::PerturbedDecomposition(PerturbationProblem problem, NeumannInverse inverse)
  : problem_(std::move(problem)), inverse_(std::move(inverse)) {
  replaced_count(problem_);
}

Vector PerturbedDecomposition::atom(long k) const {
  if (problem_.mode == PerturbMode::atoms) {
    Vector x = problem_.base->atom(k);
    if (k < problem_.shift.cols())
      x += problem_.shift.col(k);
    return x;
  }
  return inverse_.apply(problem_.base->atom(k));
}

Vector PerturbedDecomposition::analyze(const Vector& f) const {
  if (problem_.mode == PerturbMode::atoms)
    return problem_.base->analyze(inverse_.apply(f));
  Vector a = problem_.base->analyze(f);
  a.head(problem_.shift.rows()) += problem_.shift * f;
  return a;
}

PerturbationOutcome perturb(const PerturbationProblem& problem, Real tol, int max_order) {
  const long count = replaced_count(problem);
  if (problem.probes.empty())
    throw InputError("perturbation needs a nonempty probe surface");
  const auto& family = problem.base->seminorms();
  max_order = std::max(problem.p0, std::min(max_order, family.max_order()));
  const OperatorFn T = perturbation_operator(problem);

  PerturbationOutcome out;
  out.gate = contraction_estimate(T, family, problem.p0, problem.probes, max_order);
  if (out.gate.hypothesis_violation)
    throw GateRefusal("contraction hypothesis violated: a probe with p0(x) = 0 has p(Tx) > 0", out.gate.c);
  if (!out.gate.contraction)
    throw GateRefusal("contraction gate failed: estimated C_p0 = " + std::to_string(out.gate.c), out.gate.c);

  NeumannInverse inverse = neumann_invert(T, out.gate.c, tol);
  out.depth = inverse.depth();
  out.residual_bound = inverse.residual_bound();

  std::vector<Real> shift_size(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k)
    shift_size[std::size_t(k)] = problem.mode == PerturbMode::atoms
                                     ? family.evaluate(problem.shift.col(k), problem.p0)
                                     : family.evaluate(problem.base->atom(k), problem.p0);
  for (const auto& x : problem.probes) {
    const Vector weights = problem.mode == PerturbMode::atoms ? Vector(problem.base->analyze(x).head(count))
                                                              : Vector(problem.shift * x);
    Real s = 0.0;
    for (long k = 0; k < count; ++k)
      s += std::abs(weights(k)) * shift_size[std::size_t(k)];
    out.summability_proxy = std::max(out.summability_proxy, s);
  }
  out.decomposition = std::make_shared<const PerturbedDecomposition>(problem, std::move(inverse));
  return out;
}

PerturbationOutcome perturb_atoms(const PerturbationProblem& problem, Real tol, int max_order) {
  if (problem.mode != PerturbMode::atoms)
    throw InputError("perturb_atoms needs a problem in atoms mode");
  return perturb(problem, tol, max_order);
}

PerturbationOutcome perturb_duals(const PerturbationProblem& problem, Real tol, int max_order) {
  if (problem.mode != PerturbMode::duals)
    throw InputError("perturb_duals needs a problem in duals mode");
  return perturb(problem, tol, max_order);
}

Real corollary_threshold(int j, Real pj_of_xj, Real p1_of_xj) {
  if (j < 1)
    throw InputError("corollary positions start at 1");
  return 1.0 / (1.0 + Real(j) * Real(j) * pj_of_xj + std::pow(3.0, j) * p1_of_xj);
}

std::vector<Vector> normalized_dictionary(const AtomicDecomposition& base, int order, long size,
                                          std::uint64_t seed) {
  const auto& family = base.seminorms();
  std::vector<Vector> out;
  const long singles = std::min(size / 2, base.size());
  for (long k = 0; k < singles; ++k) {
    const Vector x = base.atom(k);
    const Real p = family.evaluate(x, order);
    if (p > 0.0)
      out.push_back(x / p);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal;
  const long span = std::min<long>(base.size(), 16);
  while (long(out.size()) < size) {
    Vector alpha = Vector::Zero(base.size());
    for (long k = 0; k < span; ++k)
      alpha(k) = Scalar(normal(rng), normal(rng)) / Real(1 + k);
    const Vector x = base.synthesize(alpha, span);
    const Real p = family.evaluate(x, order);
    if (p > 0.0)
      out.push_back(x / p);
  }
  return out;
}

std::vector<GapRow> corollary_gap_check(const AtomicDecomposition& base, const AtomicDecomposition& perturbed,
                                        long count, const std::vector<Vector>& dictionary) {
  if (count < 0 || count > base.size() || perturbed.size() != base.size())
    throw InputError("gap check: count exceeds the shared truncation");
  const auto& family = base.seminorms();
  if (count > 0 && count - 1 > family.max_order())
    throw InputError("gap check needs seminorm orders up to count - 1");
  std::vector<Vector> diffs;
  diffs.reserve(dictionary.size());
  for (const auto& d : dictionary)
    diffs.push_back(base.analyze(d) - perturbed.analyze(d));

  std::vector<GapRow> rows;
  for (long k = 0; k < count; ++k) {
    GapRow row;
    row.j = int(k + 1);
    row.index = base.indices()[k];
    const Vector x = base.atom(k);
    const auto q = family.evaluate_upto(x, int(k));
    row.pj = q.back();
    row.p1 = q.front();
    row.threshold = corollary_threshold(row.j, row.pj, row.p1);
    for (const auto& d : diffs)
      row.gap = std::max(row.gap, std::abs(d(k)));
    row.pass = row.gap < row.threshold;
    rows.push_back(row);
  }
  return rows;
}

Matrix corollary_dual_noise(const AtomicDecomposition& base, long count, const std::vector<long>& nodes,
                            Real fraction, std::uint64_t seed) {
  if (nodes.empty())
    throw InputError("dual noise needs evaluation nodes");
  if (count < 0 || count > base.size() || (count > 0 && count - 1 > base.seminorms().max_order()))
    throw InputError("dual noise count exceeds the truncation or the seminorm orders");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> phase(0.0, two_pi);
  Matrix E = Matrix::Zero(count, base.dimension());
  for (long k = 0; k < count; ++k) {
    const auto q = base.seminorms().evaluate_upto(base.atom(k), int(k));
    const Real size = fraction * corollary_threshold(int(k + 1), q.back(), q.front());
    const long t = nodes[std::size_t(rng() % nodes.size())];
    E(k, t) = std::polar(size, phase(rng));
  }
  return E;
}

Matrix corollary_atom_noise(const AtomicDecomposition& base, long count, Real fraction, std::uint64_t seed) {
  if (count < 0 || count > base.size() || (count > 0 && count - 1 > base.seminorms().max_order()))
    throw InputError("atom noise count exceeds the truncation or the seminorm orders");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> phase(0.0, two_pi);
  Matrix D(base.dimension(), count);
  for (long k = 0; k < count; ++k) {
    const Vector x = base.atom(k);
    const auto q = base.seminorms().evaluate_upto(x, int(k));
    const Real size = fraction * corollary_threshold(int(k + 1), q.back(), q.front());
    D.col(k) = std::polar(size, phase(rng)) * x;
  }
  return D;
}

} // namespace atomdec
