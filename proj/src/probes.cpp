#include "atomdec/probes.hpp"

#include <cmath>
#include <random>

#include "atomdec/gabor.hpp"

namespace atomdec {

GridFunction probe_p1(const GridShape& shape) {
  if (shape.dim == 1)
    return GridFunction::sample(shape, [](Real x) { return std::exp(std::sin(two_pi * x)); });
  return GridFunction::sample(shape, [](Real x, Real y) { return std::exp(std::sin(two_pi * x) + std::cos(pi * y)); });
}

Vector probe_p3(int N) {
  if (N < 0)
    throw InputError("negative Taylor order");
  Vector c(N + 1);
  for (int n = 0; n <= N; ++n)
    c(n) = std::ldexp(1.0, -n);
  return c;
}

std::vector<Vector> trig_probes(const GridShape& shape, int count, int max_freq, std::uint64_t seed) {
  if (shape.dim != 1 || shape.kind != DomainKind::box)
    throw InputError("trigonometric probes are one-dimensional box functions");
  const Real period = shape.period.value_or(2.0 * shape.half_width);
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal;
  std::vector<Vector> out;
  for (int p = 0; p < count; ++p) {
    Vector v = Vector::Zero(shape.n);
    for (int k = -max_freq; k <= max_freq; ++k) {
      const Scalar c = Scalar(normal(rng), normal(rng)) / std::pow(1.0 + std::abs(k), 2);
      for (long i = 0; i < shape.n; ++i)
        v(i) += c * std::polar(1.0, two_pi * Real(k) * shape.coordinate(i) / period);
    }
    out.push_back(v / v.cwiseAbs().maxCoeff());
  }
  return out;
}

std::vector<NamedProbe> exp_probe_set(const GridShape& full_box, std::uint64_t seed) {
  std::vector<NamedProbe> out;
  out.push_back({"p1", probe_p1(full_box).samples()});
  if (full_box.dim == 1) {
    out.push_back({"exp-cos", GridFunction::sample(full_box, [](Real x) { return std::exp(std::cos(pi * x)); }).samples()});
    out.push_back({"lorentz", GridFunction::sample(full_box, [](Real x) { return 1.0 / (1.0 + x * x); }).samples()});
    out.push_back({"gauss-x", GridFunction::sample(full_box, [](Real x) { return x * std::exp(-x * x); }).samples()});
    const auto trig = trig_probes(full_box, 6, 12, seed);
    for (std::size_t k = 0; k < trig.size(); ++k)
      out.push_back({"trig-" + std::to_string(k), trig[k]});
  } else {
    out.push_back({"exp-cos", GridFunction::sample(full_box, [](Real x, Real y) {
                                return std::exp(std::cos(pi * x) * std::cos(pi * y));
                              }).samples()});
    out.push_back({"lorentz", GridFunction::sample(full_box, [](Real x, Real y) {
                                return 1.0 / (1.0 + x * x + y * y);
                              }).samples()});
    out.push_back({"wave", GridFunction::sample(full_box, [](Real x, Real y) {
                             return std::polar(1.0, pi * (x + 0.5 * y));
                           }).samples()});
  }
  return out;
}

std::vector<NamedProbe> gabor_probe_set(const GaborSystem& sys, std::uint64_t seed) {
  const Vector& g = sys.window();
  const long a = sys.a(), b = sys.b();
  std::vector<NamedProbe> out;
  out.push_back({"window", g});
  out.push_back({"shift-a", tf_shift(g, a, 0)});
  out.push_back({"mod-b", tf_shift(g, 0, b)});
  out.push_back({"shift-mod", tf_shift(g, sys.L() - a, 2 * b)});
  out.push_back({"off-lattice", tf_shift(g, 1, sys.L() - 1)});
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal;
  for (int p = 0; p < 3; ++p) {
    Vector v = Vector::Zero(sys.L());
    for (long x = -2; x <= 2; ++x)
      for (long xi = -2; xi <= 2; ++xi)
        v += Scalar(normal(rng), normal(rng)) * tf_shift(g, (x + sys.L()) % sys.L(), (xi + sys.L()) % sys.L()) /
             Real(1 + x * x + xi * xi);
    out.push_back({"combo-" + std::to_string(p), v / v.norm()});
  }
  return out;
}

std::vector<NamedProbe> disc_probe_set(int N, std::uint64_t seed) {
  std::vector<NamedProbe> out;
  out.push_back({"p3", probe_p3(N)});
  Vector inv_sq(N + 1), expo(N + 1);
  Real fact = 1.0;
  for (int n = 0; n <= N; ++n) {
    inv_sq(n) = Real(n + 1) * std::pow(1.0 / 3.0, n);
    if (n > 0)
      fact *= Real(n);
    expo(n) = std::pow(0.5, n) / fact;
  }
  out.push_back({"inv-square", inv_sq});
  out.push_back({"exp-half", expo});
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal;
  for (int p = 0; p < 4; ++p) {
    Vector c(N + 1);
    for (int n = 0; n <= N; ++n)
      c(n) = Scalar(normal(rng), normal(rng)) * std::pow(0.6, n);
    out.push_back({"poly-" + std::to_string(p), c});
  }
  return out;
}

std::vector<Vector> random_signals(long L, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal;
  std::vector<Vector> out;
  for (int p = 0; p < count; ++p) {
    Vector v(L);
    for (long t = 0; t < L; ++t)
      v(t) = Scalar(normal(rng), normal(rng));
    out.push_back(v);
  }
  return out;
}

std::vector<Vector> samples_of(const std::vector<NamedProbe>& probes) {
  std::vector<Vector> out;
  out.reserve(probes.size());
  for (const auto& p : probes)
    out.push_back(p.samples);
  return out;
}

} // namespace atomdec
