#ifndef ATOMDEC_PROBES_HPP
#define ATOMDEC_PROBES_HPP

#include <string>
#include <vector>

#include "atomdec/grid_function.hpp"

namespace atomdec {

class GaborSystem;

// P1: exp(sin 2 pi x) in 1-D, exp(sin 2 pi x + cos pi y) in 2-D.
GridFunction probe_p1(const GridShape& shape);
// Taylor coefficients c_0..c_N of P3(z) = 1 / (1 - z/2).
Vector probe_p3(int N);

// sum_{|k| <= max_freq} c_k e^{2 pi i k x / P} with P the grid period, c_k
// complex normal / (1 + |k|)^2, scaled to unit sup over the grid (1-D only).
std::vector<Vector> trig_probes(const GridShape& shape, int count, int max_freq, std::uint64_t seed);

struct NamedProbe {
  std::string name;
  Vector samples;
};

// P1, three closed-form smooth functions and six random trigonometric
// polynomials on the full box (1-D), or P1 and three products in 2-D.
std::vector<NamedProbe> exp_probe_set(const GridShape& full_box, std::uint64_t seed = default_seed);
// The window, time-frequency shifts of it near the origin, and seeded
// combinations of those.
std::vector<NamedProbe> gabor_probe_set(const GaborSystem& sys, std::uint64_t seed = default_seed);
// P3, 1/(1 - z/3)^2, exp(z/2) and seeded polynomials with geometric decay.
std::vector<NamedProbe> disc_probe_set(int N, std::uint64_t seed = default_seed);

// Complex normal samples.
std::vector<Vector> random_signals(long L, int count, std::uint64_t seed = default_seed);

std::vector<Vector> samples_of(const std::vector<NamedProbe>& probes);

} // namespace atomdec

#endif
