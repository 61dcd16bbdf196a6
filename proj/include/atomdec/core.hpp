#ifndef ATOMDEC_CORE_HPP
#define ATOMDEC_CORE_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace atomdec {

using Real = double;
using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Real pi = std::numbers::pi;
inline constexpr Real two_pi = 2.0 * std::numbers::pi;
inline constexpr std::uint64_t default_seed = 20130423ULL;

// Malformed or incompatible input (domain mismatch, out-of-range order, bad file).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition checked numerically did not hold: a condition
// estimate above its gate, a contraction constant >= 1, a singular frame, ...
// `value` carries the offending measurement for reports.
class GateRefusal : public std::runtime_error {
public:
  GateRefusal(const std::string& what, double value)
    : std::runtime_error(what), value_(value) {}
  double value() const noexcept { return value_; }

private:
  double value_;
};

// Extension backend asked for something it cannot do (reflection in 2-D).
class Unsupported : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace atomdec

#endif
