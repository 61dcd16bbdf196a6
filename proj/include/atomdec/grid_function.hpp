#ifndef ATOMDEC_GRID_FUNCTION_HPP
#define ATOMDEC_GRID_FUNCTION_HPP

#include <iosfwd>
#include <optional>
#include <type_traits>

#include "atomdec/core.hpp"

namespace atomdec {

enum class DomainKind { box, cyclic };

// Layout of a uniform grid. Box grids are left-closed: on [-H, H) the k-th
// node of an axis sits at -H + k * 2H/n, so a periodized function with period
// 2H is sampled over exactly one period. Cyclic grids are Z_L with n == L.
struct GridShape {
  int dim = 1;
  DomainKind kind = DomainKind::box;
  Real half_width = 1.0;
  long n = 0;
  std::optional<Real> period;

  static GridShape box(int dim, Real half_width, long n, bool periodic = true);
  static GridShape cyclic(long length);

  long size() const { return dim == 1 ? n : n * n; }
  Real spacing() const { return kind == DomainKind::box ? 2.0 * half_width / Real(n) : 1.0; }
  Real coordinate(long k) const {
    return kind == DomainKind::box ? -half_width + Real(k) * spacing() : Real(k);
  }
  // flat index of (i0, i1); axis 0 is the slow axis
  long flat(long i0, long i1 = 0) const { return dim == 1 ? i0 : i0 * n + i1; }

  void validate() const;
  bool operator==(const GridShape& other) const;
};

// Complex samples of a function on a GridShape. Immutable value type.
class GridFunction {
public:
  GridFunction(GridShape shape, Vector samples);

  static GridFunction zeros(const GridShape& shape);

  // f(x) on 1-D grids, f(x, y) on 2-D grids; cyclic grids pass the integer node.
  template <class F>
  static GridFunction sample(const GridShape& shape, F&& f) {
    shape.validate();
    Vector v(shape.size());
    if constexpr (std::is_invocable_v<F&, Real>) {
      if (shape.dim != 1)
        throw InputError("one-argument sampler on a two-dimensional grid");
      for (long i = 0; i < shape.n; ++i)
        v(i) = Scalar(f(shape.coordinate(i)));
    } else {
      if (shape.dim != 2)
        throw InputError("two-argument sampler on a one-dimensional grid");
      for (long i = 0; i < shape.n; ++i)
        for (long j = 0; j < shape.n; ++j)
          v(shape.flat(i, j)) = Scalar(f(shape.coordinate(i), shape.coordinate(j)));
    }
    return GridFunction(shape, std::move(v));
  }

  const GridShape& shape() const { return shape_; }
  const Vector& samples() const { return samples_; }
  int dim() const { return shape_.dim; }
  long size() const { return shape_.size(); }

  Scalar operator()(long i) const { return samples_(i); }
  Scalar at(long i0, long i1) const { return samples_(shape_.flat(i0, i1)); }

  GridFunction with_samples(Vector samples) const { return {shape_, std::move(samples)}; }

private:
  GridShape shape_;
  Vector samples_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Scalar c, const GridFunction& f);

// max |f - g| over the grid; shapes must agree
Real max_abs_difference(const GridFunction& f, const GridFunction& g);

void write_csv(std::ostream& out, const GridFunction& f);
GridFunction read_grid_csv(std::istream& in);

} // namespace atomdec

#endif
