#include "atomdec/grid_function.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "atomdec/tables.hpp"

namespace atomdec {

GridShape GridShape::box(int dim, Real half_width, long n, bool periodic) {
  GridShape s;
  s.dim = dim;
  s.kind = DomainKind::box;
  s.half_width = half_width;
  s.n = n;
  if (periodic)
    s.period = 2.0 * half_width;
  s.validate();
  return s;
}

GridShape GridShape::cyclic(long length) {
  GridShape s;
  s.dim = 1;
  s.kind = DomainKind::cyclic;
  s.half_width = 0.0;
  s.n = length;
  s.validate();
  return s;
}

void GridShape::validate() const {
  if (dim != 1 && dim != 2)
    throw InputError("grid dimension must be 1 or 2");
  if (!is_power_of_two(n))
    throw InputError("grid size per axis must be a power of two, got " + std::to_string(n));
  if (kind == DomainKind::box) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw InputError("box half-width must be positive");
    if (period && std::abs(*period - 2.0 * half_width) > 1e-12 * half_width)
      throw InputError("a periodic box grid must cover exactly one period");
  } else {
    if (dim != 1)
      throw InputError("cyclic grids are one-dimensional");
    if (period && *period != Real(n))
      throw InputError("cyclic grid period must equal its order");
  }
}

bool GridShape::operator==(const GridShape& o) const {
  return dim == o.dim && kind == o.kind && n == o.n && half_width == o.half_width &&
         period.has_value() == o.period.has_value();
}

GridFunction::GridFunction(GridShape shape, Vector samples)
  : shape_(shape), samples_(std::move(samples)) {
  shape_.validate();
  if (samples_.size() != shape_.size())
    throw InputError("sample count does not match grid shape");
  if (!samples_.allFinite())
    throw InputError("grid samples must be finite");
}

GridFunction GridFunction::zeros(const GridShape& shape) {
  shape.validate();
  return GridFunction(shape, Vector::Zero(shape.size()));
}

namespace {
void require_same(const GridFunction& a, const GridFunction& b) {
  if (!(a.shape() == b.shape()))
    throw InputError("grid functions live on different grids");
}
} // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same(a, b);
  return a.with_samples(a.samples() + b.samples());
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same(a, b);
  return a.with_samples(a.samples() - b.samples());
}

GridFunction operator*(Scalar c, const GridFunction& f) { return f.with_samples(c * f.samples()); }

Real max_abs_difference(const GridFunction& f, const GridFunction& g) {
  require_same(f, g);
  return (f.samples() - g.samples()).cwiseAbs().maxCoeff();
}

void write_csv(std::ostream& out, const GridFunction& f) {
  const auto& s = f.shape();
  out << "dim," << s.dim << '\n';
  if (s.kind == DomainKind::box) {
    out << "domain,box\n";
    out << "M," << format_real(s.half_width) << '\n';
  } else {
    out << "domain,cyclic\n";
    out << "L," << s.n << '\n';
  }
  out << "N," << s.n << '\n';
  out << "period," << (s.period ? format_real(*s.period) : std::string("none")) << '\n';
  out << "index,re,im\n";
  for (long i = 0; i < f.size(); ++i)
    out << i << ',' << format_real(f(i).real()) << ',' << format_real(f(i).imag()) << '\n';
}

GridFunction read_grid_csv(std::istream& in) {
  std::map<std::string, std::string> header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    auto fields = split_csv_line(line);
    if (fields.size() >= 1 && fields[0] == "index")
      break;
    if (fields.size() != 2)
      throw InputError("grid csv: malformed header row '" + line + "'");
    header[fields[0]] = fields[1];
  }
  for (const char* key : {"dim", "domain", "N", "period"})
    if (!header.count(key))
      throw InputError(std::string("grid csv: missing header row '") + key + "'");

  GridShape shape;
  shape.dim = int(parse_integer(header["dim"]));
  shape.n = parse_integer(header["N"]);
  if (header["domain"] == "box") {
    if (!header.count("M"))
      throw InputError("grid csv: box domain needs an M row");
    shape.kind = DomainKind::box;
    shape.half_width = parse_real(header["M"]);
  } else if (header["domain"] == "cyclic") {
    shape.kind = DomainKind::cyclic;
    shape.half_width = 0.0;
    if (header.count("L") && parse_integer(header["L"]) != shape.n)
      throw InputError("grid csv: L and N disagree");
  } else {
    throw InputError("grid csv: unknown domain '" + header["domain"] + "'");
  }
  if (header["period"] != "none")
    shape.period = parse_real(header["period"]);
  shape.validate();

  Vector v(shape.size());
  std::vector<bool> seen(std::size_t(shape.size()), false);
  long count = 0;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw InputError("grid csv: sample rows need index,re,im");
    long i = parse_integer(fields[0]);
    if (i < 0 || i >= shape.size() || seen[std::size_t(i)])
      throw InputError("grid csv: bad or duplicate sample index " + fields[0]);
    seen[std::size_t(i)] = true;
    v(i) = Scalar(parse_real(fields[1]), parse_real(fields[2]));
    ++count;
  }
  if (count != shape.size())
    throw InputError("grid csv: expected " + std::to_string(shape.size()) + " samples");
  return GridFunction(shape, std::move(v));
}

} // namespace atomdec
