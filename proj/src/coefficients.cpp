#include "atomdec/coefficients.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "atomdec/tables.hpp"

namespace atomdec {

namespace {
long long key(const LatticeIndex& j) { return (long long)(j[0]) * 4294967296LL + (long long)(j[1]); }
} // namespace

IndexSet::IndexSet(int dim, std::vector<LatticeIndex> indices) : dim_(dim), indices_(std::move(indices)) {
  if (dim_ != 1 && dim_ != 2)
    throw InputError("index sets are 1- or 2-dimensional");
  lookup_.reserve(indices_.size());
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (dim_ == 1 && indices_[k][1] != 0)
      throw InputError("1-D index with nonzero second component");
    if (k > 0 && linf_norm(indices_[k]) < linf_norm(indices_[k - 1]))
      throw InputError("index enumeration must be nondecreasing in magnitude");
    if (!lookup_.emplace(key(indices_[k]), long(k)).second)
      throw InputError("duplicate index in index set");
  }
}

IndexSet IndexSet::shells(int dim, int radius) {
  if (radius < 0)
    throw InputError("negative truncation radius");
  return box({-radius, dim == 2 ? -radius : 0}, {radius, dim == 2 ? radius : 0});
}

IndexSet IndexSet::sequential(long count) {
  std::vector<LatticeIndex> v;
  v.reserve(std::size_t(count));
  for (long j = 1; j <= count; ++j)
    v.push_back({int(j), 0});
  return IndexSet(1, std::move(v));
}

IndexSet IndexSet::box(LatticeIndex lo, LatticeIndex hi) {
  const int dim = (lo[1] == 0 && hi[1] == 0) ? 1 : 2;
  std::vector<LatticeIndex> v;
  for (int a = lo[0]; a <= hi[0]; ++a)
    for (int b = lo[1]; b <= hi[1]; ++b)
      v.push_back({a, b});
  // stable by magnitude; lexicographic order within a shell is inherited
  std::stable_sort(v.begin(), v.end(),
                   [](const LatticeIndex& x, const LatticeIndex& y) { return linf_norm(x) < linf_norm(y); });
  return IndexSet(dim, std::move(v));
}

long IndexSet::count_within(int m) const {
  auto it = std::upper_bound(indices_.begin(), indices_.end(), m,
                             [](int value, const LatticeIndex& j) { return value < linf_norm(j); });
  return long(it - indices_.begin());
}

long IndexSet::position(const LatticeIndex& j) const {
  auto it = lookup_.find(key(j));
  return it == lookup_.end() ? -1 : it->second;
}

CoefficientSeq::CoefficientSeq(std::shared_ptr<const IndexSet> indices, Vector values)
  : indices_(std::move(indices)), values_(std::move(values)) {
  if (!indices_)
    throw InputError("coefficient sequence without index set");
  if (values_.size() != indices_->size())
    throw InputError("coefficient count does not match index set");
  if (!values_.allFinite())
    throw InputError("coefficients must be finite");
}

CoefficientSeq CoefficientSeq::zeros(std::shared_ptr<const IndexSet> indices) {
  const long n = indices->size();
  return CoefficientSeq(std::move(indices), Vector::Zero(n));
}

Scalar CoefficientSeq::at(const LatticeIndex& j) const {
  const long k = indices_->position(j);
  return k < 0 ? Scalar(0.0) : values_(k);
}

CoefficientSeq CoefficientSeq::truncated(int m) const {
  const long count = indices_->count_within(m);
  if (count == size())
    return *this;
  std::vector<LatticeIndex> v;
  for (long k = 0; k < count; ++k)
    v.push_back((*indices_)[k]);
  return CoefficientSeq(std::make_shared<const IndexSet>(indices_->dim(), std::move(v)), values_.head(count));
}

void write_csv(std::ostream& out, const CoefficientSeq& c) {
  const int dim = c.indices().dim();
  out << (dim == 1 ? "j0,re,im\n" : "j0,j1,re,im\n");
  for (long k = 0; k < c.size(); ++k) {
    const auto& j = c.indices()[k];
    out << j[0] << ',';
    if (dim == 2)
      out << j[1] << ',';
    out << format_real(c[k].real()) << ',' << format_real(c[k].imag()) << '\n';
  }
}

CoefficientSeq read_coefficient_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw InputError("coefficient csv: empty input");
  auto head = split_csv_line(line);
  int dim = 0;
  if (head == std::vector<std::string>{"j0", "re", "im"})
    dim = 1;
  else if (head == std::vector<std::string>{"j0", "j1", "re", "im"})
    dim = 2;
  else
    throw InputError("coefficient csv: unexpected header '" + line + "'");

  std::vector<LatticeIndex> idx;
  std::vector<Scalar> vals;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto f = split_csv_line(line);
    if (long(f.size()) != dim + 2)
      throw InputError("coefficient csv: wrong field count in '" + line + "'");
    LatticeIndex j{int(parse_integer(f[0])), dim == 2 ? int(parse_integer(f[1])) : 0};
    idx.push_back(j);
    vals.emplace_back(parse_real(f[std::size_t(dim)]), parse_real(f[std::size_t(dim) + 1]));
  }
  Vector v(long(vals.size()));
  for (std::size_t k = 0; k < vals.size(); ++k)
    v(long(k)) = vals[k];
  return CoefficientSeq(std::make_shared<const IndexSet>(dim, std::move(idx)), std::move(v));
}

} // namespace atomdec
