#ifndef ATOMDEC_COEFFICIENTS_HPP
#define ATOMDEC_COEFFICIENTS_HPP

#include <array>
#include <iosfwd>
#include <memory>
#include <unordered_map>
#include <vector>

#include "atomdec/core.hpp"

namespace atomdec {

using LatticeIndex = std::array<int, 2>;  // second entry is 0 in 1-D

inline int linf_norm(const LatticeIndex& j) { return std::max(std::abs(j[0]), std::abs(j[1])); }

// An ordered finite index set. The order is the enumeration used by partial
// sums; it is always nondecreasing in the l-infinity magnitude so that
// "all |j| <= J" is a prefix.
class IndexSet {
public:
  IndexSet(int dim, std::vector<LatticeIndex> indices);

  // Z^dim truncated to |j|_inf <= radius: 0 first, then shells 1, 2, ...,
  // lexicographic within a shell.
  static IndexSet shells(int dim, int radius);
  // 1, 2, ..., count (magnitude of j is j itself)
  static IndexSet sequential(long count);
  // Product set [lo0, hi0] x [lo1, hi1] re-ordered into shells.
  static IndexSet box(LatticeIndex lo, LatticeIndex hi);

  int dim() const { return dim_; }
  long size() const { return long(indices_.size()); }
  const LatticeIndex& operator[](long k) const { return indices_[std::size_t(k)]; }
  int magnitude(long k) const { return linf_norm(indices_[std::size_t(k)]); }
  int max_magnitude() const { return indices_.empty() ? 0 : magnitude(size() - 1); }

  // Number of leading entries with magnitude <= m.
  long count_within(int m) const;
  // Position of j in the enumeration, or -1.
  long position(const LatticeIndex& j) const;

  bool operator==(const IndexSet& other) const {
    return dim_ == other.dim_ && indices_ == other.indices_;
  }

private:
  int dim_;
  std::vector<LatticeIndex> indices_;
  std::unordered_map<long long, long> lookup_;
};

// Coefficients indexed by an IndexSet.
class CoefficientSeq {
public:
  CoefficientSeq(std::shared_ptr<const IndexSet> indices, Vector values);

  static CoefficientSeq zeros(std::shared_ptr<const IndexSet> indices);

  const IndexSet& indices() const { return *indices_; }
  std::shared_ptr<const IndexSet> index_ptr() const { return indices_; }
  const Vector& values() const { return values_; }
  long size() const { return values_.size(); }

  Scalar operator[](long k) const { return values_(k); }
  Scalar at(const LatticeIndex& j) const;

  // Entries with |j|_inf <= m, same order.
  CoefficientSeq truncated(int m) const;

private:
  std::shared_ptr<const IndexSet> indices_;
  Vector values_;
};

void write_csv(std::ostream& out, const CoefficientSeq& c);
CoefficientSeq read_coefficient_csv(std::istream& in);

} // namespace atomdec

#endif
