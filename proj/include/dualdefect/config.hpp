#pragma once

// Point configurations A in Z^n and the Z-affine maps between them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualdefect/exact_linalg.hpp"

namespace dualdefect {

// A finite set of distinct lattice points, kept in lexicographic order.
class PointConfig {
 public:
  PointConfig() = default;
  // Sorts and removes repeated points; duplicates_removed() reports how many.
  PointConfig(std::size_t dim, std::vector<IntVector> points, std::string name = {});

  static PointConfig from_longs(std::size_t dim, std::initializer_list<std::initializer_list<long>> points,
                                std::string name = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<IntVector>& points() const { return points_; }
  const IntVector& operator[](std::size_t i) const { return points_[i]; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t duplicates_removed() const { return duplicates_removed_; }

  std::optional<std::size_t> index_of(const IntVector& p) const;

  friend bool operator==(const PointConfig& a, const PointConfig& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> points_;
  std::string name_;
  std::size_t duplicates_removed_ = 0;
};

// Z-affine map x -> matrix * x + translation; matrix is codomain x domain.
struct GroupHom {
  IntMatrix matrix;
  std::optional<IntVector> translation;

  GroupHom() = default;
  explicit GroupHom(IntMatrix m, std::optional<IntVector> t = std::nullopt);

  static GroupHom identity(std::size_t n) { return GroupHom(IntMatrix::identity(n)); }
  static GroupHom zero(std::size_t domain, std::size_t codomain = 0) {
    return GroupHom(IntMatrix(codomain, domain));
  }

  std::size_t domain_rank() const { return matrix.cols(); }
  std::size_t codomain_rank() const { return matrix.rows(); }
  IntVector operator()(const IntVector& x) const;
  IntVector linear(const IntVector& x) const { return matrix * x; }
  // (*this) after `inner`.
  GroupHom after(const GroupHom& inner) const;
  bool is_surjective() const { return dualdefect::is_surjective(matrix); }
  bool is_linear() const;
  // Saturated HNF basis of ker(matrix).
  IntMatrix kernel() const { return kernel_basis_int(matrix); }
  // Inverse of an invertible affine map.
  GroupHom inverse() const;
};

struct Normalization {
  PointConfig config;  // spans its lattice affinely
  GroupHom theta;      // Z^m -> Aff(A), theta(config) == A
};

Normalization normalize(const PointConfig& a);

// HNF rows of <A - A>.
IntMatrix difference_lattice(const PointConfig& a);

// True when <A - A> == Z^n.
bool spans_lattice(const PointConfig& a);

// A Z-affine isomorphism mapping a onto b, if one exists.  When both
// configurations affinely span their ambient lattices the witness acts on the
// original coordinates; otherwise it acts between the normalized coordinates.
std::optional<GroupHom> affine_equivalent(const PointConfig& a, const PointConfig& b);

// Image of a under f.  Without dedupe, merging two points throws CollapseError.
PointConfig apply_affine(const PointConfig& a, const GroupHom& f, bool dedupe = false);

// Vector helpers.
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator+(const IntVector& a, const IntVector& b);

// Rows are u - a[0] for every point u.
IntMatrix difference_matrix(const PointConfig& a);

}  // namespace dualdefect
