#pragma once

#include <cstdint>
#include <vector>

#include "wonderful/counting.hpp"
#include "wonderful/projspace.hpp"

// PGL(n+1, q) acting on the subspace lattice, an exhaustive search for
// incidence-preserving bijections, and the frame method turning a
// collinearity-preserving point permutation back into a matrix.
namespace wonderful::autgroup {

using linalg::Matrix;
using projspace::LatticePermutation;
using projspace::Subspace;
using projspace::SubspaceLattice;

/// An invertible matrix up to scalars, scaled so its first nonzero entry
/// (row-major) is 1.  Acts on column vectors: points go p -> g p.
class ProjectiveMap {
 public:
  /// Throws NotABasis for singular or non-square input.
  ProjectiveMap(gf::Field field, Matrix m);
  static ProjectiveMap identity(gf::Field field, int n);

  const gf::Field& field() const { return field_; }
  int ambient_dim() const { return static_cast<int>(m_.rows()) - 1; }
  const Matrix& matrix() const { return m_; }
  const Matrix& inverse_matrix() const { return inv_; }

  /// (g * h)(p) = g(h(p)).
  ProjectiveMap operator*(const ProjectiveMap& h) const;
  ProjectiveMap inverse() const;

  friend bool operator==(const ProjectiveMap& a, const ProjectiveMap& b) {
    return a.field_ == b.field_ && a.m_ == b.m_;
  }
  friend auto operator<=>(const ProjectiveMap& a, const ProjectiveMap& b) { return a.m_ <=> b.m_; }

 private:
  gf::Field field_;
  Matrix m_;
  Matrix inv_;
};

/// Image of L: the form space W goes to W g^-1.  Throws AmbientMismatch.
Subspace act(const ProjectiveMap& g, const Subspace& L);

struct GradedPermutation {
  enum class Mode { Preserving, Reversing };
  LatticePermutation perm;
  Mode mode = Mode::Preserving;

  /// Validates bijectivity, flag preservation and the grading.  Throws
  /// NotFlagPreserving.
  static GradedPermutation from(const SubspaceLattice& lattice, LatticePermutation perm);

  friend auto operator<=>(const GradedPermutation&, const GradedPermutation&) = default;
};

GradedPermutation induced_permutation(const SubspaceLattice& lattice, const ProjectiveMap& g);

/// |PGL(n+1, q)| = ∏_{i=0}^{n} (q^{n+1} - q^i) / (q - 1).
counting::BigInt pgl_order(int n, const counting::BigInt& q);
/// |PΓL(n+1, p^a)| = a |PGL(n+1, p^a)|.
counting::BigInt pgammal_order(int n, unsigned q);

/// Every element of PGL(n+1, q), in canonical matrix order.  Throws
/// BudgetExceeded past 10^6 elements.
std::vector<ProjectiveMap> enumerate_pgl(int n, const gf::Field& field);

struct SearchOptions {
  std::uint64_t node_budget = 50'000'000;
  unsigned workers = 1;
};

struct SearchResult {
  std::vector<GradedPermutation> maps;  // sorted
  std::uint64_t nodes = 0;
};

/// All grade-preserving incidence-preserving bijections of L(V), found by
/// backtracking on point images (frame first) with forward checking on
/// lines.  Throws BudgetExceeded.
SearchResult collineation_search(const SubspaceLattice& lattice, const SearchOptions& options = {});
SearchResult collineation_search(int n, unsigned q, const SearchOptions& options = {});

/// A permutation of the points of a lattice; entry i is the image of point i
/// (points occupy the first indices of the lattice).
using PointPermutation = std::vector<std::size_t>;

PointPermutation restrict_to_points(const SubspaceLattice& lattice, const LatticePermutation& perm);

/// Frame method: g = Y diag(c) from the images of e_0..e_n and e_0+...+e_n,
/// then checked on every point.  Throws NotBijective,
/// NotCollinearityPreserving, NotRealizable.
ProjectiveMap realize_as_pgl(const SubspaceLattice& lattice, const PointPermutation& sigma);

}  // namespace wonderful::autgroup
