#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wonderful/gf.hpp"
#include "wonderful/linalg.hpp"

/// Rational linear subspaces of P^n over GF(q), their incidence lattice and
/// the flag complex on it.
///
/// A subspace L is stored by W, the space of linear forms vanishing on it
/// (L = Z(W)), as a reduced row echelon basis.  "L lies in the hyperplane
/// Z(v)" is then "v is in the row space of W", and containment of subspaces
/// is reverse inclusion of form spaces.
namespace wonderful::projspace {

using gf::Elem;
using gf::Field;
using linalg::Matrix;

/// Subspace count per dimension above which enumeration refuses to run.
inline constexpr std::size_t kEnumerationBudget = 1'000'000;
/// Cap on the number of flags materialized by enumerate_flags.
inline constexpr std::size_t kFlagBudget = 1'000'000;

/// A nonzero linear form on GF(q)^{n+1}, scaled so its first nonzero
/// coefficient is 1.
class LinearForm {
 public:
  LinearForm(Field field, std::vector<Elem> coefficients);

  /// The coordinate form e_i on GF(q)^{n+1}.
  static LinearForm coordinate(Field field, int n, int i);

  const Field& field() const { return field_; }
  int ambient_dim() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Elem> coefficients() const { return coeffs_; }

  Elem evaluate(std::span<const Elem> point) const;

  /// e.g. "e0+2e2".
  std::string to_string() const;

  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }
  friend std::strong_ordering operator<=>(const LinearForm& a, const LinearForm& b) {
    if (auto c = a.field_.order() <=> b.field_.order(); c != 0) return c;
    return a.coeffs_ <=> b.coeffs_;
  }

 private:
  Field field_;
  std::vector<Elem> coeffs_;
};

/// All normalized forms on GF(q)^{n+1}, one per rational hyperplane, in
/// lexicographic coefficient order.
std::vector<LinearForm> all_forms(const Field& field, int n);

class Subspace {
 public:
  /// Z(rows): the rows span W.  Throws InvalidArgument when Z(W) is empty or
  /// all of P^n.
  static Subspace from_forms(Field field, int n, Matrix rows);
  static Subspace from_point(Field field, std::vector<Elem> coordinates);
  /// Smallest subspace containing the given points (rows are coordinates).
  static Subspace span_of(Field field, int n, const Matrix& points);

  const Field& field() const { return field_; }
  int ambient_dim() const { return n_; }
  int dim() const { return dim_; }
  int codim() const { return n_ - dim_; }
  bool is_point() const { return dim_ == 0; }
  bool is_hyperplane() const { return dim_ == n_ - 1; }

  /// Canonical RREF basis of the form space W, n - dim rows.
  const Matrix& forms() const { return forms_; }

  /// True iff L lies in Z(v), i.e. v belongs to W.
  bool lies_in(const LinearForm& v) const;

  /// Basis (RREF rows) of the vector subspace of GF(q)^{n+1} whose
  /// projectivization is L.
  Matrix span_basis() const;

  /// Normalized coordinates; points only.
  std::vector<Elem> point_coordinates() const;

  /// The form cutting out a hyperplane; hyperplanes only.
  LinearForm hyperplane_form() const;

  std::string to_string() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.forms_ == b.forms_;
  }
  /// Canonical order: ambient, then dimension, then RREF entries.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  Subspace(Field field, int n, int dim, Matrix forms)
      : field_(field), n_(n), dim_(dim), forms_(std::move(forms)) {}

  Field field_;
  int n_;
  int dim_;
  Matrix forms_;
};

void check_same_ambient(const Subspace& a, const Subspace& b);

/// All d-dimensional subspaces of P^n(GF(q)), canonical order.
std::vector<Subspace> enumerate_subspaces(int n, const Field& field, int d);

/// small ⊆ big.
bool contains(const Subspace& small, const Subspace& big);

/// Intersection; nullopt when empty.
std::optional<Subspace> meet(const Subspace& a, const Subspace& b);
/// Span; nullopt when it is all of P^n.
std::optional<Subspace> join(const Subspace& a, const Subspace& b);

/// Hyperplanes H with L ⊆ H, canonical order.
std::vector<Subspace> hyperplanes_containing(const Subspace& L);

/// Image under the standard correlation W -> W^perp (dot product on
/// GF(q)^{n+1}); reverses inclusion and sends dimension d to n-1-d.
Subspace dual(const Subspace& L);

class Flag {
 public:
  explicit Flag(std::vector<Subspace> members);

  const std::vector<Subspace>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Subspace& operator[](std::size_t i) const { return members_[i]; }
  bool contains(const Subspace& L) const;
  bool is_complete() const;
  int ambient_dim() const { return members_.front().ambient_dim(); }
  const Field& field() const { return members_.front().field(); }

  friend bool operator==(const Flag&, const Flag&) = default;

 private:
  std::vector<Subspace> members_;
};

/// Which flags enumerate_flags returns.
struct FlagType {
  enum class Kind { All, Complete, Dimensions };
  Kind kind = Kind::All;
  std::vector<int> dimensions;  // Kind::Dimensions only

  static FlagType all() { return {}; }
  static FlagType complete() { return {Kind::Complete, {}}; }
  static FlagType with_dimensions(std::vector<int> dims) { return {Kind::Dimensions, std::move(dims)}; }
};

/// The whole lattice L(V) with containment precomputed.  Elements are indexed
/// in canonical order; most higher-level code talks in these indices.
class SubspaceLattice {
 public:
  SubspaceLattice(Field field, int n);

  const Field& field() const { return field_; }
  int ambient_dim() const { return n_; }
  std::size_t size() const { return elements_.size(); }

  const Subspace& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Subspace>& elements() const { return elements_; }

  /// Throws AmbientMismatch for foreign subspaces.
  std::size_t index_of(const Subspace& L) const;

  /// Indices of the d-dimensional elements (a contiguous range).
  std::vector<std::size_t> of_dim(int d) const;
  std::size_t first_of_dim(int d) const { return dim_offset_[d]; }
  std::size_t count_of_dim(int d) const { return dim_offset_[d + 1] - dim_offset_[d]; }

  bool contains(std::size_t small, std::size_t big) const { return incidence_[small * size() + big] != 0; }
  bool comparable(std::size_t a, std::size_t b) const { return contains(a, b) || contains(b, a); }

  const std::vector<std::size_t>& strictly_below(std::size_t i) const { return below_[i]; }
  const std::vector<std::size_t>& strictly_above(std::size_t i) const { return above_[i]; }
  /// Points lying on element i (i itself for a point).
  const std::vector<std::size_t>& points_of(std::size_t i) const { return points_[i]; }

 private:
  Field field_;
  int n_;
  std::vector<Subspace> elements_;
  std::vector<std::size_t> dim_offset_;
  std::vector<std::uint8_t> incidence_;
  std::vector<std::vector<std::size_t>> below_;
  std::vector<std::vector<std::size_t>> above_;
  std::vector<std::vector<std::size_t>> points_;
};

/// Flags as index chains into a lattice, ordered by length then
/// lexicographically on the indices.
std::vector<std::vector<std::size_t>> enumerate_flag_indices(const SubspaceLattice& lattice,
                                                             const FlagType& type);

std::vector<Flag> enumerate_flags(const SubspaceLattice& lattice, const FlagType& type);
std::vector<Flag> enumerate_flags(int n, const Field& field, const FlagType& type);

/// A map from L(V) to itself, stored as image indices.
struct LatticePermutation {
  std::vector<std::size_t> image;

  static LatticePermutation identity(std::size_t size);
  std::size_t operator()(std::size_t i) const { return image[i]; }
  std::size_t size() const { return image.size(); }
  bool is_bijective() const;
  /// Throws NotBijective.
  LatticePermutation inverse() const;
  /// (this ∘ other)(i) = this(other(i)).
  LatticePermutation after(const LatticePermutation& other) const;

  friend auto operator<=>(const LatticePermutation&, const LatticePermutation&) = default;
};

/// The standard correlation L -> dual(L) as a lattice permutation.
LatticePermutation duality_permutation(const SubspaceLattice& lattice);

/// True iff perm sends flags to flags, i.e. preserves comparability in both
/// directions.  Throws NotBijective.
bool flag_complex_check(const SubspaceLattice& lattice, const LatticePermutation& perm);

}  // namespace wonderful::projspace
