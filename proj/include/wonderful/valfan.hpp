#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wonderful/gf.hpp"
#include "wonderful/projspace.hpp"

// Divisorial valuations ord_L on ratios of linear forms, the cone complex of
// flags they span, separation certificates between cones, and the affine
// chart around a complete flag together with its extension-field point test.
namespace wonderful::valfan {

using Rational = boost::multiprecision::cpp_rational;
using projspace::Flag;
using projspace::LinearForm;
using projspace::Subspace;
using projspace::SubspaceLattice;

/// ∏ v_k^{e_k} with Σ e_k = 0.  Forms are kept sorted and distinct, exponents
/// nonzero; the empty product is the constant 1.
class UnitMonomial {
 public:
  UnitMonomial() = default;
  /// Throws DegreeNotZero, AmbientMismatch.
  explicit UnitMonomial(std::vector<std::pair<LinearForm, std::int64_t>> factors);
  static UnitMonomial ratio(const LinearForm& v, const LinearForm& v_prime);

  const std::vector<std::pair<LinearForm, std::int64_t>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  UnitMonomial operator*(const UnitMonomial& o) const;
  UnitMonomial inverse() const;
  UnitMonomial pow(std::int64_t k) const;

  std::string to_string() const;

  friend bool operator==(const UnitMonomial&, const UnitMonomial&) = default;

 private:
  std::vector<std::pair<LinearForm, std::int64_t>> factors_;
};

/// Σ e_k [L ⊆ Z(v_k)].  Throws AmbientMismatch.
std::int64_t ord(const Subspace& L, const UnitMonomial& f);

/// An interior point of the cone of a flag: a weight r_L in (0,1) on each
/// member, aligned with flag.members().
class ConePoint {
 public:
  /// Throws InvalidArgument unless sizes match and every r is in (0,1).
  ConePoint(Flag flag, std::vector<Rational> values);
  static ConePoint ray(const Subspace& L, Rational r);

  const Flag& flag() const { return flag_; }
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const ConePoint&, const ConePoint&) = default;

 private:
  Flag flag_;
  std::vector<Rational> values_;
};

/// ∏_{L ∈ F} r_L^{ord_L(f)}, exactly.
Rational eval_cone(const ConePoint& x, const UnitMonomial& f);

/// v/v' has valuation 0 along every member of `neutral`, >= 0 along `positive`
/// and exactly 1 at `L`, a member of `positive` outside `neutral`.
struct SeparationCertificate {
  Flag positive;
  Flag neutral;
  Subspace L;
  Subspace L_i;  // member of the completed neutral flag in L's dimension
  LinearForm v;
  LinearForm v_prime;
  bool swapped = false;  // true when positive is the second argument
};

/// Throws EqualFlags, AmbientMismatch.
SeparationCertificate separation_certificate(const Flag& F, const Flag& F_prime);
/// Same certificate, drawing the candidates for L_i from a prebuilt lattice.
SeparationCertificate separation_certificate(const SubspaceLattice& lattice, const Flag& F, const Flag& F_prime);

bool verify_certificate(const Flag& F, const Flag& F_prime, const LinearForm& v, const LinearForm& v_prime);

/// Rows: every normalized form v (all_forms order); columns: members of F;
/// entries ord_L(v/e0).
std::vector<std::vector<std::int64_t>> cone_matrix(const Flag& F);

/// Rank over Q.
std::size_t rational_rank(const std::vector<std::vector<std::int64_t>>& m);

/// Reduced row echelon basis of the column space, a canonical key for it.
std::vector<std::vector<Rational>> column_span(const std::vector<std::vector<std::int64_t>>& m);

struct Witnesses {
  UnitMonomial f;  // eval(x, f) < eval(y, f)
  UnitMonomial g;  // eval(x, g) > eval(y, g)
};

/// Throws InvalidArgument when x == y, WitnessNotFound when nothing separates.
Witnesses incomparable(const ConePoint& x, const ConePoint& y);

/// 1 + a_i t_i + a_{i+1} t_i t_{i+1} + ... + a_n t_i ... t_n.
struct ChartFactor {
  int i = 1;
  std::vector<gf::Elem> a;  // a_i .. a_n
};

struct ChartPolynomial {
  gf::Field field;
  int n = 1;
  linalg::Matrix basis;  // rows e_0 .. e_n as forms on the standard coordinates
  std::vector<ChartFactor> factors;

  /// Value at t in K^n through the embedding of the base field into K.
  gf::FieldElement evaluate(std::span<const gf::FieldElement> t, const gf::FieldEmbedding& E) const;
};

/// Throws NotABasis.
ChartPolynomial chart_polynomial(const gf::Field& field, const linalg::Matrix& basis);

/// Basis with L_i = Z(e_{i+1}, ..., e_n) for a complete flag.
linalg::Matrix adapted_basis(const Flag& complete_flag);

struct ChartTest {
  bool lhs = false;  // all t_i != 0 and f(t) != 0
  bool rhs = false;  // [1 : t1 : t1 t2 : ...] avoids every rational hyperplane
};

/// Throws FieldMismatch.
ChartTest chart_point_test(std::span<const gf::FieldElement> t, const ChartPolynomial& cp,
                           const gf::FieldEmbedding& E);

struct ChartCount {
  std::uint64_t points = 0;      // t in (K^x)^n with f(t) != 0
  std::uint64_t mismatches = 0;  // t with lhs != rhs
  std::vector<std::vector<gf::Elem>> mismatching;  // first few
};

/// Runs chart_point_test over all of K^n for the standard basis.
ChartCount chart_census(unsigned q, int n, unsigned m);

/// #{points of P^n(GF(q^m)) on no GF(q)-rational hyperplane}, by enumeration.
std::uint64_t drinfeld_points(unsigned q, int n, unsigned m);

}  // namespace wonderful::valfan
