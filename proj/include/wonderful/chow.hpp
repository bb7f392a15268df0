#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "wonderful/counting.hpp"
#include "wonderful/projspace.hpp"

// Divisor classes on the blow-up X of P^n along every rational linear
// subspace.  CH^1(X) is free on h (pullback of the hyperplane class) and the
// exceptional divisors E_L with codim L >= 2; boundary components over
// hyperplanes are expanded into that basis as soon as they appear.
namespace wonderful::chow {

using projspace::LatticePermutation;
using projspace::Subspace;
using projspace::SubspaceLattice;

struct DivisorClass {
  gf::Field field;
  int n = 1;
  std::int64_t h = 0;
  std::map<Subspace, std::int64_t> exceptional;  // codim >= 2 keys, no zeros

  static DivisorClass zero(gf::Field field, int n);
  static DivisorClass hyperplane_pullback(gf::Field field, int n);  // h
  /// [E_L] for codim L >= 2.  Hyperplanes go through hyperplane_class.
  static DivisorClass exceptional_divisor(const Subspace& L);

  std::int64_t coefficient(const Subspace& L) const;
  bool in_gamma() const { return h == 0; }

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass operator+(const DivisorClass& o) const { return DivisorClass(*this) += o; }
  DivisorClass operator-(const DivisorClass& o) const { return DivisorClass(*this) -= o; }
  DivisorClass operator*(std::int64_t k) const;

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.field == b.field && a.n == b.n && a.h == b.h && a.exceptional == b.exceptional;
  }

  std::string to_string() const;

 private:
  void add_term(const Subspace& L, std::int64_t c);
};

/// [E_H] = h - sum of [E_L] over L strictly inside H.
DivisorClass hyperplane_class(const Subspace& H);
DivisorClass hyperplane_class(const SubspaceLattice& lattice, std::size_t H);

/// [E_M] in the basis: the basis vector itself, or the hyperplane expansion.
DivisorClass boundary_class(const SubspaceLattice& lattice, std::size_t M);

DivisorClass canonical_class(int n, const gf::Field& field);
DivisorClass canonical_class(const SubspaceLattice& lattice);

/// Pullback along a flag-preserving bijection of L(V):
///   [E_L] -> [E_{perm^-1(L)}],
///   h     -> [E_{perm^-1(H_ref)}] + sum_{L < H_ref} [E_{perm^-1(L)}].
/// Throws NotFlagPreserving, NotHyperplane.
DivisorClass pullback(const SubspaceLattice& lattice, const LatticePermutation& perm, const DivisorClass& c,
                      const Subspace& H_ref);

/// Whether the image of h is the same for every reference hyperplane.
bool pullback_well_defined(const SubspaceLattice& lattice, const LatticePermutation& perm);

/// The h-coefficient; classes in Γ reduce to 0.
std::int64_t reduce_mod_gamma(const DivisorClass& c);

struct SwapReport {
  int n = 0;
  unsigned q = 0;
  bool applicable = false;
  // Route 1: (n+1)(q^n - q) against (n-1)(q^{n+1} - 1).
  counting::BigInt lhs, rhs;
  bool arithmetic_mismatch = false;
  // Route 2: pull K_X back along the standard duality and compare mod Γ.
  std::string duality_method;  // "lattice" or "count"
  counting::BigInt dual_canonical_mod_gamma, canonical_mod_gamma;
  bool duality_mismatch = false;

  bool impossible() const { return applicable && arithmetic_mismatch && duality_mismatch; }
};

/// Lattices larger than this use the counted form of the duality route.
inline constexpr std::size_t kSwapLatticeLimit = 3'000;

SwapReport swap_impossibility(int n, unsigned q);

/// The intersection pairing on the blown-up plane (n = 2).
struct SurfaceClass {
  gf::Field field;
  std::int64_t h = 0;
  std::map<Subspace, std::int64_t> points;

  /// Requires n = 2.
  static SurfaceClass from(const DivisorClass& c);
};

/// h.h = 1, h.E_p = 0, E_p.E_p' = -[p = p'].  Throws AmbientMismatch.
std::int64_t surface_intersection(const SurfaceClass& a, const SurfaceClass& b);

}  // namespace wonderful::chow
