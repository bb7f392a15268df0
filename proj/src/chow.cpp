#include "wonderful/chow.hpp"

#include <algorithm>

namespace wonderful::chow {

DivisorClass DivisorClass::zero(gf::Field field, int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  return DivisorClass{field, n, 0, {}};
}

DivisorClass DivisorClass::hyperplane_pullback(gf::Field field, int n) {
  auto c = zero(field, n);
  c.h = 1;
  return c;
}

DivisorClass DivisorClass::exceptional_divisor(const Subspace& L) {
  require(L.codim() >= 2, ErrorCode::InvalidArgument,
          L.to_string() + " has codimension < 2; expand hyperplanes with hyperplane_class");
  auto c = zero(L.field(), L.ambient_dim());
  c.exceptional.emplace(L, 1);
  return c;
}

std::int64_t DivisorClass::coefficient(const Subspace& L) const {
  auto it = exceptional.find(L);
  return it == exceptional.end() ? 0 : it->second;
}

void DivisorClass::add_term(const Subspace& L, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = exceptional.emplace(L, c);
  if (!fresh && (it->second += c) == 0) exceptional.erase(it);
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  require(field == o.field && n == o.n, ErrorCode::AmbientMismatch, "classes on different blow-ups");
  h += o.h;
  for (const auto& [L, c] : o.exceptional) add_term(L, c);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) { return *this += o * -1; }

DivisorClass DivisorClass::operator*(std::int64_t k) const {
  auto out = zero(field, n);
  if (k == 0) return out;
  out.h = h * k;
  for (const auto& [L, c] : exceptional) out.exceptional.emplace(L, c * k);
  return out;
}

std::string DivisorClass::to_string() const {
  std::string s = std::to_string(h) + "h";
  for (const auto& [L, c] : exceptional) s += (c < 0 ? " - " : " + ") + std::to_string(c < 0 ? -c : c) + "E" + L.to_string();
  return s;
}

DivisorClass hyperplane_class(const Subspace& H) {
  require(H.is_hyperplane(), ErrorCode::NotHyperplane, H.to_string() + " is not a hyperplane");
  auto c = DivisorClass::hyperplane_pullback(H.field(), H.ambient_dim());
  for (int d = 0; d <= H.ambient_dim() - 2; ++d)
    for (const auto& L : projspace::enumerate_subspaces(H.ambient_dim(), H.field(), d))
      if (projspace::contains(L, H)) c.exceptional.emplace(L, -1);
  return c;
}

DivisorClass hyperplane_class(const SubspaceLattice& lattice, std::size_t H) {
  require(lattice[H].is_hyperplane(), ErrorCode::NotHyperplane, lattice[H].to_string() + " is not a hyperplane");
  auto c = DivisorClass::hyperplane_pullback(lattice.field(), lattice.ambient_dim());
  for (std::size_t L : lattice.strictly_below(H)) c.exceptional.emplace(lattice[L], -1);
  return c;
}

DivisorClass boundary_class(const SubspaceLattice& lattice, std::size_t M) {
  if (lattice[M].is_hyperplane()) return hyperplane_class(lattice, M);
  return DivisorClass::exceptional_divisor(lattice[M]);
}

DivisorClass canonical_class(const SubspaceLattice& lattice) {
  const int n = lattice.ambient_dim();
  auto c = DivisorClass::zero(lattice.field(), n);
  c.h = -(n + 1);
  for (int d = 0; d <= n - 2; ++d)
    for (std::size_t L : lattice.of_dim(d)) c.exceptional.emplace(lattice[L], n - d - 1);
  return c;
}

DivisorClass canonical_class(int n, const gf::Field& field) {
  auto c = DivisorClass::zero(field, n);
  c.h = -(n + 1);
  for (int d = 0; d <= n - 2; ++d)
    for (auto& L : projspace::enumerate_subspaces(n, field, d)) c.exceptional.emplace(std::move(L), n - d - 1);
  return c;
}

namespace {

void check_pullback_args(const SubspaceLattice& lattice, const LatticePermutation& perm) {
  require(perm.size() == lattice.size() && perm.is_bijective(), ErrorCode::NotFlagPreserving,
          "not a bijection of the subspace lattice");
  require(projspace::flag_complex_check(lattice, perm), ErrorCode::NotFlagPreserving,
          "permutation does not send flags to flags");
}

DivisorClass pulled_back_h(const SubspaceLattice& lattice, const LatticePermutation& inv, std::size_t H) {
  auto c = boundary_class(lattice, inv(H));
  for (std::size_t L : lattice.strictly_below(H)) c += boundary_class(lattice, inv(L));
  return c;
}

DivisorClass pullback_checked(const SubspaceLattice& lattice, const LatticePermutation& inv, const DivisorClass& c,
                              std::size_t H) {
  auto out = DivisorClass::zero(lattice.field(), lattice.ambient_dim());
  if (c.h != 0) out += pulled_back_h(lattice, inv, H) * c.h;
  for (const auto& [L, k] : c.exceptional) out += boundary_class(lattice, inv(lattice.index_of(L))) * k;
  return out;
}

}  // namespace

DivisorClass pullback(const SubspaceLattice& lattice, const LatticePermutation& perm, const DivisorClass& c,
                      const Subspace& H_ref) {
  require(c.field == lattice.field() && c.n == lattice.ambient_dim(), ErrorCode::AmbientMismatch,
          "class and lattice live on different blow-ups");
  require(H_ref.is_hyperplane(), ErrorCode::NotHyperplane, H_ref.to_string() + " is not a hyperplane");
  check_pullback_args(lattice, perm);
  return pullback_checked(lattice, perm.inverse(), c, lattice.index_of(H_ref));
}

bool pullback_well_defined(const SubspaceLattice& lattice, const LatticePermutation& perm) {
  check_pullback_args(lattice, perm);
  const auto inv = perm.inverse();
  const int n = lattice.ambient_dim();
  std::optional<DivisorClass> first;
  for (std::size_t H : lattice.of_dim(n - 1)) {
    auto c = pulled_back_h(lattice, inv, H);
    if (!first)
      first = std::move(c);
    else if (c != *first)
      return false;
  }
  return true;
}

std::int64_t reduce_mod_gamma(const DivisorClass& c) { return c.h; }

SwapReport swap_impossibility(int n, unsigned q) {
  SwapReport r;
  r.n = n;
  r.q = q;
  if (n < 2) return r;
  r.applicable = true;
  const counting::BigInt Q = q;
  r.lhs = (n + 1) * (pow(Q, static_cast<unsigned>(n)) - Q);
  r.rhs = (n - 1) * (pow(Q, static_cast<unsigned>(n + 1)) - 1);
  r.arithmetic_mismatch = r.lhs != r.rhs;

  r.canonical_mod_gamma = -(n + 1);
  counting::BigInt lattice_size = 0;
  for (int d = 0; d < n; ++d) lattice_size += counting::gaussian_count(n, d, Q);
  if (lattice_size <= kSwapLatticeLimit) {
    r.duality_method = "lattice";
    SubspaceLattice lattice(gf::Field::of_order(q), n);
    const auto delta = projspace::duality_permutation(lattice);
    const auto& H = lattice[lattice.first_of_dim(n - 1)];
    r.dual_canonical_mod_gamma = reduce_mod_gamma(pullback(lattice, delta, canonical_class(lattice), H));
  } else {
    // Only hyperplane images carry h: h pulls back with #P^{n-1} of them,
    // and each point class E_p (coefficient n-1) becomes a hyperplane class.
    r.duality_method = "count";
    r.dual_canonical_mod_gamma =
        -(n + 1) * counting::projective_points(n - 1, Q) + (n - 1) * counting::projective_points(n, Q);
  }
  r.duality_mismatch = r.dual_canonical_mod_gamma != r.canonical_mod_gamma;
  return r;
}

SurfaceClass SurfaceClass::from(const DivisorClass& c) {
  require(c.n == 2, ErrorCode::InvalidArgument, "the surface pairing needs n = 2");
  return SurfaceClass{c.field, c.h, c.exceptional};
}

std::int64_t surface_intersection(const SurfaceClass& a, const SurfaceClass& b) {
  require(a.field == b.field, ErrorCode::AmbientMismatch, "classes on different surfaces");
  std::int64_t out = a.h * b.h;
  auto i = a.points.begin();
  auto j = b.points.begin();
  while (i != a.points.end() && j != b.points.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      out -= i->second * j->second;
      ++i, ++j;
    }
  }
  return out;
}

}  // namespace wonderful::chow
