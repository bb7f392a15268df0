#include "doctest.h"

#include <random>
#include <set>

#include "wonderful/autgroup.hpp"
#include "wonderful/chow.hpp"

using namespace wonderful;
using namespace wonderful::autgroup;
using gf::Elem;
using gf::Field;

namespace {

// g applied to a point's coordinate column, renormalized by hand.
std::vector<Elem> apply_to_point(const Field& f, const Matrix& g, const std::vector<Elem>& p) {
  std::vector<Elem> v(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) v[i] = f.add(v[i], f.mul(g(i, j), p[j]));
  linalg::normalize(f, v);
  return v;
}

// Frobenius x -> x^p applied to every coordinate, as a point permutation.
PointPermutation frobenius(const SubspaceLattice& lat) {
  const Field& f = lat.field();
  PointPermutation sigma;
  for (std::size_t p = 0; p < lat.count_of_dim(0); ++p) {
    auto c = lat[p].point_coordinates();
    for (auto& x : c) x = f.pow(x, f.characteristic());
    sigma.push_back(lat.index_of(projspace::Subspace::from_point(f, c)));
  }
  return sigma;
}

std::size_t cycle_length(const PointPermutation& s, std::size_t p) {
  std::size_t len = 1;
  for (std::size_t x = s[p]; x != p; x = s[x]) ++len;
  return len;
}

}  // namespace

TEST_CASE("act on points matches the column action") {
  Field f3 = Field::of_order(3);
  SubspaceLattice lat(f3, 2);
  std::mt19937 rng(7);
  const auto all = enumerate_pgl(2, f3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& g = all[rng() % all.size()];
    for (std::size_t p = 0; p < lat.count_of_dim(0); ++p) {
      const auto want = apply_to_point(f3, g.matrix(), lat[p].point_coordinates());
      CHECK(act(g, lat[p]).point_coordinates() == want);
    }
  }
}

TEST_CASE("act examples") {
  Field f2 = Field::of_order(2);
  Matrix swap(3, 3);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = 1;
  ProjectiveMap g(f2, swap);
  auto p = projspace::Subspace::from_point(f2, {1, 0, 0});
  CHECK(act(g, p).to_string() == "[0:1:0]");
  SubspaceLattice lat(f2, 2);
  for (const auto& L : lat.elements()) CHECK(act(g, L).dim() == L.dim());
}

TEST_CASE("projective maps are canonical up to scalars") {
  Field f5 = Field::of_order(5);
  Matrix m = Matrix::identity(2);
  m(0, 1) = 3;
  Matrix scaled = m;
  for (auto& x : scaled.row(0)) x = f5.mul(x, 4);
  for (auto& x : scaled.row(1)) x = f5.mul(x, 4);
  CHECK(ProjectiveMap(f5, m) == ProjectiveMap(f5, scaled));
  CHECK_THROWS_AS(ProjectiveMap(f5, Matrix(2, 2)), Error);
  try {
    ProjectiveMap(f5, Matrix(2, 2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotABasis);
  }
}

TEST_CASE("group action: (gh)L = g(hL), identity and inverses") {
  Field f3 = Field::of_order(3);
  SubspaceLattice lat(f3, 2);
  const auto all = enumerate_pgl(2, f3);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& g = all[rng() % all.size()];
    const auto& h = all[rng() % all.size()];
    const auto gh = g * h;
    for (const auto& L : lat.elements()) {
      CHECK(act(gh, L) == act(g, act(h, L)));
      CHECK(act(g.inverse(), act(g, L)) == L);
    }
    CHECK(g * g.inverse() == ProjectiveMap::identity(f3, 2));
  }
  for (const auto& L : lat.elements()) CHECK(act(ProjectiveMap::identity(f3, 2), L) == L);
}

TEST_CASE("a Singer-type element of order 7 acts as a 7-cycle") {
  // Companion matrix of x^3 + x + 1 over GF(2).
  Field f2 = Field::of_order(2);
  Matrix c(3, 3);
  c(1, 0) = c(2, 1) = 1;
  c(0, 2) = c(1, 2) = 1;
  ProjectiveMap g(f2, c);
  SubspaceLattice lat(f2, 2);
  const auto sigma = restrict_to_points(lat, induced_permutation(lat, g).perm);
  for (std::size_t p = 0; p < sigma.size(); ++p) CHECK(cycle_length(sigma, p) == 7);
}

TEST_CASE("group orders") {
  CHECK(pgl_order(2, 2) == 168);
  CHECK(pgl_order(1, 2) == 6);
  CHECK(pgl_order(2, 3) == 5616);
  CHECK(pgl_order(3, 2) == 20160);
  CHECK(pgl_order(2, 4) == 60480);
  CHECK(pgammal_order(2, 4) == 120960);
  CHECK(pgammal_order(2, 5) == pgl_order(2, 5));
  CHECK(enumerate_pgl(2, Field::of_order(2)).size() == 168);
  CHECK(enumerate_pgl(1, Field::of_order(3)).size() == 24);
  CHECK(enumerate_pgl(2, Field::of_order(3)).size() == 5616);
  CHECK(enumerate_pgl(1, Field::of_order(4)).size() == 60);
}

TEST_CASE("enumerate_pgl is sorted, distinct and closed") {
  Field f2 = Field::of_order(2);
  const auto all = enumerate_pgl(2, f2);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  const std::set<ProjectiveMap> s(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); i += 13)
    for (std::size_t j = 0; j < all.size(); j += 17) CHECK(s.count(all[i] * all[j]) == 1);
}

TEST_CASE("induced permutations are flag-preserving and faithful") {
  for (unsigned q : {2u, 3u}) {
    Field f = Field::of_order(q);
    SubspaceLattice lat(f, 2);
    std::set<LatticePermutation> seen;
    for (const auto& g : enumerate_pgl(2, f)) {
      auto gp = induced_permutation(lat, g);
      if (q == 2) CHECK(projspace::flag_complex_check(lat, gp.perm));
      CHECK(gp.mode == GradedPermutation::Mode::Preserving);
      seen.insert(gp.perm);
    }
    CHECK(seen.size() == pgl_order(2, q));
  }
}

TEST_CASE("GradedPermutation::from classifies the grading") {
  Field f2 = Field::of_order(2);
  SubspaceLattice lat(f2, 2);
  auto id = GradedPermutation::from(lat, LatticePermutation::identity(lat.size()));
  CHECK(id.mode == GradedPermutation::Mode::Preserving);
  auto dual = GradedPermutation::from(lat, projspace::duality_permutation(lat));
  CHECK(dual.mode == GradedPermutation::Mode::Reversing);

  auto bad = LatticePermutation::identity(lat.size());
  std::swap(bad.image[0], bad.image[1]);  // two points, lines left alone
  CHECK_THROWS_AS(GradedPermutation::from(lat, bad), Error);
  auto mixed = LatticePermutation::identity(lat.size());
  std::swap(mixed.image[0], mixed.image[lat.first_of_dim(1)]);
  try {
    GradedPermutation::from(lat, mixed);
    FAIL("expected NotFlagPreserving");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFlagPreserving);
  }
}

TEST_CASE("collineation search over GF(2) finds exactly PGL(3,2)") {
  Field f2 = Field::of_order(2);
  SubspaceLattice lat(f2, 2);
  auto res = collineation_search(lat);
  REQUIRE(res.maps.size() == 168);
  std::set<LatticePermutation> found, induced;
  for (const auto& m : res.maps) {
    found.insert(m.perm);
    CHECK(projspace::flag_complex_check(lat, m.perm));
  }
  for (const auto& g : enumerate_pgl(2, f2)) induced.insert(induced_permutation(lat, g).perm);
  CHECK(found == induced);
  CHECK(res.nodes > 0);
}

TEST_CASE("collineation search counts") {
  CHECK(collineation_search(2, 3).maps.size() == 5616);
  CHECK(collineation_search(3, 2).maps.size() == 20160);
  CHECK(collineation_search(1, 2).maps.size() == 6);
  CHECK(collineation_search(1, 3).maps.size() == 24);
  // Over GF(4) the Frobenius joins in.
  CHECK(collineation_search(2, 4).maps.size() == 120960);
}

TEST_CASE("collineation search is independent of the worker count") {
  SubspaceLattice lat(Field::of_order(3), 2);
  auto one = collineation_search(lat, {50'000'000, 1});
  auto three = collineation_search(lat, {50'000'000, 3});
  CHECK(one.maps == three.maps);
  CHECK(one.nodes == three.nodes);
}

TEST_CASE("collineation search honours its budget") {
  try {
    collineation_search(2, 3, {100, 1});
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("frame method round trip") {
  Field f2 = Field::of_order(2);
  SubspaceLattice lat(f2, 2);
  for (const auto& g : enumerate_pgl(2, f2)) {
    auto sigma = restrict_to_points(lat, induced_permutation(lat, g).perm);
    CHECK(realize_as_pgl(lat, sigma) == g);
  }
  Field f3 = Field::of_order(3);
  SubspaceLattice lat3(f3, 2);
  const auto all = enumerate_pgl(2, f3);
  for (std::size_t i = 0; i < all.size(); i += 37) {
    auto sigma = restrict_to_points(lat3, induced_permutation(lat3, all[i]).perm);
    CHECK(realize_as_pgl(lat3, sigma) == all[i]);
  }
  SubspaceLattice line(f3, 1);
  for (const auto& g : enumerate_pgl(1, f3))
    CHECK(realize_as_pgl(line, restrict_to_points(line, induced_permutation(line, g).perm)) == g);
}

TEST_CASE("every collineation over GF(2) and GF(3) is realized") {
  for (auto [n, q] : {std::pair{2, 2u}, std::pair{2, 3u}, std::pair{3, 2u}}) {
    SubspaceLattice lat(Field::of_order(q), n);
    for (const auto& m : collineation_search(lat).maps) {
      auto sigma = restrict_to_points(lat, m.perm);
      auto g = realize_as_pgl(lat, sigma);
      CHECK(induced_permutation(lat, g).perm == m.perm);
    }
  }
}

TEST_CASE("the Frobenius of GF(4) is a collineation but not projective-linear") {
  Field f4 = Field::of_order(4);
  SubspaceLattice lat(f4, 2);
  auto sigma = frobenius(lat);
  try {
    realize_as_pgl(lat, sigma);
    FAIL("expected NotRealizable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRealizable);
  }
  // Exactly half of the GF(4) collineations are realizable.
  std::size_t realizable = 0, refused = 0;
  for (const auto& m : collineation_search(lat).maps) {
    try {
      realize_as_pgl(lat, restrict_to_points(lat, m.perm));
      ++realizable;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotRealizable);
      ++refused;
    }
  }
  CHECK(realizable == 60480);
  CHECK(refused == 60480);
}

TEST_CASE("realize_as_pgl rejects bad input") {
  Field f2 = Field::of_order(2);
  SubspaceLattice lat(f2, 2);
  PointPermutation short_map{0, 1, 2};
  auto code_of = [&](const PointPermutation& s) {
    try {
      realize_as_pgl(lat, s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of(short_map) == ErrorCode::NotBijective);
  CHECK(code_of({0, 0, 1, 2, 3, 4, 5}) == ErrorCode::NotBijective);
  // Swapping two points breaks some line.
  PointPermutation swapped{1, 0, 2, 3, 4, 5, 6};
  CHECK(code_of(swapped) == ErrorCode::NotCollinearityPreserving);
}

TEST_CASE("pullback along a collineation fixes the canonical class") {
  for (unsigned q : {2u, 3u}) {
    Field f = Field::of_order(q);
    SubspaceLattice lat(f, 2);
    const auto K = chow::canonical_class(lat);
    const auto all = enumerate_pgl(2, f);
    for (std::size_t i = 0; i < all.size(); i += (q == 2 ? 1 : 97)) {
      auto perm = induced_permutation(lat, all[i]).perm;
      CHECK(chow::pullback(lat, perm, K, lat[lat.first_of_dim(1)]) == K);
      CHECK(chow::pullback_well_defined(lat, perm));
    }
  }
}
