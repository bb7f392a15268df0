#include "doctest.h"

#include <algorithm>
#include <set>

#include "wonderful/counting.hpp"
#include "wonderful/projspace.hpp"

using namespace wonderful;
using namespace wonderful::projspace;
using gf::Field;

namespace {

Subspace point(Field f, std::vector<gf::Elem> c) { return Subspace::from_point(f, std::move(c)); }

Subspace zero_set(Field f, int n, std::vector<std::vector<gf::Elem>> forms) {
  return Subspace::from_forms(f, n, linalg::Matrix::from_rows(forms, static_cast<std::size_t>(n) + 1));
}

// Oracle: the rational points of L, by evaluating its forms at every point.
std::set<std::vector<gf::Elem>> point_set(const Subspace& L) {
  std::set<std::vector<gf::Elem>> out;
  const auto& f = L.field();
  for (const auto& p : linalg::projective_points(f, static_cast<std::size_t>(L.ambient_dim()) + 1)) {
    bool on = true;
    for (std::size_t r = 0; r < L.forms().rows() && on; ++r) on = linalg::dot(f, L.forms().row(r), p) == 0;
    if (on) out.insert(p);
  }
  return out;
}

}  // namespace

TEST_CASE("enumerate_subspaces examples") {
  Field f2 = Field::of_order(2), f3 = Field::of_order(3);
  CHECK(enumerate_subspaces(2, f2, 0).size() == 7);
  CHECK(enumerate_subspaces(2, f2, 1).size() == 7);
  CHECK(enumerate_subspaces(1, f3, 0).size() == 4);
  CHECK_THROWS_AS(enumerate_subspaces(2, f2, 2), Error);
}

TEST_CASE("enumeration matches the Gaussian count, n <= 3, q <= 5") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    Field f = Field::of_order(q);
    for (int n = 1; n <= 3; ++n)
      for (int d = 0; d <= n - 1; ++d) {
        auto subs = enumerate_subspaces(n, f, d);
        CHECK(counting::gaussian_count(n, d, q) == subs.size());
        CHECK(std::is_sorted(subs.begin(), subs.end()));
        CHECK(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
        for (const auto& L : subs) {
          CHECK(L.dim() == d);
          CHECK(Subspace::from_forms(f, n, L.forms()) == L);  // idempotent canonicalization
          CHECK(point_set(L).size() == counting::projective_points(d, q));
        }
      }
  }
}

TEST_CASE("enumeration budget") {
  try {
    enumerate_subspaces(9, Field::of_order(7), 4);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("contains examples") {
  Field f = Field::of_order(2);
  auto line = zero_set(f, 2, {{0, 0, 1}});
  CHECK(contains(point(f, {1, 0, 0}), line));
  CHECK_FALSE(contains(point(f, {0, 0, 1}), line));
  CHECK(contains(line, line));
  CHECK_FALSE(contains(line, point(f, {1, 0, 0})));
  auto other = zero_set(Field::of_order(3), 2, {{0, 0, 1}});
  try {
    (void)contains(line, other);
    FAIL("expected AmbientMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbientMismatch);
  }
}

TEST_CASE("containment agrees with point sets") {
  for (unsigned q : {2u, 3u}) {
    SubspaceLattice lat(Field::of_order(q), 3);
    std::vector<std::set<std::vector<gf::Elem>>> sets;
    for (const auto& L : lat.elements()) sets.push_back(point_set(L));
    for (std::size_t a = 0; a < lat.size(); ++a)
      for (std::size_t b = 0; b < lat.size(); ++b)
        REQUIRE(lat.contains(a, b) == std::includes(sets[b].begin(), sets[b].end(), sets[a].begin(), sets[a].end()));
  }
}

TEST_CASE("meet and join examples") {
  Field f = Field::of_order(2);
  auto l1 = zero_set(f, 2, {{0, 0, 1}});
  auto l2 = zero_set(f, 2, {{0, 1, 0}});
  auto m = meet(l1, l2);
  REQUIRE(m);
  CHECK(*m == point(f, {1, 0, 0}));

  auto p = point(f, {1, 0, 0}), r = point(f, {0, 1, 0});
  CHECK_FALSE(meet(p, r).has_value());
  auto j = join(p, r);
  REQUIRE(j);
  CHECK(*j == l1);

  // Two disjoint lines of P^3(F_2).
  auto a = zero_set(f, 3, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  auto b = zero_set(f, 3, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK_FALSE(meet(a, b).has_value());
  CHECK_FALSE(join(a, b).has_value());  // they span P^3
  CHECK_FALSE(join(l1, l2).has_value());
}

TEST_CASE("meet/join agree with point sets and satisfy absorption") {
  for (unsigned q : {2u, 3u}) {
    SubspaceLattice lat(Field::of_order(q), 3);
    for (const auto& L : lat.elements())
      for (const auto& M : lat.elements()) {
        auto m = meet(L, M);
        auto sl = point_set(L), sm = point_set(M);
        std::set<std::vector<gf::Elem>> common;
        std::set_intersection(sl.begin(), sl.end(), sm.begin(), sm.end(), std::inserter(common, common.end()));
        if (m) {
          REQUIRE(point_set(*m) == common);
          auto back = join(L, *m);
          REQUIRE(back);
          REQUIRE(*back == L);
        } else {
          REQUIRE(common.empty());
        }
        if (auto j = join(L, M)) {
          REQUIRE(contains(L, *j));
          REQUIRE(contains(M, *j));
          auto back = meet(L, *j);
          REQUIRE(back);
          REQUIRE(*back == L);
        }
      }
  }
}

TEST_CASE("hyperplanes_containing") {
  Field f2 = Field::of_order(2), f3 = Field::of_order(3);
  CHECK(hyperplanes_containing(point(f2, {1, 0, 0})).size() == 3);
  auto H = zero_set(f3, 3, {{1, 1, 0, 2}});
  auto hs = hyperplanes_containing(H);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0] == H);
  auto line = zero_set(f3, 3, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(hyperplanes_containing(line).size() == 4);
  for (unsigned q : {2u, 3u, 4u}) {
    SubspaceLattice lat(Field::of_order(q), 3);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      auto hs2 = hyperplanes_containing(lat[i]);
      const auto expected = counting::projective_points(3 - lat[i].dim() - 1, q);
      REQUIRE(expected == hs2.size());
      for (const auto& h : hs2) REQUIRE(contains(lat[i], h));
    }
  }
}

TEST_CASE("enumerate_flags examples") {
  Field f2 = Field::of_order(2);
  CHECK(enumerate_flags(2, f2, FlagType::complete()).size() == 21);
  auto all = enumerate_flags(2, f2, FlagType::all());
  CHECK(all.size() == 35);
  CHECK(std::count_if(all.begin(), all.end(), [](const Flag& F) { return F.size() == 1; }) == 14);
  CHECK(std::count_if(all.begin(), all.end(), [](const Flag& F) { return F.size() == 2; }) == 21);
  CHECK(enumerate_flags(1, f2, FlagType::all()).size() == 3);
  CHECK(enumerate_flags(3, f2, FlagType::with_dimensions({0, 2})).size() == 15 * 7);
  CHECK(enumerate_flags(3, f2, FlagType::complete()).size() == 15 * 7 * 3);
  CHECK_THROWS_AS(enumerate_flags(3, f2, FlagType::with_dimensions({0, 3})), Error);
}

TEST_CASE("flags are valid chains, each once") {
  SubspaceLattice lat(Field::of_order(3), 2);
  auto idx = enumerate_flag_indices(lat, FlagType::all());
  std::set<std::vector<std::size_t>> unique(idx.begin(), idx.end());
  CHECK(unique.size() == idx.size());
  for (const auto& chain : idx)
    for (std::size_t i = 1; i < chain.size(); ++i) REQUIRE(lat.contains(chain[i - 1], chain[i]));
  CHECK(idx.size() == 13 + 13 + 13 * 4);
}

TEST_CASE("comparable iff some flag contains both") {
  for (unsigned q : {2u, 3u})
    for (int n = 1; n <= 3; ++n) {
      SubspaceLattice lat(Field::of_order(q), n);
      std::set<std::pair<std::size_t, std::size_t>> together;
      for (const auto& chain : enumerate_flag_indices(lat, FlagType::all()))
        for (std::size_t a : chain)
          for (std::size_t b : chain) together.insert({a, b});
      for (std::size_t a = 0; a < lat.size(); ++a)
        for (std::size_t b = 0; b < lat.size(); ++b) REQUIRE(lat.comparable(a, b) == together.count({a, b}) > 0);
    }
}

TEST_CASE("Flag validation") {
  Field f = Field::of_order(2);
  auto p = point(f, {1, 0, 0});
  auto l = zero_set(f, 2, {{0, 0, 1}});
  auto far = zero_set(f, 2, {{1, 0, 0}});
  CHECK_NOTHROW(Flag({p, l}));
  CHECK_THROWS_AS(Flag({l, p}), Error);
  CHECK_THROWS_AS(Flag({p, far}), Error);
  CHECK_THROWS_AS(Flag({}), Error);
}

TEST_CASE("duality reverses inclusion") {
  for (unsigned q : {2u, 3u})
    for (int n = 1; n <= 3; ++n) {
      SubspaceLattice lat(Field::of_order(q), n);
      auto delta = duality_permutation(lat);
      CHECK(delta.after(delta) == LatticePermutation::identity(lat.size()));
      for (std::size_t a = 0; a < lat.size(); ++a) {
        REQUIRE(lat[delta(a)].dim() == n - 1 - lat[a].dim());
        for (std::size_t b = 0; b < lat.size(); ++b) REQUIRE(lat.contains(a, b) == lat.contains(delta(b), delta(a)));
      }
    }
}

TEST_CASE("flag_complex_check") {
  SubspaceLattice lat(Field::of_order(2), 2);
  CHECK(flag_complex_check(lat, LatticePermutation::identity(lat.size())));
  CHECK(flag_complex_check(lat, duality_permutation(lat)));

  // Swapping two points alone breaks incidence.
  auto swap = LatticePermutation::identity(lat.size());
  std::swap(swap.image[0], swap.image[1]);
  CHECK_FALSE(flag_complex_check(lat, swap));

  auto bad = LatticePermutation::identity(lat.size());
  bad.image[0] = 1;
  try {
    flag_complex_check(lat, bad);
    FAIL("expected NotBijective");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBijective);
  }
}

TEST_CASE("canonical order and names") {
  Field f = Field::of_order(2);
  auto pts = enumerate_subspaces(2, f, 0);
  // The order is on form data: W = <e1, e2> beats <e0, e1>.
  CHECK(pts.front().to_string() == "[1:0:0]");
  CHECK(zero_set(f, 2, {{0, 0, 1}}).to_string() == "Z(e2)");
  SubspaceLattice lat(f, 2);
  for (std::size_t i = 0; i < lat.size(); ++i) CHECK(lat.index_of(lat[i]) == i);
}
