#include "doctest.h"

#include <functional>
#include <random>
#include <set>

#include "wonderful/valfan.hpp"

using namespace wonderful;
using namespace wonderful::valfan;
using gf::Field;
using projspace::FlagType;

namespace {

LinearForm form(Field f, std::vector<gf::Elem> c) { return LinearForm(f, std::move(c)); }

projspace::Subspace point(Field f, std::vector<gf::Elem> c) { return projspace::Subspace::from_point(f, std::move(c)); }

projspace::Subspace zero_set(Field f, std::vector<gf::Elem> c) {
  return projspace::Subspace::from_forms(f, static_cast<int>(c.size()) - 1, linalg::Matrix::from_rows({c}, c.size()));
}

// Oracle for L ⊆ Z(v): v kills every spanning vector of L.
bool vanishes_on(const LinearForm& v, const projspace::Subspace& L) {
  const auto basis = L.span_basis();
  for (std::size_t r = 0; r < basis.rows(); ++r)
    if (linalg::dot(L.field(), v.coefficients(), basis.row(r)) != 0) return false;
  return true;
}

// Rank oracle for integer matrices with at most three columns: the largest k
// with a nonzero k x k minor.
std::int64_t det(const std::vector<std::vector<std::int64_t>>& m, const std::vector<std::size_t>& rows) {
  const std::size_t k = rows.size();
  if (k == 1) return m[rows[0]][0];
  if (k == 2) return m[rows[0]][0] * m[rows[1]][1] - m[rows[0]][1] * m[rows[1]][0];
  const auto& a = m[rows[0]];
  const auto& b = m[rows[1]];
  const auto& c = m[rows[2]];
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

std::size_t minor_rank(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t cols = m.front().size();
  REQUIRE(cols <= 3);
  for (std::size_t k = cols; k >= 1; --k) {
    for (std::size_t mask = 1; mask < (1u << cols); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask))) != k) continue;
      std::vector<std::vector<std::int64_t>> sub;
      for (const auto& row : m) {
        std::vector<std::int64_t> r;
        for (std::size_t c = 0; c < cols; ++c)
          if (mask & (1u << c)) r.push_back(row[c]);
        sub.push_back(r);
      }
      std::vector<std::size_t> rows(k);
      std::function<bool(std::size_t, std::size_t)> pick = [&](std::size_t start, std::size_t depth) {
        if (depth == k) return det(sub, rows) != 0;
        for (std::size_t r = start; r < sub.size(); ++r) {
          rows[depth] = r;
          if (pick(r + 1, depth + 1)) return true;
        }
        return false;
      };
      if (pick(0, 0)) return k;
    }
  }
  return 0;
}

std::vector<ConePoint> grid_points(const projspace::SubspaceLattice& lat) {
  const std::vector<Rational> grid = {Rational(1, 2), Rational(1, 3)};
  std::vector<ConePoint> out;
  for (const auto& F : projspace::enumerate_flags(lat, FlagType::all())) {
    const std::size_t k = F.size();
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      std::vector<Rational> values;
      for (std::size_t j : idx) values.push_back(grid[j]);
      out.emplace_back(F, values);
      std::size_t j = 0;
      for (; j < k; ++j) {
        if (++idx[j] < grid.size()) break;
        idx[j] = 0;
      }
      if (j == k) break;
    }
  }
  return out;
}

// (Q - q)(Q - q^2)...(Q - q^n)
std::uint64_t drinfeld_closed_form(unsigned q, int n, unsigned m) {
  std::uint64_t Q = 1, out = 1, qi = 1;
  for (unsigned i = 0; i < m; ++i) Q *= q;
  for (int i = 1; i <= n; ++i) {
    qi *= q;
    out *= Q - qi;
  }
  return out;
}

}  // namespace

TEST_CASE("ord examples") {
  Field f = Field::of_order(2);
  auto p = point(f, {1, 0, 0});
  auto e0 = LinearForm::coordinate(f, 2, 0), e1 = LinearForm::coordinate(f, 2, 1), e2 = LinearForm::coordinate(f, 2, 2);
  CHECK(ord(p, UnitMonomial::ratio(e1, e2)) == 0);
  CHECK(ord(p, UnitMonomial::ratio(e1, e0)) == 1);
  CHECK(ord(zero_set(f, {0, 0, 1}), UnitMonomial::ratio(e0, e1)) == 0);
  CHECK(ord(p, UnitMonomial()) == 0);
  CHECK(UnitMonomial::ratio(e1, e1).is_one());

  try {
    UnitMonomial({{e0, 2}, {e1, -1}});
    FAIL("expected DegreeNotZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeNotZero);
  }
  auto other = LinearForm::coordinate(Field::of_order(3), 2, 0);
  CHECK_THROWS_AS(UnitMonomial::ratio(e0, other), Error);
  CHECK_THROWS_AS(ord(point(Field::of_order(3), {1, 0, 0}), UnitMonomial::ratio(e1, e0)), Error);
}

TEST_CASE("ord trichotomy on ratios, n <= 3, q <= 3") {
  for (unsigned q : {2u, 3u})
    for (int n = 1; n <= 3; ++n) {
      Field f = Field::of_order(q);
      projspace::SubspaceLattice lat(f, n);
      const auto forms = projspace::all_forms(f, n);
      for (const auto& L : lat.elements())
        for (const auto& v : forms)
          for (const auto& w : forms) {
            if (v == w) continue;
            const auto o = ord(L, UnitMonomial::ratio(v, w));
            const bool a = vanishes_on(v, L), b = vanishes_on(w, L);
            REQUIRE(o == (a && !b ? 1 : (!a && b ? -1 : 0)));
          }
    }
}

TEST_CASE("ord is a homomorphism") {
  Field f = Field::of_order(3);
  projspace::SubspaceLattice lat(f, 2);
  const auto forms = projspace::all_forms(f, 2);
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
  std::uniform_int_distribution<int> ex(-2, 2);
  auto random_unit = [&] {
    std::vector<std::pair<LinearForm, std::int64_t>> fs;
    std::int64_t total = 0;
    for (int k = 0; k < 3; ++k) {
      int e = ex(rng);
      fs.emplace_back(forms[pick(rng)], e);
      total += e;
    }
    fs.emplace_back(forms[pick(rng)], -total);
    return UnitMonomial(fs);
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_unit(), b = random_unit();
    for (const auto& L : lat.elements()) {
      REQUIRE(ord(L, a * b) == ord(L, a) + ord(L, b));
      REQUIRE(ord(L, a.inverse()) == -ord(L, a));
      REQUIRE(ord(L, a.pow(3)) == 3 * ord(L, a));
    }
    REQUIRE((a * a.inverse()).is_one());
  }
}

TEST_CASE("eval_cone examples") {
  Field f = Field::of_order(2);
  auto p = point(f, {1, 0, 0});
  auto line = zero_set(f, {0, 0, 1});
  auto e0 = LinearForm::coordinate(f, 2, 0), e1 = LinearForm::coordinate(f, 2, 1), e2 = LinearForm::coordinate(f, 2, 2);
  auto x = ConePoint::ray(p, Rational(1, 2));
  CHECK(eval_cone(x, UnitMonomial()) == 1);
  CHECK(eval_cone(x, UnitMonomial::ratio(e1, e0)) == Rational(1, 2));

  // e1^2 / (e2 e0): two forms through the point on top, one below; the line
  // only lies in Z(e2).
  UnitMonomial g({{e1, 2}, {e2, -1}, {e0, -1}});
  CHECK(ord(p, g) == 1);
  CHECK(ord(line, g) == -1);
  ConePoint y(projspace::Flag({p, line}), {Rational(1, 2), Rational(1, 3)});
  CHECK(eval_cone(y, g) == Rational(3, 2));

  CHECK_THROWS_AS(ConePoint::ray(p, Rational(1)), Error);
  CHECK_THROWS_AS(ConePoint::ray(p, Rational(0)), Error);
  CHECK_THROWS_AS(ConePoint(projspace::Flag({p, line}), {Rational(1, 2)}), Error);
}

TEST_CASE("eval_cone is multiplicative and monotone in each weight") {
  Field f = Field::of_order(2);
  projspace::SubspaceLattice lat(f, 2);
  const auto forms = projspace::all_forms(f, 2);
  for (const auto& F : projspace::enumerate_flags(lat, FlagType::complete())) {
    ConePoint x(F, {Rational(1, 2), Rational(2, 3)});
    ConePoint x_small(F, {Rational(1, 3), Rational(2, 3)});
    for (const auto& v : forms)
      for (const auto& w : forms) {
        auto a = UnitMonomial::ratio(v, w);
        auto b = UnitMonomial::ratio(w, forms.front());
        REQUIRE(eval_cone(x, a * b) == eval_cone(x, a) * eval_cone(x, b));
        const auto o = ord(F[0], a);
        const Rational big = eval_cone(x, a), small = eval_cone(x_small, a);
        if (o > 0) REQUIRE(small < big);
        if (o < 0) REQUIRE(small > big);
        if (o == 0) REQUIRE(small == big);
      }
  }
}

TEST_CASE("separation_certificate example") {
  Field f = Field::of_order(2);
  projspace::Flag F({point(f, {1, 0, 0})});
  projspace::Flag G({zero_set(f, {0, 0, 1})});
  auto c = separation_certificate(F, G);
  CHECK_FALSE(c.swapped);
  CHECK(c.L_i == point(f, {0, 1, 0}));
  CHECK(c.v == form(f, {0, 1, 0}));
  CHECK(c.v_prime == form(f, {1, 1, 0}));
  auto ratio = UnitMonomial::ratio(c.v, c.v_prime);
  CHECK(ord(F[0], ratio) == 1);
  CHECK(ord(G[0], ratio) == 0);
  CHECK(verify_certificate(F, G, c.v, c.v_prime));
  CHECK_FALSE(verify_certificate(G, F, c.v, c.v_prime));

  projspace::SubspaceLattice lat(f, 2);
  auto c2 = separation_certificate(lat, F, G);
  CHECK(c2.v == c.v);
  CHECK(c2.v_prime == c.v_prime);

  try {
    separation_certificate(F, F);
    FAIL("expected EqualFlags");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EqualFlags);
  }
}

TEST_CASE("separation_certificate: nested flags") {
  Field f = Field::of_order(2);
  auto p = point(f, {1, 0, 0});
  auto l = zero_set(f, {0, 0, 1});
  projspace::Flag big({p, l}), small({l});
  auto c = separation_certificate(big, small);
  CHECK_FALSE(c.swapped);
  CHECK(c.L == p);
  CHECK(verify_certificate(big, small, c.v, c.v_prime));
  auto d = separation_certificate(small, big);
  CHECK(d.swapped);
  CHECK(d.positive == big);
  CHECK(verify_certificate(d.positive, d.neutral, d.v, d.v_prime));
}

TEST_CASE("separation certificates for every pair of flags") {
  for (auto [q, n] : std::vector<std::pair<unsigned, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    projspace::SubspaceLattice lat(Field::of_order(q), n);
    const auto flags = projspace::enumerate_flags(lat, FlagType::all());
    std::size_t checked = 0;
    for (std::size_t a = 0; a < flags.size(); ++a)
      for (std::size_t b = 0; b < flags.size(); ++b) {
        if (a == b) continue;
        auto c = separation_certificate(lat, flags[a], flags[b]);
        REQUIRE(verify_certificate(c.positive, c.neutral, c.v, c.v_prime));
        REQUIRE(c.L_i.dim() == c.L.dim());
        REQUIRE_FALSE(c.L_i == c.L);
        ++checked;
      }
    CHECK(checked == flags.size() * (flags.size() - 1));
  }
}

TEST_CASE("separation certificates at q = 3, n = 3, unordered pairs") {
  projspace::SubspaceLattice lat(Field::of_order(3), 3);
  const auto flags = projspace::enumerate_flags(lat, FlagType::all());
  CHECK(flags.size() == 210 + 3 * 520 + 2080);
  for (std::size_t a = 0; a < flags.size(); ++a)
    for (std::size_t b = a + 1; b < flags.size(); ++b) {
      auto c = separation_certificate(lat, flags[a], flags[b]);
      REQUIRE(verify_certificate(c.positive, c.neutral, c.v, c.v_prime));
    }
}

TEST_CASE("cone_matrix examples") {
  Field f = Field::of_order(2);
  auto m = cone_matrix(projspace::Flag({point(f, {1, 0, 0})}));
  CHECK(m.size() == 7);
  for (const auto& row : m) {
    REQUIRE(row.size() == 1);
    CHECK((row[0] >= -1 && row[0] <= 1));
  }
  CHECK(rational_rank(m) == 1);
  auto full = cone_matrix(projspace::Flag({point(f, {1, 0, 0}), zero_set(f, {0, 0, 1})}));
  CHECK(rational_rank(full) == 2);
  CHECK(minor_rank(full) == 2);
}

TEST_CASE("cone matrices have full rank and distinct spans") {
  for (unsigned q : {2u, 3u}) {
    projspace::SubspaceLattice lat(Field::of_order(q), 2);
    std::set<std::vector<std::vector<Rational>>> spans;
    const auto flags = projspace::enumerate_flags(lat, FlagType::all());
    for (const auto& F : flags) {
      auto m = cone_matrix(F);
      REQUIRE(rational_rank(m) == F.size());
      REQUIRE(minor_rank(m) == F.size());
      spans.insert(column_span(m));
    }
    CHECK(spans.size() == flags.size());
  }
  projspace::SubspaceLattice lat(Field::of_order(2), 3);
  const auto flags = projspace::enumerate_flags(lat, FlagType::all());
  std::set<std::vector<std::vector<Rational>>> spans;
  for (std::size_t k = 0; k < flags.size(); k += 7) {
    auto m = cone_matrix(flags[k]);
    REQUIRE(rational_rank(m) == flags[k].size());
    REQUIRE(minor_rank(m) == flags[k].size());
    REQUIRE(spans.insert(column_span(m)).second);
  }
}

TEST_CASE("incomparable examples") {
  Field f = Field::of_order(2);
  auto p = point(f, {1, 0, 0});
  auto x = ConePoint::ray(p, Rational(1, 2)), y = ConePoint::ray(p, Rational(1, 3));
  auto w = incomparable(x, y);
  CHECK(eval_cone(x, w.f) < eval_cone(y, w.f));
  CHECK(eval_cone(x, w.g) > eval_cone(y, w.g));
  CHECK(w.g == w.f.inverse());
  try {
    incomparable(x, x);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("incomparable on the rational grid, q = 2, n = 2") {
  projspace::SubspaceLattice lat(Field::of_order(2), 2);
  const auto pts = grid_points(lat);
  CHECK(pts.size() == 14 * 2 + 21 * 4);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      auto w = incomparable(pts[a], pts[b]);
      REQUIRE(eval_cone(pts[a], w.f) < eval_cone(pts[b], w.f));
      REQUIRE(eval_cone(pts[a], w.g) > eval_cone(pts[b], w.g));
    }
}

TEST_CASE("chart_polynomial examples") {
  Field f2 = Field::of_order(2), f3 = Field::of_order(3);
  auto c1 = chart_polynomial(f2, linalg::Matrix::identity(2));
  REQUIRE(c1.factors.size() == 2);
  CHECK(c1.factors[0].a == std::vector<gf::Elem>{0});
  CHECK(c1.factors[1].a == std::vector<gf::Elem>{1});

  auto c2 = chart_polynomial(f2, linalg::Matrix::identity(3));
  CHECK(c2.factors.size() == 6);
  CHECK(std::count_if(c2.factors.begin(), c2.factors.end(), [](const ChartFactor& x) { return x.i == 1; }) == 4);
  CHECK(std::count_if(c2.factors.begin(), c2.factors.end(), [](const ChartFactor& x) { return x.i == 2; }) == 2);

  auto c3 = chart_polynomial(f3, linalg::Matrix::identity(2));
  CHECK(c3.factors.size() == 3);

  try {
    chart_polynomial(f2, linalg::Matrix::from_rows({{1, 1}, {1, 1}}, 2));
    FAIL("expected NotABasis");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotABasis);
  }
}

TEST_CASE("chart_point_test examples") {
  Field f2 = Field::of_order(2), f4 = Field::of_order(4);
  gf::FieldEmbedding E(f2, f4);
  auto cp = chart_polynomial(f2, linalg::Matrix::identity(2));
  const std::vector<gf::FieldElement> omega = {f4.generator()};
  CHECK(cp.evaluate(omega, E) == f4.generator() + f4.element(1));
  auto r = chart_point_test(omega, cp, E);
  CHECK(r.lhs);
  CHECK(r.rhs);
  const std::vector<gf::FieldElement> one = {f4.element(1)};
  CHECK(cp.evaluate(one, E).is_zero());
  r = chart_point_test(one, cp, E);
  CHECK_FALSE(r.lhs);
  CHECK_FALSE(r.rhs);
  const std::vector<gf::FieldElement> zero = {f4.element(0)};
  CHECK_FALSE(chart_point_test(zero, cp, E).lhs);

  gf::FieldEmbedding wrong(Field::of_order(3), Field::of_order(9));
  try {
    chart_point_test(omega, cp, wrong);
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldMismatch);
  }
}

TEST_CASE("chart point test agrees everywhere and counts Drinfeld points") {
  struct Case {
    unsigned q;
    int n;
    unsigned m;
    std::uint64_t expected;
  };
  for (const auto& c : std::vector<Case>{{2, 1, 2, 2}, {2, 2, 2, 0}, {2, 2, 3, 24}, {3, 1, 2, 6}}) {
    auto census = chart_census(c.q, c.n, c.m);
    CHECK(census.mismatches == 0);
    CHECK(census.points == c.expected);
    CHECK(drinfeld_points(c.q, c.n, c.m) == c.expected);
    CHECK(drinfeld_closed_form(c.q, c.n, c.m) == c.expected);
  }
}

TEST_CASE("chart point test in adapted bases") {
  for (auto [q, n, m] : std::vector<std::tuple<unsigned, int, unsigned>>{{2, 2, 2}, {2, 2, 3}, {3, 1, 2}}) {
    Field k = Field::of_order(q);
    Field K = Field::create(k.characteristic(), m);
    gf::FieldEmbedding E(k, K);
    projspace::SubspaceLattice lat(k, n);
    const auto flags = projspace::enumerate_flags(lat, FlagType::complete());
    for (std::size_t idx = 0; idx < flags.size(); idx += 5) {
      const auto& F = flags[idx];
      auto B = adapted_basis(F);
      // L_i = Z(e_{i+1}, ..., e_n)
      for (int i = 0; i < n; ++i) {
        linalg::Matrix rows(0, static_cast<std::size_t>(n) + 1);
        for (int j = i + 1; j <= n; ++j) rows.append_row(B.row(static_cast<std::size_t>(j)));
        REQUIRE(projspace::Subspace::from_forms(k, n, rows) == F[static_cast<std::size_t>(i)]);
      }
      auto cp = chart_polynomial(k, B);
      std::uint64_t total = 1;
      for (int i = 0; i < n; ++i) total *= K.order();
      std::uint64_t hits = 0;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<gf::FieldElement> t;
        std::uint64_t rest = code;
        for (int i = 0; i < n; ++i, rest /= K.order()) t.push_back(K.element(static_cast<gf::Elem>(rest % K.order())));
        auto r = chart_point_test(t, cp, E);
        REQUIRE(r.lhs == r.rhs);
        hits += r.lhs;
      }
      CHECK(hits == drinfeld_closed_form(q, n, m));
    }
  }
}
