#include "wonderful/valfan.hpp"

#include <algorithm>
#include <map>

#include "wonderful/counting.hpp"

namespace wonderful::valfan {

using gf::Elem;
using gf::Field;
using linalg::Matrix;

UnitMonomial::UnitMonomial(std::vector<std::pair<LinearForm, std::int64_t>> factors) {
  std::map<LinearForm, std::int64_t> merged;
  std::int64_t degree = 0;
  for (auto& [v, e] : factors) {
    if (!merged.empty()) {
      const auto& first = merged.begin()->first;
      require(v.field() == first.field() && v.ambient_dim() == first.ambient_dim(), ErrorCode::AmbientMismatch,
              "monomial mixes forms from different ambient spaces");
    }
    merged[v] += e;
    degree += e;
  }
  require(degree == 0, ErrorCode::DegreeNotZero, "total degree " + std::to_string(degree) + " is not zero");
  for (auto& [v, e] : merged)
    if (e != 0) factors_.emplace_back(v, e);
}

UnitMonomial UnitMonomial::ratio(const LinearForm& v, const LinearForm& v_prime) {
  return UnitMonomial({{v, 1}, {v_prime, -1}});
}

UnitMonomial UnitMonomial::operator*(const UnitMonomial& o) const {
  auto all = factors_;
  all.insert(all.end(), o.factors_.begin(), o.factors_.end());
  return UnitMonomial(std::move(all));
}

UnitMonomial UnitMonomial::inverse() const { return pow(-1); }

UnitMonomial UnitMonomial::pow(std::int64_t k) const {
  UnitMonomial out;
  if (k == 0) return out;
  out.factors_ = factors_;
  for (auto& [v, e] : out.factors_) e *= k;
  return out;
}

std::string UnitMonomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : factors_) {
    if (!s.empty()) s += " * ";
    s += "(" + v.to_string() + ")";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::int64_t ord(const Subspace& L, const UnitMonomial& f) {
  std::int64_t out = 0;
  for (const auto& [v, e] : f.factors())
    if (L.lies_in(v)) out += e;
  return out;
}

ConePoint::ConePoint(Flag flag, std::vector<Rational> values) : flag_(std::move(flag)), values_(std::move(values)) {
  require(values_.size() == flag_.size(), ErrorCode::InvalidArgument, "one weight per flag member");
  for (const auto& r : values_)
    require(r > 0 && r < 1, ErrorCode::InvalidArgument, "cone weights lie strictly between 0 and 1");
}

ConePoint ConePoint::ray(const Subspace& L, Rational r) { return ConePoint(Flag({L}), {std::move(r)}); }

namespace {

Rational rational_pow(const Rational& r, std::int64_t k) {
  Rational base = k < 0 ? Rational(1) / r : r;
  Rational out = 1;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
  return out;
}

}  // namespace

Rational eval_cone(const ConePoint& x, const UnitMonomial& f) {
  Rational out = 1;
  for (std::size_t k = 0; k < x.flag().size(); ++k) out *= rational_pow(x.values()[k], ord(x.flag()[k], f));
  return out;
}

namespace {

void check_flags(const Flag& F, const Flag& F_prime) {
  require(F.field() == F_prime.field() && F.ambient_dim() == F_prime.ambient_dim(), ErrorCode::AmbientMismatch,
          "flags in different ambient spaces");
  require(!(F == F_prime), ErrorCode::EqualFlags, "the two flags coincide");
}

// The member to separate with: the first of F missing from F', else the
// first of F' missing from F (then the roles swap).
std::pair<const Subspace*, bool> chosen_member(const Flag& F, const Flag& F_prime) {
  for (const auto& M : F.members())
    if (!F_prime.contains(M)) return {&M, false};
  for (const auto& M : F_prime.members())
    if (!F.contains(M)) return {&M, true};
  throw Error(ErrorCode::EqualFlags, "the two flags coincide");
}

SeparationCertificate certify(const Flag& F, const Flag& F_prime, std::span<const Subspace> candidates) {
  const auto [L, swapped] = chosen_member(F, F_prime);
  const Flag* positive = swapped ? &F_prime : &F;
  const Flag* neutral = swapped ? &F : &F_prime;
  const int i = L->dim();
  const Field& f = L->field();

  // L_i: the neutral member of dimension i, or the first i-dimensional
  // subspace fitting between its neighbours in the neutral flag.
  const Subspace* below = nullptr;
  const Subspace* above = nullptr;
  const Subspace* L_i = nullptr;
  for (const auto& M : neutral->members()) {
    if (M.dim() < i) below = &M;
    if (M.dim() == i) L_i = &M;
    if (M.dim() > i && above == nullptr) above = &M;
  }
  if (L_i == nullptr) {
    for (const auto& C : candidates) {
      if (C == *L) continue;
      if (below != nullptr && !projspace::contains(*below, C)) continue;
      if (above != nullptr && !projspace::contains(C, *above)) continue;
      L_i = &C;
      break;
    }
  }
  require(L_i != nullptr, ErrorCode::WitnessNotFound, "no subspace completes the flag");

  const Matrix& W = L->forms();
  const Matrix& W_i = L_i->forms();
  std::vector<Elem> u, u_i;
  for (auto& x : linalg::projective_vectors_in(f, W))
    if (!linalg::in_row_space(f, W_i, x)) {
      u = std::move(x);
      break;
    }
  for (auto& x : linalg::projective_vectors_in(f, W_i))
    if (!linalg::in_row_space(f, W, x)) {
      u_i = std::move(x);
      break;
    }
  std::vector<Elem> u_prime(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) u_prime[k] = f.add(u[k], u_i[k]);
  return SeparationCertificate{*positive, *neutral, *L, *L_i, LinearForm(f, u), LinearForm(f, u_prime), swapped};
}

}  // namespace

SeparationCertificate separation_certificate(const Flag& F, const Flag& F_prime) {
  check_flags(F, F_prime);
  const int i = chosen_member(F, F_prime).first->dim();
  return certify(F, F_prime, projspace::enumerate_subspaces(F.ambient_dim(), F.field(), i));
}

SeparationCertificate separation_certificate(const SubspaceLattice& lattice, const Flag& F, const Flag& F_prime) {
  check_flags(F, F_prime);
  require(F.field() == lattice.field() && F.ambient_dim() == lattice.ambient_dim(), ErrorCode::AmbientMismatch,
          "flags are not in this lattice");
  const int i = chosen_member(F, F_prime).first->dim();
  std::span<const Subspace> all(lattice.elements());
  return certify(F, F_prime, all.subspan(lattice.first_of_dim(i), lattice.count_of_dim(i)));
}

bool verify_certificate(const Flag& F, const Flag& F_prime, const LinearForm& v, const LinearForm& v_prime) {
  if (!(F.field() == F_prime.field() && F.ambient_dim() == F_prime.ambient_dim())) return false;
  if (!(v.field() == F.field() && v.ambient_dim() == F.ambient_dim())) return false;
  if (!(v_prime.field() == F.field() && v_prime.ambient_dim() == F.ambient_dim())) return false;
  const auto f = UnitMonomial::ratio(v, v_prime);
  for (const auto& M : F_prime.members())
    if (ord(M, f) != 0) return false;
  bool hit = false;
  for (const auto& M : F.members()) {
    const auto o = ord(M, f);
    if (o < 0) return false;
    if (o == 1 && !F_prime.contains(M)) hit = true;
  }
  return hit;
}

std::vector<std::vector<std::int64_t>> cone_matrix(const Flag& F) {
  const auto forms = projspace::all_forms(F.field(), F.ambient_dim());
  const auto e0 = LinearForm::coordinate(F.field(), F.ambient_dim(), 0);
  std::vector<std::vector<std::int64_t>> m;
  m.reserve(forms.size());
  for (const auto& v : forms) {
    std::vector<std::int64_t> row;
    for (const auto& L : F.members()) row.push_back(std::int64_t(L.lies_in(v)) - std::int64_t(L.lies_in(e0)));
    m.push_back(std::move(row));
  }
  return m;
}

namespace {

// RREF over Q of the given rows, zero rows dropped.
std::vector<std::vector<Rational>> rational_rref(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Rational lead = rows[r][c];
    for (auto& x : rows[r]) x /= lead;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const Rational s = rows[k][c];
      for (std::size_t j = c; j < cols; ++j) rows[k][j] -= s * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<std::vector<Rational>> columns_as_rows(const std::vector<std::vector<std::int64_t>>& m) {
  if (m.empty()) return {};
  std::vector<std::vector<Rational>> t(m.front().size(), std::vector<Rational>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

}  // namespace

std::size_t rational_rank(const std::vector<std::vector<std::int64_t>>& m) {
  return rational_rref(columns_as_rows(m)).size();
}

std::vector<std::vector<Rational>> column_span(const std::vector<std::vector<std::int64_t>>& m) {
  return rational_rref(columns_as_rows(m));
}

Witnesses incomparable(const ConePoint& x, const ConePoint& y) {
  require(!(x == y), ErrorCode::InvalidArgument, "the two points coincide");
  const Flag& F = x.flag();
  require(F.field() == y.flag().field() && F.ambient_dim() == y.flag().ambient_dim(), ErrorCode::AmbientMismatch,
          "points in different cone complexes");
  auto oriented = [&](const UnitMonomial& f) -> std::optional<Witnesses> {
    const Rational ex = eval_cone(x, f), ey = eval_cone(y, f);
    if (ex == ey) return std::nullopt;
    if (ex < ey) return Witnesses{f, f.inverse()};
    return Witnesses{f.inverse(), f};
  };
  const auto forms = projspace::all_forms(F.field(), F.ambient_dim());
  for (const auto& v_prime : forms)
    for (const auto& v : forms) {
      if (v == v_prime) continue;
      if (auto w = oriented(UnitMonomial::ratio(v, v_prime))) return *w;
    }
  if (!(x.flag() == y.flag())) {
    const auto cert = separation_certificate(x.flag(), y.flag());
    if (auto w = oriented(UnitMonomial::ratio(cert.v, cert.v_prime))) return *w;
  }
  throw Error(ErrorCode::WitnessNotFound, "no ratio of linear forms separates the two points");
}

gf::FieldElement ChartPolynomial::evaluate(std::span<const gf::FieldElement> t, const gf::FieldEmbedding& E) const {
  require(E.source() == field, ErrorCode::FieldMismatch, "embedding does not start at the base field");
  require(t.size() == static_cast<std::size_t>(n), ErrorCode::InvalidArgument, "need n chart coordinates");
  const gf::Field& K = E.target();
  for (const auto& x : t) require(x.field() == K, ErrorCode::FieldMismatch, "chart coordinate outside the target");
  const gf::FieldElement one = K.element(1);
  gf::FieldElement out = one;
  for (const auto& factor : factors) {
    gf::FieldElement term = one, partial = one;
    for (std::size_t k = 0; k < factor.a.size(); ++k) {
      partial = partial * t[static_cast<std::size_t>(factor.i - 1) + k];
      term = term + E.embed(field.element(factor.a[k])) * partial;
    }
    out = out * term;
    if (out.is_zero()) break;
  }
  return out;
}

ChartPolynomial chart_polynomial(const gf::Field& field, const linalg::Matrix& basis) {
  require(basis.rows() >= 2 && basis.rows() == basis.cols(), ErrorCode::NotABasis, "basis must be square, n >= 1");
  require(linalg::rank(field, basis) == basis.rows(), ErrorCode::NotABasis, "the rows are linearly dependent");
  const int n = static_cast<int>(basis.rows()) - 1;
  const unsigned q = field.order();
  const auto total = counting::projective_points(n, q) * (q - 1);  // Σ q^{n-i+1}
  require(total <= projspace::kEnumerationBudget, ErrorCode::BudgetExceeded,
          "chart polynomial would have " + total.str() + " factors");
  ChartPolynomial cp{field, n, basis, {}};
  for (int i = 1; i <= n; ++i) {
    std::vector<Elem> a(static_cast<std::size_t>(n - i + 1), 0);
    while (true) {
      cp.factors.push_back({i, a});
      std::size_t k = a.size();
      while (k-- > 0) {
        if (++a[k] < q) break;
        a[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  return cp;
}

linalg::Matrix adapted_basis(const Flag& complete_flag) {
  require(complete_flag.is_complete(), ErrorCode::InvalidArgument, "need a complete flag");
  const int n = complete_flag.ambient_dim();
  const Field& f = complete_flag.field();
  const std::size_t cols = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<Elem>> e(cols);
  Matrix next(0, cols);  // form space of L_{i+1}; zero past the hyperplane
  for (int i = n - 1; i >= -1; --i) {
    std::vector<Elem> pick;
    if (i >= 0) {
      for (auto& x : linalg::projective_vectors_in(f, complete_flag[static_cast<std::size_t>(i)].forms()))
        if (!linalg::in_row_space(f, next, x)) {
          pick = std::move(x);
          break;
        }
      next = complete_flag[static_cast<std::size_t>(i)].forms();
    } else {
      for (auto& x : linalg::projective_points(f, cols))
        if (!linalg::in_row_space(f, next, x)) {
          pick = std::move(x);
          break;
        }
    }
    e[static_cast<std::size_t>(i + 1)] = std::move(pick);
  }
  return Matrix::from_rows(e, cols);
}

ChartTest chart_point_test(std::span<const gf::FieldElement> t, const ChartPolynomial& cp,
                           const gf::FieldEmbedding& E) {
  ChartTest out;
  const gf::FieldElement value = cp.evaluate(t, E);
  out.lhs = std::all_of(t.begin(), t.end(), [](const auto& x) { return !x.is_zero(); }) && !value.is_zero();

  // y = (1, x_1, ..., x_n) in the e-coordinates; the point itself is B^-1 y.
  const gf::Field& K = E.target();
  const auto size = static_cast<std::size_t>(cp.n) + 1;
  std::vector<gf::FieldElement> y(size, K.element(1));
  for (std::size_t i = 1; i < size; ++i) y[i] = y[i - 1] * t[i - 1];
  const Matrix inv = linalg::inverse(cp.field, cp.basis);
  std::vector<gf::FieldElement> P(size, K.element(0));
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) P[r] = P[r] + E.embed(cp.field.element(inv(r, c))) * y[c];

  out.rhs = true;
  for (const auto& v : linalg::projective_points(cp.field, size)) {
    gf::FieldElement s = K.element(0);
    for (std::size_t c = 0; c < size; ++c) s = s + E.embed(cp.field.element(v[c])) * P[c];
    if (s.is_zero()) {
      out.rhs = false;
      break;
    }
  }
  return out;
}

namespace {

gf::Field extension_of(const gf::Field& k, unsigned m) {
  require(m >= 1, ErrorCode::InvalidArgument, "extension degree must be at least 1");
  return gf::Field::create(k.characteristic(), k.degree() * m);
}

std::uint64_t checked_power(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) {
    out *= base;
    require(out <= projspace::kEnumerationBudget, ErrorCode::BudgetExceeded, "too many extension points to scan");
  }
  return out;
}

}  // namespace

ChartCount chart_census(unsigned q, int n, unsigned m) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  const gf::Field k = gf::Field::of_order(q);
  const gf::Field K = extension_of(k, m);
  const gf::FieldEmbedding E(k, K);
  const auto cp = chart_polynomial(k, Matrix::identity(static_cast<std::size_t>(n) + 1));
  const std::uint64_t total = checked_power(K.order(), n);
  ChartCount out;
  std::vector<gf::Elem> raw(static_cast<std::size_t>(n), 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    std::vector<gf::FieldElement> t;
    for (int i = 0; i < n; ++i) {
      raw[static_cast<std::size_t>(i)] = static_cast<gf::Elem>(rest % K.order());
      rest /= K.order();
      t.push_back(K.element(raw[static_cast<std::size_t>(i)]));
    }
    const auto r = chart_point_test(t, cp, E);
    out.points += r.lhs;
    if (r.lhs != r.rhs) {
      ++out.mismatches;
      if (out.mismatching.size() < 10) out.mismatching.push_back(raw);
    }
  }
  return out;
}

std::uint64_t drinfeld_points(unsigned q, int n, unsigned m) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  const gf::Field k = gf::Field::of_order(q);
  const gf::Field K = extension_of(k, m);
  const gf::FieldEmbedding E(k, K);
  checked_power(K.order(), n);
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<Elem>> forms;
  for (const auto& v : linalg::projective_points(k, size)) {
    std::vector<Elem> w;
    for (Elem c : v) w.push_back(E.embed(k.element(c)).value());
    forms.push_back(std::move(w));
  }
  std::uint64_t count = 0;
  for (const auto& P : linalg::projective_points(K, size)) {
    bool on_rational = false;
    for (const auto& v : forms)
      if (linalg::dot(K, v, P) == 0) {
        on_rational = true;
        break;
      }
    count += !on_rational;
  }
  return count;
}

}  // namespace wonderful::valfan
