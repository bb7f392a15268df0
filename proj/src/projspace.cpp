#include "wonderful/projspace.hpp"

#include <algorithm>
#include <numeric>

#include "wonderful/counting.hpp"

namespace wonderful::projspace {

LinearForm::LinearForm(Field field, std::vector<Elem> coefficients)
    : field_(field), coeffs_(std::move(coefficients)) {
  require(coeffs_.size() >= 2, ErrorCode::InvalidArgument, "a linear form needs n+1 >= 2 coefficients");
  require(linalg::normalize(field_, coeffs_), ErrorCode::InvalidArgument, "the zero form defines no hyperplane");
}

LinearForm LinearForm::coordinate(Field field, int n, int i) {
  require(i >= 0 && i <= n, ErrorCode::InvalidArgument, "coordinate index out of range");
  std::vector<Elem> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(i)] = 1;
  return LinearForm(field, std::move(c));
}

Elem LinearForm::evaluate(std::span<const Elem> point) const {
  require(point.size() == coeffs_.size(), ErrorCode::AmbientMismatch, "point has wrong length");
  return linalg::dot(field_, coeffs_, point);
}

std::string LinearForm::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (coeffs_[i] != 1) s += std::to_string(coeffs_[i]);
    s += "e" + std::to_string(i);
  }
  return s;
}

std::vector<LinearForm> all_forms(const Field& field, int n) {
  std::vector<LinearForm> out;
  for (auto& v : linalg::projective_points(field, static_cast<std::size_t>(n) + 1))
    out.emplace_back(field, std::move(v));
  return out;
}

Subspace Subspace::from_forms(Field field, int n, Matrix rows) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  require(rows.cols() == static_cast<std::size_t>(n) + 1, ErrorCode::AmbientMismatch,
          "form matrix has wrong number of columns");
  linalg::rref(field, rows);
  const int r = static_cast<int>(rows.rows());
  require(r >= 1, ErrorCode::InvalidArgument, "no forms: the subspace is all of P^n");
  require(r <= n, ErrorCode::InvalidArgument, "forms of full rank: the subspace is empty");
  return Subspace(field, n, n - r, std::move(rows));
}

Subspace Subspace::from_point(Field field, std::vector<Elem> coordinates) {
  const int n = static_cast<int>(coordinates.size()) - 1;
  Matrix m(0, coordinates.size());
  m.append_row(coordinates);
  require(linalg::rank(field, m) == 1, ErrorCode::InvalidArgument, "zero vector is not a point");
  return from_forms(field, n, linalg::null_space(field, m));
}

Subspace Subspace::span_of(Field field, int n, const Matrix& points) {
  require(points.cols() == static_cast<std::size_t>(n) + 1, ErrorCode::AmbientMismatch,
          "point matrix has wrong number of columns");
  return from_forms(field, n, linalg::null_space(field, points));
}

bool Subspace::lies_in(const LinearForm& v) const {
  require(v.field() == field_ && v.ambient_dim() == n_, ErrorCode::AmbientMismatch,
          "form and subspace live in different ambient spaces");
  return linalg::in_row_space(field_, forms_, v.coefficients());
}

Matrix Subspace::span_basis() const { return linalg::null_space(field_, forms_); }

std::vector<Elem> Subspace::point_coordinates() const {
  require(is_point(), ErrorCode::InvalidArgument, "not a point");
  const Matrix basis = span_basis();
  auto row = basis.row(0);
  return {row.begin(), row.end()};
}

LinearForm Subspace::hyperplane_form() const {
  require(is_hyperplane(), ErrorCode::NotHyperplane, to_string() + " is not a hyperplane");
  auto row = forms_.row(0);
  return LinearForm(field_, {row.begin(), row.end()});
}

std::string Subspace::to_string() const {
  if (is_point()) {
    std::string s = "[";
    const auto c = point_coordinates();
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ":" : "") + std::to_string(c[i]);
    return s + "]";
  }
  std::string s = "Z(";
  for (std::size_t r = 0; r < forms_.rows(); ++r) {
    auto row = forms_.row(r);
    s += (r ? "," : "") + LinearForm(field_, {row.begin(), row.end()}).to_string();
  }
  return s + ")";
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.field_.order() <=> b.field_.order(); c != 0) return c;
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  return a.forms_.data() <=> b.forms_.data();
}

void check_same_ambient(const Subspace& a, const Subspace& b) {
  require(a.field() == b.field() && a.ambient_dim() == b.ambient_dim(), ErrorCode::AmbientMismatch,
          "subspaces of different ambient spaces");
}

std::vector<Subspace> enumerate_subspaces(int n, const Field& field, int d) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  require(d >= 0 && d <= n - 1, ErrorCode::InvalidArgument, "need 0 <= d <= n-1");
  const auto expected = counting::gaussian_count(n, d, field.order());
  require(expected <= kEnumerationBudget, ErrorCode::BudgetExceeded,
          "P^" + std::to_string(n) + " over " + field.name() + " has " + expected.str() + " subspaces of dimension " +
              std::to_string(d));

  const std::size_t rows = static_cast<std::size_t>(n - d);
  const std::size_t cols = static_cast<std::size_t>(n) + 1;
  const Elem q = field.order();
  std::vector<Subspace> out;

  std::vector<std::size_t> pivots(rows);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    // Free positions: right of the row's pivot, outside pivot columns.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = pivots[r] + 1; c < cols; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(r, c);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) m(r, pivots[r]) = 1;
    std::vector<Elem> values(free.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < free.size(); ++k) m(free[k].first, free[k].second) = values[k];
      out.push_back(Subspace::from_forms(field, n, m));
      std::size_t k = 0;
      for (; k < values.size(); ++k) {
        if (++values[k] < q) break;
        values[k] = 0;
      }
      if (k == values.size()) break;
    }
    // Next pivot combination.
    std::size_t i = rows;
    while (i-- > 0 && pivots[i] == cols - rows + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++pivots[i];
    for (std::size_t j = i + 1; j < rows; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains(const Subspace& small, const Subspace& big) {
  check_same_ambient(small, big);
  if (small.dim() > big.dim()) return false;
  const Matrix& w_big = big.forms();
  for (std::size_t r = 0; r < w_big.rows(); ++r)
    if (!linalg::in_row_space(small.field(), small.forms(), w_big.row(r))) return false;
  return true;
}

std::optional<Subspace> meet(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  Matrix stacked = a.forms();
  for (std::size_t r = 0; r < b.forms().rows(); ++r) stacked.append_row(b.forms().row(r));
  if (linalg::rank(a.field(), stacked) == static_cast<std::size_t>(a.ambient_dim()) + 1) return std::nullopt;
  return Subspace::from_forms(a.field(), a.ambient_dim(), std::move(stacked));
}

std::optional<Subspace> join(const Subspace& a, const Subspace& b) {
  check_same_ambient(a, b);
  Matrix stacked = a.span_basis();
  const Matrix sb = b.span_basis();
  for (std::size_t r = 0; r < sb.rows(); ++r) stacked.append_row(sb.row(r));
  if (linalg::rank(a.field(), stacked) == static_cast<std::size_t>(a.ambient_dim()) + 1) return std::nullopt;
  return Subspace::span_of(a.field(), a.ambient_dim(), stacked);
}

std::vector<Subspace> hyperplanes_containing(const Subspace& L) {
  std::vector<Subspace> out;
  for (const auto& v : linalg::projective_vectors_in(L.field(), L.forms())) {
    Matrix m(0, v.size());
    m.append_row(v);
    out.push_back(Subspace::from_forms(L.field(), L.ambient_dim(), std::move(m)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace dual(const Subspace& L) { return Subspace::from_forms(L.field(), L.ambient_dim(), L.span_basis()); }

Flag::Flag(std::vector<Subspace> members) : members_(std::move(members)) {
  require(!members_.empty(), ErrorCode::InvalidArgument, "a flag has at least one member");
  const int n = members_.front().ambient_dim();
  require(members_.size() <= static_cast<std::size_t>(n), ErrorCode::InvalidArgument, "flag longer than n");
  for (std::size_t i = 1; i < members_.size(); ++i) {
    check_same_ambient(members_[i - 1], members_[i]);
    require(members_[i - 1].dim() < members_[i].dim() && projspace::contains(members_[i - 1], members_[i]),
            ErrorCode::InvalidArgument, "flag members must be strictly increasing");
  }
}

bool Flag::contains(const Subspace& L) const {
  return std::find(members_.begin(), members_.end(), L) != members_.end();
}

bool Flag::is_complete() const { return members_.size() == static_cast<std::size_t>(ambient_dim()); }

SubspaceLattice::SubspaceLattice(Field field, int n) : field_(field), n_(n) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  dim_offset_.push_back(0);
  for (int d = 0; d < n; ++d) {
    auto level = enumerate_subspaces(n, field, d);
    elements_.insert(elements_.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    dim_offset_.push_back(elements_.size());
  }
  const std::size_t N = elements_.size();
  incidence_.assign(N * N, 0);
  below_.resize(N);
  above_.resize(N);
  points_.resize(N);
  for (std::size_t b = 0; b < N; ++b) {
    incidence_[b * N + b] = 1;
    for (std::size_t a = 0; a < dim_offset_[static_cast<std::size_t>(elements_[b].dim())]; ++a) {
      if (projspace::contains(elements_[a], elements_[b])) {
        incidence_[a * N + b] = 1;
        below_[b].push_back(a);
        above_[a].push_back(b);
      }
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (elements_[i].is_point()) points_[i].push_back(i);
    for (std::size_t a : below_[i])
      if (elements_[a].is_point()) points_[i].push_back(a);
    std::sort(points_[i].begin(), points_[i].end());
  }
}

std::size_t SubspaceLattice::index_of(const Subspace& L) const {
  require(L.field() == field_ && L.ambient_dim() == n_, ErrorCode::AmbientMismatch,
          "subspace is not in this lattice");
  auto it = std::lower_bound(elements_.begin(), elements_.end(), L);
  require(it != elements_.end() && *it == L, ErrorCode::InvalidArgument, "subspace not found");
  return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::size_t> SubspaceLattice::of_dim(int d) const {
  std::vector<std::size_t> out(count_of_dim(d));
  std::iota(out.begin(), out.end(), first_of_dim(d));
  return out;
}

namespace {

void extend_all(const SubspaceLattice& lat, std::vector<std::size_t>& chain,
                std::vector<std::vector<std::size_t>>& out) {
  require(out.size() < kFlagBudget, ErrorCode::BudgetExceeded, "more than 10^6 flags");
  out.push_back(chain);
  for (std::size_t b : lat.strictly_above(chain.back())) {
    chain.push_back(b);
    extend_all(lat, chain, out);
    chain.pop_back();
  }
}

void extend_dims(const SubspaceLattice& lat, const std::vector<int>& dims, std::vector<std::size_t>& chain,
                 std::vector<std::vector<std::size_t>>& out) {
  if (chain.size() == dims.size()) {
    require(out.size() < kFlagBudget, ErrorCode::BudgetExceeded, "more than 10^6 flags");
    out.push_back(chain);
    return;
  }
  const int want = dims[chain.size()];
  for (std::size_t b : lat.strictly_above(chain.back())) {
    if (lat[b].dim() != want) continue;
    chain.push_back(b);
    extend_dims(lat, dims, chain, out);
    chain.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_flag_indices(const SubspaceLattice& lattice, const FlagType& type) {
  const int n = lattice.ambient_dim();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> chain;
  if (type.kind == FlagType::Kind::All) {
    for (std::size_t a = 0; a < lattice.size(); ++a) {
      chain = {a};
      extend_all(lattice, chain, out);
    }
  } else {
    std::vector<int> dims;
    if (type.kind == FlagType::Kind::Complete) {
      dims.resize(static_cast<std::size_t>(n));
      std::iota(dims.begin(), dims.end(), 0);
    } else {
      dims = type.dimensions;
      std::sort(dims.begin(), dims.end());
      require(!dims.empty() && std::adjacent_find(dims.begin(), dims.end()) == dims.end() && dims.front() >= 0 &&
                  dims.back() <= n - 1,
              ErrorCode::InvalidArgument, "flag dimensions must be distinct values in [0, n-1]");
    }
    for (std::size_t a : lattice.of_dim(dims.front())) {
      chain = {a};
      extend_dims(lattice, dims, chain, out);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::vector<Flag> enumerate_flags(const SubspaceLattice& lattice, const FlagType& type) {
  std::vector<Flag> out;
  for (const auto& chain : enumerate_flag_indices(lattice, type)) {
    std::vector<Subspace> members;
    for (std::size_t i : chain) members.push_back(lattice[i]);
    out.emplace_back(std::move(members));
  }
  return out;
}

std::vector<Flag> enumerate_flags(int n, const Field& field, const FlagType& type) {
  return enumerate_flags(SubspaceLattice(field, n), type);
}

LatticePermutation LatticePermutation::identity(std::size_t size) {
  LatticePermutation p;
  p.image.resize(size);
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

bool LatticePermutation::is_bijective() const {
  std::vector<bool> hit(image.size(), false);
  for (std::size_t j : image) {
    if (j >= image.size() || hit[j]) return false;
    hit[j] = true;
  }
  return true;
}

LatticePermutation LatticePermutation::inverse() const {
  require(is_bijective(), ErrorCode::NotBijective, "permutation is not a bijection");
  LatticePermutation inv;
  inv.image.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) inv.image[image[i]] = i;
  return inv;
}

LatticePermutation LatticePermutation::after(const LatticePermutation& other) const {
  require(other.size() == size(), ErrorCode::InvalidArgument, "composing permutations of different sizes");
  LatticePermutation out;
  out.image.resize(size());
  for (std::size_t i = 0; i < size(); ++i) out.image[i] = image[other.image[i]];
  return out;
}

LatticePermutation duality_permutation(const SubspaceLattice& lattice) {
  LatticePermutation p;
  p.image.reserve(lattice.size());
  for (const auto& L : lattice.elements()) p.image.push_back(lattice.index_of(dual(L)));
  return p;
}

bool flag_complex_check(const SubspaceLattice& lattice, const LatticePermutation& perm) {
  require(perm.size() == lattice.size() && perm.is_bijective(), ErrorCode::NotBijective,
          "not a bijection of the subspace lattice");
  for (std::size_t a = 0; a < lattice.size(); ++a)
    for (std::size_t b = a + 1; b < lattice.size(); ++b)
      if (lattice.comparable(a, b) != lattice.comparable(perm(a), perm(b))) return false;
  return true;
}

}  // namespace wonderful::projspace
