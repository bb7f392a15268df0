#include "wonderful/linalg.hpp"

#include <algorithm>

namespace wonderful::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) {
    require(r.size() == cols, ErrorCode::InvalidArgument, "ragged matrix rows");
    m.append_row(r);
  }
  return m;
}

void Matrix::append_row(std::span<const Elem> row) {
  require(row.size() == cols_, ErrorCode::InvalidArgument, "row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void Matrix::truncate(std::size_t rows) {
  rows_ = std::min(rows_, rows);
  data_.resize(rows_ * cols_);
}

std::vector<std::vector<Elem>> Matrix::to_rows() const {
  std::vector<std::vector<Elem>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
  return out;
}

std::vector<std::size_t> rref(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t r = lead;
    while (r < m.rows() && m(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != lead)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(lead, k));
    const Elem s = f.inv(m(lead, c));
    for (std::size_t k = 0; k < m.cols(); ++k) m(lead, k) = f.mul(m(lead, k), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || m(i, c) == 0) continue;
      const Elem factor = f.neg(m(i, c));
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = f.add(m(i, k), f.mul(factor, m(lead, k)));
    }
    pivots.push_back(c);
    ++lead;
  }
  m.truncate(lead);
  return pivots;
}

std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

void reduce_against(const Field& f, const Matrix& rows, std::span<Elem> v) {
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto row = rows.row(r);
    std::size_t pivot = 0;
    while (row[pivot] == 0) ++pivot;
    if (v[pivot] == 0) continue;
    const Elem factor = f.neg(v[pivot]);
    for (std::size_t k = pivot; k < v.size(); ++k) v[k] = f.add(v[k], f.mul(factor, row[k]));
  }
}

bool in_row_space(const Field& f, const Matrix& rows, std::span<const Elem> v) {
  std::vector<Elem> w(v.begin(), v.end());
  reduce_against(f, rows, w);
  return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

Matrix null_space(const Field& f, const Matrix& m) {
  Matrix r = m;
  const auto pivots = rref(f, r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
    basis.append_row(v);
  }
  rref(f, basis);
  return basis;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(k, j)));
    }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix inverse(const Field& f, const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::NotABasis, "non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(f, aug);
  require(pivots.size() == n && (n == 0 || pivots.back() == n - 1), ErrorCode::NotABasis,
          "matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

bool normalize(const Field& f, std::span<Elem> v) {
  auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
  if (it == v.end()) return false;
  const Elem s = f.inv(*it);
  for (auto& e : v) e = f.mul(e, s);
  return true;
}

std::vector<std::vector<Elem>> projective_points(const Field& f, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  const Elem q = f.order();
  // Leading 1 at position lead, zeros before, anything after; enumerated in
  // lexicographic order of the full vector.
  for (std::size_t lead = n; lead-- > 0;) {
    std::vector<Elem> v(n, 0);
    v[lead] = 1;
    while (true) {
      out.push_back(v);
      std::size_t k = n;
      while (k-- > lead + 1) {
        if (++v[k] < q) break;
        v[k] = 0;
      }
      if (k == lead) break;
    }
  }
  return out;
}

std::vector<std::vector<Elem>> projective_vectors_in(const Field& f, const Matrix& rows) {
  const std::size_t k = rows.rows();
  std::vector<std::vector<Elem>> out;
  for (const auto& c : projective_points(f, k)) {
    std::vector<Elem> v(rows.cols(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < rows.cols(); ++j) v[j] = f.add(v[j], f.mul(c[i], rows(i, j)));
    }
    normalize(f, v);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wonderful::linalg
