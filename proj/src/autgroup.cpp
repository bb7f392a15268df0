#include "wonderful/autgroup.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace wonderful::autgroup {

using gf::Elem;
using gf::Field;

namespace {

void canonicalize(const Field& f, Matrix& m) {
  const auto& d = m.data();
  auto it = std::find_if(d.begin(), d.end(), [](Elem x) { return x != 0; });
  const Elem s = f.inv(*it);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto& x : m.row(r)) x = f.mul(x, s);
}

}  // namespace

ProjectiveMap::ProjectiveMap(Field field, Matrix m) : field_(field), m_(std::move(m)) {
  require(m_.rows() >= 2 && m_.rows() == m_.cols(), ErrorCode::NotABasis, "need a square matrix of size n+1 >= 2");
  inv_ = linalg::inverse(field_, m_);  // throws NotABasis
  canonicalize(field_, m_);
  canonicalize(field_, inv_);
}

ProjectiveMap ProjectiveMap::identity(Field field, int n) {
  return ProjectiveMap(field, Matrix::identity(static_cast<std::size_t>(n) + 1));
}

ProjectiveMap ProjectiveMap::operator*(const ProjectiveMap& h) const {
  require(field_ == h.field_ && m_.rows() == h.m_.rows(), ErrorCode::AmbientMismatch, "maps of different spaces");
  return ProjectiveMap(field_, linalg::multiply(field_, m_, h.m_));
}

ProjectiveMap ProjectiveMap::inverse() const { return ProjectiveMap(field_, inv_); }

Subspace act(const ProjectiveMap& g, const Subspace& L) {
  require(g.field() == L.field() && g.ambient_dim() == L.ambient_dim(), ErrorCode::AmbientMismatch,
          "map and subspace live in different spaces");
  return Subspace::from_forms(L.field(), L.ambient_dim(), linalg::multiply(L.field(), L.forms(), g.inverse_matrix()));
}

GradedPermutation GradedPermutation::from(const SubspaceLattice& lattice, LatticePermutation perm) {
  require(perm.size() == lattice.size() && perm.is_bijective(), ErrorCode::NotFlagPreserving,
          "not a bijection of the subspace lattice");
  const int n = lattice.ambient_dim();
  bool keeps = true, reverses = true;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int d = lattice[i].dim(), e = lattice[perm(i)].dim();
    keeps = keeps && d == e;
    reverses = reverses && e == n - 1 - d;
  }
  require(keeps || reverses, ErrorCode::NotFlagPreserving, "permutation mixes dimensions");
  require(projspace::flag_complex_check(lattice, perm), ErrorCode::NotFlagPreserving,
          "permutation does not send flags to flags");
  return GradedPermutation{std::move(perm), keeps ? Mode::Preserving : Mode::Reversing};
}

GradedPermutation induced_permutation(const SubspaceLattice& lattice, const ProjectiveMap& g) {
  GradedPermutation out;
  out.perm.image.reserve(lattice.size());
  for (const auto& L : lattice.elements()) out.perm.image.push_back(lattice.index_of(act(g, L)));
  return out;
}

counting::BigInt pgl_order(int n, const counting::BigInt& q) {
  require(n >= 1, ErrorCode::InvalidArgument, "ambient dimension must be at least 1");
  counting::BigInt top = pow(q, static_cast<unsigned>(n + 1)), prod = 1, qi = 1;
  for (int i = 0; i <= n; ++i, qi *= q) prod *= top - qi;
  return prod / (q - 1);
}

counting::BigInt pgammal_order(int n, unsigned q) {
  const auto [p, a] = gf::prime_power(q);
  (void)p;
  return pgl_order(n, q) * a;
}

std::vector<ProjectiveMap> enumerate_pgl(int n, const Field& field) {
  const auto total = pgl_order(n, field.order());
  require(total <= projspace::kEnumerationBudget, ErrorCode::BudgetExceeded,
          "PGL has " + total.str() + " elements");
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<Elem>> all;  // every vector of F^{n+1}, lexicographic
  {
    std::vector<Elem> v(size, 0);
    while (true) {
      all.push_back(v);
      std::size_t k = size;
      while (k-- > 0) {
        if (++v[k] < field.order()) break;
        v[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  std::vector<ProjectiveMap> out;
  std::vector<std::vector<Elem>> rows;
  auto extend = [&](auto&& self, const Matrix& echelon) -> void {
    if (rows.size() == size) {
      out.emplace_back(field, Matrix::from_rows(rows, size));
      return;
    }
    for (const auto& v : all) {
      if (linalg::in_row_space(field, echelon, v)) continue;
      rows.push_back(v);
      Matrix next = echelon;
      next.append_row(v);
      linalg::rref(field, next);
      self(self, next);
      rows.pop_back();
    }
  };
  for (const auto& first : linalg::projective_points(field, size)) {
    rows = {first};
    Matrix echelon(0, size);
    echelon.append_row(first);
    extend(extend, echelon);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Incidence tables between points and lines, both numbered from 0.
struct Geometry {
  std::size_t points = 0;
  std::vector<std::size_t> line_element;             // local line -> lattice index
  std::vector<std::vector<std::size_t>> line_points;  // local line -> points
  std::vector<std::vector<std::size_t>> point_lines;  // point -> local lines
  std::vector<std::size_t> line_through;              // points a*P+b -> local line
  std::vector<std::uint8_t> on_line;                  // point*L + line
  std::vector<std::size_t> order;                     // frame first

  bool incident(std::size_t p, std::size_t l) const { return on_line[p * line_element.size() + l] != 0; }
};

Geometry build_geometry(const SubspaceLattice& lat) {
  Geometry g;
  g.points = lat.count_of_dim(0);
  const int n = lat.ambient_dim();
  if (n >= 2) {
    for (std::size_t l : lat.of_dim(1)) {
      g.line_element.push_back(l);
      g.line_points.push_back(lat.points_of(l));
    }
  }
  const std::size_t L = g.line_element.size();
  g.point_lines.resize(g.points);
  g.on_line.assign(g.points * L, 0);
  g.line_through.assign(g.points * g.points, kNone);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t a : g.line_points[l]) {
      g.point_lines[a].push_back(l);
      g.on_line[a * L + l] = 1;
      for (std::size_t b : g.line_points[l])
        if (a != b) g.line_through[a * g.points + b] = l;
    }

  const Field& f = lat.field();
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  std::vector<bool> placed(g.points, false);
  auto place = [&](std::vector<Elem> c) {
    const std::size_t idx = lat.index_of(Subspace::from_point(f, std::move(c)));
    g.order.push_back(idx);
    placed[idx] = true;
  };
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<Elem> e(size, 0);
    e[i] = 1;
    place(e);
  }
  place(std::vector<Elem>(size, 1));
  for (std::size_t p = 0; p < g.points; ++p)
    if (!placed[p]) g.order.push_back(p);
  return g;
}

class Searcher {
 public:
  Searcher(const SubspaceLattice& lat, const Geometry& geo, std::atomic<std::uint64_t>& nodes, std::uint64_t budget,
           const std::map<std::vector<std::size_t>, std::size_t>& by_points)
      : lat_(lat), geo_(geo), nodes_(nodes), budget_(budget), by_points_(by_points) {
    const std::size_t P = geo.points, L = geo.line_element.size();
    img_.assign(P, kNone);
    pre_.assign(P, kNone);
    mapped_on_.assign(L, 0);
    line_img_.assign(L, kNone);
    line_pre_.assign(L, kNone);
  }

  // Explores the subtree where the first variable maps to one of `roots`.
  void run(const std::vector<std::size_t>& roots) {
    const std::size_t x = geo_.order[0];
    for (std::size_t c : roots) try_assign(0, x, c);
  }

  std::vector<GradedPermutation> results;

 private:
  bool allowed(std::size_t x, std::size_t c) const {
    if (pre_[c] != kNone) return false;
    for (std::size_t l : geo_.point_lines[x]) {
      if (line_img_[l] != kNone) {
        if (!geo_.incident(c, line_img_[l])) return false;
      } else if (mapped_on_[l] == 1) {
        const std::size_t a = mapped_point_on(l);
        if (line_pre_[geo_.line_through[img_[a] * geo_.points + c]] != kNone) return false;
      }
    }
    for (std::size_t m : geo_.point_lines[c])
      if (line_pre_[m] != kNone && !geo_.incident(x, line_pre_[m])) return false;
    return true;
  }

  std::size_t mapped_point_on(std::size_t l) const {
    for (std::size_t a : geo_.line_points[l])
      if (img_[a] != kNone) return a;
    return kNone;
  }

  void try_assign(std::size_t depth, std::size_t x, std::size_t c) {
    if (!allowed(x, c)) return;
    require(++nodes_ <= budget_, ErrorCode::BudgetExceeded,
            "collineation search exceeded " + std::to_string(budget_) + " nodes");
    // Assign, remembering which line images this step fixed.
    std::vector<std::size_t> fixed;
    for (std::size_t l : geo_.point_lines[x]) {
      if (++mapped_on_[l] == 2 && line_img_[l] == kNone) {
        const std::size_t a = mapped_point_on(l);
        const std::size_t m = geo_.line_through[img_[a] * geo_.points + c];
        line_img_[l] = m;
        line_pre_[m] = l;
        fixed.push_back(l);
      }
    }
    img_[x] = c;
    pre_[c] = x;

    if (depth + 1 == geo_.order.size()) {
      emit();
    } else {
      const std::size_t y = geo_.order[depth + 1];
      // Candidates: the image of any line through y already pinned down,
      // otherwise every point.
      const std::vector<std::size_t>* domain = nullptr;
      for (std::size_t l : geo_.point_lines[y])
        if (line_img_[l] != kNone) {
          domain = &geo_.line_points[line_img_[l]];
          break;
        }
      if (domain != nullptr) {
        const auto copy = *domain;
        for (std::size_t d : copy) try_assign(depth + 1, y, d);
      } else {
        for (std::size_t d = 0; d < geo_.points; ++d) try_assign(depth + 1, y, d);
      }
    }

    img_[x] = kNone;
    pre_[c] = kNone;
    for (std::size_t l : fixed) {
      line_pre_[line_img_[l]] = kNone;
      line_img_[l] = kNone;
    }
    for (std::size_t l : geo_.point_lines[x]) --mapped_on_[l];
  }

  void emit() {
    LatticePermutation perm;
    perm.image.resize(lat_.size());
    std::vector<std::size_t> image;
    for (std::size_t i = 0; i < lat_.size(); ++i) {
      image.clear();
      for (std::size_t p : lat_.points_of(i)) image.push_back(img_[p]);
      std::sort(image.begin(), image.end());
      perm.image[i] = by_points_.at(image);
    }
    results.push_back(GradedPermutation{std::move(perm), GradedPermutation::Mode::Preserving});
  }

  const SubspaceLattice& lat_;
  const Geometry& geo_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  const std::map<std::vector<std::size_t>, std::size_t>& by_points_;
  std::vector<std::size_t> img_, pre_, mapped_on_, line_img_, line_pre_;
};

}  // namespace

SearchResult collineation_search(const SubspaceLattice& lattice, const SearchOptions& options) {
  require(options.node_budget > 0, ErrorCode::InvalidArgument, "node budget must be positive");
  const Geometry geo = build_geometry(lattice);
  std::map<std::vector<std::size_t>, std::size_t> by_points;
  for (std::size_t i = 0; i < lattice.size(); ++i) by_points.emplace(lattice.points_of(i), i);

  std::atomic<std::uint64_t> nodes{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(geo.points)));
  std::vector<std::vector<std::size_t>> roots(workers);
  for (std::size_t c = 0; c < geo.points; ++c) roots[c % workers].push_back(c);

  std::vector<Searcher> searchers;
  searchers.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) searchers.emplace_back(lattice, geo, nodes, options.node_budget, by_points);
  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    searchers[0].run(roots[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        try {
          searchers[w].run(roots[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SearchResult out;
  out.nodes = nodes.load();
  for (auto& s : searchers)
    out.maps.insert(out.maps.end(), std::make_move_iterator(s.results.begin()),
                    std::make_move_iterator(s.results.end()));
  std::sort(out.maps.begin(), out.maps.end());
  return out;
}

SearchResult collineation_search(int n, unsigned q, const SearchOptions& options) {
  return collineation_search(SubspaceLattice(Field::of_order(q), n), options);
}

PointPermutation restrict_to_points(const SubspaceLattice& lattice, const LatticePermutation& perm) {
  const std::size_t P = lattice.count_of_dim(0);
  require(perm.size() == lattice.size(), ErrorCode::InvalidArgument, "permutation of another lattice");
  PointPermutation out(perm.image.begin(), perm.image.begin() + static_cast<std::ptrdiff_t>(P));
  for (std::size_t p : out) require(p < P, ErrorCode::InvalidArgument, "points must go to points");
  return out;
}

ProjectiveMap realize_as_pgl(const SubspaceLattice& lattice, const PointPermutation& sigma) {
  const std::size_t P = lattice.count_of_dim(0);
  require(sigma.size() == P, ErrorCode::NotBijective, "need one image per point");
  {
    std::vector<bool> hit(P, false);
    for (std::size_t p : sigma) {
      require(p < P && !hit[p], ErrorCode::NotBijective, "point map is not a bijection");
      hit[p] = true;
    }
  }
  const int n = lattice.ambient_dim();
  const Field& f = lattice.field();
  for (std::size_t l : lattice.of_dim(n >= 2 ? 1 : 0)) {
    if (n < 2) break;
    const auto& pts = lattice.points_of(l);
    const std::size_t a = sigma[pts[0]], b = sigma[pts[1]];
    std::size_t m = kNone;
    for (std::size_t up : lattice.strictly_above(a))
      if (lattice[up].dim() == 1 && lattice.contains(b, up)) m = up;
    for (std::size_t p : pts)
      require(lattice.contains(sigma[p], m), ErrorCode::NotCollinearityPreserving,
              "the points of " + lattice[l].to_string() + " are not sent to a line");
  }

  const std::size_t size = static_cast<std::size_t>(n) + 1;
  auto image_of = [&](std::vector<Elem> c) {
    return lattice[sigma[lattice.index_of(Subspace::from_point(f, std::move(c)))]].point_coordinates();
  };
  Matrix Y(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<Elem> e(size, 0);
    e[i] = 1;
    const auto y = image_of(e);
    for (std::size_t r = 0; r < size; ++r) Y(r, i) = y[r];
  }
  const auto unit = image_of(std::vector<Elem>(size, 1));
  require(linalg::rank(f, Y) == size, ErrorCode::NotCollinearityPreserving, "the frame is not sent to a frame");
  const Matrix Yinv = linalg::inverse(f, Y);
  std::vector<Elem> c(size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) c[i] = f.add(c[i], f.mul(Yinv(i, j), unit[j]));
  require(std::all_of(c.begin(), c.end(), [](Elem x) { return x != 0; }), ErrorCode::NotCollinearityPreserving,
          "the unit point is not sent to a frame point");
  Matrix g(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t i = 0; i < size; ++i) g(r, i) = f.mul(Y(r, i), c[i]);
  ProjectiveMap out(f, std::move(g));

  for (std::size_t p = 0; p < P; ++p)
    require(act(out, lattice[p]) == lattice[sigma[p]], ErrorCode::NotRealizable,
            "no projective-linear map agrees with the point permutation at " + lattice[p].to_string());
  return out;
}

}  // namespace wonderful::autgroup
