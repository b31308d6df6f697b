#include "covercert/polytope.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "covercert/errors.hpp"
#include "covercert/lp.hpp"

namespace covercert {

namespace {

using Bits = boost::dynamic_bitset<>;

void check_dim(std::size_t dim, const ConversionLimits& limits) {
  if (dim == 0) fail(ErrorCode::kInvalidArgument, "polytope dimension must be positive");
  if (dim > limits.max_dim)
    fail(ErrorCode::kDimensionTooLarge,
         "dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(limits.max_dim));
}

std::size_t affine_rank(const std::vector<QVector>& pts) {
  if (pts.size() <= 1) return 0;
  QMatrix diffs;
  diffs.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    QVector d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

// p lies in conv(others)? Exact LP feasibility.
bool in_hull_of_others(const std::vector<QVector>& pts, std::size_t i) {
  const std::size_t k = pts.size() - 1;
  const std::size_t dim = pts[i].size();
  lp::Problem<Rational> prob(k);
  QVector ones(k, Rational(1));
  prob.add(ones, lp::Sense::kEqual, Rational(1));
  for (std::size_t c = 0; c < dim; ++c) {
    QVector row;
    row.reserve(k);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) row.push_back(pts[j][c]);
    prob.add(std::move(row), lp::Sense::kEqual, pts[i][c]);
  }
  return lp::maximize(prob).status == lp::Status::kOptimal;
}

void check_sizes(std::size_t dim, const std::vector<QVector>& pts) {
  for (const auto& p : pts)
    if (p.size() != dim) fail(ErrorCode::kInvalidArgument, "vertex has wrong dimension");
}

void check_sizes(std::size_t dim, const std::vector<Halfspace>& hs) {
  for (const auto& h : hs)
    if (h.normal.size() != dim) fail(ErrorCode::kInvalidArgument, "halfspace normal has wrong dimension");
}

}  // namespace

ConeRays extreme_rays(const QMatrix& rows, std::size_t dim) {
  ConeRays out;
  const auto basis_rows = independent_rows(rows);
  if (basis_rows.size() < dim) return out;
  out.pointed = true;
  const std::size_t m = rows.size();

  // Start from the simplicial cone cut out by `dim` independent rows: its
  // rays are the columns of the inverse of that square block.
  QMatrix block;
  for (std::size_t k = 0; k < dim; ++k) block.push_back(rows[basis_rows[k]]);
  std::vector<QVector> rays;
  std::vector<Bits> zeros;
  for (std::size_t k = 0; k < dim; ++k) {
    QVector e(dim, Rational(0));
    e[k] = 1;
    QVector r = solve(block, e);
    make_primitive(r);
    rays.push_back(std::move(r));
    Bits z(m);
    for (std::size_t j = 0; j < dim; ++j)
      if (j != k) z.set(basis_rows[j]);
    zeros.push_back(std::move(z));
  }
  std::vector<bool> done(m, false);
  for (std::size_t k : basis_rows) done[k] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (done[i]) continue;
    done[i] = true;
    const QVector& a = rows[i];
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> plus, minus, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      const int s = sgn(val[r]);
      (s > 0 ? plus : s < 0 ? minus : zero).push_back(r);
    }
    if (minus.empty()) {
      for (std::size_t r : zero) zeros[r].set(i);
      continue;
    }

    std::vector<QVector> next_rays;
    std::vector<Bits> next_zeros;
    for (std::size_t r : plus) {
      next_rays.push_back(rays[r]);
      next_zeros.push_back(zeros[r]);
    }
    for (std::size_t r : zero) {
      next_rays.push_back(rays[r]);
      next_zeros.push_back(zeros[r]);
      next_zeros.back().set(i);
    }
    for (std::size_t p : plus) {
      for (std::size_t q : minus) {
        Bits common = zeros[p] & zeros[q];
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(zeros[r])) adjacent = false;
        }
        if (!adjacent) continue;
        QVector ray(dim);
        for (std::size_t j = 0; j < dim; ++j) ray[j] = val[p] * rays[q][j] - val[q] * rays[p][j];
        make_primitive(ray);
        common.set(i);
        next_rays.push_back(std::move(ray));
        next_zeros.push_back(std::move(common));
      }
    }
    rays = std::move(next_rays);
    zeros = std::move(next_zeros);
  }
  out.rays = std::move(rays);
  return out;
}

Halfspace canonical(Halfspace h) {
  QVector row = h.normal;
  row.push_back(h.offset);
  make_primitive(row);
  h.offset = row.back();
  row.pop_back();
  h.normal = std::move(row);
  return h;
}

std::vector<QVector> halfspaces_to_vertices(std::size_t dim, const std::vector<Halfspace>& hs,
                                            const ConversionLimits& limits) {
  check_dim(dim, limits);
  check_sizes(dim, hs);
  // Homogenize: (t, x) with t*b - <a, x> >= 0 and t >= 0.
  QMatrix rows;
  rows.reserve(hs.size() + 1);
  for (const auto& h : hs) {
    QVector r(dim + 1);
    r[0] = h.offset;
    for (std::size_t j = 0; j < dim; ++j) r[j + 1] = -h.normal[j];
    rows.push_back(std::move(r));
  }
  QVector t_row(dim + 1, Rational(0));
  t_row[0] = 1;
  rows.push_back(std::move(t_row));

  const ConeRays cone = extreme_rays(rows, dim + 1);
  if (!cone.pointed) fail(ErrorCode::kUnboundedPolytope, "halfspaces leave a line unconstrained");
  std::vector<QVector> verts;
  bool recession = false;
  for (const auto& ray : cone.rays) {
    if (sgn(ray[0]) == 0) {
      recession = true;
      continue;
    }
    QVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = ray[j + 1] / ray[0];
    verts.push_back(std::move(v));
  }
  if (verts.empty()) fail(ErrorCode::kEmptyPolytope, "halfspace system is infeasible");
  if (recession) fail(ErrorCode::kUnboundedPolytope, "halfspace system has a recession direction");
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

std::vector<Halfspace> vertices_to_halfspaces(std::size_t dim, const std::vector<QVector>& pts,
                                              const ConversionLimits& limits) {
  check_dim(dim, limits);
  check_sizes(dim, pts);
  // Facets of conv(pts) are the extreme rays (b, w) of {b + <w, v> >= 0 for all v}.
  QMatrix rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) {
    QVector r(dim + 1);
    r[0] = 1;
    for (std::size_t j = 0; j < dim; ++j) r[j + 1] = p[j];
    rows.push_back(std::move(r));
  }
  const ConeRays cone = extreme_rays(rows, dim + 1);
  if (!cone.pointed) fail(ErrorCode::kFullDimRequired, "points do not affinely span the space");
  std::vector<Halfspace> hs;
  hs.reserve(cone.rays.size());
  for (const auto& ray : cone.rays) {
    Halfspace h;
    h.offset = ray[0];
    h.normal.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) h.normal[j] = -ray[j + 1];
    hs.push_back(canonical(std::move(h)));
  }
  return hs;
}

void Polytope::finish() {
  affine_dim_ = affine_rank(vertices_);
  incidence_.assign(halfspaces_.size(), {});
  for (std::size_t f = 0; f < halfspaces_.size(); ++f)
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (dot(halfspaces_[f].normal, vertices_[v]) == halfspaces_[f].offset) incidence_[f].push_back(v);
}

Polytope Polytope::from_vertices(std::size_t dim, std::vector<QVector> points, const ConversionLimits& limits) {
  check_dim(dim, limits);
  check_sizes(dim, points);
  if (points.empty()) fail(ErrorCode::kEmptyPolytope, "no vertices given");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Polytope p;
  p.dim_ = dim;
  if (affine_rank(points) == dim) {
    p.halfspaces_ = vertices_to_halfspaces(dim, points, limits);
    // A point is a vertex iff the facet normals tight at it have full rank.
    for (auto& v : points) {
      QMatrix tight;
      for (const auto& h : p.halfspaces_)
        if (dot(h.normal, v) == h.offset) tight.push_back(h.normal);
      if (tight.size() >= dim && rank(std::move(tight)) == dim) p.vertices_.push_back(std::move(v));
    }
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points.size() > 1 && in_hull_of_others(points, i)) {
        points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
        --i;
      }
    }
    p.vertices_ = std::move(points);
  }
  p.finish();
  return p;
}

Polytope Polytope::from_halfspaces(std::size_t dim, std::vector<Halfspace> hs, const ConversionLimits& limits) {
  check_dim(dim, limits);
  check_sizes(dim, hs);
  std::vector<Halfspace> kept;
  for (auto& h : hs) {
    const bool zero_normal = std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& q) { return sgn(q) == 0; });
    if (zero_normal) {
      if (sgn(h.offset) < 0) fail(ErrorCode::kEmptyPolytope, "halfspace 0 <= negative offset");
      continue;
    }
    kept.push_back(canonical(std::move(h)));
  }
  std::sort(kept.begin(), kept.end(), [](const Halfspace& a, const Halfspace& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  });
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  auto verts = halfspaces_to_vertices(dim, kept, limits);
  if (affine_rank(verts) == dim) return from_vertices(dim, std::move(verts), limits);
  Polytope p;
  p.dim_ = dim;
  p.vertices_ = std::move(verts);
  p.halfspaces_ = std::move(kept);
  p.finish();
  return p;
}

Polytope Polytope::from_both(std::size_t dim, std::vector<QVector> points, std::vector<Halfspace> hs,
                             const ConversionLimits& limits) {
  check_sizes(dim, hs);
  Polytope p = from_vertices(dim, std::move(points), limits);
  for (const auto& v : p.vertices_)
    for (const auto& h : hs)
      if (dot(h.normal, v) > h.offset)
        fail(ErrorCode::kInconsistentRepresentation, "a vertex violates a supplied halfspace");
  if (!p.full_dimensional()) return p;
  std::vector<Halfspace> given;
  for (const auto& h : hs) given.push_back(canonical(h));
  for (const auto& f : p.halfspaces_)
    if (std::find(given.begin(), given.end(), f) == given.end())
      fail(ErrorCode::kInconsistentRepresentation, "a facet of the vertex hull is missing from the halfspaces");
  return p;
}

namespace {

class Triangulator {
 public:
  Triangulator(const Polytope& p, TriangulationOrder order) : p_(p), order_(order) {}

  // Triangulates the k-dimensional face spanned by vertex set `face`.
  const std::vector<std::vector<std::size_t>>& run(const std::vector<std::size_t>& face, std::size_t k) {
    auto it = memo_.find(face);
    if (it != memo_.end()) return it->second;
    std::vector<std::vector<std::size_t>> out;
    if (face.size() == k + 1) {
      out.push_back(face);
      return memo_.emplace(face, std::move(out)).first->second;
    }
    const std::size_t apex = order_ == TriangulationOrder::kLowestApex ? face.front() : face.back();
    std::set<std::vector<std::size_t>> subfaces;
    for (const auto& inc : p_.incidence()) {
      std::vector<std::size_t> t;
      std::set_intersection(face.begin(), face.end(), inc.begin(), inc.end(), std::back_inserter(t));
      if (t.size() < k || t.size() == face.size()) continue;
      if (std::binary_search(t.begin(), t.end(), apex)) continue;
      if (subfaces.count(t)) continue;
      if (rank_of(t) != k - 1) continue;
      subfaces.insert(std::move(t));
    }
    for (const auto& sub : subfaces) {
      for (const auto& s : run(sub, k - 1)) {
        std::vector<std::size_t> simplex;
        simplex.reserve(s.size() + 1);
        simplex.push_back(apex);
        simplex.insert(simplex.end(), s.begin(), s.end());
        out.push_back(std::move(simplex));
      }
    }
    return memo_.emplace(face, std::move(out)).first->second;
  }

 private:
  std::size_t rank_of(const std::vector<std::size_t>& idx) const {
    std::vector<QVector> pts;
    pts.reserve(idx.size());
    for (std::size_t i : idx) pts.push_back(p_.vertices()[i]);
    return affine_rank(pts);
  }

  const Polytope& p_;
  TriangulationOrder order_;
  std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> memo_;
};

}  // namespace

Rational volume(const Polytope& p, TriangulationOrder order) {
  if (!p.full_dimensional()) return 0;
  const std::size_t n = p.dim();
  const auto& verts = p.vertices();
  QVector center(n, Rational(0));
  for (const auto& v : verts)
    for (std::size_t j = 0; j < n; ++j) center[j] += v[j];
  for (auto& c : center) c /= static_cast<long>(verts.size());

  // Cone from the centroid over a triangulation of every facet.
  Triangulator tri(p, order);
  Rational total = 0;
  for (const auto& facet : p.incidence()) {
    for (const auto& simplex : tri.run(facet, n - 1)) {
      QMatrix m(n, QVector(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m[r][c] = verts[simplex[r]][c] - center[c];
      total += abs(determinant(std::move(m)));
    }
  }
  return total / Rational(factorial(n));
}

bool contains(const Polytope& p, const QVector& x) {
  if (x.size() != p.dim()) fail(ErrorCode::kInvalidArgument, "point has wrong dimension");
  if (p.full_dimensional()) {
    for (const auto& h : p.halfspaces())
      if (dot(h.normal, x) > h.offset) return false;
    return true;
  }
  std::vector<QVector> pts = p.vertices();
  pts.push_back(x);
  return in_hull_of_others(pts, pts.size() - 1);
}

Rational support(const Polytope& p, const QVector& direction) {
  Rational best = dot(p.vertices().front(), direction);
  for (const auto& v : p.vertices()) best = std::max<Rational>(best, dot(v, direction));
  return best;
}

Polytope coordinate_section(const Polytope& p, const CoordSet& sigma) {
  if (sigma.ambient() != p.dim()) fail(ErrorCode::kInvalidArgument, "coordinate set ambient dimension mismatch");
  if (!p.has_halfspaces()) fail(ErrorCode::kMissingRepresentation, "section needs a halfspace representation");
  if (sigma.is_full()) return p;
  const auto idx = sigma.indices();
  std::vector<Halfspace> hs;
  hs.reserve(p.halfspaces().size());
  for (const auto& h : p.halfspaces()) {
    Halfspace r;
    r.offset = h.offset;
    for (std::size_t j : idx) r.normal.push_back(h.normal[j]);
    hs.push_back(std::move(r));
  }
  try {
    return Polytope::from_halfspaces(idx.size(), std::move(hs));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptyPolytope)
      fail(ErrorCode::kEmptySection, "section by F_{" + sigma.to_string() + "} is empty");
    throw;
  }
}

Rational section_volume(const Polytope& p, const CoordSet& sigma) {
  try {
    return volume(coordinate_section(p, sigma));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptySection) return 0;
    throw;
  }
}

Polytope coordinate_projection(const Polytope& p, const CoordSet& sigma) {
  if (sigma.ambient() != p.dim()) fail(ErrorCode::kInvalidArgument, "coordinate set ambient dimension mismatch");
  if (p.vertices().empty()) fail(ErrorCode::kMissingRepresentation, "projection needs vertices");
  if (sigma.is_full()) return p;
  const auto idx = sigma.indices();
  std::vector<QVector> pts;
  pts.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) {
    QVector w;
    w.reserve(idx.size());
    for (std::size_t j : idx) w.push_back(v[j]);
    pts.push_back(std::move(w));
  }
  return Polytope::from_vertices(idx.size(), std::move(pts));
}

bool has_zero_interior(const Polytope& p) {
  if (!p.full_dimensional()) return false;
  if (!p.has_halfspaces()) fail(ErrorCode::kMissingRepresentation, "interior test needs halfspaces");
  return std::all_of(p.halfspaces().begin(), p.halfspaces().end(),
                     [](const Halfspace& h) { return sgn(h.offset) > 0; });
}

Rational minkowski_functional(const Polytope& p, const QVector& y) {
  if (y.size() != p.dim()) fail(ErrorCode::kInvalidArgument, "point has wrong dimension");
  if (!has_zero_interior(p)) fail(ErrorCode::kZeroNotInterior, "Minkowski functional needs 0 in int(P)");
  Rational best = 0;
  for (const auto& h : p.halfspaces()) best = std::max<Rational>(best, dot(h.normal, y) / h.offset);
  return best;
}

Polytope scaled(const Polytope& p, const Rational& t) {
  if (sgn(t) <= 0) fail(ErrorCode::kInvalidArgument, "scale factor must be positive");
  std::vector<QVector> pts = p.vertices();
  for (auto& v : pts)
    for (auto& c : v) c *= t;
  return Polytope::from_vertices(p.dim(), std::move(pts));
}

Polytope linear_image(const Polytope& p, const QMatrix& a) {
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) {
    QVector w(a.size(), Rational(0));
    for (std::size_t r = 0; r < a.size(); ++r) w[r] = dot(a[r], v);
    pts.push_back(std::move(w));
  }
  return Polytope::from_vertices(a.size(), std::move(pts));
}

Polytope permuted(const Polytope& p, const std::vector<std::size_t>& perm) {
  if (perm.size() != p.dim()) fail(ErrorCode::kInvalidArgument, "permutation has wrong size");
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) {
    QVector w(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) w[j] = v[perm[j]];
    pts.push_back(std::move(w));
  }
  return Polytope::from_vertices(p.dim(), std::move(pts));
}

Polytope cross_polytope(const QVector& radii) {
  const std::size_t n = radii.size();
  std::vector<QVector> pts;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(radii[i]) <= 0) fail(ErrorCode::kInvalidArgument, "cross-polytope radii must be positive");
    QVector v(n, Rational(0));
    v[i] = radii[i];
    pts.push_back(v);
    v[i] = -radii[i];
    pts.push_back(std::move(v));
  }
  return Polytope::from_vertices(n, std::move(pts));
}

Polytope cross_polytope(std::size_t n) { return cross_polytope(QVector(n, Rational(1))); }

Polytope box(const QVector& lo, const QVector& hi) {
  const std::size_t n = lo.size();
  if (hi.size() != n) fail(ErrorCode::kInvalidArgument, "box bounds differ in dimension");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lo[i] < hi[i])) fail(ErrorCode::kInvalidArgument, "box needs lo < hi on every axis");
    QVector e(n, Rational(0));
    e[i] = 1;
    hs.push_back({e, hi[i]});
    e[i] = -1;
    hs.push_back({e, -lo[i]});
  }
  return Polytope::from_halfspaces(n, std::move(hs));
}

Polytope cube(std::size_t n, const Rational& half_side) {
  return box(QVector(n, Rational(-half_side)), QVector(n, half_side));
}

// ---- floating-point path -------------------------------------------------

FloatPolytope general_section(const Polytope& p, const Eigen::MatrixXd& basis, const FloatTolerance& tol) {
  if (static_cast<std::size_t>(basis.cols()) != p.dim())
    fail(ErrorCode::kInvalidArgument, "basis column count must equal the polytope dimension");
  if (basis.rows() == 0) fail(ErrorCode::kInvalidArgument, "basis must have at least one row");
  const Eigen::MatrixXd gram = basis * basis.transpose();
  const double dev = (gram - Eigen::MatrixXd::Identity(basis.rows(), basis.rows())).cwiseAbs().maxCoeff();
  if (dev > tol.orthonormal) fail(ErrorCode::kIllConditionedBasis, "basis rows are not orthonormal");
  if (!p.has_halfspaces()) fail(ErrorCode::kMissingRepresentation, "section needs a halfspace representation");

  FloatPolytope out;
  out.dim = static_cast<std::size_t>(basis.rows());
  for (const auto& h : p.halfspaces()) {
    Eigen::VectorXd a(static_cast<Eigen::Index>(p.dim()));
    for (std::size_t j = 0; j < p.dim(); ++j) a[static_cast<Eigen::Index>(j)] = to_double(h.normal[j]);
    out.halfspaces.push_back({basis * a, to_double(h.offset)});
  }
  return out;
}

std::vector<Eigen::VectorXd> float_vertices(const FloatPolytope& p, const FloatTolerance& tol) {
  const auto d = static_cast<Eigen::Index>(p.dim);
  std::vector<const FloatHalfspace*> active;
  for (const auto& h : p.halfspaces) {
    if (h.normal.norm() <= 1e-14) {
      if (h.offset < -tol.residual) return {};
      continue;
    }
    active.push_back(&h);
  }
  std::vector<Eigen::VectorXd> out;
  const std::size_t m = active.size();
  if (m < p.dim) return out;
  auto feasible = [&](const Eigen::VectorXd& x) {
    for (const auto* h : active)
      if (h->normal.dot(x) > h->offset + tol.residual * std::max(1.0, std::abs(h->offset))) return false;
    return true;
  };
  std::vector<std::size_t> pick(p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) pick[i] = i;
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd b(d);
  for (;;) {
    for (Eigen::Index r = 0; r < d; ++r) {
      a.row(r) = active[pick[static_cast<std::size_t>(r)]]->normal.transpose();
      b[r] = active[pick[static_cast<std::size_t>(r)]]->offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() == d) {
      Eigen::VectorXd x = lu.solve(b);
      if (feasible(x)) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Eigen::VectorXd& y) {
          return (y - x).norm() <= 10 * tol.residual * std::max(1.0, x.norm());
        });
        if (!dup) out.push_back(std::move(x));
      }
    }
    // next combination
    std::size_t i = p.dim;
    while (i > 0 && pick[i - 1] == m - p.dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < p.dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

double float_volume(const FloatPolytope& p, const FloatTolerance& tol) {
  const auto pts = float_vertices(p, tol);
  if (pts.size() < p.dim + 1) return 0.0;
  return hull_volume(pts);
}

double hull_volume(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) return 0.0;
  const auto d = points.front().size();
  if (d == 1) {
    double lo = points.front()[0], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  if (d == 2) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : points) pts.emplace_back(p[0], p[1]);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return 0.0;
    auto cross = [](const auto& o, const auto& a, const auto& b) {
      return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
      hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
      hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      area += a.first * b.second - a.second * b.first;
    }
    return std::abs(area) / 2.0;
  }
  // Higher dimensions: the doubles are exact rationals, so reuse the exact hull.
  std::vector<QVector> pts;
  for (const auto& p : points) {
    QVector q(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) q[static_cast<std::size_t>(j)] = Rational(p[j]);
    pts.push_back(std::move(q));
  }
  return to_double(volume(Polytope::from_vertices(static_cast<std::size_t>(d), std::move(pts))));
}

Eigen::MatrixXd complement_basis(const Eigen::VectorXd& u) {
  const auto n = u.size();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(u.normalized()));
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return q.rightCols(n - 1).transpose();
}

}  // namespace covercert
