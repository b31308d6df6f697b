#pragma once

// Exact rational polytopes: representation conversion, volume, coordinate
// sections and projections, Minkowski functional. A floating-point companion
// (FloatPolytope) handles sections by non-coordinate subspaces.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "covercert/coord_set.hpp"
#include "covercert/rational.hpp"

namespace covercert {

// <normal, x> <= offset
struct Halfspace {
  QVector normal;
  Rational offset;

  bool operator==(const Halfspace&) const = default;
};

struct ConversionLimits {
  std::size_t max_dim = 10;
};

// Extreme rays of the pointed cone {y : rows * y >= 0}. Returns false in
// `pointed` (and no rays) when the rows do not have full column rank.
struct ConeRays {
  bool pointed = false;
  std::vector<QVector> rays;
};
ConeRays extreme_rays(const QMatrix& rows, std::size_t dim);

// Raw representation conversions (double description, exact).
std::vector<QVector> halfspaces_to_vertices(std::size_t dim, const std::vector<Halfspace>& hs,
                                            const ConversionLimits& limits = {});
std::vector<Halfspace> vertices_to_halfspaces(std::size_t dim, const std::vector<QVector>& pts,
                                              const ConversionLimits& limits = {});

// Scales (normal, offset) to a primitive integer row; used as canonical form.
Halfspace canonical(Halfspace h);

// Bounded nonempty convex polytope in Q^dim. Immutable once constructed.
//
// Full-dimensional polytopes carry both representations: the irredundant
// vertex list and the facet list, with vertex/facet incidence. Lower
// dimensional polytopes arise only as degenerate sections or from
// lower-dimensional vertex input; they keep whatever halfspace description
// they were built from (possibly none).
class Polytope {
 public:
  static Polytope from_vertices(std::size_t dim, std::vector<QVector> points,
                                const ConversionLimits& limits = {});
  static Polytope from_halfspaces(std::size_t dim, std::vector<Halfspace> hs,
                                  const ConversionLimits& limits = {});
  // Both representations supplied; verifies that they describe the same body.
  static Polytope from_both(std::size_t dim, std::vector<QVector> points, std::vector<Halfspace> hs,
                            const ConversionLimits& limits = {});

  std::size_t dim() const { return dim_; }
  std::size_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }
  bool has_halfspaces() const { return !halfspaces_.empty(); }

  const std::vector<QVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  // incidence()[f] = sorted indices of vertices tight at halfspace f.
  const std::vector<std::vector<std::size_t>>& incidence() const { return incidence_; }

 private:
  Polytope() = default;
  void finish();

  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<QVector> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::vector<std::vector<std::size_t>> incidence_;
};

enum class TriangulationOrder { kLowestApex, kHighestApex };

// Lebesgue volume in Q^dim; zero for lower-dimensional polytopes.
Rational volume(const Polytope& p, TriangulationOrder order = TriangulationOrder::kLowestApex);

bool contains(const Polytope& p, const QVector& x);
Rational support(const Polytope& p, const QVector& direction);

// {x in P : x_j = 0 for j not in sigma}, in the coordinates of sigma.
// Throws EmptySection when P misses F_sigma.
Polytope coordinate_section(const Polytope& p, const CoordSet& sigma);
// Volume of the section; zero when it is empty or lower dimensional.
Rational section_volume(const Polytope& p, const CoordSet& sigma);
Polytope coordinate_projection(const Polytope& p, const CoordSet& sigma);

bool has_zero_interior(const Polytope& p);
// min{t >= 0 : y in tP}; requires 0 in int(P).
Rational minkowski_functional(const Polytope& p, const QVector& y);

// Images under simple maps (tests and scaling identities).
Polytope scaled(const Polytope& p, const Rational& t);
Polytope linear_image(const Polytope& p, const QMatrix& a);
// Coordinate j of the result is coordinate perm[j] of the input.
Polytope permuted(const Polytope& p, const std::vector<std::size_t>& perm);

// Standard bodies.
Polytope cross_polytope(const QVector& radii);
Polytope cross_polytope(std::size_t n);
Polytope box(const QVector& lo, const QVector& hi);
Polytope cube(std::size_t n, const Rational& half_side = 1);

// ---- floating-point path -------------------------------------------------

struct FloatHalfspace {
  Eigen::VectorXd normal;
  double offset;
};

struct FloatPolytope {
  std::size_t dim = 0;
  std::vector<FloatHalfspace> halfspaces;
  bool exact = false;
};

struct FloatTolerance {
  double residual = 1e-9;      // halfspace feasibility slack
  double orthonormal = 1e-12;  // basis check in general_section
};

// {y in R^d : basis^T y in P} for a d x n basis with orthonormal rows.
FloatPolytope general_section(const Polytope& p, const Eigen::MatrixXd& basis,
                              const FloatTolerance& tol = {});
std::vector<Eigen::VectorXd> float_vertices(const FloatPolytope& p, const FloatTolerance& tol = {});
double float_volume(const FloatPolytope& p, const FloatTolerance& tol = {});
// Volume of the convex hull of points in R^d (d = points' size).
double hull_volume(const std::vector<Eigen::VectorXd>& points);

// Orthonormal basis (rows) of the orthogonal complement of unit vector u.
Eigen::MatrixXd complement_basis(const Eigen::VectorXd& u);

}  // namespace covercert
