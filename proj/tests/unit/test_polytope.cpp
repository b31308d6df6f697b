#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "covercert/errors.hpp"
#include "covercert/polytope.hpp"
#include "support/random_bodies.hpp"

using namespace covercert;
using covercert::testing::random_centered_body;
using covercert::testing::random_halfspaces;
using covercert::testing::random_point;

namespace {

Rational q(const char* s) { return parse_rational(s); }

// Leibniz-formula determinant: independent of the elimination code.
Rational leibniz_det(const QMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

long fact(long n) { return n <= 1 ? 1 : n * fact(n - 1); }

bool satisfies(const std::vector<Halfspace>& hs, const QVector& x) {
  return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return dot(h.normal, x) <= h.offset; });
}

}  // namespace

TEST_CASE("volume of standard bodies") {
  CHECK(volume(cross_polytope(2)) == 2);
  CHECK(volume(cube(3)) == 8);
  const auto simplex = Polytope::from_vertices(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(volume(simplex) == q("1/6"));
  CHECK(volume(cross_polytope(3)) == q("4/3"));
  CHECK(volume(cross_polytope(5)) == q("32/120"));
}

TEST_CASE("volume of random simplices matches the determinant oracle") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<QVector> v;
      for (std::size_t i = 0; i <= n; ++i) v.push_back(random_point(rng, n));
      QMatrix m(n, QVector(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m[r][c] = v[r + 1][c] - v[0][c];
      const Rational expected = abs(leibniz_det(m)) / fact(static_cast<long>(n));
      const auto p = Polytope::from_vertices(n, v);
      CHECK(volume(p) == expected);
    }
  }
}

TEST_CASE("volume errors and degenerate input") {
  CHECK_THROWS_AS(Polytope::from_halfspaces(2, {{{1, 0}, 1}, {{-1, 0}, 1}}), Error);
  try {
    Polytope::from_halfspaces(1, {{{1}, -1}, {{-1}, -1}});
    FAIL("expected EmptyPolytope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyPolytope);
  }
  try {
    Polytope::from_halfspaces(2, {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}});
    FAIL("expected UnboundedPolytope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnboundedPolytope);
  }
  const auto segment = Polytope::from_vertices(2, {{0, 0}, {1, 1}, {q("1/2"), q("1/2")}});
  CHECK_FALSE(segment.full_dimensional());
  CHECK(segment.vertices().size() == 2);
  CHECK(volume(segment) == 0);
}

TEST_CASE("conversion: V-rep of B_1^2 gives |x|+|y| <= 1") {
  const auto hs = vertices_to_halfspaces(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  REQUIRE(hs.size() == 4);
  for (const auto& h : hs) {
    CHECK(h.offset == 1);
    CHECK(abs(h.normal[0]) == 1);
    CHECK(abs(h.normal[1]) == 1);
  }
  CHECK(cube(4).vertices().size() == 16);
}

TEST_CASE("conversion round trip is a fixed point") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto hs = random_halfspaces(rng, 3);
    const auto verts = halfspaces_to_vertices(3, hs);
    const auto facets = vertices_to_halfspaces(3, verts);
    auto verts2 = halfspaces_to_vertices(3, facets);
    // Redundant input halfspaces may leave extra (non-vertex) rays out, but
    // the vertex set itself must survive unchanged.
    auto sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    std::sort(verts2.begin(), verts2.end());
    CHECK(sorted == verts2);
    for (const auto& v : verts) CHECK(satisfies(hs, v));
  }
}

TEST_CASE("dimension cap") {
  ConversionLimits limits;
  limits.max_dim = 3;
  try {
    Polytope::from_vertices(4, {{0, 0, 0, 0}}, limits);
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionTooLarge);
  }
}

TEST_CASE("from_both verifies consistency") {
  std::vector<QVector> v = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<Halfspace> good = {{{1, 1}, 1}, {{1, -1}, 1}, {{-1, 1}, 1}, {{-1, -1}, 1}, {{1, 0}, 5}};
  CHECK(volume(Polytope::from_both(2, v, good)) == 2);
  std::vector<Halfspace> missing(good.begin(), good.begin() + 3);
  CHECK_THROWS_AS(Polytope::from_both(2, v, missing), Error);
  std::vector<Halfspace> violated = good;
  violated.push_back({{1, 0}, q("1/2")});
  CHECK_THROWS_AS(Polytope::from_both(2, v, violated), Error);
}

TEST_CASE("coordinate sections") {
  const auto sq = coordinate_section(cube(3), CoordSet(3, {0, 1}));
  CHECK(sq.dim() == 2);
  CHECK(volume(sq) == 4);
  const auto b12 = coordinate_section(cross_polytope(3), CoordSet(3, {0, 2}));
  CHECK(volume(b12) == 2);
  CHECK(b12.vertices().size() == 4);
}

TEST_CASE("sections agree with membership in the body") {
  std::mt19937_64 rng(17);
  const auto hs = random_halfspaces(rng, 3, 5);
  const auto p = Polytope::from_halfspaces(3, hs);
  const CoordSet sigma(3, {0, 2});
  const auto sec = coordinate_section(p, sigma);
  int inside = 0;
  for (int i = 0; i < 1000; ++i) {
    const QVector z = random_point(rng, 2, 6);
    const QVector embedded = {z[0], 0, z[1]};
    const bool expected = satisfies(hs, embedded);
    inside += expected;
    CHECK(contains(sec, z) == expected);
  }
  CHECK(inside > 0);
}

TEST_CASE("degenerate and empty sections") {
  // 0 on the boundary: the section by the x-axis of conv{0, e1, e2} is a segment.
  const auto tri = Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(section_volume(tri, CoordSet(2, {0})) == 1);
  // Translate away from the origin's line: the x2-section misses the body.
  const auto shifted = box({2, -1}, {3, 1});
  CHECK(section_volume(shifted, CoordSet(2, {1})) == 0);
  CHECK_THROWS_AS(coordinate_section(shifted, CoordSet(2, {1})), Error);
  // An edge lying in the subspace is still a full section of F_{2}.
  const auto touching = box({0, 0}, {1, 1});
  CHECK(coordinate_section(touching, CoordSet(2, {1})).affine_dim() == 1);
  // Touching F_{2} in a single point gives a lower-dimensional section.
  const auto corner = Polytope::from_vertices(2, {{0, 0}, {1, 1}, {2, 0}});
  CHECK(section_volume(corner, CoordSet(2, {1})) == 0);
}

TEST_CASE("coordinate projections") {
  CHECK(volume(coordinate_projection(cube(3), CoordSet(3, {0, 1}))) == 4);
  CHECK(volume(coordinate_projection(cross_polytope(3), CoordSet(3, {0, 1}))) == 2);
}

TEST_CASE("projections agree with the support function") {
  std::mt19937_64 rng(23);
  const auto p = random_centered_body(rng, 4, 8);
  const CoordSet sigma(4, {1, 3});
  const auto proj = coordinate_projection(p, sigma);
  for (int i = 0; i < 200; ++i) {
    const QVector u = random_point(rng, 2, 5);
    const QVector lifted = {0, u[0], 0, u[1]};
    Rational oracle = dot(p.vertices().front(), lifted);
    for (const auto& v : p.vertices()) oracle = std::max<Rational>(oracle, dot(v, lifted));
    CHECK(support(proj, u) == oracle);
  }
}

TEST_CASE("Minkowski functional and zero interior") {
  CHECK(minkowski_functional(cross_polytope(3), {1, 0, 0}) == 1);
  CHECK(minkowski_functional(cube(2), {1, 1}) == 1);
  CHECK(minkowski_functional(cube(2), {q("1/2"), q("-1/3")}) == q("1/2"));
  CHECK(minkowski_functional(cube(2), {0, 0}) == 0);
  CHECK(has_zero_interior(cross_polytope(4)));
  CHECK_FALSE(has_zero_interior(Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}})));
  const auto moved = box({2, -1}, {4, 1});
  CHECK_FALSE(has_zero_interior(moved));
  try {
    minkowski_functional(moved, {1, 0});
    FAIL("expected ZeroNotInterior");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroNotInterior);
  }
}

TEST_CASE("property: volume scales by |det A|") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = random_centered_body(rng, 3);
    const Rational base = volume(p);
    QMatrix diag = {{q("2/3"), 0, 0}, {0, 3, 0}, {0, 0, q("-1/2")}};
    CHECK(volume(linear_image(p, diag)) == base);
    QMatrix shear = {{1, q("5/7"), 0}, {0, 1, -2}, {0, 0, 1}};
    CHECK(volume(linear_image(p, shear)) == base);
    QMatrix general = {{1, 2, 0}, {0, 1, 1}, {1, 0, 3}};
    CHECK(volume(linear_image(p, general)) == base * abs(leibniz_det(general)));
  }
}

TEST_CASE("property: volume is independent of the triangulation order") {
  std::mt19937_64 rng(29);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto p = random_centered_body(rng, n, 2 * n + 2);
      CHECK(volume(p, TriangulationOrder::kLowestApex) == volume(p, TriangulationOrder::kHighestApex));
    }
  }
}

TEST_CASE("property: sections and projections commute with relabeling") {
  std::mt19937_64 rng(31);
  const std::vector<std::size_t> perm = {2, 0, 3, 1};  // new j <- old perm[j]
  for (int trial = 0; trial < 4; ++trial) {
    const auto p = random_centered_body(rng, 4);
    const auto pp = permuted(p, perm);
    for (const auto& sigma : all_coord_sets(4)) {
      std::vector<std::size_t> old_idx;
      for (std::size_t j : sigma.indices()) old_idx.push_back(perm[j]);
      const CoordSet old_sigma(4, old_idx);
      CHECK(section_volume(pp, sigma) == section_volume(p, old_sigma));
      CHECK(volume(coordinate_projection(pp, sigma)) == volume(coordinate_projection(p, old_sigma)));
    }
  }
}

TEST_CASE("property: Minkowski functional <= 1 iff membership") {
  std::mt19937_64 rng(37);
  const auto p = random_centered_body(rng, 3);
  for (int i = 0; i < 1000; ++i) {
    const QVector y = random_point(rng, 3, 6);
    CHECK((minkowski_functional(p, y) <= 1) == contains(p, y));
  }
}

TEST_CASE("property: projection dominates section") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_centered_body(rng, 3);
    for (const auto& sigma : all_coord_sets(3))
      CHECK(volume(coordinate_projection(p, sigma)) >= section_volume(p, sigma));
  }
}

TEST_CASE("general sections: float path") {
  Eigen::MatrixXd basis(1, 2);
  basis << 0, 1;
  CHECK(float_volume(general_section(cube(2), basis)) == doctest::Approx(2.0).epsilon(1e-12));

  basis << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  CHECK(float_volume(general_section(cube(2), basis)) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));

  Eigen::VectorXd u(3);
  u << 1, 1, 1;
  const Eigen::MatrixXd b3 = complement_basis(u / u.norm());
  const auto sec = general_section(cross_polytope(3), b3);
  CHECK_FALSE(sec.exact);
  // Hull oracle: the section's vertices are the edge midpoints (e_i - e_j)/2.
  std::vector<Eigen::VectorXd> mids;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Eigen::VectorXd m = Eigen::VectorXd::Zero(3);
      m[i] = 0.5;
      m[j] = -0.5;
      mids.push_back(b3 * m);
    }
  const double oracle = hull_volume(mids);
  CHECK(oracle == doctest::Approx(3 * std::sqrt(3.0) / 4).epsilon(1e-12));
  CHECK(float_volume(sec) == doctest::Approx(oracle).epsilon(1e-10));

  Eigen::MatrixXd skew(1, 2);
  skew << 1, 1;
  CHECK_THROWS_AS(general_section(cube(2), skew), Error);
}

TEST_CASE("hull_volume in three dimensions goes through the exact path") {
  std::vector<Eigen::VectorXd> pts;
  for (int mask = 0; mask < 8; ++mask) {
    Eigen::VectorXd p(3);
    p << (mask & 1 ? 0.5 : -0.5), (mask & 2 ? 1.0 : -1.0), (mask & 4 ? 0.25 : -0.25);
    pts.push_back(p);
  }
  CHECK(hull_volume(pts) == doctest::Approx(1.0));
}
