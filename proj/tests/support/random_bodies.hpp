#pragma once

// Seeded generators of small rational test bodies.

#include <random>
#include <vector>

#include "covercert/polytope.hpp"

namespace covercert::testing {

inline Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num, long den) {
  std::uniform_int_distribution<long> dist(lo_num, hi_num);
  Rational q(dist(rng), den);
  q.canonicalize();
  return q;
}

inline QVector random_point(std::mt19937_64& rng, std::size_t n, long den = 8) {
  QVector v(n);
  for (auto& c : v) c = random_rational(rng, -den, den, den);
  return v;
}

// Random vertices in [-1,1]^n plus spikes +-rho_i e_i with rho_i in [1/4, 1],
// so that 0 is interior.
inline Polytope random_centered_body(std::mt19937_64& rng, std::size_t n, std::size_t extra_points = 0) {
  std::vector<QVector> pts;
  const std::size_t k = extra_points ? extra_points : n + 2;
  for (std::size_t i = 0; i < k; ++i) pts.push_back(random_point(rng, n));
  for (std::size_t i = 0; i < n; ++i) {
    QVector e(n, Rational(0));
    e[i] = random_rational(rng, 2, 8, 8);
    pts.push_back(e);
    e[i] = -random_rational(rng, 2, 8, 8);
    pts.push_back(e);
  }
  return Polytope::from_vertices(n, std::move(pts));
}

inline Polytope random_box(std::mt19937_64& rng, std::size_t n) {
  QVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = random_rational(rng, -16, 4, 8);
    hi[i] = lo[i] + random_rational(rng, 1, 16, 8);
  }
  return box(lo, hi);
}

// Cube [-1,1]^n cut by a few random halfspaces whose offsets stay positive.
inline std::vector<Halfspace> random_halfspaces(std::mt19937_64& rng, std::size_t n, std::size_t cuts = 4) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    QVector e(n, Rational(0));
    e[i] = 1;
    hs.push_back({e, 1});
    e[i] = -1;
    hs.push_back({e, 1});
  }
  for (std::size_t c = 0; c < cuts; ++c) hs.push_back({random_point(rng, n, 4), random_rational(rng, 2, 8, 8)});
  return hs;
}

}  // namespace covercert::testing
