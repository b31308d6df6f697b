#pragma once

// Unit vector systems in John's position, Ball's projection inequality and
// its dual for sections, and discrete isotropic measures on the sphere.
// Everything here is floating point.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "covercert/inequality.hpp"
#include "covercert/polytope.hpp"

namespace covercert {

struct UnitVectorSystem {
  std::size_t n = 0;
  std::vector<Eigen::VectorXd> vectors;
  std::vector<double> weights;

  // Checks |u_i| = 1 within 1e-12 (or rescales when `normalize`) and c_i > 0.
  static UnitVectorSystem make(std::vector<Eigen::VectorXd> vectors, std::vector<double> weights,
                               bool normalize = false);
  // e_1, ..., e_n with unit weights.
  static UnitVectorSystem standard(std::size_t n);
  // Unit vectors at the given angles (radians) in R^2.
  static UnitVectorSystem planar(const std::vector<double>& angles, const std::vector<double>& weights);
};

struct JohnCheck {
  bool isotropic = false;
  double residual = 0;  // |sum c_i u_i u_i^T - I|_F
  double trace = 0;     // sum c_i
  bool trace_ok = false;  // |trace - n| <= n tol
};

JohnCheck john_check(const UnitVectorSystem& sys, double tol = 1e-9);

// The hyperplanes u_i^perp with weights c_i form an (n-1)-uniform cover:
// sum c_i P_i = (n-1) I.
struct HyperplaneCover {
  std::size_t n = 0;
  std::vector<Eigen::MatrixXd> projections;  // P_i = I - u_i u_i^T
  std::vector<double> weights;
  std::size_t s = 0;
  double residual = 0;  // |sum c_i P_i - s I|_F
};

HyperplaneCover cover_from_john(const UnitVectorSystem& sys, double tol = 1e-9);

struct BallOptions {
  double tol = 1e-6;       // slack tolerance
  double iso_tol = 1e-9;   // isotropy precondition
};

// |K|^(n-1) <= prod |P_{u_i^perp} K|^{c_i}. lhs is the product side.
InequalityReport check_ball(const Polytope& k, const UnitVectorSystem& sys, const BallOptions& opt = {});

struct DualBallReport : InequalityReport {
  // exp( sum c_i log|K ∩ u_i^perp| ), the product written as a log-integral
  // against the discrete measure.
  double log_integral_form = 0;
};

// |K|^(n-1) >= (n!/n^n) prod |K ∩ u_i^perp|^{c_i}.
DualBallReport check_dual_ball(const Polytope& k, const UnitVectorSystem& sys, const BallOptions& opt = {});

struct SphereAtom {
  Eigen::VectorXd u;
  double mass = 0;
};

struct SphereMeasure {
  std::size_t n = 0;
  std::vector<SphereAtom> atoms;

  double total_mass() const;
  Eigen::MatrixXd moment() const;  // sum mass u u^T
  double isotropy_residual() const;
};

SphereMeasure to_measure(const UnitVectorSystem& sys);
// Drops atoms of zero mass.
UnitVectorSystem to_system(const SphereMeasure& m);

// u -> T^{-1/2}u / |T^{-1/2}u| with mass * |T^{-1/2}u|^2, T = moment().
SphereMeasure renormalize_to_isotropic(const SphereMeasure& m);

using SphereDensity = std::function<double(const Eigen::VectorXd&)>;

// Built-in densities of total mass n on S^{n-1}, n in {2, 3}:
// "uniform", and "von-mises-fisher" symmetrized under u -> -u with
// concentration kappa about `axis` (default e_1).
SphereDensity named_density(const std::string& name, std::size_t n, double kappa = 1.0,
                            const Eigen::VectorXd& axis = {});

struct SphereGrid {
  std::vector<Eigen::VectorXd> points;
  double cell_area = 0;
};

// S^1: N = max(64, 32 ceil(2 pi / eps)) equally spaced angles from 0.
// S^2: Fibonacci lattice with N = max(256, 64 ceil(4 pi / eps^2)) points.
SphereGrid sphere_grid(std::size_t n, double eps);

// Greedy maximal eps-net (geodesic distance) over the grid, Voronoi cells on
// the grid with ties to the lower index, masses by cell quadrature.
SphereMeasure discretize_sphere_measure(const SphereDensity& density, std::size_t n, double eps);

}  // namespace covercert
