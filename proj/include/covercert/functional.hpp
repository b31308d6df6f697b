#pragma once

// Log-concave test functions with f(0) = 1, their integrals over R^n and
// coordinate subspaces, and the functional forms of the cover inequalities.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "covercert/covers.hpp"
#include "covercert/inequality.hpp"
#include "covercert/polytope.hpp"

namespace covercert {

enum class FunctionKind { kGaussian, kExpMinkowski, kExpL1 };

class LogConcaveSpec {
 public:
  // f(x) = exp(-x^T Q x); Q must be symmetric positive definite.
  static LogConcaveSpec gaussian(const Eigen::MatrixXd& q);
  // f(x) = exp(-||x||_K); requires 0 in int(K).
  static LogConcaveSpec exp_minkowski(const Polytope& k);
  // f(x) = exp(-||x||_1 / scale).
  static LogConcaveSpec exp_l1(std::size_t n, double scale = 1.0);

  FunctionKind kind() const { return kind_; }
  std::size_t dim() const { return n_; }
  const Eigen::MatrixXd& matrix() const { return q_; }
  const std::optional<Polytope>& body() const { return body_; }
  double scale() const { return scale_; }
  std::string name() const;

  // -log f(x) (convex, zero at the origin).
  double potential(const Eigen::VectorXd& x) const;
  double operator()(const Eigen::VectorXd& x) const;

  // Half-widths a_j (negative side) and b_j (positive side) of a box outside
  // which potential > level.
  void level_box(double level, Eigen::VectorXd& neg, Eigen::VectorXd& pos) const;

 private:
  LogConcaveSpec() = default;

  FunctionKind kind_ = FunctionKind::kGaussian;
  std::size_t n_ = 0;
  Eigen::MatrixXd q_;
  std::optional<Polytope> body_;
  Eigen::MatrixXd gauge_rows_;  // rows a_j / b_j of the facet description
  double scale_ = 1.0;
};

// Midpoint log-concavity test: counts pairs with
// f((x+y)/2)^2 < f(x) f(y) - 1e-12 among `samples` seeded random pairs.
std::size_t midpoint_violations(const LogConcaveSpec& f, std::size_t samples, std::uint64_t seed = 1);

enum class QuadratureScheme { kTensorGrid, kQuasiRandom };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::kTensorGrid;
  std::size_t points_per_axis = 64;   // tensor grid; each axis is split at 0
  std::size_t total_points = 1 << 20;  // quasi-random
  // Gauge-type functions: the box holds {potential <= T} with the mass
  // outside that set at most tail_fraction of the total.
  double tail_fraction = 5e-4;
  // Gaussians: [-R, R]^d with R = gaussian_radius / sqrt(lambda_min).
  double gaussian_radius = 6.0;
  std::optional<double> truncation_radius;  // overrides the box: [-R, R]^d
  std::size_t max_points = 50'000'000;
  std::size_t jobs = 1;
  bool use_closed_forms = true;  // for the checks below
};

struct IntegralResult {
  double value = 0;
  std::optional<double> closed_form;
  std::optional<Rational> closed_form_exact;  // exp_minkowski only
  double tail_bound = 0;  // relative bound on the discarded mass
  std::size_t evaluations = 0;
};

// Integral of f^power over R^n (domain empty) or over F_sigma.
IntegralResult integrate(const LogConcaveSpec& f, const std::optional<CoordSet>& domain, const QuadratureSpec& q,
                         double power = 1.0);

// n^n ∫ f^n  >=  prod (∫_{F_i} f)^{c_i / s}. Float report; pass iff
// slack >= 1 - tol.
InequalityReport check_dual_functional(const LogConcaveSpec& f, const WeightedCover& wc, const QuadratureSpec& q,
                                       double tol = 1e-6);

struct LemmaReport {
  std::size_t samples = 0;
  std::size_t violations = 0;  // main chain
  std::size_t step_violations = 0;  // f(x_i/d_i) >= f(x_i)^(1/d_i)
  double worst = 0;  // max of rhs - lhs over samples (<= 0 when all hold)
  bool pass = false;
};

// Random decompositions z = sum (c_i/s) x_i, x_i in F_i; checks
// f(z/n)^n >= prod f(x_i)^(c_i/s) - tol.
LemmaReport pointwise_lemma_check(const LogConcaveSpec& f, const WeightedCover& wc, std::size_t samples,
                                  std::uint64_t seed = 1, double tol = 1e-10);

struct GaussianBLReport {
  double direct_lhs = 0;   // ∫ prod f_i^{c_i}(P_i x) dx
  double direct_rhs = 0;   // prod (∫_{F_i} f_i)^{c_i}
  double reverse_lower = 0;  // integral of the decomposition x_i = P_i x
  double reverse_rhs = 0;
  double identity_error = 0;  // max | sum c_i |P_i x|^2 - |x|^2 | / |x|^2 on samples
  std::string verdict;        // "confirmed" or "inconclusive"
};

// Geometric Brascamp–Lieb data from a weighted coordinate cover (weights
// divided by s), with f_i(x) = exp(-pi |x|^2) on F_i.
GaussianBLReport gaussian_bl_extremal_check(const WeightedCover& wc, const QuadratureSpec& q, double tol = 1e-2,
                                            std::size_t identity_samples = 1000);

}  // namespace covercert
