#include "covercert/isotropic.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covercert/errors.hpp"

namespace covercert {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd moment_of(const UnitVectorSystem& sys) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(sys.n, sys.n);
  for (std::size_t i = 0; i < sys.vectors.size(); ++i) t += sys.weights[i] * sys.vectors[i] * sys.vectors[i].transpose();
  return t;
}

std::vector<Eigen::VectorXd> float_points(const Polytope& k) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& v : k.vertices()) {
    Eigen::VectorXd x(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) x[j] = to_double(v[j]);
    out.push_back(std::move(x));
  }
  return out;
}

void require_isotropic(const Polytope& k, const UnitVectorSystem& sys, const BallOptions& opt) {
  if (sys.n != k.dim()) fail(ErrorCode::kInvalidArgument, "system and body dimensions differ");
  if (sys.n < 2) fail(ErrorCode::kInvalidArgument, "hyperplane systems need n >= 2");
  if (!k.full_dimensional()) fail(ErrorCode::kFullDimRequired, "body must be full-dimensional");
  const auto john = john_check(sys, opt.iso_tol);
  if (!john.isotropic)
    fail(ErrorCode::kNotIsotropic, "system is not isotropic (residual " + std::to_string(john.residual) + ")");
}

std::string label(std::size_t i) { return "u" + std::to_string(i + 1); }

void finish(InequalityReport& r, double log_lhs, double log_rhs, double tol) {
  r.lhs_f = std::exp(log_lhs);
  r.rhs_f = std::exp(log_rhs);
  finish_float_report(r, tol);
  if (!r.degenerate) {
    r.slack_f = std::exp(log_lhs - log_rhs);
    r.pass = r.slack_f >= 1 - tol;
  }
}

double log_cosh(double x) {
  x = std::abs(x);
  return x + std::log1p(std::exp(-2 * x)) - std::log(2.0);
}

// log of the integral of cosh(kappa <u, a>) over S^{n-1}.
double log_vmf_mass(std::size_t n, double kappa) {
  if (kappa == 0) return std::log(n == 2 ? 2 * kPi : 4 * kPi);
  if (n == 2) {
    double log_i0;
    if (kappa < 600) {
      log_i0 = std::log(boost::math::cyl_bessel_i(0, kappa));
    } else {
      log_i0 = kappa - 0.5 * std::log(2 * kPi * kappa) + std::log1p(1 / (8 * kappa) + 9 / (128 * kappa * kappa));
    }
    return std::log(2 * kPi) + log_i0;
  }
  return std::log(4 * kPi) + kappa + std::log1p(-std::exp(-2 * kappa)) - std::log(2.0) - std::log(kappa);
}

}  // namespace

UnitVectorSystem UnitVectorSystem::make(std::vector<Eigen::VectorXd> vectors, std::vector<double> weights,
                                        bool normalize) {
  if (vectors.empty()) fail(ErrorCode::kInvalidArgument, "system has no vectors");
  if (vectors.size() != weights.size()) fail(ErrorCode::kInvalidArgument, "vector and weight counts differ");
  UnitVectorSystem sys;
  sys.n = static_cast<std::size_t>(vectors.front().size());
  if (sys.n == 0) fail(ErrorCode::kInvalidArgument, "vectors must be nonempty");
  for (auto& u : vectors) {
    if (static_cast<std::size_t>(u.size()) != sys.n) fail(ErrorCode::kInvalidArgument, "vectors differ in length");
    const double norm = u.norm();
    if (normalize && norm > 0) u /= norm;
    else if (std::abs(norm - 1) > 1e-12) fail(ErrorCode::kInvalidArgument, "vectors must have unit length");
  }
  for (double c : weights)
    if (!(c > 0) || !std::isfinite(c)) fail(ErrorCode::kWeightsInvalid, "weights must be positive");
  sys.vectors = std::move(vectors);
  sys.weights = std::move(weights);
  return sys;
}

UnitVectorSystem UnitVectorSystem::standard(std::size_t n) {
  std::vector<Eigen::VectorXd> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(Eigen::VectorXd::Unit(n, i));
  return make(std::move(vs), std::vector<double>(n, 1.0));
}

UnitVectorSystem UnitVectorSystem::planar(const std::vector<double>& angles, const std::vector<double>& weights) {
  std::vector<Eigen::VectorXd> vs;
  for (double a : angles) vs.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
  return make(std::move(vs), weights);
}

JohnCheck john_check(const UnitVectorSystem& sys, double tol) {
  JohnCheck out;
  const auto t = moment_of(sys);
  out.residual = (t - Eigen::MatrixXd::Identity(sys.n, sys.n)).norm();
  for (double c : sys.weights) out.trace += c;
  const double n = static_cast<double>(sys.n);
  out.trace_ok = std::abs(out.trace - n) <= n * tol;
  out.isotropic = out.residual <= tol;
  return out;
}

HyperplaneCover cover_from_john(const UnitVectorSystem& sys, double tol) {
  const auto john = john_check(sys, tol);
  if (!john.isotropic)
    fail(ErrorCode::kNotIsotropic, "system is not isotropic (residual " + std::to_string(john.residual) + ")");
  HyperplaneCover out;
  out.n = sys.n;
  out.s = sys.n - 1;
  out.weights = sys.weights;
  const auto id = Eigen::MatrixXd::Identity(sys.n, sys.n);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(sys.n, sys.n);
  for (std::size_t i = 0; i < sys.vectors.size(); ++i) {
    out.projections.push_back(id - sys.vectors[i] * sys.vectors[i].transpose());
    sum += sys.weights[i] * out.projections.back();
  }
  out.residual = (sum - static_cast<double>(out.s) * id).norm();
  if (out.residual > john.trace * tol)
    fail(ErrorCode::kNotIsotropic, "hyperplane cover residual " + std::to_string(out.residual));
  return out;
}

InequalityReport check_ball(const Polytope& k, const UnitVectorSystem& sys, const BallOptions& opt) {
  require_isotropic(k, sys, opt);
  const std::size_t n = sys.n;
  const auto pts = float_points(k);
  InequalityReport r;
  r.name = "ball";
  r.product_side = ProductSide::kLhs;
  r.constant = Rational(1);
  double log_lhs = 0;
  for (std::size_t i = 0; i < sys.vectors.size(); ++i) {
    const auto basis = complement_basis(sys.vectors[i]);
    std::vector<Eigen::VectorXd> proj;
    proj.reserve(pts.size());
    for (const auto& p : pts) proj.push_back(basis * p);
    const double v = hull_volume(proj);
    r.factors.push_back({label(i), std::nullopt, v, Rational(sys.weights[i])});
    log_lhs += sys.weights[i] * std::log(v);
  }
  const double log_rhs = static_cast<double>(n - 1) * log_rational(volume(k));
  finish(r, log_lhs, log_rhs, opt.tol);
  return r;
}

DualBallReport check_dual_ball(const Polytope& k, const UnitVectorSystem& sys, const BallOptions& opt) {
  require_isotropic(k, sys, opt);
  if (!has_zero_interior(k)) fail(ErrorCode::kZeroNotInterior, "origin is not an interior point of K");
  const std::size_t n = sys.n;
  DualBallReport r;
  r.name = "dual-ball";
  r.product_side = ProductSide::kRhs;
  r.constant = meyer_constant(n);
  r.constant_f = to_double(*r.constant);
  double log_prod = 0;
  bool zero = false;
  for (std::size_t i = 0; i < sys.vectors.size(); ++i) {
    const double v = float_volume(general_section(k, complement_basis(sys.vectors[i])));
    r.factors.push_back({label(i), std::nullopt, v, Rational(sys.weights[i])});
    if (v <= 0) zero = true;
    else log_prod += sys.weights[i] * std::log(v);
  }
  const double log_lhs = static_cast<double>(n - 1) * log_rational(volume(k));
  if (zero) {
    r.log_integral_form = 0;
    r.lhs_f = std::exp(log_lhs);
    r.rhs_f = 0;
    finish_float_report(r, opt.tol);
    return r;
  }
  r.log_integral_form = std::exp(log_prod);
  finish(r, log_lhs, std::log(r.constant_f) + log_prod, opt.tol);
  return r;
}

double SphereMeasure::total_mass() const {
  double s = 0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

Eigen::MatrixXd SphereMeasure::moment() const {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (const auto& a : atoms) t += a.mass * a.u * a.u.transpose();
  return t;
}

double SphereMeasure::isotropy_residual() const { return (moment() - Eigen::MatrixXd::Identity(n, n)).norm(); }

SphereMeasure to_measure(const UnitVectorSystem& sys) {
  SphereMeasure m;
  m.n = sys.n;
  for (std::size_t i = 0; i < sys.vectors.size(); ++i) m.atoms.push_back({sys.vectors[i], sys.weights[i]});
  return m;
}

UnitVectorSystem to_system(const SphereMeasure& m) {
  std::vector<Eigen::VectorXd> vs;
  std::vector<double> ws;
  for (const auto& a : m.atoms) {
    if (a.mass <= 0) continue;
    vs.push_back(a.u);
    ws.push_back(a.mass);
  }
  return UnitVectorSystem::make(std::move(vs), std::move(ws), true);
}

SphereMeasure renormalize_to_isotropic(const SphereMeasure& m) {
  if (m.n == 0) fail(ErrorCode::kDegenerateMeasure, "empty measure");
  for (const auto& a : m.atoms)
    if (!(a.mass >= 0)) fail(ErrorCode::kInvalidArgument, "masses must be nonnegative");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.moment());
  const auto& ev = eig.eigenvalues();
  if (!(ev.maxCoeff() > 0) || ev.minCoeff() <= 1e-12 * ev.maxCoeff())
    fail(ErrorCode::kDegenerateMeasure, "moment matrix is singular (min eigenvalue " +
                                            std::to_string(ev.minCoeff()) + ")");
  const Eigen::MatrixXd inv_sqrt =
      eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  SphereMeasure out;
  out.n = m.n;
  for (const auto& a : m.atoms) {
    const Eigen::VectorXd v = inv_sqrt * a.u;
    const double len = v.norm();
    out.atoms.push_back({v / len, a.mass * len * len});
  }
  return out;
}

SphereDensity named_density(const std::string& name, std::size_t n, double kappa, const Eigen::VectorXd& axis) {
  if (n != 2 && n != 3) fail(ErrorCode::kUnsupportedDimension, "sphere densities support n in {2, 3}");
  const double nn = static_cast<double>(n);
  if (name == "uniform") {
    const double value = nn / (n == 2 ? 2 * kPi : 4 * kPi);
    return [value](const Eigen::VectorXd&) { return value; };
  }
  if (name == "von-mises-fisher") {
    if (!(kappa >= 0) || !std::isfinite(kappa)) fail(ErrorCode::kInvalidArgument, "kappa must be nonnegative");
    Eigen::VectorXd a = axis.size() == 0 ? Eigen::VectorXd(Eigen::VectorXd::Unit(n, 0)) : axis;
    if (static_cast<std::size_t>(a.size()) != n || !(a.norm() > 0))
      fail(ErrorCode::kInvalidArgument, "axis must be a nonzero n-vector");
    a.normalize();
    const double log_c = std::log(nn) - log_vmf_mass(n, kappa);
    return [a, kappa, log_c](const Eigen::VectorXd& u) { return std::exp(log_c + log_cosh(kappa * a.dot(u))); };
  }
  fail(ErrorCode::kInvalidArgument, "unknown density '" + name + "'");
}

SphereGrid sphere_grid(std::size_t n, double eps) {
  if (n != 2 && n != 3) fail(ErrorCode::kUnsupportedDimension, "sphere grids support n in {2, 3}");
  if (!(eps > 0) || !std::isfinite(eps)) fail(ErrorCode::kInvalidArgument, "eps must be positive");
  SphereGrid g;
  if (n == 2) {
    const auto count = std::max<std::size_t>(64, 32 * static_cast<std::size_t>(std::ceil(2 * kPi / eps)));
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2 * kPi * static_cast<double>(k) / static_cast<double>(count);
      g.points.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    g.cell_area = 2 * kPi / static_cast<double>(count);
    return g;
  }
  const auto count = std::max<std::size_t>(256, 64 * static_cast<std::size_t>(std::ceil(4 * kPi / (eps * eps))));
  const double golden = kPi * (3 - std::sqrt(5.0));
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1 - (2 * static_cast<double>(k) + 1) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1 - z * z));
    const double phi = golden * static_cast<double>(k);
    g.points.push_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
  }
  g.cell_area = 4 * kPi / static_cast<double>(count);
  return g;
}

SphereMeasure discretize_sphere_measure(const SphereDensity& density, std::size_t n, double eps) {
  const auto grid = sphere_grid(n, eps);
  const double min_dot = std::cos(std::min(eps - 1e-12, kPi));
  std::vector<Eigen::VectorXd> net;
  for (const auto& p : grid.points) {
    bool separated = true;
    for (const auto& q : net)
      if (p.dot(q) > min_dot) {
        separated = false;
        break;
      }
    if (separated) net.push_back(p);
  }
  SphereMeasure m;
  m.n = n;
  for (const auto& u : net) m.atoms.push_back({u, 0.0});
  for (const auto& p : grid.points) {
    std::size_t best = 0;
    double best_dot = -2;
    for (std::size_t i = 0; i < net.size(); ++i) {
      const double d = p.dot(net[i]);
      if (d > best_dot) {
        best_dot = d;
        best = i;
      }
    }
    const double f = density(p);
    if (!(f >= 0) || !std::isfinite(f)) fail(ErrorCode::kInvalidArgument, "density must be finite and nonnegative");
    m.atoms[best].mass += f * grid.cell_area;
  }
  return m;
}

}  // namespace covercert
