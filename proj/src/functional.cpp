#include "covercert/functional.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "covercert/errors.hpp"

namespace covercert {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss–Legendre rule on [-1, 1] by Golub–Welsch.
struct GaussRule {
  Eigen::VectorXd nodes, weights;
};

const GaussRule& gauss_rule(std::size_t m) {
  static std::mutex mu;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  const auto sz = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(sz, sz);
  for (Eigen::Index k = 1; k < sz; ++k) {
    const double kk = static_cast<double>(k);
    jacobi(k, k - 1) = jacobi(k - 1, k) = kk / std::sqrt(4 * kk * kk - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2 * es.eigenvectors().row(0).array().square().matrix().transpose();
  return cache.emplace(m, std::move(rule)).first->second;
}

using Integrand = std::function<double(const Eigen::VectorXd&)>;

// Deterministic parallel sum of term(i) for i < count: fixed blocks summed in
// order, then a pairwise reduction over the block sums.
double block_sum(std::size_t count, std::size_t jobs, const std::function<double(std::size_t, Eigen::VectorXd&)>& term,
                 std::size_t dim) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> sums(blocks, 0.0);
  auto work = [&](std::size_t first, std::size_t stride) {
    Eigen::VectorXd scratch(dim);
    for (std::size_t b = first; b < blocks; b += stride) {
      double acc = 0;
      const std::size_t end = std::min(count, (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < end; ++i) acc += term(i, scratch);
      sums[b] = acc;
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, blocks));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
    for (auto& t : pool) t.join();
  }
  while (sums.size() > 1) {
    std::vector<double> next((sums.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = sums[2 * i] + (2 * i + 1 < sums.size() ? sums[2 * i + 1] : 0.0);
    sums.swap(next);
  }
  return sums.empty() ? 0.0 : sums.front();
}

struct Box {
  Eigen::VectorXd neg, pos;  // box is prod [-neg_j, pos_j]
};

std::pair<double, std::size_t> quadrature(const Integrand& g, const Box& box, const QuadratureSpec& q) {
  const auto d = static_cast<std::size_t>(box.neg.size());
  if (q.scheme == QuadratureScheme::kTensorGrid) {
    const std::size_t per_axis = std::max<std::size_t>(2, q.points_per_axis);
    double total = 1;
    for (std::size_t j = 0; j < d; ++j) total *= static_cast<double>(per_axis);
    if (total > static_cast<double>(q.max_points))
      fail(ErrorCode::kQuadratureBudgetExceeded,
           std::to_string(per_axis) + "^" + std::to_string(d) + " grid points exceed the budget");
    // Axis j: Gauss–Legendre panels [-neg_j, 0] and [0, pos_j], with the
    // nodes shared out in proportion to the panel lengths.
    std::vector<std::vector<double>> nodes(d), weights(d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double share = box.neg[jj] / (box.neg[jj] + box.pos[jj]);
      const auto m_neg = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(share * per_axis)), 1, per_axis - 1);
      for (int side = 0; side < 2; ++side) {
        const std::size_t m = side == 0 ? m_neg : per_axis - m_neg;
        const auto& rule = gauss_rule(m);
        const double lo = side == 0 ? -box.neg[jj] : 0.0;
        const double hi = side == 0 ? 0.0 : box.pos[jj];
        const double half = (hi - lo) / 2, mid = (hi + lo) / 2;
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(m); ++k) {
          nodes[j].push_back(mid + half * rule.nodes[k]);
          weights[j].push_back(half * rule.weights[k]);
        }
      }
    }
    const auto count = static_cast<std::size_t>(total);
    const double value = block_sum(
        count, q.jobs,
        [&](std::size_t idx, Eigen::VectorXd& x) {
          double w = 1;
          for (std::size_t j = 0; j < d; ++j) {
            const std::size_t k = idx % per_axis;
            idx /= per_axis;
            x[static_cast<Eigen::Index>(j)] = nodes[j][k];
            w *= weights[j][k];
          }
          return w * g(x);
        },
        d);
    return {value, count};
  }

  if (q.total_points > q.max_points)
    fail(ErrorCode::kQuadratureBudgetExceeded, "quasi-random point count exceeds the budget");
  // Sobol points are generated up front so the sum does not depend on jobs.
  boost::random::sobol gen(d);
  const double scale = 1.0 / (static_cast<double>(gen.max()) + 1.0);
  std::vector<double> pts(q.total_points * d);
  for (auto& u : pts) u = (static_cast<double>(gen()) + 0.5) * scale;
  double volume = 1;
  for (std::size_t j = 0; j < d; ++j) volume *= box.neg[static_cast<Eigen::Index>(j)] + box.pos[static_cast<Eigen::Index>(j)];
  const double sum = block_sum(
      q.total_points, q.jobs,
      [&](std::size_t idx, Eigen::VectorXd& x) {
        for (std::size_t j = 0; j < d; ++j) {
          const auto jj = static_cast<Eigen::Index>(j);
          x[jj] = -box.neg[jj] + pts[idx * d + j] * (box.neg[jj] + box.pos[jj]);
        }
        return g(x);
      },
      d);
  return {volume * sum / static_cast<double>(q.total_points), q.total_points};
}

// f restricted to F_sigma, as a function on R^|sigma|.
LogConcaveSpec restrict_to(const LogConcaveSpec& f, const CoordSet& sigma) {
  const auto idx = sigma.indices();
  switch (f.kind()) {
    case FunctionKind::kGaussian: {
      Eigen::MatrixXd sub(idx.size(), idx.size());
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
          sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
              f.matrix()(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
      return LogConcaveSpec::gaussian(sub);
    }
    case FunctionKind::kExpMinkowski:
      return LogConcaveSpec::exp_minkowski(coordinate_section(*f.body(), sigma));
    case FunctionKind::kExpL1:
      return LogConcaveSpec::exp_l1(idx.size(), f.scale());
  }
  fail(ErrorCode::kInvalidArgument, "unknown function kind");
}

Box level_box(const LogConcaveSpec& f, double level) {
  Box b;
  f.level_box(level, b.neg, b.pos);
  return b;
}

Box gaussian_box(const Eigen::MatrixXd& form, double radius) {
  const double lambda_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(form).eigenvalues().minCoeff();
  Box b;
  b.neg = Eigen::VectorXd::Constant(form.rows(), radius / std::sqrt(lambda_min));
  b.pos = b.neg;
  return b;
}

LogConcaveSpec on_domain(const LogConcaveSpec& f, const std::optional<CoordSet>& domain) {
  return domain && !domain->is_full() ? restrict_to(f, *domain) : f;
}

// Closed form of the integral of g^power over R^dim(g).
IntegralResult closed_form(const LogConcaveSpec& g, double power) {
  IntegralResult out;
  const auto d = static_cast<double>(g.dim());
  switch (g.kind()) {
    case FunctionKind::kGaussian:
      out.closed_form = std::pow(kPi / power, d / 2) / std::sqrt(g.matrix().determinant());
      break;
    case FunctionKind::kExpMinkowski: {
      const Rational base = Rational(factorial(g.dim())) * volume(*g.body());
      if (power == std::floor(power) && power < 1e6) {
        out.closed_form_exact = base / pow(Rational(static_cast<unsigned long>(power)), g.dim());
        out.closed_form = to_double(*out.closed_form_exact);
      } else {
        out.closed_form = to_double(base) / std::pow(power, d);
      }
      break;
    }
    case FunctionKind::kExpL1:
      out.closed_form = std::pow(2 * g.scale() / power, d);
      break;
  }
  return out;
}

}  // namespace

LogConcaveSpec LogConcaveSpec::gaussian(const Eigen::MatrixXd& q) {
  if (q.rows() == 0 || q.rows() != q.cols()) fail(ErrorCode::kInvalidArgument, "Q must be a nonempty square matrix");
  if (!q.isApprox(q.transpose(), 1e-12)) fail(ErrorCode::kNotIntegrable, "Q must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (llt.info() != Eigen::Success) fail(ErrorCode::kNotIntegrable, "Q must be positive definite");
  LogConcaveSpec f;
  f.kind_ = FunctionKind::kGaussian;
  f.n_ = static_cast<std::size_t>(q.rows());
  f.q_ = q;
  return f;
}

LogConcaveSpec LogConcaveSpec::exp_minkowski(const Polytope& k) {
  if (!has_zero_interior(k)) fail(ErrorCode::kNotIntegrable, "exp(-||x||_K) needs 0 in int(K)");
  LogConcaveSpec f;
  f.kind_ = FunctionKind::kExpMinkowski;
  f.n_ = k.dim();
  f.body_ = k;
  f.gauge_rows_.resize(static_cast<Eigen::Index>(k.halfspaces().size()), static_cast<Eigen::Index>(k.dim()));
  for (std::size_t r = 0; r < k.halfspaces().size(); ++r) {
    const auto& h = k.halfspaces()[r];
    for (std::size_t j = 0; j < k.dim(); ++j)
      f.gauge_rows_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = to_double(h.normal[j] / h.offset);
  }
  return f;
}

LogConcaveSpec LogConcaveSpec::exp_l1(std::size_t n, double scale) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "dimension must be positive");
  if (!(scale > 0) || !std::isfinite(scale)) fail(ErrorCode::kNotIntegrable, "scale must be positive");
  LogConcaveSpec f;
  f.kind_ = FunctionKind::kExpL1;
  f.n_ = n;
  f.scale_ = scale;
  return f;
}

std::string LogConcaveSpec::name() const {
  switch (kind_) {
    case FunctionKind::kGaussian:
      return "gaussian";
    case FunctionKind::kExpMinkowski:
      return "exp_minkowski";
    case FunctionKind::kExpL1:
      return "exp_l1";
  }
  return "unknown";
}

double LogConcaveSpec::potential(const Eigen::VectorXd& x) const {
  switch (kind_) {
    case FunctionKind::kGaussian:
      return x.dot(q_ * x);
    case FunctionKind::kExpMinkowski:
      return std::max(0.0, (gauge_rows_ * x).maxCoeff());
    case FunctionKind::kExpL1:
      return x.lpNorm<1>() / scale_;
  }
  return 0;
}

double LogConcaveSpec::operator()(const Eigen::VectorXd& x) const { return std::exp(-potential(x)); }

void LogConcaveSpec::level_box(double level, Eigen::VectorXd& neg, Eigen::VectorXd& pos) const {
  const auto n = static_cast<Eigen::Index>(n_);
  neg.resize(n);
  pos.resize(n);
  switch (kind_) {
    case FunctionKind::kGaussian: {
      // max x_j over {x^T Q x <= L} is sqrt(L (Q^-1)_jj).
      const Eigen::MatrixXd inv = q_.inverse();
      for (Eigen::Index j = 0; j < n; ++j) neg[j] = pos[j] = std::sqrt(level * inv(j, j));
      return;
    }
    case FunctionKind::kExpMinkowski:
      // ||x||_K <= L means x in L K, whose extent along e_j is L h_K(e_j).
      for (Eigen::Index j = 0; j < n; ++j) {
        QVector e(n_, Rational(0));
        e[static_cast<std::size_t>(j)] = 1;
        pos[j] = level * to_double(support(*body_, e));
        e[static_cast<std::size_t>(j)] = -1;
        neg[j] = level * to_double(support(*body_, e));
      }
      return;
    case FunctionKind::kExpL1:
      neg.setConstant(level * scale_);
      pos.setConstant(level * scale_);
      return;
  }
}

std::size_t midpoint_violations(const LogConcaveSpec& f, std::size_t samples, std::uint64_t seed) {
  Eigen::VectorXd neg, pos;
  f.level_box(2.0, neg, pos);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(f.dim());
  std::size_t bad = 0;
  Eigen::VectorXd x(n), y(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x[j] = -neg[j] + u(rng) * (neg[j] + pos[j]);
      y[j] = -neg[j] + u(rng) * (neg[j] + pos[j]);
    }
    const double mid = f((x + y) / 2);
    if (mid * mid < f(x) * f(y) - 1e-12) ++bad;
  }
  return bad;
}

IntegralResult integrate(const LogConcaveSpec& f, const std::optional<CoordSet>& domain, const QuadratureSpec& q,
                         double power) {
  if (!(power > 0)) fail(ErrorCode::kInvalidArgument, "power must be positive");
  if (domain && domain->ambient() != f.dim()) fail(ErrorCode::kInvalidArgument, "domain has wrong dimension");
  const LogConcaveSpec g = on_domain(f, domain);
  const auto d = static_cast<double>(g.dim());

  IntegralResult out = closed_form(g, power);

  Box box;
  if (q.truncation_radius) {
    box.neg = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.dim()), *q.truncation_radius);
    box.pos = box.neg;
    out.tail_bound = std::numeric_limits<double>::quiet_NaN();
  } else if (g.kind() == FunctionKind::kGaussian) {
    box = gaussian_box(power * g.matrix(), q.gaussian_radius);
    // Outside the ball of radius R the exponent exceeds R^2 lambda_min.
    out.tail_bound = boost::math::gamma_q(d / 2, q.gaussian_radius * q.gaussian_radius);
  } else {
    // For a gauge, the mass of exp(-||x||) beyond ||x|| = T is the Gamma(d)
    // upper tail at T.
    const double level = boost::math::gamma_q_inv(d, q.tail_fraction);
    box = level_box(g, level / power);
    out.tail_bound = q.tail_fraction;
  }
  const auto [value, evals] = quadrature([&](const Eigen::VectorXd& x) { return std::exp(-power * g.potential(x)); },
                                         box, q);
  out.value = value;
  out.evaluations = evals;
  return out;
}

InequalityReport check_dual_functional(const LogConcaveSpec& f, const WeightedCover& wc, const QuadratureSpec& q,
                                       double tol) {
  if (!verify_weighted(wc)) fail(ErrorCode::kWeightsInvalid, "weights do not form a uniform cover");
  if (wc.n != f.dim()) fail(ErrorCode::kInvalidArgument, "cover and function have different dimensions");
  const auto n = static_cast<double>(f.dim());
  InequalityReport r;
  r.name = "dual-functional";
  r.product_side = ProductSide::kRhs;
  r.constant_f = 1;
  auto integral = [&](const std::optional<CoordSet>& dom, double power) {
    if (q.use_closed_forms) return *closed_form(on_domain(f, dom), power).closed_form;
    return integrate(f, dom, q, power).value;
  };
  const double full = integral(std::nullopt, n);
  const double log_lhs = n * std::log(n) + std::log(full);
  double log_rhs = 0;
  for (std::size_t i = 0; i < wc.parts.size(); ++i) {
    const double v = integral(wc.parts[i], 1.0);
    const Rational e = wc.weights[i] / wc.s;
    Factor fac;
    fac.label = wc.parts[i].to_string();
    fac.volume_f = v;
    fac.exponent = e;
    r.factors.push_back(fac);
    log_rhs += to_double(e) * std::log(v);
  }
  r.lhs_f = std::exp(log_lhs);
  r.rhs_f = std::exp(log_rhs);
  finish_float_report(r, tol);
  r.slack_f = std::exp(log_lhs - log_rhs);
  r.pass = r.slack_f >= 1 - tol;
  return r;
}

LemmaReport pointwise_lemma_check(const LogConcaveSpec& f, const WeightedCover& wc, std::size_t samples,
                                  std::uint64_t seed, double tol) {
  if (!verify_weighted(wc)) fail(ErrorCode::kWeightsInvalid, "weights do not form a uniform cover");
  if (wc.n != f.dim()) fail(ErrorCode::kInvalidArgument, "cover and function have different dimensions");
  const auto n = static_cast<Eigen::Index>(f.dim());
  Eigen::VectorXd neg, pos;
  f.level_box(2.0, neg, pos);
  std::vector<double> w;
  for (const auto& c : wc.weights) w.push_back(to_double(c / wc.s));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LemmaReport rep;
  rep.worst = -std::numeric_limits<double>::infinity();
  std::vector<Eigen::VectorXd> xs(wc.parts.size(), Eigen::VectorXd::Zero(n));
  for (std::size_t s = 0; s < samples; ++s) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < wc.parts.size(); ++i) {
      xs[i].setZero();
      // The first sample keeps every x_i = 0.
      if (s > 0)
        for (std::size_t j : wc.parts[i].indices()) {
          const auto jj = static_cast<Eigen::Index>(j);
          xs[i][jj] = -neg[jj] + u(rng) * (neg[jj] + pos[jj]);
        }
      z += w[i] * xs[i];
    }
    const double lhs = std::pow(f(z / static_cast<double>(n)), static_cast<double>(n));
    double rhs = 1;
    for (std::size_t i = 0; i < wc.parts.size(); ++i) {
      rhs *= std::pow(f(xs[i]), w[i]);
      const double d = static_cast<double>(wc.parts[i].size());
      if (f(xs[i] / d) < std::pow(f(xs[i]), 1 / d) - tol) ++rep.step_violations;
    }
    rep.worst = std::max(rep.worst, rhs - lhs);
    if (lhs < rhs - tol) ++rep.violations;
    ++rep.samples;
  }
  rep.pass = rep.violations == 0 && rep.step_violations == 0;
  return rep;
}

GaussianBLReport gaussian_bl_extremal_check(const WeightedCover& wc, const QuadratureSpec& q, double tol,
                                            std::size_t identity_samples) {
  if (!verify_weighted(wc)) fail(ErrorCode::kWeightsInvalid, "weights do not form a uniform cover");
  const auto n = static_cast<Eigen::Index>(wc.n);
  std::vector<double> w;
  for (const auto& c : wc.weights) w.push_back(to_double(c / wc.s));

  // sum_i w_i |P_i x|^2, evaluated part by part.
  auto weighted_norm = [&](const Eigen::VectorXd& x) {
    double acc = 0;
    for (std::size_t i = 0; i < wc.parts.size(); ++i) {
      double sq = 0;
      for (std::size_t j : wc.parts[i].indices()) sq += x[static_cast<Eigen::Index>(j)] * x[static_cast<Eigen::Index>(j)];
      acc += w[i] * sq;
    }
    return acc;
  };

  GaussianBLReport rep;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  for (std::size_t s = 0; s < identity_samples; ++s) {
    Eigen::VectorXd x(n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = normal(rng);
    rep.identity_error = std::max(rep.identity_error, std::abs(weighted_norm(x) - x.squaredNorm()) / x.squaredNorm());
  }

  // Box from the diagonal quadratic form pi * sum_i w_i P_i.
  Eigen::MatrixXd form = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < wc.parts.size(); ++i)
    for (std::size_t j : wc.parts[i].indices()) form(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += kPi * w[i];
  const Box box = gaussian_box(form, q.gaussian_radius);

  // Direct side: integrand prod_i f_i(P_i x)^{w_i}.
  rep.direct_lhs = quadrature([&](const Eigen::VectorXd& x) { return std::exp(-kPi * weighted_norm(x)); }, box, q).first;
  const auto std_gauss = LogConcaveSpec::gaussian(kPi * Eigen::MatrixXd::Identity(n, n));
  double log_rhs = 0;
  for (std::size_t i = 0; i < wc.parts.size(); ++i)
    log_rhs += w[i] * std::log(integrate(std_gauss, wc.parts[i], q).value);
  rep.direct_rhs = std::exp(log_rhs);

  // Reverse side: the decomposition x_i = P_i x is feasible since
  // sum w_i P_i x = x, so prod f_i(x_i)^{w_i} bounds the sup from below.
  rep.reverse_lower = quadrature(
                          [&](const Eigen::VectorXd& x) {
                            double log_val = 0;
                            for (std::size_t i = 0; i < wc.parts.size(); ++i) {
                              Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
                              for (std::size_t j : wc.parts[i].indices()) xi[static_cast<Eigen::Index>(j)] = x[static_cast<Eigen::Index>(j)];
                              log_val += w[i] * -kPi * xi.squaredNorm();
                            }
                            return std::exp(log_val);
                          },
                          box, q)
                          .first;
  rep.reverse_rhs = rep.direct_rhs;

  const bool direct_ok = std::abs(rep.direct_lhs / rep.direct_rhs - 1) <= tol;
  const bool reverse_ok = rep.reverse_lower >= rep.reverse_rhs * (1 - tol);
  rep.verdict = direct_ok && reverse_ok && rep.identity_error <= 1e-12 ? "confirmed" : "inconclusive";
  return rep;
}

}  // namespace covercert
