#include "covercert/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "covercert/errors.hpp"
#include "covercert/inequality.hpp"
#include "covercert/lp.hpp"

namespace covercert {

namespace {

struct SubsetRow {
  CoordSet sigma;
  Rational bound;  // log(|sigma|! |K ∩ F_sigma|), rationalized
  std::optional<Rational> fixed_slack;
};

Rational log_q(const Rational& v) { return Rational(log_rational(v)); }

QVector indicator(const CoordSet& sigma, std::size_t vars) {
  QVector row(vars, Rational(0));
  for (std::size_t j : sigma.indices()) row[j] = 1;
  return row;
}

// Constraints shared by every stage: sum x = total; fixed rows at their
// slack; free rows at slack >= r (r is variable n when `r_var`, else the
// constant `r_value`).
lp::Problem<Rational> stage_problem(std::size_t n, const Rational& total, const std::vector<SubsetRow>& rows,
                                    bool r_var, const Rational& r_value) {
  const std::size_t vars = n + (r_var ? 1 : 0);
  lp::Problem<Rational> p(vars);
  for (std::size_t j = 0; j < vars; ++j) p.free[j] = true;
  QVector sum(vars, Rational(0));
  for (std::size_t j = 0; j < n; ++j) sum[j] = 1;
  p.add(std::move(sum), lp::Sense::kEqual, total);
  for (const auto& row : rows) {
    auto coeffs = indicator(row.sigma, vars);
    if (row.fixed_slack) {
      p.add(std::move(coeffs), lp::Sense::kEqual, row.bound + *row.fixed_slack);
    } else if (r_var) {
      coeffs[n] = -1;
      p.add(std::move(coeffs), lp::Sense::kGreaterEq, row.bound);
    } else {
      p.add(std::move(coeffs), lp::Sense::kGreaterEq, row.bound + r_value);
    }
  }
  return p;
}

bool determined(std::size_t n, const std::vector<SubsetRow>& rows) {
  QMatrix m{QVector(n, Rational(1))};
  for (const auto& row : rows)
    if (row.fixed_slack) m.push_back(indicator(row.sigma, n));
  return rank(m) == n;
}

Rational row_sum(const QVector& x, const CoordSet& sigma) {
  Rational s = 0;
  for (std::size_t j : sigma.indices()) s += x[j];
  return s;
}

}  // namespace

CrossPolytopeCertificate certify(const Polytope& k, const CertifyOptions& opt) {
  if (!k.full_dimensional()) fail(ErrorCode::kFullDimRequired, "body must be full-dimensional");
  if (!has_zero_interior(k)) fail(ErrorCode::kZeroNotInterior, "origin is not an interior point of K");
  const std::size_t n = k.dim();
  if (n > 10) fail(ErrorCode::kDimensionTooLarge, "certify supports n <= 10");

  VolumeTable table(k);
  const Rational total = log_q(Rational(factorial(n)) * table.volume());
  std::vector<SubsetRow> rows;
  for (const auto& sigma : all_coord_sets(n)) {
    if (sigma.is_full()) continue;
    const Rational& v = table.section(sigma);
    if (sgn(v) <= 0) fail(ErrorCode::kZeroNotInterior, "section " + sigma.to_string() + " has zero volume");
    rows.push_back({sigma, log_q(Rational(factorial(sigma.size())) * v), std::nullopt});
  }

  QVector x(n, Rational(0));
  std::optional<Rational> margin;
  if (n == 1) {
    x[0] = total;
    margin = 0;
  }
  // Lexicographic max-min: raise the smallest slack, freeze the rows that
  // cannot rise further, repeat until x is pinned down.
  while (n > 1) {
    auto p = stage_problem(n, total, rows, true, 0);
    p.objective[n] = 1;
    const auto sol = lp::maximize(p);
    if (sol.status != lp::Status::kOptimal) fail(ErrorCode::kInfeasible, "certificate LP has no optimum");
    const Rational r = sol.objective;
    x.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    if (!margin) {
      margin = r;
      if (to_double(r) < -10 * opt.tol)
        fail(ErrorCode::kInfeasible, "section constraints violated beyond round-off (margin " +
                                         std::to_string(to_double(r)) + "); this indicates a bug");
    }
    bool any_free = false;
    std::size_t frozen = 0;
    for (auto& row : rows) {
      if (row.fixed_slack) continue;
      if (row_sum(x, row.sigma) - row.bound != r) {
        any_free = true;
        continue;
      }
      auto q = stage_problem(n, total, rows, false, r);
      q.objective = indicator(row.sigma, n);
      const auto best = lp::maximize(q);
      if (best.status == lp::Status::kOptimal && best.objective - row.bound == r) {
        row.fixed_slack = r;
        ++frozen;
      } else {
        any_free = true;
      }
    }
    if (frozen == 0) {
      for (auto& row : rows)
        if (!row.fixed_slack && row_sum(x, row.sigma) - row.bound == r) row.fixed_slack = r;
    }
    if (!any_free || determined(n, rows)) break;
  }

  CrossPolytopeCertificate cert;
  cert.n = n;
  cert.target_volume = table.volume();
  cert.log_margin = to_double(*margin);
  for (std::size_t i = 0; i < n; ++i) {
    cert.t.push_back(std::exp(to_double(x[i])));
    cert.lambdas.push_back(cert.t.back() / 2);
  }
  const auto check = verify_certificate(k, cert.lambdas, opt.tol);
  cert.section_slacks = check.section_slacks;
  cert.volume_residual = check.volume_residual;
  cert.min_slack = check.min_slack;
  return cert;
}

CertificateCheck verify_certificate(const Polytope& k, const std::vector<double>& lambdas, double tol) {
  CertificateCheck out;
  const std::size_t n = k.dim();
  if (lambdas.size() != n || !k.full_dimensional()) return out;
  for (double l : lambdas)
    if (!(l > 0) || !std::isfinite(l)) return out;
  out.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& sigma : all_coord_sets(n)) {
    const Rational kv = sigma.is_full() ? volume(k) : section_volume(k, sigma);
    double log_c = -std::lgamma(static_cast<double>(sigma.size()) + 1);
    for (std::size_t j : sigma.indices()) log_c += std::log(2 * lambdas[j]);
    const double slack = sgn(kv) > 0 ? std::expm1(log_c - log_rational(kv)) : std::numeric_limits<double>::infinity();
    out.section_slacks[sigma.to_string()] = slack;
    if (sigma.is_full())
      out.volume_residual = std::abs(slack);
    else
      out.min_slack = std::min(out.min_slack, slack);
  }
  if (n == 1) out.min_slack = 0;
  out.pass = out.volume_residual <= tol && out.min_slack >= -tol;
  return out;
}

CertificateBox box_form(const CrossPolytopeCertificate& cert) {
  CertificateBox b;
  b.sides = cert.t;
  b.volume = 1;
  for (double t : b.sides) b.volume *= t;
  for (const auto& sigma : all_coord_sets(cert.n)) {
    double v = 1;
    for (std::size_t j : sigma.indices()) v *= b.sides[j];
    b.face_volumes[sigma.to_string()] = v;
  }
  return b;
}

}  // namespace covercert
