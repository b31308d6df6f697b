#include "covercert/inequality.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "covercert/errors.hpp"

namespace covercert {

namespace {

struct Term {
  const Rational* base;
  const Rational* exponent;
};

const Rational& one() {
  static const Rational value = 1;
  return value;
}

// k! and 1/k! for k <= kMaxAmbientDim.
const Rational& factorial_q(std::size_t k, bool inverse) {
  static const auto table = [] {
    std::vector<std::pair<Rational, Rational>> t;
    for (std::size_t i = 0; i <= kMaxAmbientDim; ++i) {
      Rational f(factorial(i));
      t.emplace_back(f, 1 / f);
    }
    return t;
  }();
  return inverse ? table[k].second : table[k].first;
}

unsigned long exponent_denominator(const std::vector<Term>& a, const std::vector<Term>& b) {
  Integer d = 1;
  for (const auto* side : {&a, &b})
    for (const auto& t : *side)
      if (t.exponent->get_den() != 1) d = lcm(d, Integer(t.exponent->get_den()));
  if (d > kMaxExponentDenominator)
    fail(ErrorCode::kBudgetExceeded, "exponent denominators too large to clear exactly");
  return d.get_ui();
}

Rational powered(const std::vector<Term>& side, unsigned long d) {
  Rational out = 1;
  for (const auto& t : side) {
    if (d == 1) {
      const unsigned long e = t.exponent->get_num().get_ui();
      out *= e == 1 ? *t.base : pow(*t.base, e);
      continue;
    }
    const Rational e = *t.exponent * d;
    out *= pow(*t.base, e.get_num().get_ui());
  }
  return out;
}

double log_value(const std::vector<Term>& side, bool& zero) {
  double acc = 0;
  zero = false;
  for (const auto& t : side) {
    if (sgn(*t.base) == 0) {
      zero = true;
      continue;
    }
    acc += to_double(*t.exponent) * log_rational(*t.base);
  }
  return acc;
}

// Compares lhs = prod(lhs_terms) and rhs = prod(rhs_terms) exactly.
void compare(InequalityReport& r, const std::vector<Term>& lhs, const std::vector<Term>& rhs) {
  r.exact = true;
  r.power = exponent_denominator(lhs, rhs);
  r.lhs_powered = powered(lhs, r.power);
  r.rhs_powered = powered(rhs, r.power);
  r.pass = *r.lhs_powered >= *r.rhs_powered;
  if (r.power == 1) {
    r.lhs = r.lhs_powered;
    r.rhs = r.rhs_powered;
    if (sgn(*r.rhs) != 0) r.slack = *r.lhs / *r.rhs;
  }
  if (r.power == 1) {
    r.lhs_f = to_double(*r.lhs);
    r.rhs_f = to_double(*r.rhs);
    if (std::isfinite(r.lhs_f) && std::isfinite(r.rhs_f) && r.lhs_f > 0 && r.rhs_f > 0) {
      r.slack_f = to_double(*r.slack);
      return;
    }
  }
  if (r.power > 1 && sgn(*r.lhs_powered) > 0 && sgn(*r.rhs_powered) > 0) {
    const double inv = 1.0 / static_cast<double>(r.power);
    auto root = [&](const Rational& q) { return r.power == 2 ? std::sqrt(to_double(q)) : std::pow(to_double(q), inv); };
    r.lhs_f = root(*r.lhs_powered);
    r.rhs_f = root(*r.rhs_powered);
    r.slack_f = root(*r.lhs_powered / *r.rhs_powered);
    if (std::isfinite(r.lhs_f) && std::isfinite(r.rhs_f) && r.lhs_f > 0 && r.rhs_f > 0 && std::isfinite(r.slack_f) &&
        r.slack_f > 0)
      return;
  }
  bool lhs_zero = false, rhs_zero = false;
  const double ll = log_value(lhs, lhs_zero);
  const double lr = log_value(rhs, rhs_zero);
  r.lhs_f = lhs_zero ? 0.0 : std::exp(ll);
  r.rhs_f = rhs_zero ? 0.0 : std::exp(lr);
  if (rhs_zero)
    r.slack_f = lhs_zero ? std::numeric_limits<double>::quiet_NaN() : std::numeric_limits<double>::infinity();
  else if (lhs_zero)
    r.slack_f = 0.0;
  else
    r.slack_f = r.slack ? to_double(*r.slack) : std::exp(ll - lr);
}

std::vector<Term> constant_terms(const std::vector<Term>& all, std::size_t count) {
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count)};
}

void set_constant(InequalityReport& r, const std::vector<Term>& constants) {
  bool integral = true;
  for (const auto& t : constants)
    if (t.exponent->get_den() != 1) integral = false;
  if (integral) {
    r.constant = powered(constants, 1);
    r.constant_f = to_double(*r.constant);
  } else {
    bool zero = false;
    r.constant_f = std::exp(log_value(constants, zero));
  }
}

void require_ambient(const Polytope& k, std::size_t n) {
  if (k.dim() != n) fail(ErrorCode::kInvalidArgument, "cover and body have different dimensions");
  if (!k.full_dimensional()) fail(ErrorCode::kFullDimRequired, "body must be full-dimensional");
}

std::size_t require_uniform(const Cover& c) {
  const auto s = uniformity(c);
  if (!s) fail(ErrorCode::kNotUniform, "cover " + c.to_string() + " is not uniform");
  return *s;
}

void require_zero_interior(const Polytope& k) {
  if (!has_zero_interior(k)) fail(ErrorCode::kZeroNotInterior, "origin is not an interior point of K");
}

Factor make_factor(const CoordSet& sigma, const Rational& vol, const Rational& exponent) {
  Factor f;
  f.label = sigma.to_string();
  f.volume = vol;
  f.volume_f = to_double(vol);
  f.exponent = exponent;
  return f;
}

// Shared body of the four Bollobás–Thomason variants.
// primal: prod |P K|^{c_i} >= |K|^s.
// dual:   |K|^s >= (n!)^{-s} prod (d_i!)^{c_i} prod |K ∩ F|^{c_i}.
// Null weights mean all ones.
InequalityReport bt_core(std::string name, VolumeTable& t, const std::vector<CoordSet>& parts,
                         const QVector* weights, const Rational& s, bool dual) {
  auto weight = [&](std::size_t i) -> const Rational& { return weights ? (*weights)[i] : one(); };
  const std::size_t n = t.body().dim();
  InequalityReport r;
  r.name = std::move(name);
  r.product_side = dual ? ProductSide::kRhs : ProductSide::kLhs;

  std::vector<Term> product;
  product.reserve(2 * parts.size() + 1);
  if (dual) {
    product.push_back({&factorial_q(n, true), &s});
    for (std::size_t i = 0; i < parts.size(); ++i) product.push_back({&factorial_q(parts[i].size(), false), &weight(i)});
  }
  const std::size_t n_constants = product.size();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Rational& v = dual ? t.section(parts[i]) : t.projection(parts[i]);
    if (sgn(v) == 0) r.degenerate = true;
    product.push_back({&v, &weight(i)});
    r.factors.push_back(make_factor(parts[i], v, weight(i)));
  }
  set_constant(r, constant_terms(product, n_constants));
  const std::vector<Term> power_side{{&t.volume(), &s}};
  if (dual)
    compare(r, power_side, product);
  else
    compare(r, product, power_side);
  return r;
}

WeightedCover checked(const WeightedCover& wc) {
  if (!verify_weighted(wc)) fail(ErrorCode::kWeightsInvalid, "weights do not form a uniform cover");
  return wc;
}

}  // namespace

VolumeTable::VolumeTable(const Polytope& k)
    : k_(k),
      volume_(covercert::volume(k)),
      zero_interior_(has_zero_interior(k)),
      sections_(std::size_t{1} << k.dim()),
      projections_(std::size_t{1} << k.dim()) {}

const Rational& VolumeTable::section(const CoordSet& sigma) {
  if (sigma.is_full()) return volume_;
  auto& slot = sections_[sigma.mask()];
  if (!slot) slot = section_volume(k_, sigma);
  return *slot;
}

const Rational& VolumeTable::projection(const CoordSet& sigma) {
  if (sigma.is_full()) return volume_;
  auto& slot = projections_[sigma.mask()];
  if (!slot) slot = covercert::volume(coordinate_projection(k_, sigma));
  return *slot;
}

void VolumeTable::fill_all() {
  for (const auto& sigma : all_coord_sets(k_.dim())) {
    section(sigma);
    projection(sigma);
  }
}

InequalityReport check_bt(VolumeTable& t, const Cover& c) {
  require_ambient(t.body(), c.ambient());
  const std::size_t s = require_uniform(c);
  return bt_core("bollobas-thomason", t, c.parts(), nullptr, Rational(s), false);
}

InequalityReport check_bt(const Polytope& k, const Cover& c) {
  require_ambient(k, c.ambient());
  VolumeTable t(k);
  return check_bt(t, c);
}

InequalityReport check_dual_bt(VolumeTable& t, const Cover& c) {
  require_ambient(t.body(), c.ambient());
  const std::size_t s = require_uniform(c);
  if (!t.zero_interior()) fail(ErrorCode::kZeroNotInterior, "origin is not an interior point of K");
  return bt_core("dual-bollobas-thomason", t, c.parts(), nullptr, Rational(s), true);
}

InequalityReport check_dual_bt(const Polytope& k, const Cover& c) {
  require_ambient(k, c.ambient());
  require_uniform(c);
  require_zero_interior(k);
  VolumeTable t(k);
  return check_dual_bt(t, c);
}

InequalityReport check_weighted_bt(const Polytope& k, const WeightedCover& wc) {
  const auto w = checked(wc);
  require_ambient(k, w.n);
  VolumeTable t(k);
  return bt_core("weighted-bollobas-thomason", t, w.parts, &w.weights, w.s, false);
}

InequalityReport check_weighted_dual_bt(const Polytope& k, const WeightedCover& wc) {
  const auto w = checked(wc);
  require_ambient(k, w.n);
  require_zero_interior(k);
  VolumeTable t(k);
  return bt_core("weighted-dual-bollobas-thomason", t, w.parts, &w.weights, w.s, true);
}

InequalityReport check_lw(const Polytope& k) {
  auto r = check_bt(k, complement_cover(k.dim()));
  r.name = "loomis-whitney";
  return r;
}

InequalityReport check_meyer(const Polytope& k) {
  auto r = check_dual_bt(k, complement_cover(k.dim()));
  r.name = "meyer";
  return r;
}

Rational meyer_constant(std::size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "n must be positive");
  Integer nn;
  mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
  Rational out(factorial(n), nn);
  out.canonicalize();
  return out;
}

MeyerIdentity meyer_identity(std::size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "n must be positive");
  MeyerIdentity id;
  const Rational nf(factorial(n));
  const Rational mf(factorial(n - 1));
  id.product_form = 1 / pow(nf, n - 1);
  for (std::size_t i = 0; i < n; ++i) id.product_form *= mf;
  id.factorial_form = pow(mf, n) / pow(nf, n - 1);
  id.closed_form = meyer_constant(n);
  id.holds = id.product_form == id.factorial_form && id.factorial_form == id.closed_form;
  return id;
}

namespace {

template <class Check>
std::vector<InequalityReport> batch(const Polytope& k, const std::vector<Cover>& covers, std::size_t jobs,
                                    Check check) {
  VolumeTable t(k);
  t.fill_all();
  std::vector<InequalityReport> out(covers.size());
  jobs = std::max<std::size_t>(1, std::min(jobs, covers.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < covers.size(); ++i) out[i] = check(t, covers[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        // The table is fully populated, so lookups below are read-only.
        for (std::size_t i = w; i < covers.size(); i += jobs) out[i] = check(t, covers[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

std::vector<InequalityReport> check_dual_bt_batch(const Polytope& k, const std::vector<Cover>& covers,
                                                  std::size_t jobs) {
  return batch(k, covers, jobs, [](VolumeTable& t, const Cover& c) { return check_dual_bt(t, c); });
}

std::vector<InequalityReport> check_bt_batch(const Polytope& k, const std::vector<Cover>& covers,
                                             std::size_t jobs) {
  return batch(k, covers, jobs, [](VolumeTable& t, const Cover& c) { return check_bt(t, c); });
}

void finish_float_report(InequalityReport& r, double tol) {
  r.exact = false;
  r.tolerance = tol;
  r.lhs.reset();
  r.rhs.reset();
  r.slack.reset();
  r.lhs_powered.reset();
  r.rhs_powered.reset();
  r.power = 1;
  if (r.rhs_f == 0) {
    r.degenerate = true;
    r.slack_f = std::numeric_limits<double>::infinity();
    r.pass = true;
    return;
  }
  r.slack_f = r.lhs_f / r.rhs_f;
  r.pass = r.slack_f >= 1 - tol;
}

}  // namespace covercert
