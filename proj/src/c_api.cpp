#include "covercert/covercert.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "covercert/errors.hpp"
#include "covercert/io.hpp"

using namespace covercert;
using covercert::io::json;

struct cc_polytope {
  Polytope p;
};
struct cc_cover {
  WeightedCover wc;
};
struct cc_system {
  UnitVectorSystem sys;
};
struct cc_function {
  LogConcaveSpec f;
};

namespace {

thread_local std::string last_error;

template <class F>
int guard(F&& body) {
  try {
    last_error.clear();
    body();
    return CC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return CC_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  need(out, "output pointer");
  *out = dup(j.dump());
}

void set_flag(int* flag, bool v) {
  if (flag) *flag = v ? 1 : 0;
}

std::size_t budget_or_env(std::uint64_t budget) {
  return budget ? static_cast<std::size_t>(budget) : budget_from_env(EnumerationLimits{}.budget);
}

QuadratureSpec quadrature(const cc_quadrature* q) {
  QuadratureSpec s;
  if (!q) return s;
  s.scheme = q->scheme == CC_QUASI_RANDOM ? QuadratureScheme::kQuasiRandom : QuadratureScheme::kTensorGrid;
  s.points_per_axis = q->points_per_axis;
  s.total_points = q->total_points;
  s.tail_fraction = q->tail_fraction;
  s.gaussian_radius = q->gaussian_radius;
  if (q->truncation_radius > 0) s.truncation_radius = q->truncation_radius;
  s.max_points = q->max_points;
  s.jobs = q->jobs ? q->jobs : 1;
  s.use_closed_forms = q->use_closed_forms != 0;
  if (s.points_per_axis < 2 || s.total_points == 0 || !(s.tail_fraction > 0 && s.tail_fraction < 1) ||
      !(s.gaussian_radius > 0))
    fail(ErrorCode::kInvalidArgument, "invalid quadrature settings");
  return s;
}

Cover unweighted(const WeightedCover& wc) {
  for (const auto& w : wc.weights)
    if (w != 1) fail(ErrorCode::kInvalidArgument, "this check takes an unweighted cover");
  return Cover(wc.n, wc.parts);
}

InequalityReport run_check(const std::string& kind, const Polytope& k, const cc_cover* c) {
  if (kind == "lw") return check_lw(k);
  if (kind == "meyer") return check_meyer(k);
  need(c, "cover");
  if (kind == "bt") return check_bt(k, unweighted(c->wc));
  if (kind == "dual-bt") return check_dual_bt(k, unweighted(c->wc));
  if (kind == "weighted") return check_weighted_bt(k, c->wc);
  if (kind == "weighted-dual") return check_weighted_dual_bt(k, c->wc);
  fail(ErrorCode::kInvalidArgument, "unknown check kind '" + kind + "'");
}

}  // namespace

extern "C" {

const char* cc_version(void) { return "0.1.0"; }

const char* cc_last_error(void) { return last_error.c_str(); }

const char* cc_status_name(int status) {
  if (status == CC_OK) return "Ok";
  if (status == CC_ERR_INTERNAL) return "Internal";
  if (status < 1 || status > CC_ERR_INVALID_ARGUMENT) return "Unknown";
  return error_name(static_cast<ErrorCode>(status));
}

void cc_string_free(char* s) { std::free(s); }

int cc_polytope_from_json(const char* text, cc_polytope** out) {
  return guard([&] {
    need(text, "json");
    need(out, "output pointer");
    *out = new cc_polytope{io::polytope_from_json(io::parse(text))};
  });
}

void cc_polytope_free(cc_polytope* p) { delete p; }

int cc_polytope_dim(const cc_polytope* p, size_t* dim) {
  return guard([&] {
    need(p, "polytope");
    need(dim, "output pointer");
    *dim = p->p.dim();
  });
}

int cc_polytope_to_json(const cc_polytope* p, char** out) {
  return guard([&] {
    need(p, "polytope");
    emit(io::to_json(p->p), out);
  });
}

int cc_polytope_volume(const cc_polytope* p, char** exact, double* approx) {
  return guard([&] {
    need(p, "polytope");
    need(exact, "output pointer");
    const Rational v = volume(p->p);
    if (approx) *approx = to_double(v);
    *exact = dup(to_string(v));
  });
}

int cc_cover_parse(const char* text, size_t n, cc_cover** out) {
  return guard([&] {
    need(text, "cover text");
    need(out, "output pointer");
    *out = new cc_cover{unit_weights(Cover::parse(text, n))};
  });
}

int cc_cover_from_json(const char* text, size_t n, cc_cover** out) {
  return guard([&] {
    need(text, "json");
    need(out, "output pointer");
    *out = new cc_cover{io::weighted_cover_from_json(io::parse(text), n)};
  });
}

int cc_cover_solve_weights(const char* text, size_t n, const char* s, cc_cover** out) {
  return guard([&] {
    need(text, "cover text");
    need(s, "s");
    need(out, "output pointer");
    const auto cover = Cover::parse(text, n);
    const Rational target = parse_rational(s);
    auto w = solve_weights(cover.parts(), target);
    if (!w) fail(ErrorCode::kInfeasible, "no positive weights make the parts a " + to_string(target) + "-uniform cover");
    *out = new cc_cover{{cover.ambient(), cover.parts(), std::move(*w), target}};
  });
}

void cc_cover_free(cc_cover* c) { delete c; }

int cc_cover_to_json(const cc_cover* c, char** out) {
  return guard([&] {
    need(c, "cover");
    emit(io::to_json(c->wc), out);
  });
}

int cc_covers_enumerate(size_t n, size_t s, size_t max_parts, int irreducible_only, uint64_t budget, char** out) {
  return guard([&] {
    if (n == 0 || s == 0) fail(ErrorCode::kInvalidArgument, "n and s must be positive");
    if (n > kMaxAmbientDim) fail(ErrorCode::kDimensionTooLarge, "n exceeds the coordinate-set limit");
    const EnumerationLimits limits{max_parts, budget_or_env(budget)};
    json covers = json::array();
    for_each_uniform_cover(n, s, limits, [&](const Cover& c) {
      const bool irr = is_irreducible(c);
      if (irreducible_only && !irr) return;
      covers.push_back({{"cover", c.to_string()}, {"parts", io::parts_to_json(c.parts())}, {"irreducible", irr}});
    });
    emit({{"n", n}, {"s", s}, {"max_parts", max_parts}, {"count", covers.size()}, {"covers", std::move(covers)}}, out);
  });
}

int cc_check(const char* kind, const cc_polytope* k, const cc_cover* c, char** report, int* pass) {
  return guard([&] {
    need(kind, "kind");
    need(k, "polytope");
    const auto r = run_check(kind, k->p, c);
    emit(io::to_json(r), report);
    set_flag(pass, r.pass);
  });
}

int cc_check_all_covers(const char* kind, const cc_polytope* k, size_t s, size_t max_parts, uint64_t budget,
                        size_t jobs, char** out, int* pass) {
  return guard([&] {
    need(kind, "kind");
    need(k, "polytope");
    const std::string kd = kind;
    if (kd != "bt" && kd != "dual-bt") fail(ErrorCode::kInvalidArgument, "--all-covers supports bt and dual-bt");
    const std::size_t n = k->p.dim();
    const auto covers = enumerate_uniform_covers(n, s, {max_parts, budget_or_env(budget)});
    const auto reports = kd == "bt" ? check_bt_batch(k->p, covers, jobs ? jobs : 1)
                                    : check_dual_bt_batch(k->p, covers, jobs ? jobs : 1);
    json rows = json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      auto r = io::to_json(reports[i]);
      r["cover"] = covers[i].to_string();
      if (!reports[i].pass) ++failures;
      rows.push_back(std::move(r));
    }
    emit({{"kind", kd}, {"n", n}, {"s", s}, {"count", covers.size()}, {"failures", failures}, {"reports", std::move(rows)}},
         out);
    set_flag(pass, failures == 0);
  });
}

int cc_certify(const cc_polytope* k, double tol, char** out, int* verified) {
  return guard([&] {
    need(k, "polytope");
    const auto cert = certify(k->p, {tol});
    const auto check = verify_certificate(k->p, cert, tol);
    emit(io::to_json(cert, check), out);
    set_flag(verified, check.pass);
  });
}

void cc_quadrature_default(cc_quadrature* q) {
  if (!q) return;
  const QuadratureSpec s;
  q->scheme = CC_TENSOR_GRID;
  q->points_per_axis = s.points_per_axis;
  q->total_points = s.total_points;
  q->tail_fraction = s.tail_fraction;
  q->gaussian_radius = s.gaussian_radius;
  q->truncation_radius = 0;
  q->max_points = s.max_points;
  q->jobs = s.jobs;
  q->use_closed_forms = s.use_closed_forms ? 1 : 0;
}

int cc_function_from_json(const char* text, cc_function** out) {
  return guard([&] {
    need(text, "json");
    need(out, "output pointer");
    *out = new cc_function{io::function_from_json(io::parse(text))};
  });
}

void cc_function_free(cc_function* f) { delete f; }

int cc_integrate(const cc_function* f, const char* domain, const cc_quadrature* q, double power, char** out) {
  return guard([&] {
    need(f, "function");
    std::optional<CoordSet> d;
    if (domain && *domain) d = CoordSet::parse(f->f.dim(), domain);
    emit(io::to_json(integrate(f->f, d, quadrature(q), power)), out);
  });
}

int cc_check_functional(const cc_function* f, const cc_cover* c, const cc_quadrature* q, double tol, char** report,
                        int* pass) {
  return guard([&] {
    need(f, "function");
    need(c, "cover");
    const auto r = check_dual_functional(f->f, c->wc, quadrature(q), tol);
    emit(io::to_json(r), report);
    set_flag(pass, r.pass);
  });
}

int cc_lemma_check(const cc_function* f, const cc_cover* c, size_t samples, uint64_t seed, double tol, char** out,
                   int* pass) {
  return guard([&] {
    need(f, "function");
    need(c, "cover");
    const auto r = pointwise_lemma_check(f->f, c->wc, samples, seed, tol);
    emit(io::to_json(r), out);
    set_flag(pass, r.pass);
  });
}

int cc_gaussian_bl(const cc_cover* c, const cc_quadrature* q, double tol, char** out, int* pass) {
  return guard([&] {
    need(c, "cover");
    const auto r = gaussian_bl_extremal_check(c->wc, quadrature(q), tol);
    emit(io::to_json(r), out);
    set_flag(pass, r.verdict == "confirmed");
  });
}

int cc_system_from_json(const char* text, cc_system** out) {
  return guard([&] {
    need(text, "json");
    need(out, "output pointer");
    *out = new cc_system{io::system_from_json(io::parse(text))};
  });
}

void cc_system_free(cc_system* s) { delete s; }

int cc_john_check(const cc_system* s, double tol, char** out, int* isotropic) {
  return guard([&] {
    need(s, "system");
    const auto r = john_check(s->sys, tol);
    emit(io::to_json(r), out);
    set_flag(isotropic, r.isotropic);
  });
}

int cc_hyperplane_cover(const cc_system* s, double tol, char** out) {
  return guard([&] {
    need(s, "system");
    emit(io::to_json(cover_from_john(s->sys, tol)), out);
  });
}

int cc_check_ball(const char* kind, const cc_polytope* k, const cc_system* s, double tol, char** report, int* pass) {
  return guard([&] {
    need(kind, "kind");
    need(k, "polytope");
    need(s, "system");
    const std::string kd = kind;
    BallOptions opt;
    opt.tol = tol;
    json j;
    bool ok = false;
    if (kd == "ball") {
      const auto r = check_ball(k->p, s->sys, opt);
      j = io::to_json(r);
      ok = r.pass;
    } else if (kd == "dual-ball") {
      const auto r = check_dual_ball(k->p, s->sys, opt);
      j = io::to_json(r);
      ok = r.pass;
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown check kind '" + kd + "'");
    }
    emit(j, report);
    set_flag(pass, ok);
  });
}

int cc_sphere_measure(const char* density, size_t n, double eps, double kappa, int renormalize, char** out) {
  return guard([&] {
    need(density, "density");
    auto m = discretize_sphere_measure(named_density(density, n, kappa), n, eps);
    if (renormalize) m = renormalize_to_isotropic(m);
    emit(io::to_json(m), out);
  });
}

}  // extern "C"
