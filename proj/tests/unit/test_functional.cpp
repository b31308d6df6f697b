#include "doctest.h"

#include <cmath>
#include <random>

#include "covercert/errors.hpp"
#include "covercert/functional.hpp"
#include "support/random_bodies.hpp"

using namespace covercert;
using covercert::testing::random_centered_body;

namespace {

constexpr double kPi = 3.14159265358979323846;

Rational q(const char* s) { return parse_rational(s); }

WeightedCover weighted(const char* text, std::size_t n = 0) { return unit_weights(Cover::parse(text, n)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("every variant is normalized and log-concave") {
  std::mt19937_64 rng(4);
  Eigen::MatrixXd m(2, 2);
  m << 2, 0.5, 0.5, 1;
  const std::vector<LogConcaveSpec> fs{LogConcaveSpec::gaussian(m),
                                       LogConcaveSpec::exp_minkowski(random_centered_body(rng, 2)),
                                       LogConcaveSpec::exp_l1(2, 0.5)};
  for (const auto& f : fs) {
    CHECK(f(Eigen::VectorXd::Zero(2)) == 1.0);
    CHECK(midpoint_violations(f, 2000) == 0);
  }
}

TEST_CASE("integral examples") {
  QuadratureSpec spec;
  const auto seg = integrate(LogConcaveSpec::exp_minkowski(cube(1)), std::nullopt, spec);
  CHECK(*seg.closed_form_exact == 2);
  CHECK(seg.value == doctest::Approx(2.0).epsilon(1e-3));

  const auto b13 = integrate(LogConcaveSpec::exp_minkowski(cross_polytope(3)), std::nullopt, spec);
  CHECK(*b13.closed_form_exact == 8);
  CHECK(std::abs(b13.value / 8 - 1) < 0.01);

  const auto g = integrate(LogConcaveSpec::gaussian(Eigen::MatrixXd::Identity(2, 2)), std::nullopt, spec);
  CHECK(*g.closed_form == doctest::Approx(kPi));
  CHECK(std::abs(g.value / kPi - 1) < 0.005);
}

TEST_CASE("section and power closed forms") {
  const auto f = LogConcaveSpec::exp_minkowski(cross_polytope(3));
  QuadratureSpec spec;
  // ∫_{F} e^{-||x||} = d! |K ∩ F| = 2^d.
  const auto sec = integrate(f, CoordSet(3, {0, 2}), spec);
  CHECK(*sec.closed_form_exact == 4);
  CHECK(sec.value == doctest::Approx(4.0).epsilon(0.01));
  // ∫ e^{-3||x||} = 3! |K| / 27.
  const auto pw = integrate(f, std::nullopt, spec, 3.0);
  CHECK(*pw.closed_form_exact == q("8/27"));
  CHECK(pw.value == doctest::Approx(8.0 / 27).epsilon(0.01));

  const auto l1 = integrate(LogConcaveSpec::exp_l1(2, 2.0), std::nullopt, spec);
  CHECK(*l1.closed_form == doctest::Approx(16.0));
  CHECK(l1.value == doctest::Approx(16.0).epsilon(0.01));

  Eigen::MatrixXd m(2, 2);
  m << 2, 0.5, 0.5, 1;
  const auto gs = integrate(LogConcaveSpec::gaussian(m), CoordSet(2, {1}), spec);
  CHECK(*gs.closed_form == doctest::Approx(std::sqrt(kPi)));
  CHECK(gs.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-6));
}

TEST_CASE("exp-Minkowski identity on random bodies") {
  std::mt19937_64 rng(61);
  QuadratureSpec spec;
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = 1 + i % 3;
    const auto k = random_centered_body(rng, n);
    const auto r = integrate(LogConcaveSpec::exp_minkowski(k), std::nullopt, spec);
    CHECK(*r.closed_form_exact == Rational(factorial(n)) * volume(k));
    CHECK(std::abs(r.value / *r.closed_form - 1) < 0.01);
    CHECK(r.tail_bound < 1e-3);
  }
}

TEST_CASE("quadrature converges as the grid is refined") {
  std::mt19937_64 rng(13);
  const auto f = LogConcaveSpec::exp_minkowski(random_centered_body(rng, 2));
  QuadratureSpec coarse, fine;
  coarse.points_per_axis = 16;
  fine.points_per_axis = 64;
  const auto a = integrate(f, std::nullopt, coarse);
  const auto b = integrate(f, std::nullopt, fine);
  CHECK(std::abs(b.value - *b.closed_form) < std::abs(a.value - *a.closed_form));
}

TEST_CASE("quasi-random scheme and deterministic parallel sums") {
  const auto f = LogConcaveSpec::exp_minkowski(cross_polytope(2));
  QuadratureSpec qmc;
  qmc.scheme = QuadratureScheme::kQuasiRandom;
  qmc.total_points = 1 << 16;
  const auto r = integrate(f, std::nullopt, qmc);
  CHECK(r.value == doctest::Approx(4.0).epsilon(0.02));
  QuadratureSpec one, many;
  many.jobs = 4;
  CHECK(integrate(f, std::nullopt, one).value == integrate(f, std::nullopt, many).value);
  qmc.jobs = 3;
  CHECK(integrate(f, std::nullopt, qmc).value == r.value);
}

TEST_CASE("integration errors") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  CHECK(code_of([&] { LogConcaveSpec::gaussian(bad); }) == ErrorCode::kNotIntegrable);
  const auto simplex = Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(code_of([&] { LogConcaveSpec::exp_minkowski(simplex); }) == ErrorCode::kNotIntegrable);
  QuadratureSpec huge;
  huge.points_per_axis = 1000;
  CHECK(code_of([&] { integrate(LogConcaveSpec::exp_l1(3), std::nullopt, huge); }) ==
        ErrorCode::kQuadratureBudgetExceeded);
}

TEST_CASE("dual functional equality for exp(-|x|_1)") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = check_dual_functional(LogConcaveSpec::exp_l1(n), unit_weights(singleton_cover(n)), {});
    CHECK(r.lhs_f == doctest::Approx(std::pow(2.0, n)));
    CHECK(r.rhs_f == doctest::Approx(std::pow(2.0, n)));
    CHECK(std::abs(r.slack_f - 1) <= 1e-6);
    CHECK(r.pass);
  }
}

TEST_CASE("dual functional for the Gaussian exp(-pi|x|^2)") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto f = LogConcaveSpec::gaussian(kPi * Eigen::MatrixXd::Identity(n, n));
    const auto r = check_dual_functional(f, unit_weights(singleton_cover(n)), {});
    CHECK(r.lhs_f == doctest::Approx(std::pow(n, n / 2.0)));
    CHECK(r.rhs_f == doctest::Approx(1.0));
    CHECK(r.pass);
  }
}

TEST_CASE("dual functional matches the dual Bollobás–Thomason verdict") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 4; ++i) {
    const auto k = random_centered_body(rng, 3);
    const auto f = LogConcaveSpec::exp_minkowski(k);
    for (const char* text : {"1,2;1,3;2,3", "1;2;3", "1;2,3;1,2,3"}) {
      const auto wc = weighted(text);
      const auto fr = check_dual_functional(f, wc, {});
      const auto br = check_weighted_dual_bt(k, wc);
      CHECK(fr.pass == br.pass);
      // (functional slack)^s equals the geometric slack.
      CHECK(std::pow(fr.slack_f, to_double(wc.s)) == doctest::Approx(br.slack_f).epsilon(1e-9));
    }
  }
  const auto b1 = check_dual_functional(LogConcaveSpec::exp_minkowski(cross_polytope(3)), weighted("1,2;1,3;2,3"), {});
  CHECK(b1.slack_f == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dual functional by quadrature") {
  QuadratureSpec spec;
  spec.use_closed_forms = false;
  const auto r = check_dual_functional(LogConcaveSpec::exp_l1(2), weighted("1;2"), spec, 0.01);
  CHECK(r.slack_f == doctest::Approx(1.0).epsilon(0.01));
  CHECK(r.pass);
  CHECK(code_of([&] {
          WeightedCover bad = weighted("1;2");
          bad.weights[0] = 2;
          check_dual_functional(LogConcaveSpec::exp_l1(2), bad, spec);
        }) == ErrorCode::kWeightsInvalid);
}

TEST_CASE("pointwise lemma") {
  Eigen::MatrixXd m(3, 3);
  m << 2, 0.3, 0, 0.3, 1, 0.2, 0, 0.2, 0.5;
  std::mt19937_64 rng(2);
  const std::vector<LogConcaveSpec> fs{LogConcaveSpec::gaussian(Eigen::MatrixXd::Identity(3, 3)),
                                       LogConcaveSpec::gaussian(m),
                                       LogConcaveSpec::exp_minkowski(cross_polytope(3)),
                                       LogConcaveSpec::exp_minkowski(random_centered_body(rng, 3)),
                                       LogConcaveSpec::exp_l1(3, 2.0)};
  std::vector<WeightedCover> covers{weighted("1,2;1,3;2,3"), weighted("1;2;3"), weighted("1;2,3;1,2,3")};
  auto w = solve_weights(Cover::parse("1;1,2;2,3;3").parts(), 1);
  REQUIRE(w);
  covers.push_back({3, Cover::parse("1;1,2;2,3;3").parts(), *w, 1});
  for (const auto& f : fs)
    for (const auto& wc : covers) {
      const auto r = pointwise_lemma_check(f, wc, 2000);
      CHECK(r.pass);
      CHECK(r.violations == 0);
      CHECK(r.step_violations == 0);
      CHECK(r.worst <= 1e-10);
    }
  // The first sample is x_i = 0, where both sides equal 1.
  const auto origin = pointwise_lemma_check(fs[0], covers[0], 1);
  CHECK(origin.worst == 0.0);
}

TEST_CASE("Gaussian Brascamp–Lieb extremals") {
  QuadratureSpec spec;
  const auto single = gaussian_bl_extremal_check(unit_weights(singleton_cover(3)), spec);
  CHECK(single.direct_lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(single.direct_rhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(single.verdict == "confirmed");

  const auto tri = gaussian_bl_extremal_check(weighted("1,2;1,3;2,3"), spec);
  CHECK(tri.identity_error < 1e-12);
  CHECK(std::abs(tri.direct_lhs / tri.direct_rhs - 1) < 0.01);
  CHECK(tri.reverse_lower >= 0.999);
  CHECK(tri.verdict == "confirmed");
}
