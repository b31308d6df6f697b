#include "doctest.h"

#include <cmath>
#include <random>

#include "covercert/certifier.hpp"
#include "covercert/errors.hpp"
#include "support/random_bodies.hpp"

using namespace covercert;
using covercert::testing::random_centered_body;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Rational cross_volume(std::size_t n) {
  Rational v = 1;
  for (std::size_t i = 1; i <= n; ++i) v *= Rational(2, static_cast<unsigned long>(i));
  return v;
}

}  // namespace

TEST_CASE("cross-polytopes certify themselves") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto cert = certify(cross_polytope(n));
    for (double l : cert.lambdas) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& [sigma, slack] : cert.section_slacks) CHECK(std::abs(slack) <= 1e-9);
    CHECK(cert.volume_residual <= 1e-12);
    CHECK(cert.target_volume == cross_volume(n));
  }
}

TEST_CASE("square certificate") {
  const auto cert = certify(cube(2));
  REQUIRE(cert.lambdas.size() == 2);
  CHECK(cert.lambdas[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cert.lambdas[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cert.section_slacks.at("1") == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(cert.log_margin == doctest::Approx(0.5 * std::log(2.0)));

  const auto box = box_form(cert);
  CHECK(box.sides[0] == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(box.volume == doctest::Approx(8.0));
}

TEST_CASE("affine cross-polytopes are fixed points") {
  const auto k = cross_polytope(QVector{3, q("1/3")});
  const auto cert = certify(k);
  CHECK(cert.lambdas[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(cert.lambdas[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
  for (const auto& [sigma, slack] : cert.section_slacks) CHECK(std::abs(slack) <= 1e-9);
}

TEST_CASE("verify_certificate examples") {
  CHECK(verify_certificate(cross_polytope(3), std::vector<double>{1, 1, 1}).pass);
  CHECK(verify_certificate(cube(2), std::vector<double>{std::sqrt(2.0), std::sqrt(2.0)}).pass);
  const auto bad = verify_certificate(cube(2), std::vector<double>{1, 1});
  CHECK_FALSE(bad.pass);
  CHECK(bad.volume_residual == doctest::Approx(0.5));
  CHECK_FALSE(verify_certificate(cube(2), std::vector<double>{1}).pass);
  CHECK_FALSE(verify_certificate(cube(2), std::vector<double>{-1, 1}).pass);
}

TEST_CASE("box form of the cross-polytope certificate") {
  const auto box = box_form(certify(cross_polytope(2)));
  CHECK(box.sides[0] == doctest::Approx(2.0));
  CHECK(box.volume == doctest::Approx(4.0));
  CHECK(box.face_volumes.at("1,2") == doctest::Approx(4.0));
}

TEST_CASE("random bodies admit certificates") {
  std::mt19937_64 rng(314);
  for (std::size_t n = 2; n <= 3; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      const auto k = random_centered_body(rng, n);
      const auto cert = certify(k);
      const auto check = verify_certificate(k, cert);
      CHECK(check.pass);
      CHECK(check.volume_residual <= 1e-9);
      CHECK(check.min_slack >= -1e-9);
      CHECK(cert.log_margin >= -1e-12);
      // |B| = n! |K|.
      CHECK(box_form(cert).volume == doctest::Approx(std::tgamma(n + 1.0) * to_double(volume(k))).epsilon(1e-9));
    }
}

TEST_CASE("scaling equivariance") {
  std::mt19937_64 rng(21);
  const auto k = random_centered_body(rng, 3);
  const auto base = certify(k);
  for (const char* t : {"1/2", "3"}) {
    const auto scaled_cert = certify(scaled(k, q(t)));
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(scaled_cert.lambdas[i] == doctest::Approx(to_double(q(t)) * base.lambdas[i]).epsilon(1e-7));
  }
}

TEST_CASE("permutation equivariance") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 4; ++trial) {
    const auto k = random_centered_body(rng, 3);
    const std::vector<std::size_t> perm{1, 2, 0};
    const auto a = certify(k);
    const auto b = certify(permuted(k, perm));
    for (std::size_t j = 0; j < 3; ++j) CHECK(b.lambdas[j] == a.lambdas[perm[j]]);
  }
}

TEST_CASE("certify preconditions") {
  const auto simplex = Polytope::from_vertices(2, {{0, 0}, {1, 0}, {0, 1}});
  try {
    certify(simplex);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroNotInterior);
  }
}
