#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "tpdde/cx.hpp"
#include "tpdde/errors.hpp"
#include "tpdde/poly.hpp"

using namespace tpdde;
using namespace tpdde::testing;

TEST_CASE("csqrt takes the principal branch") {
  CHECK(csqrt(Cx(-1.0, 0.0)) == Cx(0.0, 1.0));
  CHECK(csqrt(Cx(-1.0, -0.0)) == Cx(0.0, 1.0));
  CHECK(csqrt(Cx(-4.0, 0.0)) == Cx(0.0, 2.0));
  CHECK(std::abs(csqrt(7.0) - newton_sqrt(7.0)) < 1e-15);
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const Cx x = rand_cx(rng, 10.0);
    const Cx r = csqrt(x);
    CHECK(r.real() >= 0.0);
    CHECK(std::abs(r * r - x) < 1e-13 * (1 + std::abs(x)));
  }
}

TEST_CASE("clog: principal branch, zero rejected") {
  CHECK(std::abs(clog(Cx(-1.0, 0.0)) - Cx(0.0, kPi)) < 1e-15);
  CHECK(std::abs(clog(Cx(-1.0, -0.0)) - Cx(0.0, kPi)) < 1e-15);
  CHECK_THROWS_AS(clog(Cx{}), DomainError);
  const double v = 6.0 + 6.0 * newton_sqrt(7.0);
  CHECK(std::abs(clog(v) - bisect_log(v)) < 1e-13);
  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const Cx x = rand_cx(rng, 5.0);
    const Cx l = clog(x);
    CHECK(l.imag() > -kPi);
    CHECK(l.imag() <= kPi);
    CHECK(std::abs(std::exp(l) - x) < 1e-13 * (1 + std::abs(x)));
  }
}

TEST_CASE("cexp overflow and non-finite input") {
  CHECK_THROWS_AS(cexp(Cx(710.0, 0.0)), EvalError);
  CHECK_THROWS_AS(cexp(Cx(std::nan(""), 0.0)), EvalError);
  CHECK(std::abs(cexp(Cx(0.0, kPi)) + 1.0) < 1e-15);
}

TEST_CASE("approx_eq and tolerance construction") {
  CHECK(approx_eq(1.0, 1.0 + 1e-12));
  CHECK_FALSE(approx_eq(1.0, 1.0 + 1e-6));
  CHECK(approx_eq(1e6, 1e6 + 1e-4));
  CHECK_THROWS_AS(Tolerance::make(0.0, 1e-9), DomainError);
}

TEST_CASE("format_cx spellings") {
  CHECK(format_cx(2.0) == "2");
  CHECK(format_cx(Cx(0.0, 0.5)) == "0.5*i");
  CHECK(format_cx(Cx(1.0, -2.0)) == "1-2*i");
}

TEST_CASE("poly ring axioms on random polynomials") {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const Poly p = rand_poly(rng, 3, 2, 3, true), q = rand_poly(rng, 3, 2, 3, true),
               r = rand_poly(rng, 3, 2, 3, true);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
  }
}

TEST_CASE("poly calculus: Leibniz rule, translation, evaluation") {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const Poly p = rand_poly(rng, 3, 3, 4), q = rand_poly(rng, 3, 2, 3);
    const Cx a = rand_cx(rng), b = rand_cx(rng);
    const Poly lhs = poly_directional(p * q, a, b, 0, 2);
    const Poly rhs = poly_directional(p, a, b, 0, 2) * q + p * poly_directional(q, a, b, 0, 2);
    CHECK(approx_equal(lhs, rhs, Tolerance::uniform(1e-12)));

    const auto c = rand_vec(rng, 3), z = rand_point(rng, 3);
    std::vector<Cx> zc(3);
    for (int m = 0; m < 3; ++m) zc[m] = z[m] + c[m];
    CHECK(rel_err(poly_eval(poly_translate(p, c), z), poly_eval(p, zc)) < 1e-12);
  }
}

TEST_CASE("translation by integers is exact on dyadic data") {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const Poly p = rand_poly(rng, 3, 3, 4, true);
    const auto c = int_vec(rng, 3, 3);
    std::vector<Cx> minus(3);
    for (int m = 0; m < 3; ++m) minus[m] = -c[m];
    CHECK(poly_translate(poly_translate(p, c), minus) == p);
  }
}

TEST_CASE("characteristic coordinate and direction_decompose") {
  const Poly w = characteristic_coordinate(3, 2.0, 1.0, 0, 2);
  CHECK(poly_directional(w, 2.0, 1.0, 0, 2).is_zero());
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const Poly psi = rand_poly(rng, 1, 3, 3, true);
    const Poly g = compose_univariate(psi, w);
    const auto back = direction_decompose(g, 2.0, 1.0, 0, 2);
    REQUIRE(back.has_value());
    CHECK(approx_equal(*back, psi));
  }
  CHECK_FALSE(direction_decompose(Poly::variable(3, 0), 2.0, 1.0, 0, 2).has_value());
  // z2 is constant along D and so a function of w only with the other coordinates.
  CHECK_FALSE(direction_decompose(Poly::variable(3, 1), 2.0, 1.0, 0, 2).has_value());
}

TEST_CASE("format_poly is deterministic and readable") {
  Poly p(2);
  p.add_term({1, 0}, 2.0);
  p.add_term({0, 0}, 1.0);
  CHECK(format_poly(p) == format_poly(p + Poly(2)));
  CHECK(format_poly(Poly(2)) == "0");
}
