#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "support.hpp"
#include "tpdde/equation.hpp"
#include "tpdde/errors.hpp"

using namespace tpdde;
using namespace tpdde::testing;

namespace {

TrinomialPDDE eq21(Variant v = Variant::Shift) {
  Poly g = Poly::linear(std::vector<Cx>{4.0, std::log(6 + 6 * std::sqrt(7.0)), 7.0}, Cx(0.0, kPi / 3));
  return TrinomialPDDE(0, 2, 1.0, 2.0, -3.0, 2.0, -1.0, {7.0, -2.0, -4.0}, g, v);
}

std::string violation(auto&& make) {
  try {
    make();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("hypothesis violations are named") {
  const Poly g = Poly::variable(3, 0);
  const std::vector<Cx> c{1.0, 0.0, 0.0};
  CHECK(violation([&] { TrinomialPDDE(2, 1, 1.0, 1.0, 0.0, 1.0, 1.0, c, g, Variant::Shift); })
            .find("1 ≤ i < j ≤ n") != std::string::npos);
  CHECK(violation([&] { TrinomialPDDE(0, 1, 0.0, 1.0, 0.0, 1.0, 1.0, c, g, Variant::Shift); })
            .find("a, b, α ≠ 0") != std::string::npos);
  CHECK(violation([&] { TrinomialPDDE(0, 1, 1.0, 1.0, 0.0, 0.0, 1.0, c, g, Variant::Shift); })
            .find("a, b, α ≠ 0") != std::string::npos);
  CHECK(violation([&] { TrinomialPDDE(0, 1, 1.0, 4.0, 2.0, 1.0, 1.0, c, g, Variant::Shift); })
            .find("ω² ≠ ab") != std::string::npos);
  CHECK(violation([&] {
          TrinomialPDDE(0, 1, 1.0, 1.0, 0.0, 1.0, 1.0, {0.0, 0.0, 0.0}, g, Variant::Shift);
        }).find("c ∈ Cⁿ∖{0}") != std::string::npos);
}

TEST_CASE("omega roots of the first example") {
  // (3 +- sqrt(7)) / sqrt(2), from a Newton square root.
  const double s7 = newton_sqrt(7.0), s2 = newton_sqrt(2.0);
  const OmegaPair r = omega_roots(1.0, 2.0, -3.0, Branch::Plus);
  CHECK(std::abs(r.omega1 - (3 + s7) / s2) < 1e-12);
  CHECK(std::abs(r.omega2 - (3 - s7) / s2) < 1e-12);
  CHECK(std::abs(r.omega1 - 3.9920) < 5e-4);
  CHECK(std::abs(r.omega2 - 0.25049) < 1e-5);
  const OmegaPair m = omega_roots(1.0, 2.0, -3.0, Branch::Minus);
  CHECK(m.omega1 == r.omega2);
  CHECK(m.omega2 == r.omega1);
}

TEST_CASE("omega root invariants") {
  Rng rng(21);
  for (int k = 0; k < 500; ++k) {
    const Cx a = rand_cx(rng, 3), b = rand_cx(rng, 3), w = rand_cx(rng, 3);
    if (std::abs(a) < 0.1 || std::abs(b) < 0.1 || std::abs(w * w - a * b) < 0.1) continue;
    for (Branch br : {Branch::Plus, Branch::Minus}) {
      const OmegaPair r = omega_roots(a, b, w, br);
      CHECK(std::abs(r.omega1 * r.omega2 - 1.0) < 1e-10);
      CHECK(std::abs(r.root_ab * (r.omega1 + r.omega2) + 2.0 * w) < 1e-10);
    }
  }
  CHECK_THROWS_AS(omega_roots(1.0, 4.0, 2.0), DomainError);
}

TEST_CASE("factorization identity and a negative control") {
  Rng rng(22);
  for (int k = 0; k < 100; ++k) {
    const ExpPoly F = rand_exppoly(rng, 3), G = rand_exppoly(rng, 3);
    const Cx a = rand_cx(rng, 2) + 2.5, b = rand_cx(rng, 2) - 2.5, w = rand_cx(rng, 2);
    CHECK(factorization_check(a, b, w, F, G, Branch::Plus));
    CHECK(factorization_check(a, b, w, F, G, Branch::Minus));
    OmegaPair bogus = omega_roots(a, b, w);
    bogus.omega1 *= 1.01;
    CHECK_FALSE(factorization_check(a, b, w, F, G, bogus));
  }
}

TEST_CASE("M1/M2 satisfy the trinomial identity and N1 = +-1/sqrt(b)") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const Cx a = rand_cx(rng, 2) + 2.5, b = rand_cx(rng, 2) + 2.5, w = rand_cx(rng, 2);
    const OmegaPair r = omega_roots(a, b, w);
    const Cx xi = rand_cx(rng, 2) + Cx(0.0, 2.5);
    const auto [m1, m2] = m_constants(a, b, r, xi);
    CHECK(std::abs(a * m1 * m1 + 2.0 * w * m1 * m2 + b * m2 * m2 - 1.0) < 1e-10);
    const Cx n1 = n1_constant(a, b, r);
    CHECK(std::min(std::abs(n1 - 1.0 / csqrt(b)), std::abs(n1 + 1.0 / csqrt(b))) < 1e-12);
  }
}

TEST_CASE("sampling is deterministic and inside the polydisc") {
  const auto p = sample_points(3, 50, 9), q = sample_points(3, 50, 9);
  CHECK(p == q);
  CHECK(p != sample_points(3, 50, 10));
  for (const auto& z : p) {
    for (Cx x : z) {
      CHECK(std::abs(x.real()) <= 1.0);
      CHECK(std::abs(x.imag()) <= 1.0);
    }
  }
}

TEST_CASE("f = 0 leaves |e^g|/(1+|e^g|) behind") {
  const TrinomialPDDE eq = eq21();
  const auto z = sample_points(3, 1, 0)[0];
  const double eg = std::abs(std::exp(poly_eval(eq.g(), z)));
  CHECK(std::abs(relative_residual_at(eq, ExpPoly(3), z) - eg / (1 + eg)) < 1e-14);
  const VerificationReport v = verify(eq, ExpPoly(3), 100, 0);
  CHECK_FALSE(v.symbolic_zero);
  CHECK(v.max_rel_residual > 0.1);
}

TEST_CASE("serial and parallel numeric verification agree exactly") {
  Rng rng(24);
  const TrinomialPDDE eq = eq21(Variant::Difference);
  for (int k = 0; k < 20; ++k) {
    const ExpPoly f = rand_exppoly(rng, 3);
    const auto s = verify_numeric(eq, f, 200, 5, 1e-8, Exec::Serial);
    const auto p = verify_numeric(eq, f, 200, 5, 1e-8, Exec::Parallel);
    CHECK(s.max_rel_residual == p.max_rel_residual);
    CHECK(s.overflow_count == p.overflow_count);
    CHECK(s.numeric_pass == p.numeric_pass);
  }
}

TEST_CASE("overflowing sample points are counted, not fatal") {
  const TrinomialPDDE eq(0, 2, 1.0, 2.0, -3.0, 2.0, -1.0, {0.0, 1.0, 1.0},
                         Poly::variable(3, 0) * 2000.0, Variant::Shift);
  const ExpPoly f = ep_exp(Poly::variable(3, 0) * 1000.0);
  const auto v = verify_numeric(eq, f, 100, 0);
  CHECK(v.overflow_count > 0);
  CHECK(v.overflow_count < 100);
  CHECK(v.samples + v.overflow_count == 100);
}

TEST_CASE("D and S operators") {
  const TrinomialPDDE eq = eq21();
  const ExpPoly z1 = ep_from_poly(Poly::variable(3, 0));
  CHECK(eq.D(z1) == ExpPoly::constant(3, 2.0));
  CHECK(eq.S(z1) == z1 + ExpPoly::constant(3, 7.0));
  CHECK(eq.with_variant(Variant::Difference).S(z1) == ExpPoly::constant(3, 7.0));
  CHECK(eq.D(ep_from_poly(eq.w())).empty());
  CHECK(eq.period() == Cx(-4.0 + 0.5 * 7.0));
}
