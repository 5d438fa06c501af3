#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "support.hpp"
#include "tpdde/audit.hpp"
#include "tpdde/config.hpp"
#include "tpdde/errors.hpp"
#include "tpdde/fixtures.hpp"
#include "tpdde/fuzz.hpp"
#include "tpdde/solutions.hpp"

using namespace tpdde;
using namespace tpdde::testing;

namespace {

TrinomialPDDE example_eq(const std::string& id) {
  return parse_equation_config(example_fixture(id).readings.front().equation);
}

CaseParameters base(Theorem t, CaseId c, Branch br = Branch::Plus) {
  CaseParameters p;
  p.theorem = t;
  p.case_id = c;
  p.branch = br;
  return p;
}

Cx single_coefficient(const ExpPoly& f) {
  REQUIRE(f.size() == 1);
  return f.terms().begin()->second.constant_term();
}

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("2.1(ii) on the first example: coefficient (6+6 sqrt 7)/(2 sqrt 14)") {
  const TrinomialPDDE eq = example_eq("2.1");
  const double s7 = newton_sqrt(7.0), s14 = newton_sqrt(14.0);
  const double expected = (6 + 6 * s7) / (2 * s14);
  for (Branch br : {Branch::Plus, Branch::Minus}) {
    CaseParameters p = complete_parameters(eq, base(Theorem::T21, CaseId::II, br));
    const auto xs = solve_xi(eq, Theorem::T21, p.L, br);
    REQUIRE(xs.size() == 2);
    const double xi2 = std::real(xs[0] * xs[0]);
    CHECK(std::abs(xi2 - (br == Branch::Plus ? 0.5 : 2.0)) < 1e-12);
    for (Cx xi : xs) {
      p.xi = xi;
      auto [cand, rows] = construct(eq, p);
      CHECK(rows.all_satisfied());
      CHECK(verify_symbolic(eq, cand.f));
      // Folded constant of g/2 is pi i/6.
      const Cx unfolded = single_coefficient(cand.f) / std::exp(Cx(0.0, kPi / 6));
      CHECK(std::abs(std::abs(unfolded) - expected) < 1e-12);
    }
  }
}

TEST_CASE("xi constraint rows of the first example equal 1/(6+6 sqrt 7)") {
  const TrinomialPDDE eq = example_eq("2.1");
  CaseParameters p = complete_parameters(eq, base(Theorem::T21, CaseId::II));
  p.xi = 1.0 / newton_sqrt(2.0);
  const ConstraintReport r = check_constraints(eq, p);
  const ConstraintEntry* e = r.find("ξ constraint");
  REQUIRE(e != nullptr);
  const double expected = 1.0 / (6 + 6 * newton_sqrt(7.0));
  CHECK(std::abs(e->lhs - expected) < 1e-12);
  CHECK(std::abs(e->rhs - expected) < 1e-12);
  CHECK(e->satisfied);
}

TEST_CASE("negative control: L(c) = 0 with a non-solving xi") {
  const TrinomialPDDE eq = example_eq("2.1");
  CaseParameters p = complete_parameters(eq, base(Theorem::T21, CaseId::II));
  p.L = {1.0, 0.0, 7.0 / 4.0};  // 7 - 2*0 - 4*7/4 = 0
  p.xi = 3.0;
  const TrinomialPDDE e2 = eq.with_g(linear_form(p.L));
  p.B1 = 0.0;
  const ConstraintReport r = check_constraints(e2, p);
  const ConstraintEntry* e = r.find("ξ constraint");
  REQUIRE(e != nullptr);
  CHECK_FALSE(e->satisfied);
  CHECK(e->abs_err > 0.0);
  CHECK_FALSE(r.all_satisfied());
}

TEST_CASE("solve_xi boundaries: xi^2 = 0 and A = E w2") {
  const OmegaPair r = omega_roots(1.0, 2.0, -3.0);
  const Cx ra = 1.0, rb = csqrt(2.0);
  // A = sqrt(a) lambda / (2 sqrt(b)); E = e^{Lc/2} = 1 with Lc = 0.
  const Cx lam_zero = 2.0 * rb * r.omega1 / ra;
  CHECK(has(error_of([&] { solve_xi(1.0, 2.0, r, Theorem::T21, lam_zero, 0.0); }), "ξ ≠ 0"));
  const Cx lam_none = 2.0 * rb * r.omega2 / ra;
  CHECK(has(error_of([&] { solve_xi(1.0, 2.0, r, Theorem::T21, lam_none, 0.0); }), "no solution"));
}

TEST_CASE("solve_xi on the third example") {
  const TrinomialPDDE eq = example_eq("2.3");
  const CaseParameters p = complete_parameters(eq, base(Theorem::T22, CaseId::III));
  const double s13 = newton_sqrt(13.0);
  const double E = (6 + 3 * s13) / (4 + s13);
  CHECK(std::abs(std::exp(dot(p.L, eq.c()) / 2.0) - E) < 1e-12);
  for (Branch br : {Branch::Plus, Branch::Minus}) {
    const OmegaPair r = eq.roots(br);
    for (Cx xi : solve_xi(eq, Theorem::T22, p.L, br)) {
      const Cx lam = 2.0 * p.L[0] + 1.0 * p.L[2];
      CHECK(std::abs(xi_constraint_lhs(1.0, 3.0, r, xi, lam) + 1.0 - E) < 1e-10);
    }
  }
}

TEST_CASE("solve_xi re-substitution over random draws") {
  Rng rng(31);
  for (int k = 0; k < 300; ++k) {
    const Cx a = rand_cx(rng, 2) + 2.5, b = rand_cx(rng, 2) + 2.5, w = rand_cx(rng, 2);
    const OmegaPair r = omega_roots(a, b, w);
    const Cx lam = rand_cx(rng, 2), lc = rand_cx(rng, 2);
    for (Theorem t : {Theorem::T21, Theorem::T22}) {
      try {
        for (Cx xi : solve_xi(a, b, r, t, lam, lc)) {
          const Cx lhs = xi_constraint_lhs(a, b, r, xi, lam) + (t == Theorem::T22 ? 1.0 : 0.0);
          CHECK(std::abs(lhs - std::exp(lc / 2.0)) < 1e-10 * (1 + std::abs(lhs)));
        }
      } catch (const ConstructionError&) {
      }
    }
  }
}

TEST_CASE("2.2(ii) with constant g is the secular case") {
  // a = 1, alpha = 1: D f = +-e^{R/2}.
  const Cx R(0.3, 0.2);
  const TrinomialPDDE eq(0, 1, 1.0, 2.0, 0.5, 1.0, 2.0, {1.0, 3.0}, Poly::constant(2, R), Variant::Difference);
  for (int sign : {1, -1}) {
    CaseParameters p = complete_parameters(eq, base(Theorem::T22, CaseId::II));
    p.sign = sign;
    auto [cand, rows] = construct(eq, p);
    CHECK(rows.all_satisfied());
    CHECK(ep_is_zero(eq.D(cand.f) - ExpPoly::constant(2, static_cast<double>(sign) * std::exp(R / 2.0))));
    CHECK(ep_is_zero(ep_delta(cand.f, eq.c())));
    CHECK(verify(eq, cand.f, 100, 0).numeric_pass);
    CHECK(verify_symbolic(eq, cand.f));
  }
}

TEST_CASE("2.1(iii) with L1 = L2 is rejected") {
  const TrinomialPDDE eq = example_eq("2.2");
  CaseParameters p = solve_split(eq, Branch::Plus, 0);
  p.L2 = p.L1;
  CHECK(has(error_of([&] { construct(eq, p); }), "L1(z) + H1(s) ≠ L2(z) + H2(s)"));
  const ConstraintReport r = check_constraints(eq, p);
  CHECK_FALSE(r.find("L1 + H1(s) ≠ L2 + H2(s)")->satisfied);
}

TEST_CASE("construction errors name the failing shape") {
  const TrinomialPDDE eq = example_eq("2.1");
  CHECK(has(error_of([&] { construct(eq, base(Theorem::T21, CaseId::I)); }), "g not a function of w"));
  const TrinomialPDDE d = eq.with_variant(Variant::Difference)
                              .with_g(compose_univariate(Poly::monomial({2}, 1.0), eq.w()));
  CHECK(has(error_of([&] { construct(d, base(Theorem::T22, CaseId::I)); }), "deg ψ ≥ 2"));
  CaseParameters h = base(Theorem::T22, CaseId::II);
  h.L = {0.0, 0.0, 0.0};
  h.d = {2.0, 1.0, 3.0};  // d.c = 14 - 2 - 12 = 0, alpha d_i + beta d_j = 1
  h.H = Poly::monomial({2}, 1.0);
  CHECK(has(error_of([&] { construct(d.with_g(h_of_s(h.H, h.d, 3)), h); }),
            "non-elementary antiderivative"));
  CHECK(has(error_of([&] { construct(eq, base(Theorem::T22, CaseId::II)); }), "variant"));
}

TEST_CASE("build_periodic: tau = 2, k = 1 on the third example's frame") {
  const TrinomialPDDE eq = example_eq("2.3");
  CHECK(eq.period() == Cx(2.0));
  const ExpPoly u = embed(build_periodic(2.0, {{1, 1.0}}), eq);
  REQUIRE(u.size() == 1);
  const Poly& q = u.terms().begin()->first;
  CHECK(std::abs(q.coefficient({1, 0, 0}) - Cx(0.0, -kPi / 2)) < 1e-15);
  CHECK(std::abs(q.coefficient({0, 0, 1}) - Cx(0.0, kPi)) < 1e-15);
  CHECK(eq.D(u).empty());
  CHECK(ep_translate(u, eq.c()) == u);
  CHECK(embed(build_periodic(2.0, {}), eq).empty());
  CHECK(embed(build_periodic(2.0, {{0, 5.0}}), eq) == ExpPoly::constant(3, 5.0));
  CHECK_THROWS_AS(build_periodic(0.0, {{1, 1.0}}), DomainError);
}

TEST_CASE("branch symmetry: swapping the branch and xi -> 1/xi keeps 2.1(ii)") {
  for (int k = 0; k < 100; ++k) {
    const FuzzDraw d = draw_admissible({Theorem::T21, CaseId::II}, 1000 + k);
    CaseParameters q = d.params;
    q.branch = other(q.branch);
    q.xi = 1.0 / *q.xi;
    const ExpPoly f = construct(d.eq, d.params).first.f;
    const ExpPoly g = construct(d.eq, q).first.f;
    CHECK(ep_is_zero(f - g));
  }
}

TEST_CASE("kernel property of the free component") {
  for (int k = 0; k < 50; ++k) {
    const FuzzDraw d = draw_admissible({Theorem::T22, CaseId::III}, 2000 + k);
    CaseParameters p = d.params;
    p.component = build_periodic(d.eq.period(), {{1, 0.5}, {-1, Cx(0.0, 0.25)}});
    CHECK(verify_symbolic(d.eq, construct(d.eq, p).first.f));
    const ExpPoly f = construct(d.eq, d.params).first.f;
    // e^{z_i}: Delta_c-periodic only by accident, never D-annihilated.
    CHECK_FALSE(verify_symbolic(d.eq, f + ep_exp(Poly::variable(d.eq.arity(), d.eq.i()))));
  }
}

TEST_CASE("constraint-residual equivalence under perturbation") {
  for (const FuzzCase fc : {FuzzCase{Theorem::T21, CaseId::II}, FuzzCase{Theorem::T21, CaseId::III},
                            FuzzCase{Theorem::T22, CaseId::III}, FuzzCase{Theorem::T22, CaseId::IV}}) {
    for (int k = 0; k < 40; ++k) {
      const FuzzDraw d = draw_admissible(fc, 3000 + k);
      auto [cand, rows] = construct(d.eq, d.params);
      CHECK(verify_symbolic(d.eq, cand.f) == rows.all_satisfied());
      CHECK(rows.all_satisfied());

      CaseParameters bad = d.params;
      if (bad.xi) {
        bad.xi = *bad.xi * 1.1;
      } else {
        // Move L1(c) while keeping L1 + L2 and D L1.
        const auto u = least_norm_linear(d.eq, 0.0, 0.3);
        for (std::size_t m = 0; m < u.size(); ++m) {
          bad.L1[m] += u[m];
          bad.L2[m] -= u[m];
        }
      }
      auto [cb, rb] = construct(d.eq, bad);
      CHECK(verify_symbolic(d.eq, cb.f) == rb.all_satisfied());
      CHECK_FALSE(rb.all_satisfied());
    }
  }
}

TEST_CASE("2.2(iv): derived rows hold for verified candidates, statement rows are advisory") {
  for (int k = 0; k < 50; ++k) {
    const FuzzDraw d = draw_admissible({Theorem::T22, CaseId::IV}, 4000 + k);
    auto [cand, rows] = construct(d.eq, d.params);
    REQUIRE(verify_symbolic(d.eq, cand.f));
    CHECK(rows.find("h1 constraint")->satisfied);
    CHECK(rows.find("h2 constraint")->satisfied);
    CHECK(rows.find("h1 constraint (statement form)")->advisory);
  }
}

TEST_CASE("constructor soundness over every case") {
  FuzzOptions o;
  o.trials = 30;
  o.seed = 77;
  const FuzzSummary s = run_fuzz(o);
  CHECK(s.trials == 30 * fuzz_cases().size());
  CHECK(s.violations.empty());
  CHECK(s.max_rel_residual < 1e-8);
}

TEST_CASE("fuzz is deterministic and identical serial vs parallel") {
  FuzzOptions o;
  o.trials = 10;
  o.seed = 5;
  const FuzzSummary p = run_fuzz(o);
  o.exec = Exec::Serial;
  const FuzzSummary s = run_fuzz(o);
  CHECK(p.max_rel_residual == s.max_rel_residual);
  CHECK(p.redraws == s.redraws);
  CHECK(describe_trial(fuzz_cases()[2], 9) == describe_trial(fuzz_cases()[2], 9));
}

TEST_CASE("audit, constructed mode: every example verifies") {
  for (const auto& fx : example_fixtures()) {
    for (const auto& r : audit_example(fx.id, AuditMode::Constructed)) {
      CHECK_MESSAGE(r.pass, fx.id << " " << r.label);
      CHECK(r.report.symbolic_zero);
      CHECK(r.report.max_rel_residual < 1e-8);
    }
  }
}

TEST_CASE("audit, verbatim mode: measured discrepancies") {
  const auto a21 = audit_example("2.1", AuditMode::Verbatim);
  REQUIRE(a21.size() == 2);
  CHECK_FALSE(a21[0].pass);
  CHECK(a21[0].report.max_rel_residual > 1e-3);
  CHECK(std::abs(a21[0].discrepancy_factor - (6 + 6 * newton_sqrt(7.0))) < 1e-9);
  CHECK(a21[1].pass);

  for (const auto& r : audit_example("2.3", AuditMode::Verbatim)) {
    CHECK_FALSE(r.pass);
    const bool wform = !r.as_printed;
    CHECK(r.constraints.find("printed periodic term D-image = 0")->satisfied == wform);
  }
  for (const auto& r : audit_example("2.4", AuditMode::Verbatim)) {
    CHECK_FALSE(r.pass);
    CHECK(r.report.max_rel_residual > 1e-3);
  }
  for (const auto& r : audit_example("2.2", AuditMode::Verbatim)) CHECK(r.pass);
}

TEST_CASE("case parameters round-trip through their file format") {
  for (std::size_t c = 0; c < fuzz_cases().size(); ++c) {
    for (int k = 0; k < 10; ++k) {
      const FuzzDraw d = draw_admissible(fuzz_cases()[c], trial_seed(1, c, k));
      const CaseParameters back = parse_case_parameters(format_case_parameters(d.params), d.eq);
      CHECK(construct(d.eq, back).first.f == construct(d.eq, d.params).first.f);
      const TrinomialPDDE eq2 = parse_equation_config(format_equation_config(d.eq));
      CHECK(eq2.g() == d.eq.g());
      CHECK(eq2.c() == d.eq.c());
    }
  }
}
