#include "tpdde/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "tpdde/errors.hpp"

namespace tpdde {

std::string to_string(Theorem t) { return t == Theorem::T21 ? "2.1" : "2.2"; }

std::string to_string(CaseId c) {
  switch (c) {
    case CaseId::I: return "i";
    case CaseId::II: return "ii";
    case CaseId::III: return "iii";
    case CaseId::IV: return "iv";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// univariate components

bool UnivariateComponent::empty() const {
  return kind == Kind::ExpPolyInW ? in_w.empty() : fourier.empty();
}

UnivariateComponent build_periodic(Cx tau, std::vector<std::pair<long, Cx>> fourier) {
  if (tau == Cx{}) throw DomainError("build_periodic: period must be nonzero");
  UnivariateComponent u;
  u.kind = UnivariateComponent::Kind::FourierPeriodic;
  u.period = tau;
  u.fourier = std::move(fourier);
  return u;
}

ExpPoly embed(const UnivariateComponent& u, std::size_t n, Cx alpha, Cx beta, std::size_t i,
              std::size_t j) {
  const Poly w = characteristic_coordinate(n, alpha, beta, i, j);
  if (u.kind == UnivariateComponent::Kind::ExpPolyInW) {
    if (u.in_w.arity() != 1) throw ArityError("component in w must have arity 1");
    const Poly args[] = {w};
    return ep_compose(u.in_w, args);
  }
  ExpPoly f(n);
  for (const auto& [k, coeff] : u.fourier) {
    const Cx rate = Cx(0.0, 2.0 * kPi * static_cast<double>(k)) / u.period;
    f.add_term(Poly::constant(n, coeff), w * rate);
  }
  return f;
}

ExpPoly embed(const UnivariateComponent& u, const TrinomialPDDE& eq) {
  return embed(u, eq.arity(), eq.alpha(), eq.beta(), eq.i(), eq.j());
}

// ---------------------------------------------------------------------------
// reports

bool has_h(const CaseParameters& p) {
  auto nonconst = [](const Poly& h) { return !h.is_constant(); };
  return nonconst(p.H) || nonconst(p.H1) || nonconst(p.H2);
}

bool ConstraintReport::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ConstraintEntry& e) { return e.advisory || e.satisfied; });
}

const ConstraintEntry* ConstraintReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

void ConstraintReport::add(std::string id, Cx lhs, Cx rhs, Tolerance tol, bool advisory) {
  ConstraintEntry e;
  e.id = std::move(id);
  e.lhs = lhs;
  e.rhs = rhs;
  e.abs_err = std::abs(lhs - rhs);
  e.satisfied = is_finite(lhs) && is_finite(rhs) && approx_eq(lhs, rhs, tol);
  e.advisory = advisory;
  entries.push_back(std::move(e));
}

void ConstraintReport::add_indicator(std::string id, bool holds, bool advisory) {
  ConstraintEntry e;
  e.id = std::move(id);
  e.lhs = holds ? 1.0 : 0.0;
  e.rhs = 1.0;
  e.abs_err = holds ? 0.0 : 1.0;
  e.satisfied = holds;
  e.advisory = advisory;
  entries.push_back(std::move(e));
}

// ---------------------------------------------------------------------------
// helpers

Poly linear_form(const std::vector<Cx>& coeffs) { return Poly::linear(coeffs); }

Poly h_of_s(const Poly& H, const std::vector<Cx>& d, std::size_t n) {
  if (H.is_zero()) return Poly(n);
  if (H.arity() != 1) throw ArityError("H must be a univariate polynomial in s");
  if (d.size() != n) throw ValidationError("direction vector d must have n components");
  return compose_univariate(H, Poly::linear(d));
}

Cx dot(const std::vector<Cx>& x, const std::vector<Cx>& c) {
  if (x.size() != c.size()) throw ArityError("dot: length mismatch");
  Cx s{};
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * c[k];
  return s;
}

std::vector<Cx> least_norm_linear(const TrinomialPDDE& eq, Cx r0, Cx r1) {
  const std::size_t n = eq.arity();
  std::vector<Cx> ra(n), rc = eq.c();
  ra[eq.i()] += eq.alpha();
  ra[eq.j()] += eq.beta();
  auto herm = [](const std::vector<Cx>& x, const std::vector<Cx>& y) {
    Cx s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
  };
  const Cx m00 = herm(ra, ra), m01 = herm(ra, rc), m10 = herm(rc, ra), m11 = herm(rc, rc);
  const Cx det = m00 * m11 - m01 * m10;
  if (std::abs(det) <= 1e-12 * std::abs(m00) * std::abs(m11)) {
    throw ConstructionError("c is parallel to the derivative direction (period 0)");
  }
  const Cx y0 = (m11 * r0 - m01 * r1) / det;
  const Cx y1 = (m00 * r1 - m10 * r0) / det;
  std::vector<Cx> u(n);
  for (std::size_t k = 0; k < n; ++k) u[k] = std::conj(ra[k]) * y0 + std::conj(rc[k]) * y1;
  return u;
}

namespace {

std::pair<double, double> split_exact(double t, double x) {
  const double y = t - x;
  double xp = t - y;
  for (int k = 0; k < 16 && xp + y != t; ++k) {
    xp = std::nextafter(xp, xp + y < t ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity());
  }
  return {xp, y};
}

}  // namespace

std::pair<Cx, Cx> exact_complement(Cx t, Cx x) {
  const auto [xr, yr] = split_exact(t.real(), x.real());
  const auto [xi, yi] = split_exact(t.imag(), x.imag());
  return {{xr, xi}, {yr, yi}};
}

namespace {

struct Ctx {
  const TrinomialPDDE& eq;
  const CaseParameters& p;
  std::size_t n;
  Tolerance tol;
  OmegaPair roots;
  Cx ra, rb;
};

Ctx make_ctx(const TrinomialPDDE& eq, const CaseParameters& p) {
  return Ctx{eq, p, eq.arity(), eq.tolerance(), eq.roots(p.branch), csqrt(eq.a()),
             csqrt(eq.b())};
}

bool near_zero(Cx x, double scale, Tolerance tol) {
  return std::abs(x) <= tol.abs_tol + tol.rel_tol * scale;
}

// D p when it is a constant (up to tolerance), else nullopt.
std::optional<Cx> constant_derivative(const TrinomialPDDE& eq, const Poly& p) {
  const Poly dp = eq.D(p);
  const Cx k = dp.constant_term();
  const double scale = p.max_abs_coeff() * std::max(std::abs(eq.alpha()), std::abs(eq.beta()));
  if (dp.without_constant().max_abs_coeff() <= eq.tolerance().abs_tol + eq.tolerance().rel_tol * scale) {
    return k;
  }
  return std::nullopt;
}

Cx directional_of(const TrinomialPDDE& eq, const std::vector<Cx>& v) {
  return eq.alpha() * v[eq.i()] + eq.beta() * v[eq.j()];
}

// Normalized gap between two polynomials, 0 when they agree.
Cx poly_gap(const Poly& x, const Poly& y) {
  return max_abs_difference(x, y) / (1.0 + std::max(x.max_abs_coeff(), y.max_abs_coeff()));
}

// The non-constant part of the exponent: eq.g's own polynomial when it
// agrees with the parameters' version, so that terms merge exactly.
Poly pick_nonconst(const Poly& from_g, const Poly& from_params, Tolerance tol) {
  const Poly a = from_g.without_constant();
  const Poly b = from_params.without_constant();
  return approx_equal(a, b, tol) ? a : b;
}

Poly with_constant(Poly p, Cx c) {
  p.add_term(MultiIndex(p.arity(), 0), c);
  return p;
}

void require_len(const std::vector<Cx>& v, std::size_t n, const char* name) {
  if (v.size() != n) {
    throw ConstructionError(std::string(name) + " must have " + std::to_string(n) +
                            " coefficients (got " + std::to_string(v.size()) + ")");
  }
}

void check_lengths(const Ctx& x) {
  for (const auto* v : {&x.p.L, &x.p.L1, &x.p.L2, &x.p.d}) {
    if (!v->empty() && v->size() != x.n) {
      throw ValidationError("linear form length does not match n = " + std::to_string(x.n));
    }
  }
  for (const Poly* h : {&x.p.H, &x.p.H1, &x.p.H2}) {
    if (!h->is_zero() && h->arity() != 1) throw ArityError("H must be univariate in s");
  }
}

bool h_direction_nonzero(const Ctx& x) {
  return !near_zero(directional_of(x.eq, x.p.d), 1.0, x.tol);
}

void h_rows(const Ctx& x, ConstraintReport& rep) {
  if (!has_h(x.p)) return;
  if (x.p.d.size() != x.n) {
    rep.add_indicator("d given", false);
    return;
  }
  rep.add("d·c = 0", dot(x.p.d, x.eq.c()), 0.0, x.tol);
  if (x.p.theorem == Theorem::T22) rep.add_indicator("αd_i + βd_j ≠ 0", h_direction_nonzero(x));
}

void component_rows(const Ctx& x, ConstraintReport& rep) {
  if (x.p.component.empty()) return;
  const ExpPoly k = embed(x.p.component, x.eq);
  rep.add_indicator("component D-image = 0", ep_is_zero(x.eq.D(k), x.tol));
  rep.add_indicator("component Δ_c-periodic", ep_is_zero(ep_delta(k, x.eq.c()), x.tol));
}

Cx lambda_or_value(const Ctx& x, const Poly& h, ConstraintReport& rep, const std::string& what) {
  const auto lam = constant_derivative(x.eq, h);
  rep.add_indicator("D(" + what + ") constant", lam.has_value());
  if (lam) return *lam;
  return x.eq.D(h).constant_term();
}

// ----- per-case row builders -------------------------------------------------

void rows_21_i(const Ctx& x, ConstraintReport& rep) {
  const auto psi = direction_decompose(x.eq.g(), x.eq.alpha(), x.eq.beta(), x.eq.i(), x.eq.j(), x.tol);
  rep.add_indicator("g = ψ(w)", psi.has_value());
}

void rows_21_ii(const Ctx& x, ConstraintReport& rep) {
  h_rows(x, rep);
  require_len(x.p.L, x.n, "L");
  const Poly hs = h_of_s(x.p.H, x.p.d, x.n);
  const Poly expo = linear_form(x.p.L) + hs;
  const Cx lam = lambda_or_value(x, expo, rep, "L + H(s)");
  rep.add("g = L + H(s) + B1", poly_gap(with_constant(expo, x.p.B1), x.eq.g()), 0.0, x.tol);
  rep.add_indicator("ξ ≠ 0", x.p.xi && *x.p.xi != Cx{});
  if (x.p.xi && *x.p.xi != Cx{}) {
    rep.add("ξ constraint", xi_constraint_lhs(x.eq.a(), x.eq.b(), x.roots, *x.p.xi, lam),
            cexp(dot(x.p.L, x.eq.c()) / 2.0), x.tol);
  }
}

void rows_21_iii(const Ctx& x, ConstraintReport& rep) {
  h_rows(x, rep);
  require_len(x.p.L1, x.n, "L1");
  require_len(x.p.L2, x.n, "L2");
  const Poly h1 = linear_form(x.p.L1) + h_of_s(x.p.H1, x.p.d, x.n);
  const Poly h2 = linear_form(x.p.L2) + h_of_s(x.p.H2, x.p.d, x.n);
  rep.add_indicator("L1 + H1(s) ≠ L2 + H2(s)", !approx_equal(h1, h2, x.tol));
  rep.add("g = L1 + L2 + H1(s) + H2(s) + E1 + E2",
          poly_gap(with_constant(h1 + h2, x.p.E1 + x.p.E2), x.eq.g()), 0.0, x.tol);
  const Cx l1 = lambda_or_value(x, h1, rep, "L1 + H1(s)");
  const Cx l2 = lambda_or_value(x, h2, rep, "L2 + H2(s)");
  const Cx w1 = x.roots.omega1, w2 = x.roots.omega2;
  rep.add("h1 constraint", x.ra * l1 * cexp(-dot(x.p.L1, x.eq.c())) / (w2 * x.rb), 1.0, x.tol);
  rep.add("h2 constraint", x.ra * l2 * cexp(-dot(x.p.L2, x.eq.c())) / (w1 * x.rb), 1.0, x.tol);
}

void rows_22_i(const Ctx& x, ConstraintReport& rep) {
  const auto psi = direction_decompose(x.eq.g(), x.eq.alpha(), x.eq.beta(), x.eq.i(), x.eq.j(), x.tol);
  rep.add_indicator("g = ψ(w)", psi.has_value());
  if (psi && psi->degree() <= 1) {
    // The statement's right side e^{g(z-c)/2} agrees with the derived
    // e^{g(z)/2} iff e^{(g(c) - g(0))/2} = 1.
    const Cx shift = poly_eval(x.eq.g().without_constant(), x.eq.c());
    rep.add("statement form e^{g(z-c)/2} = e^{g(z)/2}", cexp(shift / 2.0), 1.0, x.tol, true);
  }
  component_rows(x, rep);
}

void rows_22_ii(const Ctx& x, ConstraintReport& rep) {
  h_rows(x, rep);
  require_len(x.p.L, x.n, "L");
  const Poly expo = linear_form(x.p.L) + h_of_s(x.p.H, x.p.d, x.n);
  rep.add_indicator("D(g/2) constant", constant_derivative(x.eq, expo).has_value());
  rep.add("g = L + H(s) + R", poly_gap(with_constant(expo, x.p.R), x.eq.g()), 0.0, x.tol);
  rep.add("e^{L(c)/2} = 1", cexp(dot(x.p.L, x.eq.c()) / 2.0), 1.0, x.tol);
  component_rows(x, rep);
}

void rows_22_iii(const Ctx& x, ConstraintReport& rep) {
  require_len(x.p.L, x.n, "k");
  const Cx lam = directional_of(x.eq, x.p.L);
  rep.add("g = L + R2", poly_gap(with_constant(linear_form(x.p.L), x.p.R2), x.eq.g()), 0.0, x.tol);
  rep.add_indicator("αk_i + βk_j ≠ 0", !near_zero(lam, 1.0, x.tol));
  rep.add_indicator("ξ ≠ 0", x.p.xi && *x.p.xi != Cx{});
  if (x.p.xi && *x.p.xi != Cx{}) {
    rep.add("ξ constraint", xi_constraint_lhs(x.eq.a(), x.eq.b(), x.roots, *x.p.xi, lam) + 1.0,
            cexp(dot(x.p.L, x.eq.c()) / 2.0), x.tol);
  }
  component_rows(x, rep);
}

void rows_22_iv(const Ctx& x, ConstraintReport& rep) {
  require_len(x.p.L1, x.n, "L1");
  require_len(x.p.L2, x.n, "L2");
  const Poly p1 = linear_form(x.p.L1), p2 = linear_form(x.p.L2);
  rep.add("g = L1 + L2 + R3 + R4", poly_gap(with_constant(p1 + p2, x.p.R3 + x.p.R4), x.eq.g()),
          0.0, x.tol);
  rep.add_indicator("L1 ≠ L2", !approx_equal(p1, p2, x.tol));
  const Cx l1 = directional_of(x.eq, x.p.L1), l2 = directional_of(x.eq, x.p.L2);
  rep.add_indicator("αa_1i + βa_1j ≠ 0", !near_zero(l1, 1.0, x.tol));
  rep.add_indicator("αa_2i + βa_2j ≠ 0", !near_zero(l2, 1.0, x.tol));
  const Cx w1 = x.roots.omega1, w2 = x.roots.omega2, ra = x.ra, rb = x.rb;
  const Cx e1 = cexp(-dot(x.p.L1, x.eq.c())), e2 = cexp(-dot(x.p.L2, x.eq.c()));
  rep.add("h1 constraint", (ra * l1 + rb * w2) * e1 / (rb * w2), 1.0, x.tol);
  rep.add("h2 constraint", (ra * l2 + rb * w1) * e2 / (rb * w1), 1.0, x.tol);
  rep.add("h1 constraint (statement form)", ra / (w2 * rb) * (l1 + ra * w2) * e1, 1.0, x.tol, true);
  rep.add("h2 constraint (statement form)", ra / (w1 * rb) * (l2 + rb * w1) * e2, 1.0, x.tol, true);
  component_rows(x, rep);
}

ConstraintReport rows_for(const Ctx& x) {
  ConstraintReport rep;
  const auto& p = x.p;
  if (p.theorem == Theorem::T21) {
    switch (p.case_id) {
      case CaseId::I: rows_21_i(x, rep); break;
      case CaseId::II: rows_21_ii(x, rep); break;
      case CaseId::III: rows_21_iii(x, rep); break;
      case CaseId::IV: throw ValidationError("theorem 2.1 has no case iv");
    }
  } else {
    switch (p.case_id) {
      case CaseId::I: rows_22_i(x, rep); break;
      case CaseId::II: rows_22_ii(x, rep); break;
      case CaseId::III: rows_22_iii(x, rep); break;
      case CaseId::IV: rows_22_iv(x, rep); break;
    }
  }
  return rep;
}

// ----- constructors -----------------------------------------------------------

void validate(const Ctx& x) {
  check_lengths(x);
  const auto& p = x.p;
  if (p.theorem == Theorem::T21 && p.case_id == CaseId::IV) {
    throw ValidationError("theorem 2.1 has no case iv");
  }
  if ((p.theorem == Theorem::T21) != (x.eq.variant() == Variant::Shift)) {
    throw ValidationError("theorem " + to_string(p.theorem) + " does not match the equation variant");
  }
  if (p.sign != 1 && p.sign != -1) throw ValidationError("sign must be +1 or -1");
  if (p.xi && *p.xi == Cx{}) throw ValidationError("hypothesis violated: ξ ≠ 0");
  if (p.theorem == Theorem::T21 && !p.component.empty()) {
    throw ValidationError("theorem 2.1 candidates have no free periodic component");
  }
  if (has_h(p)) {
    if (p.d.size() != x.n) throw ValidationError("H given without direction vector d");
    const Cx dc = dot(p.d, x.eq.c());
    double scale = 0.0;
    for (std::size_t k = 0; k < x.n; ++k) scale = std::max(scale, std::abs(p.d[k] * x.eq.c()[k]));
    if (!near_zero(dc, scale, x.tol)) throw ValidationError("hypothesis violated: d·c = 0");
    if (p.theorem == Theorem::T22 && !h_direction_nonzero(x)) {
      throw ValidationError("hypothesis violated: αd_i + βd_j ≠ 0");
    }
  }
}

ExpPoly build_21_i(const Ctx& x) {
  if (!direction_decompose(x.eq.g(), x.eq.alpha(), x.eq.beta(), x.eq.i(), x.eq.j(), x.tol)) {
    throw ConstructionError("g not a function of w = z_j - (β/α)z_i");
  }
  std::vector<Cx> minus_c(x.eq.c());
  for (auto& v : minus_c) v = -v;
  const Cx n1 = n1_constant(x.eq.a(), x.eq.b(), x.roots);
  ExpPoly f(x.n);
  f.add_term(Poly::constant(x.n, static_cast<double>(x.p.sign) * n1),
             poly_translate(x.eq.g() * 0.5, minus_c));
  return f;
}

ExpPoly build_21_ii(const Ctx& x) {
  require_len(x.p.L, x.n, "L");
  if (!x.p.xi) throw ConstructionError("ξ missing (solve it with solve_xi)");
  const Poly expo = linear_form(x.p.L) + h_of_s(x.p.H, x.p.d, x.n);
  const Poly q = pick_nonconst(x.eq.g(), expo, x.tol);
  const Cx B = x.p.B1 - dot(x.p.L, x.eq.c());
  const Cx w1 = x.roots.omega1, w2 = x.roots.omega2, xi = *x.p.xi;
  const Cx den = xi * x.rb * (w2 - w1);
  const Cx coeff = (xi * xi - 1.0) / den;
  ExpPoly f(x.n);
  f.add_term(Poly::constant(x.n, coeff), with_constant(q * 0.5, B / 2.0));
  return f;
}

ExpPoly build_21_iii(const Ctx& x) {
  require_len(x.p.L1, x.n, "L1");
  require_len(x.p.L2, x.n, "L2");
  const Poly h1 = linear_form(x.p.L1) + h_of_s(x.p.H1, x.p.d, x.n);
  const Poly h2 = linear_form(x.p.L2) + h_of_s(x.p.H2, x.p.d, x.n);
  if (approx_equal(h1, h2, x.tol)) {
    throw ValidationError("hypothesis violated: L1(z) + H1(s) ≠ L2(z) + H2(s)");
  }
  const Cx k = 1.0 / (x.rb * (x.roots.omega2 - x.roots.omega1));
  ExpPoly f(x.n);
  f.add_term(Poly::constant(x.n, k), with_constant(h1, x.p.E1 - dot(x.p.L1, x.eq.c())));
  f.add_term(Poly::constant(x.n, -k), with_constant(h2, x.p.E2 - dot(x.p.L2, x.eq.c())));
  return f;
}

ExpPoly build_22_i(const Ctx& x) {
  const auto psi = direction_decompose(x.eq.g(), x.eq.alpha(), x.eq.beta(), x.eq.i(), x.eq.j(), x.tol);
  if (!psi) throw ConstructionError("g not a function of w = z_j - (β/α)z_i");
  if (psi->degree() >= 2) {
    throw ConstructionError(
        "φ(w+τ) - φ(w) = N₁e^{g/2} has no exponential-polynomial solution when deg ψ ≥ 2");
  }
  const Cx n1 = static_cast<double>(x.p.sign) * n1_constant(x.eq.a(), x.eq.b(), x.roots);
  const Poly half = x.eq.g() * 0.5;
  ExpPoly f(x.n);
  if (psi->degree() == 0) {
    const Cx tau = x.eq.period();
    if (near_zero(tau, 1.0, x.tol)) throw ConstructionError("zero denominator: period τ = 0");
    const ExpPoly w = ep_from_poly(x.eq.w());
    f = ep_exp(half) * w * (n1 / tau);
    return f;
  }
  const Cx shift = poly_eval(x.eq.g().without_constant(), x.eq.c());
  const Cx den = cexp(shift / 2.0) - 1.0;
  if (near_zero(den, 1.0, x.tol)) {
    throw ConstructionError("zero denominator: e^{(g(c) - g(0))/2} = 1");
  }
  f.add_term(Poly::constant(x.n, n1 / den), half);
  return f;
}

ExpPoly build_22_ii(const Ctx& x) {
  require_len(x.p.L, x.n, "L");
  const Poly expo = linear_form(x.p.L) + h_of_s(x.p.H, x.p.d, x.n);
  const Poly q = pick_nonconst(x.eq.g(), expo, x.tol);
  const auto kappa2 = constant_derivative(x.eq, q);
  if (!kappa2) {
    if (has_h(x.p) && x.p.H.degree() >= 2) {
      throw ConstructionError("non-elementary antiderivative: D(g/2) is not constant (deg H ≥ 2)");
    }
    throw ConstructionError("non-elementary antiderivative: D(g/2) is not constant");
  }
  const Cx kappa = *kappa2 / 2.0;
  const Poly expo_half = with_constant(q * 0.5, x.p.R / 2.0);
  const double s = static_cast<double>(x.p.sign);
  ExpPoly f(x.n);
  if (!near_zero(kappa, std::max(std::abs(x.eq.alpha()), std::abs(x.eq.beta())) * q.max_abs_coeff(), x.tol)) {
    f.add_term(Poly::constant(x.n, s / (x.ra * kappa)), expo_half);
    return f;
  }
  // D l = 1 and l(z + c) = l(z).
  const Cx ci = x.eq.c()[x.eq.i()], cj = x.eq.c()[x.eq.j()];
  const Cx den = x.eq.alpha() * cj - x.eq.beta() * ci;
  if (near_zero(den, std::abs(x.eq.alpha() * cj) + std::abs(x.eq.beta() * ci), x.tol)) {
    throw ConstructionError("zero denominator: period τ = 0");
  }
  std::vector<Cx> lc(x.n);
  lc[x.eq.i()] = cj / den;
  lc[x.eq.j()] = -ci / den;
  f.add_term(linear_form(lc) * (s / x.ra), expo_half);
  return f;
}

ExpPoly build_22_iii(const Ctx& x) {
  require_len(x.p.L, x.n, "k");
  if (!x.p.xi) throw ConstructionError("ξ missing (solve it with solve_xi)");
  const Cx lam = directional_of(x.eq, x.p.L);
  if (near_zero(lam, 1.0, x.tol)) throw ConstructionError("zero denominator: αk_i + βk_j = 0");
  const Poly q = pick_nonconst(x.eq.g(), linear_form(x.p.L), x.tol);
  const Cx w1 = x.roots.omega1, w2 = x.roots.omega2, xi = *x.p.xi;
  const Cx coeff = 2.0 * (w2 * xi * xi - w1) / (xi * x.ra * (w2 - w1) * lam);
  ExpPoly f(x.n);
  f.add_term(Poly::constant(x.n, coeff), with_constant(q * 0.5, x.p.R2 / 2.0));
  return f;
}

ExpPoly build_22_iv(const Ctx& x) {
  require_len(x.p.L1, x.n, "L1");
  require_len(x.p.L2, x.n, "L2");
  const Poly p1 = linear_form(x.p.L1), p2 = linear_form(x.p.L2);
  if (approx_equal(p1, p2, x.tol)) throw ValidationError("hypothesis violated: L1(z) ≠ L2(z)");
  const Cx l1 = directional_of(x.eq, x.p.L1), l2 = directional_of(x.eq, x.p.L2);
  if (near_zero(l1, 1.0, x.tol) || near_zero(l2, 1.0, x.tol)) {
    throw ConstructionError("zero denominator: αa_li + βa_lj = 0");
  }
  const Cx w1 = x.roots.omega1, w2 = x.roots.omega2;
  const Cx k = 1.0 / (x.ra * (w2 - w1));
  ExpPoly f(x.n);
  f.add_term(Poly::constant(x.n, k * w2 / l1), with_constant(p1, x.p.R3));
  f.add_term(Poly::constant(x.n, -k * w1 / l2), with_constant(p2, x.p.R4));
  return f;
}

}  // namespace

CaseParameters complete_parameters(const TrinomialPDDE& eq, CaseParameters p) {
  const std::size_t n = eq.arity();
  const bool needs_l = (p.theorem == Theorem::T21 && p.case_id == CaseId::II) ||
                       (p.theorem == Theorem::T22 &&
                        (p.case_id == CaseId::II || p.case_id == CaseId::III));
  if (!needs_l || !p.L.empty()) return p;
  Poly rest = eq.g();
  if (has_h(p)) rest -= h_of_s(p.H, p.d, n);
  if (rest.degree() > 1) return p;
  p.L = rest.linear_part();
  const Cx k = rest.constant_term();
  if (p.theorem == Theorem::T21) {
    p.B1 = k;
  } else if (p.case_id == CaseId::II) {
    p.R = k;
  } else {
    p.R2 = k;
  }
  return p;
}

ConstraintReport check_constraints(const TrinomialPDDE& eq, const CaseParameters& params) {
  const Ctx x = make_ctx(eq, params);
  try {
    check_lengths(x);
    return rows_for(x);
  } catch (const Error& e) {
    ConstraintReport rep;
    rep.add_indicator(std::string("parameters complete (") + e.what() + ")", false);
    return rep;
  }
}

std::pair<SolutionCandidate, ConstraintReport> construct(const TrinomialPDDE& eq,
                                                         const CaseParameters& params) {
  const Ctx x = make_ctx(eq, params);
  validate(x);
  ExpPoly principal(x.n);
  if (params.theorem == Theorem::T21) {
    switch (params.case_id) {
      case CaseId::I: principal = build_21_i(x); break;
      case CaseId::II: principal = build_21_ii(x); break;
      case CaseId::III: principal = build_21_iii(x); break;
      case CaseId::IV: break;
    }
  } else {
    switch (params.case_id) {
      case CaseId::I: principal = build_22_i(x); break;
      case CaseId::II: principal = build_22_ii(x); break;
      case CaseId::III: principal = build_22_iii(x); break;
      case CaseId::IV: principal = build_22_iv(x); break;
    }
  }
  ExpPoly kernel = params.component.empty() ? ExpPoly(x.n) : embed(params.component, eq);
  SolutionCandidate cand{principal + kernel, principal, kernel, params, eq};
  return {std::move(cand), rows_for(x)};
}

Cx xi_constraint_lhs(Cx a, Cx b, const OmegaPair& roots, Cx xi, Cx lambda) {
  const Cx x2 = xi * xi;
  return csqrt(a) * (x2 - 1.0) * lambda / (2.0 * csqrt(b) * (roots.omega2 * x2 - roots.omega1));
}

std::vector<Cx> solve_xi(Cx a, Cx b, const OmegaPair& roots, Theorem theorem, Cx lambda, Cx Lc) {
  const Cx A = csqrt(a) * lambda / (2.0 * csqrt(b));
  Cx E = cexp(Lc / 2.0);
  if (theorem == Theorem::T22) E -= 1.0;
  const Cx den = A - E * roots.omega2;
  const double scale = std::abs(A) + std::abs(E * roots.omega2);
  if (std::abs(den) <= 1e-12 * std::max(scale, 1e-300)) {
    throw ConstructionError("no solution in this family: A = E·ω₂");
  }
  const Cx xi2 = (A - E * roots.omega1) / den;
  if (std::abs(xi2) <= 1e-12 * std::max(1.0, scale / std::abs(den))) {
    throw ConstructionError("ξ² = 0, but ξ ≠ 0 is required");
  }
  const Cx xi = csqrt(xi2);
  return {xi, -xi};
}

std::vector<Cx> solve_xi(const TrinomialPDDE& eq, Theorem theorem, const std::vector<Cx>& coeffs,
                         Branch branch) {
  require_len(coeffs, eq.arity(), theorem == Theorem::T21 ? "L" : "k");
  return solve_xi(eq.a(), eq.b(), eq.roots(branch), theorem, directional_of(eq, coeffs),
                  dot(coeffs, eq.c()));
}

CaseParameters solve_split(const TrinomialPDDE& eq, Branch branch, int root, long log_branch) {
  const Poly& g = eq.g();
  if (g.degree() > 1) throw ConstructionError("splitting g requires g of degree at most 1");
  const std::vector<Cx> lg = g.linear_part();
  const Cx lam_g = directional_of(eq, lg);
  const Cx ell_g = dot(lg, eq.c());
  const OmegaPair r = eq.roots(branch);
  const Cx ra = csqrt(eq.a()), rb = csqrt(eq.b());
  const Cx two_pi_i_k(0.0, 2.0 * kPi * static_cast<double>(log_branch));
  const bool shift = eq.variant() == Variant::Shift;

  // A2 l^2 + A1 l + A0 = 0 for l = lambda_1.
  Cx A2, A1, A0;
  const Cx p = ra / (rb * r.omega2), q = ra / (rb * r.omega1);
  if (shift) {
    A2 = 1.0;
    A1 = -lam_g;
    A0 = eq.b() / eq.a() * cexp(ell_g);
  } else {
    A2 = -p * q;
    A1 = p - q + p * q * lam_g;
    A0 = 1.0 + q * lam_g - cexp(ell_g);
  }
  const Cx disc = csqrt(A1 * A1 - 4.0 * A2 * A0);
  // Stable pair of roots.
  const Cx qq = -0.5 * (A1 + (std::real(std::conj(A1) * disc) >= 0.0 ? disc : -disc));
  Cx roots[2];
  if (qq == Cx{}) {
    roots[0] = roots[1] = Cx{};
  } else {
    roots[0] = qq / A2;
    roots[1] = A0 / qq;
  }
  const Cx l1 = roots[root == 0 ? 0 : 1];
  const Cx l2 = lam_g - l1;
  if (std::abs(l1) < 1e-12 || std::abs(l2) < 1e-12) {
    throw ConstructionError("zero denominator: a split exponent has zero directional derivative");
  }
  Cx ell1;
  if (shift) {
    ell1 = clog(ra * l1 / (r.omega2 * rb)) + two_pi_i_k;
  } else {
    const Cx v1 = 1.0 + p * l1, v2 = 1.0 + q * l2;
    if (std::abs(v1) < 1e-12 || std::abs(v2) < 1e-12) {
      throw ConstructionError("no split: e^{L_l(c)} would vanish");
    }
    ell1 = clog(v1) + two_pi_i_k;
  }

  const std::size_t n = eq.arity();
  const Cx t = lam_g == Cx{} ? Cx{} : l1 / lam_g;
  std::vector<Cx> L1(n), L2(n);
  for (std::size_t k = 0; k < n; ++k) L1[k] = t * lg[k];
  const auto u = least_norm_linear(eq, l1 - directional_of(eq, L1), ell1 - dot(L1, eq.c()));
  for (std::size_t k = 0; k < n; ++k) {
    std::tie(L1[k], L2[k]) = exact_complement(lg[k], L1[k] + u[k]);
  }

  CaseParameters out;
  out.theorem = shift ? Theorem::T21 : Theorem::T22;
  out.case_id = shift ? CaseId::III : CaseId::IV;
  out.branch = branch;
  out.log_branch = log_branch;
  out.L1 = std::move(L1);
  out.L2 = std::move(L2);
  const Cx cg = g.constant_term();
  const Cx half = cg * 0.5;
  if (shift) {
    out.E1 = half;
    out.E2 = cg - half;
  } else {
    out.R3 = half;
    out.R4 = cg - half;
  }
  return out;
}

}  // namespace tpdde
