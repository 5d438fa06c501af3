#include "tpdde/equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "tpdde/errors.hpp"

namespace tpdde {

OmegaPair omega_roots(Cx a, Cx b, Cx omega, Branch branch, Tolerance tol) {
  if (a == Cx{} || b == Cx{}) throw DomainError("omega_roots: a and b must be nonzero");
  if (approx_eq(omega * omega, a * b, tol)) {
    throw DomainError("omega_roots: degenerate trinomial, omega^2 = ab");
  }
  const Cx root_ab = csqrt(a) * csqrt(b);
  const Cx disc = csqrt(omega * omega - a * b);
  const Cx plus = (-omega + disc) / root_ab;
  const Cx minus = (-omega - disc) / root_ab;
  if (branch == Branch::Plus) return {plus, minus, branch, root_ab};
  return {minus, plus, branch, root_ab};
}

TrinomialPDDE::TrinomialPDDE(std::size_t i, std::size_t j, Cx a, Cx b, Cx omega, Cx alpha,
                             Cx beta, std::vector<Cx> c, Poly g, Variant variant,
                             Tolerance tol)
    : i_(i),
      j_(j),
      a_(a),
      b_(b),
      omega_(omega),
      alpha_(alpha),
      beta_(beta),
      c_(std::move(c)),
      g_(std::move(g)),
      variant_(variant),
      tol_(tol) {
  const std::size_t n = c_.size();
  if (g_.arity() != n) {
    throw ValidationError("g has arity " + std::to_string(g_.arity()) + " but c has " +
                          std::to_string(n) + " components");
  }
  if (!(i_ < j_ && j_ < n)) throw ValidationError("hypothesis violated: 1 ≤ i < j ≤ n");
  for (Cx x : {a_, b_, omega_, alpha_, beta_}) require_finite(x, "equation coefficient");
  for (Cx x : c_) require_finite(x, "shift vector");
  if (a_ == Cx{} || b_ == Cx{} || alpha_ == Cx{}) {
    throw ValidationError("hypothesis violated: a, b, α ≠ 0");
  }
  if (approx_eq(omega_ * omega_, a_ * b_, tol_)) {
    throw ValidationError("hypothesis violated: ω² ≠ ab");
  }
  if (std::all_of(c_.begin(), c_.end(), [](Cx x) { return x == Cx{}; })) {
    throw ValidationError("hypothesis violated: c ∈ Cⁿ∖{0}");
  }
}

OmegaPair TrinomialPDDE::roots(Branch branch) const {
  return omega_roots(a_, b_, omega_, branch, tol_);
}

Poly TrinomialPDDE::w() const { return characteristic_coordinate(arity(), alpha_, beta_, i_, j_); }

Cx TrinomialPDDE::period() const { return c_[j_] - (beta_ / alpha_) * c_[i_]; }

ExpPoly TrinomialPDDE::D(const ExpPoly& f) const {
  return ep_directional(f, alpha_, beta_, i_, j_);
}

ExpPoly TrinomialPDDE::S(const ExpPoly& f) const {
  return variant_ == Variant::Shift ? ep_translate(f, c_) : ep_delta(f, c_);
}

Poly TrinomialPDDE::D(const Poly& p) const { return poly_directional(p, alpha_, beta_, i_, j_); }

TrinomialPDDE TrinomialPDDE::with_g(Poly g) const {
  return TrinomialPDDE(i_, j_, a_, b_, omega_, alpha_, beta_, c_, std::move(g), variant_, tol_);
}

TrinomialPDDE TrinomialPDDE::with_variant(Variant v) const {
  return TrinomialPDDE(i_, j_, a_, b_, omega_, alpha_, beta_, c_, g_, v, tol_);
}

namespace {

void require_arity(const TrinomialPDDE& eq, const ExpPoly& f) {
  if (f.arity() != eq.arity()) {
    throw ArityError("candidate has arity " + std::to_string(f.arity()) +
                     ", equation has " + std::to_string(eq.arity()));
  }
}

}  // namespace

ExpPoly lhs_apply(const TrinomialPDDE& eq, const ExpPoly& f) {
  require_arity(eq, f);
  const ExpPoly df = eq.D(f);
  const ExpPoly sf = eq.S(f);
  return eq.a() * (df * df) + (2.0 * eq.omega()) * (df * sf) + eq.b() * (sf * sf);
}

ExpPoly residual(const TrinomialPDDE& eq, const ExpPoly& f) {
  return lhs_apply(eq, f) - ep_exp(eq.g());
}

bool verify_symbolic(const TrinomialPDDE& eq, const ExpPoly& f, Tolerance tol) {
  return ep_is_zero(residual(eq, f), tol);
}

std::vector<std::vector<Cx>> sample_points(std::size_t arity, std::size_t count,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<Cx>> pts(count, std::vector<Cx>(arity));
  for (auto& z : pts) {
    for (auto& x : z) {
      const double re = u(rng);
      const double im = u(rng);
      x = {re, im};
    }
  }
  return pts;
}

namespace {

struct NumericForms {
  ExpPoly df;
  ExpPoly f;
};

double rel_residual(const TrinomialPDDE& eq, const NumericForms& nf, std::span<const Cx> z) {
  std::vector<Cx> zc(z.begin(), z.end());
  for (std::size_t k = 0; k < zc.size(); ++k) zc[k] += eq.c()[k];
  const Cx d = ep_eval(nf.df, z);
  Cx s = ep_eval(nf.f, zc);
  if (eq.variant() == Variant::Difference) s -= ep_eval(nf.f, z);
  const Cx lhs = eq.a() * d * d + 2.0 * eq.omega() * d * s + eq.b() * s * s;
  const Cx rhs = cexp(poly_eval(eq.g(), z));
  const double r = std::abs(require_finite(lhs - rhs, "residual")) / (1.0 + std::abs(rhs));
  if (!std::isfinite(r)) throw EvalError("non-finite residual");
  return r;
}

std::optional<double> rel_residual_or_overflow(const TrinomialPDDE& eq, const NumericForms& nf,
                                               std::span<const Cx> z) {
  try {
    return rel_residual(eq, nf, z);
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

}  // namespace

double relative_residual_at(const TrinomialPDDE& eq, const ExpPoly& f, std::span<const Cx> z) {
  require_arity(eq, f);
  if (z.size() != eq.arity()) throw ArityError("sample point has wrong arity");
  return rel_residual(eq, NumericForms{eq.D(f), f}, z);
}

VerificationReport verify_numeric(const TrinomialPDDE& eq, const ExpPoly& f,
                                  std::size_t samples, std::uint64_t seed, double tol,
                                  Exec exec) {
  require_arity(eq, f);
  if (samples == 0) throw DomainError("verify_numeric: samples must be at least 1");
  const auto pts = sample_points(eq.arity(), samples, seed);
  const NumericForms nf{eq.D(f), f};
  std::vector<std::optional<double>> res(samples);
  const auto count = static_cast<std::ptrdiff_t>(samples);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) res[k] = rel_residual_or_overflow(eq, nf, pts[k]);
  } else {
    for (std::ptrdiff_t k = 0; k < count; ++k) res[k] = rel_residual_or_overflow(eq, nf, pts[k]);
  }

  VerificationReport rep;
  rep.seed = seed;
  for (const auto& r : res) {
    if (!r) {
      ++rep.overflow_count;
      continue;
    }
    ++rep.samples;
    rep.max_rel_residual = std::max(rep.max_rel_residual, *r);
  }
  if (rep.samples == 0) rep.max_rel_residual = std::numeric_limits<double>::infinity();
  rep.numeric_pass = rep.samples > 0 && rep.max_rel_residual < tol;
  return rep;
}

VerificationReport verify(const TrinomialPDDE& eq, const ExpPoly& f, std::size_t samples,
                          std::uint64_t seed, double tol, Tolerance sym_tol) {
  VerificationReport rep = verify_numeric(eq, f, samples, seed, tol);
  rep.symbolic_zero = verify_symbolic(eq, f, sym_tol);
  return rep;
}

bool factorization_check(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                         Branch branch, Tolerance tol) {
  return factorization_check(a, b, omega, F, G, omega_roots(a, b, omega, branch, tol), tol);
}

bool factorization_check(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                         const OmegaPair& roots, Tolerance tol) {
  if (approx_eq(omega * omega, a * b, tol)) {
    throw DomainError("factorization_check: degenerate trinomial, omega^2 = ab");
  }
  const Cx ra = csqrt(a);
  const Cx rb = csqrt(b);
  const ExpPoly lhs = a * (F * F) + (2.0 * omega) * (F * G) + b * (G * G);
  const ExpPoly rhs = (ra * F - (roots.omega1 * rb) * G) * (ra * F - (roots.omega2 * rb) * G);
  return ep_is_zero(lhs - rhs, tol);
}

double factorization_rel_residual(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                                  const OmegaPair& roots, std::span<const Cx> z) {
  const Cx f = ep_eval(F, z);
  const Cx g = ep_eval(G, z);
  const Cx ra = csqrt(a);
  const Cx rb = csqrt(b);
  const Cx t1 = a * f * f;
  const Cx t2 = 2.0 * omega * f * g;
  const Cx t3 = b * g * g;
  const Cx prod = (ra * f - roots.omega1 * rb * g) * (ra * f - roots.omega2 * rb * g);
  return std::abs(t1 + t2 + t3 - prod) / (1.0 + std::abs(t1) + std::abs(t2) + std::abs(t3));
}

std::pair<Cx, Cx> m_constants(Cx a, Cx b, const OmegaPair& roots, Cx xi) {
  if (xi == Cx{}) throw DomainError("m_constants: xi must be nonzero");
  const Cx w1 = roots.omega1;
  const Cx w2 = roots.omega2;
  const Cx m1 = (w2 * xi - w1 / xi) / (csqrt(a) * (w2 - w1));
  const Cx m2 = (xi - 1.0 / xi) / (csqrt(b) * (w2 - w1));
  return {m1, m2};
}

Cx n1_constant(Cx a, Cx b, const OmegaPair& roots) {
  return m_constants(a, b, roots, csqrt(roots.omega1 / roots.omega2)).second;
}

}  // namespace tpdde
