#include "tpdde/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tpdde/errors.hpp"

namespace tpdde {

namespace {

void require_same_arity(const ExpPoly& f, const ExpPoly& g) {
  if (f.arity() != g.arity()) {
    throw ArityError("exponential polynomial arity mismatch: " + std::to_string(f.arity()) +
                     " vs " + std::to_string(g.arity()));
  }
}

// e^{c} for a folded exponent constant. Purely imaginary multiples of pi/2
// that are within a few ulps of exact give the exact unit, so periodic
// factors like e^{2 pi i k} fold to 1 and the terms stay comparable.
Cx fold_factor(Cx c) {
  if (c.real() == 0.0) {
    const double q = c.imag() / (kPi / 2.0);
    const double m = std::nearbyint(q);
    if (std::abs(q - m) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(m))) {
      switch (static_cast<long long>(std::fmod(std::fmod(m, 4.0) + 4.0, 4.0))) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
  }
  return cexp(c);
}

}  // namespace

ExpPoly ExpPoly::constant(std::size_t arity, Cx value) {
  return ep_from_poly(Poly::constant(arity, value));
}

bool ExpPoly::is_polynomial() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

Poly ExpPoly::polynomial_part() const { return coefficient(Poly(arity_)); }

Poly ExpPoly::coefficient(const Poly& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Poly(arity_) : it->second;
}

void ExpPoly::note_scale(double s) { scale_ = std::max(scale_, s); }

void ExpPoly::add_canonical(const Poly& exponent, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ExpPoly::add_term(const Poly& coeff, const Poly& exponent) {
  if (coeff.arity() != arity_ || exponent.arity() != arity_) {
    throw ArityError("term arity does not match exponential polynomial arity " +
                     std::to_string(arity_));
  }
  if (coeff.is_zero()) return;
  const Cx c0 = exponent.constant_term();
  Poly scaled = coeff;
  if (c0 != Cx{}) scaled *= fold_factor(c0);
  note_scale(scaled.max_abs_coeff());
  add_canonical(exponent.without_constant(), scaled);
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  require_same_arity(*this, other);
  note_scale(other.scale_);
  for (const auto& [q, p] : other.terms_) add_canonical(q, p);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& other) {
  require_same_arity(*this, other);
  note_scale(other.scale_);
  for (const auto& [q, p] : other.terms_) add_canonical(q, -p);
  return *this;
}

ExpPoly& ExpPoly::operator*=(Cx s) {
  scale_ *= std::abs(s);
  if (s == Cx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

ExpPoly operator*(const ExpPoly& f, const ExpPoly& g) {
  require_same_arity(f, g);
  ExpPoly r(f.arity());
  r.note_scale(f.scale() * g.scale());
  for (const auto& [qf, pf] : f.terms()) {
    for (const auto& [qg, pg] : g.terms()) {
      const Poly coeff = pf * pg;
      r.note_scale(coeff.max_abs_coeff());
      r.add_canonical(qf + qg, coeff);
    }
  }
  return r;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly r = *this;
  for (auto& [q, p] : r.terms_) p = -p;
  return r;
}

ExpPoly ep_from_poly(const Poly& p) {
  ExpPoly f(p.arity());
  f.add_term(p, Poly(p.arity()));
  return f;
}

ExpPoly ep_exp(const Poly& q) {
  ExpPoly f(q.arity());
  f.add_term(Poly::constant(q.arity(), 1.0), q);
  return f;
}

ExpPoly ep_directional(const ExpPoly& f, Cx alpha, Cx beta, std::size_t i, std::size_t j) {
  if (i >= f.arity() || j >= f.arity()) {
    throw ArityError("directional derivative axes out of range for arity " +
                     std::to_string(f.arity()));
  }
  ExpPoly r(f.arity());
  r.note_scale(f.scale() * std::max(std::abs(alpha), std::abs(beta)));
  for (const auto& [q, p] : f.terms()) {
    const Poly dq = poly_directional(q, alpha, beta, i, j);
    r.add_term(poly_directional(p, alpha, beta, i, j) + p * dq, q);
  }
  return r;
}

ExpPoly ep_translate(const ExpPoly& f, std::span<const Cx> c) {
  if (c.size() != f.arity()) {
    throw ArityError("shift vector length " + std::to_string(c.size()) +
                     " does not match arity " + std::to_string(f.arity()));
  }
  ExpPoly r(f.arity());
  for (const auto& [q, p] : f.terms()) {
    const Poly shifted = poly_translate(q, c);
    r.note_scale(f.scale() * std::exp(shifted.constant_term().real()));
    r.add_term(poly_translate(p, c), shifted);
  }
  return r;
}

ExpPoly ep_delta(const ExpPoly& f, std::span<const Cx> c) {
  return ep_translate(f, c) - f;
}

bool ep_is_zero(const ExpPoly& f, Tolerance tol) {
  const double threshold = tol.abs_tol + tol.rel_tol * f.scale();
  // Exponents that agree within tolerance are one term that rounding split
  // in two (e.g. L1 + L2 against g); their coefficients are summed first.
  std::vector<const std::pair<const Poly, Poly>*> terms;
  for (const auto& t : f.terms()) terms.push_back(&t);
  std::vector<bool> used(terms.size(), false);
  for (std::size_t a = 0; a < terms.size(); ++a) {
    if (used[a]) continue;
    Poly sum = terms[a]->second;
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (!used[b] && approx_equal(terms[a]->first, terms[b]->first, tol)) {
        used[b] = true;
        sum += terms[b]->second;
      }
    }
    if (sum.max_abs_coeff() > threshold) return false;
  }
  return true;
}

Cx ep_eval(const ExpPoly& f, std::span<const Cx> z) {
  Cx sum{};
  for (const auto& [q, p] : f.terms()) {
    sum += poly_eval(p, z) * cexp(poly_eval(q, z));
  }
  return require_finite(sum, "ep_eval");
}

unsigned ep_growth_order(const ExpPoly& f) {
  unsigned order = 0;
  for (const auto& [q, p] : f.terms()) order = std::max(order, q.degree());
  return order;
}

ExpPoly ep_compose(const ExpPoly& f, std::span<const Poly> args) {
  if (args.size() != f.arity()) {
    throw ArityError("ep_compose: expected " + std::to_string(f.arity()) + " arguments");
  }
  if (args.empty()) return f;
  ExpPoly r(args.front().arity());
  for (const auto& [q, p] : f.terms()) {
    r.add_term(poly_compose(p, args), poly_compose(q, args));
  }
  return r;
}

}  // namespace tpdde
