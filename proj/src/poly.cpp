#include "tpdde/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tpdde/errors.hpp"

namespace tpdde {

unsigned total_degree(const MultiIndex& m) {
  return std::accumulate(m.begin(), m.end(), 0u);
}

bool GrlexLess::operator()(const MultiIndex& x, const MultiIndex& y) const {
  const unsigned dx = total_degree(x);
  const unsigned dy = total_degree(y);
  if (dx != dy) return dx < dy;
  return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
}

namespace {

void require_same_arity(const Poly& p, const Poly& q) {
  if (p.arity() != q.arity()) {
    throw ArityError("polynomial arity mismatch: " + std::to_string(p.arity()) + " vs " +
                     std::to_string(q.arity()));
  }
}

void require_axis(const Poly& p, std::size_t k) {
  if (k >= p.arity()) {
    throw ArityError("axis " + std::to_string(k + 1) + " out of range for arity " +
                     std::to_string(p.arity()));
  }
}

Cx ipow(Cx base, unsigned e) {
  Cx r{1.0, 0.0};
  for (unsigned k = 0; k < e; ++k) r *= base;
  return r;
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// Calls fn(sub) for every multi-index sub <= m componentwise.
template <typename Fn>
void for_each_subindex(const MultiIndex& m, Fn&& fn) {
  MultiIndex sub(m.size(), 0);
  while (true) {
    fn(sub);
    std::size_t k = 0;
    while (k < m.size() && sub[k] == m[k]) {
      sub[k] = 0;
      ++k;
    }
    if (k == m.size()) return;
    ++sub[k];
  }
}

}  // namespace

Poly Poly::constant(std::size_t arity, Cx value) {
  Poly p(arity);
  p.add_term(MultiIndex(arity, 0), value);
  return p;
}

Poly Poly::variable(std::size_t arity, std::size_t k) {
  Poly p(arity);
  require_axis(p, k);
  MultiIndex m(arity, 0);
  m[k] = 1;
  p.add_term(m, 1.0);
  return p;
}

Poly Poly::monomial(MultiIndex exponents, Cx coeff) {
  Poly p(exponents.size());
  p.add_term(exponents, coeff);
  return p;
}

Poly Poly::linear(std::span<const Cx> coeffs, Cx constant) {
  Poly p(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    MultiIndex m(coeffs.size(), 0);
    m[k] = 1;
    p.add_term(m, coeffs[k]);
  }
  p.add_term(MultiIndex(coeffs.size(), 0), constant);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

unsigned Poly::degree() const {
  return terms_.empty() ? 0u : total_degree(terms_.rbegin()->first);
}

Cx Poly::coefficient(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Cx{} : it->second;
}

Cx Poly::constant_term() const { return coefficient(MultiIndex(arity_, 0)); }

Poly Poly::without_constant() const {
  Poly p = *this;
  p.terms_.erase(MultiIndex(arity_, 0));
  return p;
}

std::vector<Cx> Poly::linear_part() const {
  std::vector<Cx> out(arity_);
  for (std::size_t k = 0; k < arity_; ++k) {
    MultiIndex m(arity_, 0);
    m[k] = 1;
    out[k] = coefficient(m);
  }
  return out;
}

bool Poly::independent_of(std::size_t k) const {
  return std::none_of(terms_.begin(), terms_.end(),
                      [k](const auto& t) { return t.first[k] != 0; });
}

double Poly::max_abs_coeff() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

void Poly::add_term(const MultiIndex& m, Cx coeff) {
  if (m.size() != arity_) {
    throw ArityError("multi-index length " + std::to_string(m.size()) +
                     " does not match arity " + std::to_string(arity_));
  }
  if (coeff == Cx{}) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Cx{}) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_arity(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_arity(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(Cx s) {
  if (s == Cx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second == Cx{}) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  require_same_arity(p, q);
  Poly r(p.arity());
  MultiIndex m(p.arity());
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      for (std::size_t k = 0; k < m.size(); ++k) m[k] = mp[k] + mq[k];
      r.add_term(m, cp * cq);
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

bool PolyOrder::operator()(const Poly& p, const Poly& q) const {
  if (p.arity() != q.arity()) return p.arity() < q.arity();
  const GrlexLess less;
  auto ip = p.terms().rbegin();
  auto iq = q.terms().rbegin();
  for (; ip != p.terms().rend() && iq != q.terms().rend(); ++ip, ++iq) {
    if (less(ip->first, iq->first)) return true;
    if (less(iq->first, ip->first)) return false;
    const Cx a = ip->second;
    const Cx b = iq->second;
    if (a.real() != b.real()) return a.real() < b.real();
    if (a.imag() != b.imag()) return a.imag() < b.imag();
  }
  return ip == p.terms().rend() && iq != q.terms().rend();
}

Poly poly_partial(const Poly& p, std::size_t k) {
  require_axis(p, k);
  Poly r(p.arity());
  for (const auto& [m, c] : p.terms()) {
    if (m[k] == 0) continue;
    MultiIndex d = m;
    --d[k];
    r.add_term(d, c * static_cast<double>(m[k]));
  }
  return r;
}

Poly poly_directional(const Poly& p, Cx alpha, Cx beta, std::size_t i, std::size_t j) {
  return poly_partial(p, i) * alpha + poly_partial(p, j) * beta;
}

Poly poly_translate(const Poly& p, std::span<const Cx> c) {
  if (c.size() != p.arity()) {
    throw ArityError("shift vector length " + std::to_string(c.size()) +
                     " does not match arity " + std::to_string(p.arity()));
  }
  // Increments are summed apart from the original coefficients so that
  // exactly cancelling contributions leave those coefficients untouched.
  Poly increments(p.arity());
  for (const auto& [m, coeff] : p.terms()) {
    for_each_subindex(m, [&](const MultiIndex& sub) {
      if (sub == m) return;
      Cx factor{1.0, 0.0};
      for (std::size_t k = 0; k < m.size(); ++k) {
        const unsigned e = m[k] - sub[k];
        if (e == 0) continue;
        factor *= binomial(m[k], sub[k]) * ipow(c[k], e);
      }
      increments.add_term(sub, coeff * factor);
    });
  }
  Poly r = p;
  r += increments;
  return r;
}

Cx poly_eval(const Poly& p, std::span<const Cx> z) {
  if (z.size() != p.arity()) {
    throw ArityError("point dimension " + std::to_string(z.size()) +
                     " does not match arity " + std::to_string(p.arity()));
  }
  Cx sum{};
  for (const auto& [m, c] : p.terms()) {
    Cx term = c;
    for (std::size_t k = 0; k < m.size(); ++k) term *= ipow(z[k], m[k]);
    sum += term;
  }
  return sum;
}

Poly compose_univariate(const Poly& h, const Poly& s) {
  if (h.arity() != 1) throw ArityError("compose_univariate expects a univariate outer polynomial");
  Poly r(s.arity());
  const unsigned d = h.degree();
  for (unsigned k = d + 1; k-- > 0;) {
    r = r * s;
    r += Poly::constant(s.arity(), h.coefficient(MultiIndex{k}));
  }
  return r;
}

Poly poly_compose(const Poly& p, std::span<const Poly> args) {
  if (args.size() != p.arity()) {
    throw ArityError("poly_compose: expected " + std::to_string(p.arity()) + " arguments");
  }
  if (args.empty()) return p;
  const std::size_t n = args.front().arity();
  Poly r(n);
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::constant(n, c);
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (unsigned e = 0; e < m[k]; ++e) term = term * args[k];
    }
    r += term;
  }
  return r;
}

Poly characteristic_coordinate(std::size_t arity, Cx alpha, Cx beta, std::size_t i,
                               std::size_t j) {
  if (alpha == Cx{}) throw DomainError("alpha must be nonzero");
  return Poly::variable(arity, j) - Poly::variable(arity, i) * (beta / alpha);
}

std::optional<Poly> direction_decompose(const Poly& p, Cx alpha, Cx beta, std::size_t i,
                                        std::size_t j, Tolerance tol) {
  if (alpha == Cx{}) throw DomainError("direction_decompose: alpha must be nonzero");
  require_axis(p, i);
  require_axis(p, j);
  if (i == j) throw DomainError("direction_decompose: axes must differ");
  for (std::size_t k = 0; k < p.arity(); ++k) {
    if (k != i && k != j && !p.independent_of(k)) return std::nullopt;
  }
  Poly psi(1);
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) psi.add_term(MultiIndex{m[j]}, c);
  }
  const Poly w = characteristic_coordinate(p.arity(), alpha, beta, i, j);
  if (!approx_equal(compose_univariate(psi, w), p, tol)) return std::nullopt;
  return psi;
}

bool approx_equal(const Poly& p, const Poly& q, Tolerance tol) {
  require_same_arity(p, q);
  const double scale = std::max(p.max_abs_coeff(), q.max_abs_coeff());
  return max_abs_difference(p, q) <= tol.abs_tol + tol.rel_tol * scale;
}

double max_abs_difference(const Poly& p, const Poly& q) {
  return (p - q).max_abs_coeff();
}

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(k + 1);
      if (m[k] > 1) mono += "^" + std::to_string(m[k]);
    }
    if (mono.empty()) {
      out += "(" + format_cx(c) + ")";
    } else if (c == Cx(1.0, 0.0)) {
      out += mono;
    } else {
      out += "(" + format_cx(c) + ")*" + mono;
    }
  }
  return out;
}

}  // namespace tpdde
