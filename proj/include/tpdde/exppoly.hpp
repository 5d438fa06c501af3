#ifndef TPDDE_EXPPOLY_HPP
#define TPDDE_EXPPOLY_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "tpdde/cx.hpp"
#include "tpdde/poly.hpp"

namespace tpdde {

/// Finite sum  sum_k p_k(z) e^{q_k(z)}  in canonical form.
///
/// Exponents carry no constant term (constants are folded into the
/// coefficient as a factor e^{q(0)}), are pairwise distinct by exact
/// structural comparison, and key the terms in PolyOrder. Coefficients are
/// never the zero polynomial.
///
/// `scale()` is the largest coefficient magnitude seen while building the
/// value; ep_is_zero measures residual coefficients against it.
class ExpPoly {
 public:
  /// exponent -> coefficient
  using Terms = std::map<Poly, Poly, PolyOrder>;

  explicit ExpPoly(std::size_t arity = 0) : arity_(arity) {}

  static ExpPoly constant(std::size_t arity, Cx value);

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double scale() const { return scale_; }

  /// True when every term has the zero exponent.
  bool is_polynomial() const;
  /// The coefficient of e^0 (zero polynomial if absent).
  Poly polynomial_part() const;
  /// Coefficient of e^{exponent}; `exponent` must have no constant term.
  Poly coefficient(const Poly& exponent) const;

  /// Adds coeff * e^{exponent}, folding the exponent's constant term.
  void add_term(const Poly& coeff, const Poly& exponent);

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator-=(const ExpPoly& other);
  ExpPoly& operator*=(Cx s);
  friend ExpPoly operator+(ExpPoly f, const ExpPoly& g) { return f += g; }
  friend ExpPoly operator-(ExpPoly f, const ExpPoly& g) { return f -= g; }
  friend ExpPoly operator*(ExpPoly f, Cx s) { return f *= s; }
  friend ExpPoly operator*(Cx s, ExpPoly f) { return f *= s; }
  friend ExpPoly operator*(const ExpPoly& f, const ExpPoly& g);
  ExpPoly operator-() const;

  /// Structural equality of the canonical term lists (scale is ignored).
  friend bool operator==(const ExpPoly& f, const ExpPoly& g) {
    return f.arity_ == g.arity_ && f.terms_ == g.terms_;
  }

  /// Widens the tracked scale; used when a value is rebuilt term by term.
  void note_scale(double s);

 private:
  void add_canonical(const Poly& exponent, const Poly& coeff);

  std::size_t arity_;
  Terms terms_;
  double scale_ = 0.0;
};

ExpPoly ep_from_poly(const Poly& p);

/// e^{q}, normalized to e^{q(0)} e^{q - q(0)}.
ExpPoly ep_exp(const Poly& q);

/// alpha d/dz_i + beta d/dz_j, termwise (dp + p dq) e^q.
ExpPoly ep_directional(const ExpPoly& f, Cx alpha, Cx beta, std::size_t i, std::size_t j);

/// f(z + c).
ExpPoly ep_translate(const ExpPoly& f, std::span<const Cx> c);

/// f(z + c) - f(z).
ExpPoly ep_delta(const ExpPoly& f, std::span<const Cx> c);

/// Zero test in the exponential-polynomial class.
///
/// Distinct exponents have non-constant pairwise differences, so a sum
/// vanishes identically iff every coefficient polynomial does; a
/// coefficient counts as zero when |c| <= abs_tol + rel_tol * f.scale().
/// Exponents equal within `tol` are merged before the test.
bool ep_is_zero(const ExpPoly& f, Tolerance tol = {});

/// Numeric value; exp overflow raises EvalError.
Cx ep_eval(const ExpPoly& f, std::span<const Cx> z);

/// Order of growth: the largest total degree among the exponents.
unsigned ep_growth_order(const ExpPoly& f);

/// Substitutes polynomials for the variables: f(args[0], ..., args[m-1]).
/// `f` has arity m; all args share one arity, which the result takes.
ExpPoly ep_compose(const ExpPoly& f, std::span<const Poly> args);

}  // namespace tpdde

#endif  // TPDDE_EXPPOLY_HPP
