#ifndef TPDDE_POLY_HPP
#define TPDDE_POLY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpdde/cx.hpp"

namespace tpdde {

/// Exponent vector of a monomial z1^e1 ... zn^en.
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& m);

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const MultiIndex& x, const MultiIndex& y) const;
};

/// Sparse polynomial in `arity` complex variables with complex coefficients.
///
/// Stored coefficients are never exactly zero; any other magnitude is kept
/// as is. Terms iterate in graded lexicographic order of their multi-index.
class Poly {
 public:
  using Terms = std::map<MultiIndex, Cx, GrlexLess>;

  explicit Poly(std::size_t arity = 0) : arity_(arity) {}

  static Poly constant(std::size_t arity, Cx value);
  /// z_k, 0-based.
  static Poly variable(std::size_t arity, std::size_t k);
  static Poly monomial(MultiIndex exponents, Cx coeff);
  /// coeffs[0] z_1 + ... + coeffs[n-1] z_n + constant.
  static Poly linear(std::span<const Cx> coeffs, Cx constant = {});

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  unsigned degree() const;

  Cx coefficient(const MultiIndex& m) const;
  Cx constant_term() const;
  Poly without_constant() const;
  /// Coefficients of the degree-1 monomials, one per variable.
  std::vector<Cx> linear_part() const;
  /// True when x_k does not occur in any monomial.
  bool independent_of(std::size_t k) const;
  double max_abs_coeff() const;

  /// Adds `coeff` to the coefficient of `m`, pruning an exact zero.
  void add_term(const MultiIndex& m, Cx coeff);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(Cx s);
  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(Poly p, Cx s) { return p *= s; }
  friend Poly operator*(Cx s, Poly p) { return p *= s; }
  friend Poly operator*(const Poly& p, const Poly& q);
  Poly operator-() const;

  /// Exact structural equality.
  friend bool operator==(const Poly& p, const Poly& q) {
    return p.arity_ == q.arity_ && p.terms_ == q.terms_;
  }

 private:
  std::size_t arity_;
  Terms terms_;
};

/// Total order on polynomials, used to key exponential terms.
struct PolyOrder {
  bool operator()(const Poly& p, const Poly& q) const;
};

/// Formal partial derivative in z_k (0-based).
Poly poly_partial(const Poly& p, std::size_t k);

/// alpha * d/dz_i + beta * d/dz_j.
Poly poly_directional(const Poly& p, Cx alpha, Cx beta, std::size_t i, std::size_t j);

/// p(z + c), expanded binomially.
Poly poly_translate(const Poly& p, std::span<const Cx> c);

Cx poly_eval(const Poly& p, std::span<const Cx> z);

/// h(s(z)) for a univariate h (arity 1) and an n-variate s.
Poly compose_univariate(const Poly& h, const Poly& s);

/// p(args[0], ..., args[m-1]) for p of arity m; args share one arity.
Poly poly_compose(const Poly& p, std::span<const Poly> args);

/// w = z_j - (beta/alpha) z_i as an n-variate polynomial.
Poly characteristic_coordinate(std::size_t arity, Cx alpha, Cx beta, std::size_t i,
                               std::size_t j);

/// Univariate psi with p(z) = psi(z_j - (beta/alpha) z_i), if one exists.
///
/// Recomposition is compared coefficientwise with `tol`, relative to the
/// largest coefficient of p.
std::optional<Poly> direction_decompose(const Poly& p, Cx alpha, Cx beta, std::size_t i,
                                        std::size_t j, Tolerance tol = {});

/// Coefficientwise approximate equality, relative to the larger of the two
/// polynomials' largest coefficient.
bool approx_equal(const Poly& p, const Poly& q, Tolerance tol = {});

/// Largest |coefficient| of p - q.
double max_abs_difference(const Poly& p, const Poly& q);

/// Human-readable and parseable spelling, e.g. "(2)*z1^2 + (1+1*i)*z2".
std::string format_poly(const Poly& p);

}  // namespace tpdde

#endif  // TPDDE_POLY_HPP
