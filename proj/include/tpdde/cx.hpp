#ifndef TPDDE_CX_HPP
#define TPDDE_CX_HPP

#include <complex>
#include <string>

namespace tpdde {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Comparison policy: |x - y| <= abs_tol + rel_tol * max(|x|, |y|).
struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  /// Throws DomainError unless both components are strictly positive.
  static Tolerance make(double abs_tol, double rel_tol);
  static Tolerance uniform(double tol) { return make(tol, tol); }
};

bool is_finite(Cx x);

/// Throws EvalError naming `what` when x has a non-finite component.
Cx require_finite(Cx x, const char* what);

/// Principal square root: Re >= 0, and Im >= 0 on the imaginary axis.
Cx csqrt(Cx x);

/// Principal logarithm with Im in (-pi, pi]. Throws DomainError on zero.
Cx clog(Cx x);

/// exp with overflow surfaced as EvalError.
Cx cexp(Cx x);

bool approx_eq(Cx x, Cx y, Tolerance tol = {});

/// Shortest round-trip spelling: "2", "-1.5", "1+2*i", "0.5*i".
std::string format_cx(Cx x);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace tpdde

#endif  // TPDDE_CX_HPP
