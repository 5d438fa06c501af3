#include "tpdde/cx.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tpdde/errors.hpp"

namespace tpdde {

Tolerance Tolerance::make(double abs_tol, double rel_tol) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !std::isfinite(abs_tol) ||
      !std::isfinite(rel_tol)) {
    throw DomainError("tolerances must be finite and strictly positive");
  }
  return Tolerance{abs_tol, rel_tol};
}

bool is_finite(Cx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

Cx require_finite(Cx x, const char* what) {
  if (!is_finite(x)) throw EvalError(std::string("non-finite value in ") + what);
  return x;
}

namespace {

// Signed zeros on the cut select the lower sheet in libm; fold them to +0.
Cx unsigned_zero_imag(Cx x) {
  if (x.imag() == 0.0) return {x.real(), 0.0};
  return x;
}

}  // namespace

Cx csqrt(Cx x) {
  require_finite(x, "csqrt");
  Cx r = std::sqrt(unsigned_zero_imag(x));
  if (r.real() == 0.0) r = {0.0, std::abs(r.imag())};
  return r;
}

Cx clog(Cx x) {
  require_finite(x, "clog");
  if (x == Cx{}) throw DomainError("logarithm of zero");
  return std::log(unsigned_zero_imag(x));
}

Cx cexp(Cx x) {
  require_finite(x, "cexp");
  if (x.real() > 709.0) throw EvalError("exponential overflow");
  return require_finite(std::exp(x), "cexp");
}

bool approx_eq(Cx x, Cx y, Tolerance tol) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= tol.abs_tol + tol.rel_tol * scale;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

std::string format_cx(Cx x) {
  const double re = x.real();
  const double im = x.imag();
  if (im == 0.0) return format_double(re == 0.0 ? 0.0 : re);
  if (re == 0.0) return format_double(im) + "*i";
  std::string out = format_double(re);
  if (im < 0.0 || (im == 0.0 && std::signbit(im))) {
    out += "-" + format_double(-im) + "*i";
  } else {
    out += "+" + format_double(im) + "*i";
  }
  return out;
}

}  // namespace tpdde
