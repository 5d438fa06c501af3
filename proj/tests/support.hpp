// Random generators and independent oracles shared by the test binaries.
#ifndef TPDDE_TESTS_SUPPORT_HPP
#define TPDDE_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tpdde/exppoly.hpp"
#include "tpdde/poly.hpp"

namespace tpdde::testing {

using Rng = std::mt19937_64;

inline double uni(Rng& rng, double r) { return std::uniform_real_distribution<double>(-r, r)(rng); }
inline long uint_in(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
inline Cx rand_cx(Rng& rng, double r = 1.0) { return {uni(rng, r), uni(rng, r)}; }

// Multiples of 1/8 keep products and shifts by integer vectors exact.
inline Cx dyadic(Rng& rng, double r = 1.0) {
  const long m = static_cast<long>(r * 8);
  return {static_cast<double>(uint_in(rng, -m, m)) / 8, static_cast<double>(uint_in(rng, -m, m)) / 8};
}

inline std::vector<Cx> rand_vec(Rng& rng, std::size_t n, double r = 1.0) {
  std::vector<Cx> v(n);
  for (auto& x : v) x = rand_cx(rng, r);
  return v;
}

inline std::vector<Cx> int_vec(Rng& rng, std::size_t n, long r) {
  std::vector<Cx> v(n);
  for (auto& x : v) x = static_cast<double>(uint_in(rng, -r, r));
  return v;
}

/// Up to `terms` monomials of total degree <= deg.
inline Poly rand_poly(Rng& rng, std::size_t n, unsigned deg, std::size_t terms, bool exact = false,
                      double r = 1.0) {
  Poly p(n);
  for (std::size_t t = 0; t < terms; ++t) {
    MultiIndex m(n, 0);
    unsigned left = static_cast<unsigned>(uint_in(rng, 0, deg));
    while (left > 0) {
      ++m[static_cast<std::size_t>(uint_in(rng, 0, static_cast<long>(n) - 1))];
      --left;
    }
    p.add_term(m, exact ? dyadic(rng, r) : rand_cx(rng, r));
  }
  return p;
}

/// <= 3 terms, exponent degree <= 2, coefficient degree <= 1.
inline ExpPoly rand_exppoly(Rng& rng, std::size_t n, bool exact = false) {
  ExpPoly f(n);
  const long terms = uint_in(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    Poly c = rand_poly(rng, n, 1, 2, exact);
    if (c.is_zero()) c = Poly::constant(n, 1.0);
    f.add_term(c, rand_poly(rng, n, 2, 3, exact, 0.5));
  }
  return f;
}

inline std::vector<Cx> rand_point(Rng& rng, std::size_t n) { return rand_vec(rng, n, 1.0); }

/// Newton iteration for the positive square root of x > 0, from std::exp/log-free arithmetic.
inline double newton_sqrt(double x) {
  double y = x > 1 ? x : 1.0;
  for (int k = 0; k < 200; ++k) y = 0.5 * (y + x / y);
  return y;
}

/// Solves e^y = x for x > 0 by bisection on std::exp.
inline double bisect_log(double x) {
  double lo = -50, hi = 50;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double rel_err(Cx x, Cx y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace tpdde::testing

#endif  // TPDDE_TESTS_SUPPORT_HPP
