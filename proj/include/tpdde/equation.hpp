#ifndef TPDDE_EQUATION_HPP
#define TPDDE_EQUATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tpdde/cx.hpp"
#include "tpdde/exppoly.hpp"
#include "tpdde/poly.hpp"

namespace tpdde {

/// S(f) = f(z+c) or S(f) = f(z+c) - f(z).
enum class Variant { Shift, Difference };

/// Which sign of the square root goes into omega1.
enum class Branch { Plus, Minus };

inline Branch other(Branch b) { return b == Branch::Plus ? Branch::Minus : Branch::Plus; }

/// Roots with a F^2 + 2 omega F G + b G^2 = (sqrt(a)F - w1 sqrt(b)G)(sqrt(a)F - w2 sqrt(b)G).
struct OmegaPair {
  Cx omega1;
  Cx omega2;
  Branch branch = Branch::Plus;
  /// csqrt(a) * csqrt(b), the sqrt(ab) used in both roots.
  Cx root_ab;
};

/// Throws DomainError when ab = 0 or omega^2 = ab (within `tol`).
OmegaPair omega_roots(Cx a, Cx b, Cx omega, Branch branch = Branch::Plus, Tolerance tol = {});

/// a D(f)^2 + 2 omega D(f) S(f) + b S(f)^2 = e^g with D = alpha d/dz_i + beta d/dz_j.
///
/// Axes are 0-based. The constructor enforces the standing hypotheses and
/// throws ValidationError naming the one that fails.
class TrinomialPDDE {
 public:
  TrinomialPDDE(std::size_t i, std::size_t j, Cx a, Cx b, Cx omega, Cx alpha, Cx beta,
                std::vector<Cx> c, Poly g, Variant variant, Tolerance tol = {});

  std::size_t arity() const { return c_.size(); }
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  Cx a() const { return a_; }
  Cx b() const { return b_; }
  Cx omega() const { return omega_; }
  Cx alpha() const { return alpha_; }
  Cx beta() const { return beta_; }
  const std::vector<Cx>& c() const { return c_; }
  const Poly& g() const { return g_; }
  Variant variant() const { return variant_; }
  Tolerance tolerance() const { return tol_; }

  OmegaPair roots(Branch branch = Branch::Plus) const;

  /// w = z_j - (beta/alpha) z_i.
  Poly w() const;
  /// w(c) = c_j - (beta/alpha) c_i.
  Cx period() const;

  ExpPoly D(const ExpPoly& f) const;
  ExpPoly S(const ExpPoly& f) const;
  Poly D(const Poly& p) const;

  /// Same equation with another right-hand side exponent.
  TrinomialPDDE with_g(Poly g) const;
  TrinomialPDDE with_variant(Variant v) const;

 private:
  std::size_t i_, j_;
  Cx a_, b_, omega_, alpha_, beta_;
  std::vector<Cx> c_;
  Poly g_;
  Variant variant_;
  Tolerance tol_;
};

ExpPoly lhs_apply(const TrinomialPDDE& eq, const ExpPoly& f);

/// lhs_apply(eq, f) - e^g.
ExpPoly residual(const TrinomialPDDE& eq, const ExpPoly& f);

bool verify_symbolic(const TrinomialPDDE& eq, const ExpPoly& f, Tolerance tol = {});

enum class Exec { Serial, Parallel };

struct VerificationReport {
  bool symbolic_zero = false;
  double max_rel_residual = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Sample points skipped because exp overflowed.
  std::size_t overflow_count = 0;
  bool numeric_pass = false;
};

/// Points with Re and Im of every coordinate uniform in [-1, 1].
std::vector<std::vector<Cx>> sample_points(std::size_t arity, std::size_t count,
                                           std::uint64_t seed);

/// |residual(z)| / (1 + |e^{g(z)}|), evaluated numerically from f.
double relative_residual_at(const TrinomialPDDE& eq, const ExpPoly& f, std::span<const Cx> z);

/// Numeric check only; symbolic_zero is left false. Points are generated
/// serially from `seed`, so Serial and Parallel give identical reports.
VerificationReport verify_numeric(const TrinomialPDDE& eq, const ExpPoly& f,
                                  std::size_t samples, std::uint64_t seed, double tol = 1e-8,
                                  Exec exec = Exec::Parallel);

/// Symbolic test plus numeric sampling.
VerificationReport verify(const TrinomialPDDE& eq, const ExpPoly& f, std::size_t samples,
                          std::uint64_t seed, double tol = 1e-8, Tolerance sym_tol = {});

/// a F^2 + 2 omega F G + b G^2 - (sqrt(a)F - w1 sqrt(b)G)(sqrt(a)F - w2 sqrt(b)G) == 0.
bool factorization_check(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                         Branch branch, Tolerance tol = {});
/// Same with an explicitly supplied root pair (need not be genuine).
bool factorization_check(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                         const OmegaPair& roots, Tolerance tol = {});

/// Numeric version at one point, normalized by 1 + |aF^2| + |2wFG| + |bG^2|.
double factorization_rel_residual(Cx a, Cx b, Cx omega, const ExpPoly& F, const ExpPoly& G,
                                  const OmegaPair& roots, std::span<const Cx> z);

/// M1 = (w2 xi - w1/xi)/(sqrt(a)(w2 - w1)), M2 = (xi - 1/xi)/(sqrt(b)(w2 - w1)).
std::pair<Cx, Cx> m_constants(Cx a, Cx b, const OmegaPair& roots, Cx xi);

/// M2 at xi = sqrt(w1/w2); equals -1/sqrt(b) or 1/sqrt(b) depending on the root taken.
Cx n1_constant(Cx a, Cx b, const OmegaPair& roots);

}  // namespace tpdde

#endif  // TPDDE_EQUATION_HPP
