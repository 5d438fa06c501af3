#ifndef TPDDE_SOLUTIONS_HPP
#define TPDDE_SOLUTIONS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpdde/cx.hpp"
#include "tpdde/equation.hpp"
#include "tpdde/exppoly.hpp"
#include "tpdde/poly.hpp"

namespace tpdde {

/// 2.1 is the shift equation, 2.2 the difference equation.
enum class Theorem { T21, T22 };
enum class CaseId { I, II, III, IV };

std::string to_string(Theorem t);
std::string to_string(CaseId c);

/// A function of the single variable w = z_j - (beta/alpha) z_i.
struct UnivariateComponent {
  enum class Kind { ExpPolyInW, FourierPeriodic };

  Kind kind = Kind::ExpPolyInW;
  /// Arity 1; the variable is w.
  ExpPoly in_w{1};
  /// FourierPeriodic: sum of coeff * e^{(2 pi i k / period) w}.
  Cx period{};
  std::vector<std::pair<long, Cx>> fourier;

  bool empty() const;
};

/// Throws DomainError when tau = 0.
UnivariateComponent build_periodic(Cx tau, std::vector<std::pair<long, Cx>> fourier);

/// The component as an n-variable exponential polynomial.
ExpPoly embed(const UnivariateComponent& u, const TrinomialPDDE& eq);
ExpPoly embed(const UnivariateComponent& u, std::size_t n, Cx alpha, Cx beta, std::size_t i,
              std::size_t j);

/// Everything a constructor may need. Unused fields are ignored by a case.
///
/// Linear forms are coefficient vectors of length n; `L` is also the k of
/// case 2.2(iii). H, H1, H2 are univariate polynomials in s = d . z.
struct CaseParameters {
  Theorem theorem = Theorem::T21;
  CaseId case_id = CaseId::II;

  std::vector<Cx> L, L1, L2;
  std::vector<Cx> d;
  Poly H{1}, H1{1}, H2{1};

  Cx B1{}, E1{}, E2{}, R{}, R2{}, R3{}, R4{};
  std::optional<Cx> xi;
  /// +1 or -1 for the cases written with a leading sign.
  int sign = 1;
  Branch branch = Branch::Plus;
  /// k in log(v) + 2 pi i k whenever a log is taken.
  long log_branch = 0;

  /// phi, psi_1, phi_1 or phi_2; must be empty for 2.1.
  UnivariateComponent component;
};

bool has_h(const CaseParameters& p);

struct ConstraintEntry {
  std::string id;
  Cx lhs;
  Cx rhs;
  bool satisfied = false;
  double abs_err = 0.0;
  /// Reported for comparison only; does not count towards all_satisfied.
  bool advisory = false;
};

struct ConstraintReport {
  std::vector<ConstraintEntry> entries;

  bool all_satisfied() const;
  const ConstraintEntry* find(const std::string& id) const;
  void add(std::string id, Cx lhs, Cx rhs, Tolerance tol, bool advisory = false);
  /// Inequality or yes/no condition: lhs 1 when it holds, 0 otherwise.
  void add_indicator(std::string id, bool holds, bool advisory = false);
};

struct SolutionCandidate {
  ExpPoly f;
  /// f without the free univariate component.
  ExpPoly principal;
  /// The embedded free component (zero when absent).
  ExpPoly kernel;
  CaseParameters provenance;
  TrinomialPDDE equation;
};

/// Fills gaps that follow from eq.g: L, B1, R, R2 when empty/unset and H is
/// absent. Leaves xi and the split of g for cases (iii)/(iv) alone.
CaseParameters complete_parameters(const TrinomialPDDE& eq, CaseParameters params);

/// Assembles f for the chosen case. Does not require the constraints to
/// hold; throws ConstructionError for missing data, zero denominators,
/// unsupported shapes, and ValidationError for violated case hypotheses.
std::pair<SolutionCandidate, ConstraintReport> construct(const TrinomialPDDE& eq,
                                                         const CaseParameters& params);

/// Evaluates every constraint row of the case; never throws on unsatisfied rows.
ConstraintReport check_constraints(const TrinomialPDDE& eq, const CaseParameters& params);

/// Both roots of the xi-constraint of 2.1(ii) / 2.2(iii) for the linear
/// coefficients `coeffs` (L resp. k).
std::vector<Cx> solve_xi(const TrinomialPDDE& eq, Theorem theorem,
                         const std::vector<Cx>& coeffs, Branch branch = Branch::Plus);

/// Same with lambda = D(exponent) and Lc = L(c) given directly.
std::vector<Cx> solve_xi(Cx a, Cx b, const OmegaPair& roots, Theorem theorem, Cx lambda, Cx Lc);

/// The xi-constraint left side: sqrt(a)(xi^2-1) lambda / (2 sqrt(b)(w2 xi^2 - w1)).
Cx xi_constraint_lhs(Cx a, Cx b, const OmegaPair& roots, Cx xi, Cx lambda);

/// Splits eq.g's linear part into L1 + L2 satisfying the derived constraints
/// of 2.1(iii) (shift) or 2.2(iv) (difference). `root` picks one of the two
/// roots of the quadratic in lambda_1 = D L1. Constants are split evenly.
CaseParameters solve_split(const TrinomialPDDE& eq, Branch branch, int root, long log_branch = 0);

/// Coefficient vector of the linear form L, ignoring constants.
Poly linear_form(const std::vector<Cx>& coeffs);
/// H(d . z) as an n-variable polynomial.
Poly h_of_s(const Poly& H, const std::vector<Cx>& d, std::size_t n);

/// L(c).
Cx dot(const std::vector<Cx>& x, const std::vector<Cx>& c);

/// Minimum-norm u with (alpha e_i + beta e_j) . u = r0 and c . u = r1.
/// Throws ConstructionError when the two rows are dependent (period 0).
std::vector<Cx> least_norm_linear(const TrinomialPDDE& eq, Cx r0, Cx r1);

/// Replaces x by a nearby x' and returns y with fl(x' + y) == t, so that
/// (x', y) split t exactly. Works on real and imaginary parts separately.
std::pair<Cx, Cx> exact_complement(Cx t, Cx x);

}  // namespace tpdde

#endif  // TPDDE_SOLUTIONS_HPP
