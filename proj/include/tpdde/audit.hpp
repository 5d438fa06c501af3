#ifndef TPDDE_AUDIT_HPP
#define TPDDE_AUDIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tpdde/equation.hpp"
#include "tpdde/fixtures.hpp"
#include "tpdde/solutions.hpp"

namespace tpdde {

enum class AuditMode { Verbatim, Constructed };

struct AuditResult {
  std::string id;
  std::string label;
  AuditMode mode = AuditMode::Constructed;
  bool as_printed = true;
  bool pass = false;
  Branch branch = Branch::Plus;
  VerificationReport report;
  ConstraintReport constraints;
  std::string f_text;
  /// Measured discrepancies and other findings, one sentence each.
  std::vector<std::string> notes;
  /// Constructed over printed coefficient for the compared term (1 if none).
  Cx discrepancy_factor{1.0, 0.0};
};

/// Audits every reading of one example.
///
/// Verbatim: verifies the printed f; passes on the numeric residual. The
/// printed terms are compared with the constructor's output for the same
/// exponents, and the ratio is reported as the discrepancy factor.
/// Constructed: rebuilds f from the printed equation with both omega
/// branches and every root; passes iff symbolic and numeric checks pass.
std::vector<AuditResult> audit_example(const std::string& id, AuditMode mode,
                                       std::size_t samples = 100, std::uint64_t seed = 0);

}  // namespace tpdde

#endif  // TPDDE_AUDIT_HPP
