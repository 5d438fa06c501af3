#ifndef TPDDE_CONFIG_HPP
#define TPDDE_CONFIG_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tpdde/equation.hpp"
#include "tpdde/solutions.hpp"

namespace tpdde {

/// "key = value" lines; '#' starts a comment; blank lines are ignored.
/// Duplicate keys and lines without '=' raise ConfigError.
std::map<std::string, std::string> parse_key_values(std::string_view doc);

/// "[a, b, c]" -> {"a", "b", "c"}, splitting only at top-level commas.
std::vector<std::string> split_list(std::string_view text, const std::string& key);

/// Keys: n, i, j (1-based), a, b, omega, alpha, beta, c (list), g,
/// variant (shift | difference), and optionally abs_tol, rel_tol.
/// Unknown or missing keys raise ConfigError; violated hypotheses raise
/// ValidationError naming the hypothesis.
TrinomialPDDE parse_equation_config(std::string_view doc);

/// Inverse of parse_equation_config.
std::string format_equation_config(const TrinomialPDDE& eq);

/// Keys (all optional): theorem (2.1 | 2.2), case (i..iv), L or k, L1, L2,
/// d (lists of constants); H, H1, H2 (expressions in s); B1, E1, E2, R,
/// R2, R3, R4, xi (constants); sign (+1 | -1); branch (plus | minus);
/// log_branch (integer); component_w (expression in w); periodic (list of
/// "k: coeff") with optional periodic_tau (default: the equation's period).
CaseParameters parse_case_parameters(std::string_view doc, const TrinomialPDDE& eq);

/// Inverse of parse_case_parameters; round-trips every field at full precision.
std::string format_case_parameters(const CaseParameters& p);

Theorem parse_theorem(std::string_view text);
CaseId parse_case(std::string_view text);

}  // namespace tpdde

#endif  // TPDDE_CONFIG_HPP
