#ifndef TPDDE_FUZZ_HPP
#define TPDDE_FUZZ_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpdde/equation.hpp"
#include "tpdde/solutions.hpp"

namespace tpdde {

struct FuzzCase {
  Theorem theorem;
  CaseId case_id;
};

/// T21 i-iii and T22 i-iv.
const std::vector<FuzzCase>& fuzz_cases();

std::string to_string(const FuzzCase& fc);

/// An admissible equation and parameter set with the case constraints
/// enforced (xi solved, logs solved, g split).
struct FuzzDraw {
  TrinomialPDDE eq;
  CaseParameters params;
  /// Rejected draws before this one.
  int redraws = 0;
  /// Largest |summand of the left side| / (1 + |e^g|) over the sample points.
  double condition = 0.0;
};

/// Draws whose left side cancels more than this are redrawn: double
/// precision cannot meet the 1e-8 residual bound there, right or wrong.
inline constexpr double kMaxCondition = 1e4;

/// Deterministic in `seed`. Draws that hit a degenerate denominator or
/// exceed kMaxCondition are redrawn from the same stream.
FuzzDraw draw_admissible(const FuzzCase& fc, std::uint64_t seed);

/// Seed of trial `trial` of case `case_index` under a master seed.
std::uint64_t trial_seed(std::uint64_t master, std::size_t case_index, std::size_t trial);

struct TrialResult {
  FuzzCase fc;
  std::uint64_t seed = 0;
  bool ok = false;
  VerificationReport report;
  ConstraintReport rows;
  int redraws = 0;
  /// Non-empty when construct threw.
  std::string error;
};

/// Constructs, verifies symbolically and at `samples` points.
TrialResult run_trial(const FuzzCase& fc, std::uint64_t seed, std::size_t samples = 100);

struct FuzzOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::optional<Theorem> theorem;
  std::optional<CaseId> case_id;
  std::size_t samples = 100;
  Exec exec = Exec::Parallel;
};

struct FuzzSummary {
  std::size_t trials = 0;
  std::vector<TrialResult> violations;
  /// Largest numeric residual over all trials.
  double max_rel_residual = 0.0;
  /// Draws rejected as degenerate or ill-conditioned, summed over trials.
  std::size_t redraws = 0;
};

/// Trials run concurrently (Parallel) or in order (Serial); the summary
/// is identical either way.
FuzzSummary run_fuzz(const FuzzOptions& opt);

/// Equation and parameter files reproducing a trial.
std::string describe_trial(const FuzzCase& fc, std::uint64_t seed);

}  // namespace tpdde

#endif  // TPDDE_FUZZ_HPP
