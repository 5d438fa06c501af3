#ifndef TPDDE_FIXTURES_HPP
#define TPDDE_FIXTURES_HPP

#include <string>
#include <vector>

#include "tpdde/solutions.hpp"

namespace tpdde {

/// One printed term of a published solution and the part it plays.
struct PrintedTerm {
  enum class Role { Principal, H1, H2, Component };
  Role role;
  std::string expr;
};

/// An equation together with a solution as printed (H taken as 0).
struct ExampleReading {
  std::string label;
  /// Equation config document.
  std::string equation;
  std::vector<PrintedTerm> terms;
  /// False for the suspected-correction variants.
  bool as_printed = true;
};

struct ExampleFixture {
  std::string id;
  Theorem theorem;
  CaseId case_id;
  /// Fourier index of the periodic component e^{2 pi i k w / tau}; 0 if none.
  long periodic_k = 0;
  std::vector<ExampleReading> readings;
};

/// The four worked examples, each with its sign readings and labeled
/// correction variants.
const std::vector<ExampleFixture>& example_fixtures();

const ExampleFixture& example_fixture(const std::string& id);

/// Every expression string in the corpus (equation g's and printed terms).
std::vector<std::string> fixture_expressions();

}  // namespace tpdde

#endif  // TPDDE_FIXTURES_HPP
