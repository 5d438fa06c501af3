#include "tpdde/fixtures.hpp"

#include "tpdde/config.hpp"
#include "tpdde/errors.hpp"

namespace tpdde {

namespace {

using R = PrintedTerm::Role;

const char* kEq21 = R"(# 2.1: shift variant
n = 3
i = 1
j = 3
a = 1
b = 2
omega = -3
alpha = 2
beta = -1
c = [7, -2, -4]
g = 4*z1 + ln(6+6*sqrt(7))*z2 + 7*z3 + pi*i/3
variant = shift
)";

const char* kG21Half = "exp(1/2*(4*z1 + ln(6+6*sqrt(7))*z2 + 7*z3 + pi*i/3))";

std::string eq22(const char* g) {
  return std::string(R"(# 2.2: shift variant
n = 3
i = 1
j = 3
a = 2
b = 3
omega = -4
alpha = 1
beta = -2
c = [2, 3, 5]
variant = shift
g = )") + g + "\n";
}

const char* kEq23 = R"(# 2.3: difference variant
n = 3
i = 1
j = 3
a = 1
b = 3
omega = -4
alpha = 2
beta = 1
c = [2, 2, 3]
g = 3*z1 + ln((6+3*sqrt(13))/(4+sqrt(13)))*z2 - 2*z3 + pi*i/7
variant = difference
)";

const char* kPrincipal23 =
    "sqrt(3)*(4+3*sqrt(13))/(4*sqrt(26)) * "
    "exp(1/2*(3*z1 + ln((6+3*sqrt(13))/(4+sqrt(13)))*z2 - 2*z3 + pi*i/7))";

std::string eq24(const char* g) {
  return std::string(R"(# 2.4: difference variant
n = 3
i = 1
j = 3
a = 3
b = 1
omega = -5
alpha = 3
beta = 2
c = [3, 1, -4]
variant = difference
g = )") + g + "\n";
}

std::vector<ExampleFixture> build() {
  std::vector<ExampleFixture> out;

  out.push_back({"2.1", Theorem::T21, CaseId::II, 0,
                 {{"printed", kEq21, {{R::Principal, std::string("1/(2*sqrt(14)) * ") + kG21Half}}, true},
                  {"corrected coefficient (6+6√7)/(2√14)", kEq21,
                   {{R::Principal, std::string("(6+6*sqrt(7))/(2*sqrt(14)) * ") + kG21Half}}, false}}});

  const char* g22u =
      "15*z1 + 1/3*(ln(9*sqrt(2)/(2*sqrt(2)-sqrt(5))) + ln(18*sqrt(2)/(2*sqrt(2)+sqrt(5))))*z2 "
      "- 6*z3 + 16*pi*i/63";
  const char* g22l =
      "15*z1 + 1/3*(ln(9*sqrt(2)/(2*sqrt(2)+sqrt(5))) + ln(18*sqrt(2)/(2*sqrt(2)-sqrt(5))))*z2 "
      "- 6*z3 + 16*pi*i/63";
  out.push_back(
      {"2.2", Theorem::T21, CaseId::III, 0,
       {{"printed, upper signs", eq22(g22u),
         {{R::H1, "1/(-2*sqrt(5)) * exp(5*z1 + 1/3*ln(9*sqrt(2)/(2*sqrt(2)-sqrt(5)))*z2 - 2*z3 "
                  "+ (pi*i/7 - ln(9*sqrt(2)/(2*sqrt(2)-sqrt(5)))))"},
          {R::H2, "-1/(-2*sqrt(5)) * exp(10*z1 + 1/3*ln(18*sqrt(2)/(2*sqrt(2)+sqrt(5)))*z2 - 4*z3 "
                  "+ (pi*i/9 - ln(18*sqrt(2)/(2*sqrt(2)+sqrt(5)))))"}},
         true},
        {"printed, lower signs", eq22(g22l),
         {{R::H1, "1/(2*sqrt(5)) * exp(5*z1 + 1/3*ln(9*sqrt(2)/(2*sqrt(2)+sqrt(5)))*z2 - 2*z3 "
                  "+ (pi*i/7 - ln(9*sqrt(2)/(2*sqrt(2)+sqrt(5)))))"},
          {R::H2, "-1/(2*sqrt(5)) * exp(10*z1 + 1/3*ln(18*sqrt(2)/(2*sqrt(2)-sqrt(5)))*z2 - 4*z3 "
                  "+ (pi*i/9 - ln(18*sqrt(2)/(2*sqrt(2)-sqrt(5)))))"}},
         true}}});

  out.push_back({"2.3", Theorem::T22, CaseId::III, 1,
                 {{"printed", kEq23,
                   {{R::Principal, kPrincipal23}, {R::Component, "exp(pi*i*(z1/2 + z3))"}}, true},
                  {"periodic term in w-form e^{πi(z3 - z1/2)}", kEq23,
                   {{R::Principal, kPrincipal23}, {R::Component, "exp(pi*i*(z3 - z1/2))"}}, false}}});

  const char* g24u =
      "12*z1 + (ln(3*(23-sqrt(22))/(5-sqrt(22))) + ln(sqrt(3)*(36*sqrt(3)+5+sqrt(22))/(5+sqrt(22))))*z2 "
      "+ 9*z3 + (2*pi*i + sqrt(5) + sqrt(3))/sqrt(7)";
  const char* g24l =
      "12*z1 + (ln(3*(23+sqrt(22))/(5+sqrt(22))) + ln(sqrt(3)*(36*sqrt(3)+5-sqrt(22))/(5-sqrt(22))))*z2 "
      "+ 9*z3 + (2*pi*i + sqrt(5) + sqrt(3))/sqrt(7)";
  const std::string h1u =
      "(5-sqrt(22))/(-36*sqrt(66)) * exp(4*z1 + ln(3*(23-sqrt(22))/(5-sqrt(22)))*z2 + 3*z3 "
      "+ (pi*i + sqrt(3))/sqrt(7))";
  const std::string h2u =
      "-(5+sqrt(22))/(-72*sqrt(66)) * exp(8*z1 + ln(sqrt(3)*(36*sqrt(3)+5+sqrt(22))/(5+sqrt(22)))*z2 "
      "+ 6*z3 + (pi*i + sqrt(5))/sqrt(7))";
  const std::string h1l =
      "(5+sqrt(22))/(36*sqrt(66)) * exp(4*z1 + ln(3*(23+sqrt(22))/(5+sqrt(22)))*z2 + 3*z3 "
      "+ (pi*i + sqrt(3))/sqrt(7))";
  const std::string h2l =
      "-(5-sqrt(22))/(72*sqrt(66)) * exp(8*z1 + ln(sqrt(3)*(36*sqrt(3)+5-sqrt(22))/(5-sqrt(22)))*z2 "
      "+ 6*z3 + (pi*i + sqrt(5))/sqrt(7))";
  const char* printed24 = "exp(pi*i*(2*z1/3 + z3))";
  const char* wform24 = "exp(pi*i*(z3 - 2*z1/3))";
  out.push_back(
      {"2.4", Theorem::T22, CaseId::IV, -3,
       {{"printed, upper signs", eq24(g24u),
         {{R::H1, h1u}, {R::H2, h2u}, {R::Component, printed24}}, true},
        {"printed, lower signs", eq24(g24l),
         {{R::H1, h1l}, {R::H2, h2l}, {R::Component, printed24}}, true},
        {"upper signs, periodic term in w-form e^{πi(z3 - 2z1/3)}", eq24(g24u),
         {{R::H1, h1u}, {R::H2, h2u}, {R::Component, wform24}}, false}}});
  return out;
}

}  // namespace

const std::vector<ExampleFixture>& example_fixtures() {
  static const std::vector<ExampleFixture> fixtures = build();
  return fixtures;
}

const ExampleFixture& example_fixture(const std::string& id) {
  for (const auto& f : example_fixtures()) {
    if (f.id == id) return f;
  }
  throw ConfigError("id", "unknown example '" + id + "' (expected 2.1, 2.2, 2.3 or 2.4)");
}

std::vector<std::string> fixture_expressions() {
  std::vector<std::string> out;
  for (const auto& fx : example_fixtures()) {
    for (const auto& r : fx.readings) {
      out.push_back(parse_key_values(r.equation).at("g"));
      for (const auto& t : r.terms) out.push_back(t.expr);
    }
  }
  return out;
}

}  // namespace tpdde
