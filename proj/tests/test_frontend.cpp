#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tpdde/cli.hpp"
#include "tpdde/config.hpp"
#include "tpdde/errors.hpp"
#include "tpdde/fixtures.hpp"
#include "tpdde/fuzz.hpp"
#include "tpdde/parser.hpp"

using namespace tpdde;
using namespace tpdde::testing;

namespace {

const std::string kData = TPDDE_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string parse_error(const std::string& text, std::size_t arity = 3) {
  try {
    parse_expression(text, arity);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::string config_error(const std::string& doc) {
  try {
    parse_equation_config(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

const char* kEq = R"(n = 3
i = 1
j = 3
a = 1
b = 2
omega = -3
alpha = 2
beta = -1
c = [7, -2, -4]
g = 4*z1
variant = shift
)";

std::string replace_line(std::string doc, const std::string& key, const std::string& line) {
  const auto p = doc.find(key + " =");
  const auto e = doc.find('\n', p);
  return doc.replace(p, e - p, line);
}

}  // namespace

TEST_CASE("parsing folds constants into exponents") {
  CHECK(format_expression(parse_expression("exp(z1 + i*pi)", 1)) == "(-1)*exp(z1)");
  CHECK(parse_expression("exp(z1 + i*pi)", 1) == parse_expression("-exp(z1)", 1));
  CHECK(format_expression(ExpPoly(3)) == "0");
  CHECK(parse_expression("0", 2).empty());
  CHECK(parse_expression("exp(z1)*exp(-z1)", 1) == ExpPoly::constant(1, 1.0));
  CHECK(parse_expression("-z1^2", 1) == parse_expression("-(z1^2)", 1));
  CHECK(parse_expression("s^2 + s", 1, "s") == parse_expression("z1^2 + z1", 1));

  const Poly g = parse_polynomial(parse_key_values(example_fixture("2.1").readings[0].equation).at("g"), 3);
  CHECK(std::abs(g.coefficient({0, 1, 0}) - std::log(6 + 6 * newton_sqrt(7.0))) < 1e-14);
  CHECK(std::abs(g.constant_term() - Cx(0, kPi / 3)) < 1e-15);
}

TEST_CASE("parse errors carry a position and a reason") {
  CHECK(has(parse_error("z1^(-1)"), "non-negative integer"));
  CHECK(has(parse_error("z4 + 1"), "at position 0"));
  CHECK(has(parse_error("z0"), "at position 0"));
  CHECK(has(parse_error("exp(exp(z1))"), "exp argument must be a polynomial"));
  CHECK(has(parse_error("1 + sqrt(z1)"), "at position 9: sqrt needs a constant argument"));
  CHECK(has(parse_error("ln(0)"), "logarithm of zero"));
  CHECK(has(parse_error("z1 / z2"), "divisor must be a constant"));
  CHECK(has(parse_error("(z1 + 2"), "before end of input"));
  CHECK(has(parse_error("z1 + * z2"), "at position 5"));
  CHECK(has(parse_error("z1 $"), "at position 3"));
  CHECK_THROWS_AS(parse_polynomial("exp(z1)", 1), ParseError);
  CHECK_THROWS_AS(parse_constant("z1"), ParseError);
}

TEST_CASE("format then parse is the identity") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = static_cast<std::size_t>(uint_in(rng, 1, 3));
    const ExpPoly f = rand_exppoly(rng, n, k % 2 == 0);
    const ExpPoly back = parse_expression(format_expression(f), n);
    CHECK(ep_is_zero(back - f, Tolerance::uniform(1e-13)));
    if (k % 2 == 0) CHECK(back == f);
  }
}

TEST_CASE("every corpus expression parses") {
  for (const auto& e : fixture_expressions()) CHECK_NOTHROW(parse_expression(e, 3));
}

TEST_CASE("equation config validation") {
  CHECK_NOTHROW(parse_equation_config(kEq));
  CHECK(has(config_error(replace_line(kEq, "omega", "# gone")), "key 'omega': missing required key"));
  CHECK(has(config_error(std::string(kEq) + "colour = red\n"), "key 'colour': unknown key"));
  CHECK(has(config_error(std::string(kEq) + "a = 3\n"), "duplicate key"));
  CHECK(has(config_error(replace_line(kEq, "omega", "omega = sqrt(2)")), "ω² ≠ ab"));
  CHECK(has(config_error(replace_line(kEq, "c", "c = [0, 0, 0]")), "c ∈ Cⁿ∖{0}"));
  CHECK(has(config_error(replace_line(kEq, "c", "c = [1, 2]")), "key 'c'"));
  CHECK(has(config_error(replace_line(kEq, "j", "j = 1")), "1 ≤ i < j ≤ n"));
  CHECK(has(config_error(replace_line(kEq, "alpha", "alpha = 0")), "α ≠ 0"));
  CHECK(has(config_error(replace_line(kEq, "variant", "variant = both")), "key 'variant'"));
  CHECK(has(config_error(replace_line(kEq, "g", "g = exp(z1)")), "key 'g'"));
}

TEST_CASE("case parameter validation") {
  const TrinomialPDDE eq = parse_equation_config(kEq);
  auto err = [&](const std::string& doc) {
    try {
      parse_case_parameters(doc, eq);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(has(err("theorem = 2.3\ncase = i\n"), "key 'theorem'"));
  CHECK(has(err("theorem = 2.1\ncase = v\n"), "key 'case'"));
  CHECK(has(err("theorem = 2.2\ncase = ii\nL = [1,0,0]\nk = 1\n"), "either L or k"));
  CHECK(has(err("theorem = 2.1\ncase = ii\nL = [1,0]\n"), "n = 3 entries"));
  CHECK(has(err("theorem = 2.2\ncase = iii\nperiodic_tau = 2\n"), "without 'periodic'"));
  CHECK(has(err("theorem = 2.1\ncase = ii\nsign = 2\n"), "+1 or -1"));
}

TEST_CASE("in-process CLI: exit codes and determinism") {
  const std::string eq21 = kData + "/example_2_1.cfg";
  const std::string eq23 = kData + "/example_2_3.cfg";

  const Run ok = cli({"construct", "--equation", eq21, "--theorem", "2.1", "--case", "ii", "--solve-xi"});
  CHECK(ok.code == 0);
  CHECK(cli({"construct", "--equation", eq21, "--theorem", "2.1", "--case", "ii", "--solve-xi"}).out == ok.out);
  CHECK(cli({"construct", "--equation", eq23, "--theorem", "2.2", "--case", "iii", "--params",
             kData + "/params_2_3.cfg", "--solve-xi"})
            .code == 0);

  const std::string printed = "1/(2*sqrt(14))*exp(2*z1 + 1/2*ln(6+6*sqrt(7))*z2 + 7/2*z3 + pi*i/6)";
  CHECK(cli({"verify", "--equation", eq21, "--solution", printed, "--numeric"}).code == 1);
  const std::string fixed = "(6+6*sqrt(7))/(2*sqrt(14))*exp(2*z1 + 1/2*ln(6+6*sqrt(7))*z2 + 7/2*z3 + pi*i/6)";
  CHECK(cli({"verify", "--equation", eq21, "--solution", fixed, "--numeric"}).code == 0);

  const Run bad = cli({"verify", "--equation", kData + "/bad_missing_omega.cfg", "--solution", "0"});
  CHECK(bad.code == 2);
  CHECK(has(bad.err, "omega"));
  CHECK(cli({"verify", "--equation", eq21, "--solution", "z1^(-1)"}).code == 2);
  CHECK(cli({"verify", "--equation", eq21}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"construct", "--equation", eq21, "--theorem", "2.1", "--case", "i"}).code == 1);

  CHECK(cli({"examples", "--id", "2.1", "--mode", "verbatim"}).code == 1);
  CHECK(cli({"examples", "--mode", "constructed"}).code == 0);
  CHECK(cli({"fuzz", "--trials", "3", "--seed", "4"}).code == 0);
  CHECK(cli({"fuzz", "--trials", "3"}).code == 2);
}

TEST_CASE("in-process CLI: JSON output") {
  const std::string eq21 = kData + "/example_2_1.cfg";
  const Run v = cli({"verify", "--equation", eq21, "--solution", "0", "--numeric", "--json", "--samples", "7"});
  CHECK(v.code == 1);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j.at("symbolic_zero") == false);
  CHECK(j.at("samples") == 7);
  CHECK(j.contains("max_rel_residual"));
  CHECK(j.contains("seed"));

  const Run c = cli({"construct", "--equation", eq21, "--theorem", "2.1", "--case", "ii", "--solve-xi", "--json"});
  const auto jc = nlohmann::json::parse(c.out);
  REQUIRE(jc.contains("constraints"));
  for (const auto& row : jc.at("constraints")) {
    for (const char* key : {"id", "lhs", "rhs", "satisfied", "abs_err", "advisory"}) CHECK(row.contains(key));
    CHECK(row.at("lhs").size() == 2);
  }
}

TEST_CASE("installed binary") {
  const std::string bin = TPDDE_BINARY;
  const std::string tmp = (std::filesystem::temp_directory_path() / "tpdde_frontend_out.txt").string();
  auto run = [&](const std::string& args) {
    const int st = std::system((bin + " " + args + " > " + tmp + " 2>&1").c_str());
    return WEXITSTATUS(st);
  };
  CHECK(run("construct --equation " + kData + "/example_2_1.cfg --theorem 2.1 --case ii --solve-xi") == 0);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(has(ss.str(), "exp("));
  CHECK(run("verify --equation " + kData + "/bad_missing_omega.cfg --solution 0") == 2);
  CHECK(run("examples --id 2.3 --mode verbatim") == 1);
  std::filesystem::remove(tmp);
}

TEST_CASE("fuzz: parallel equals serial, trial reproduction is exact") {
  FuzzOptions o;
  o.trials = 8;
  o.seed = 123;
  o.theorem = Theorem::T22;
  const FuzzSummary p = run_fuzz(o);
  o.exec = Exec::Serial;
  const FuzzSummary s = run_fuzz(o);
  CHECK(p.trials == s.trials);
  CHECK(p.max_rel_residual == s.max_rel_residual);
  const FuzzCase fc = fuzz_cases()[4];
  const auto a = run_trial(fc, trial_seed(123, 4, 2), 50);
  const auto b = run_trial(fc, trial_seed(123, 4, 2), 50);
  CHECK(a.report.max_rel_residual == b.report.max_rel_residual);
}
