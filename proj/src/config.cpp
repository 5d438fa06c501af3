#include "tpdde/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "tpdde/errors.hpp"
#include "tpdde/parser.hpp"

namespace tpdde {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_int(const std::string& key, std::string_view v) {
  v = trim(v);
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  T out{};
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size()) {
    throw ConfigError(key, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

double parse_positive(const std::string& key, std::string_view v) {
  const Cx x = [&] {
    try {
      return parse_constant(v);
    } catch (const ParseError& e) {
      throw ConfigError(key, e.what());
    }
  }();
  if (x.imag() != 0.0 || !(x.real() > 0.0)) throw ConfigError(key, "must be a positive real");
  return x.real();
}

Cx constant_value(const std::string& key, std::string_view v) {
  try {
    return parse_constant(v);
  } catch (const ParseError& e) {
    throw ConfigError(key, e.what());
  }
}

std::vector<Cx> constant_list(const std::string& key, std::string_view v) {
  std::vector<Cx> out;
  for (const auto& item : split_list(v, key)) out.push_back(constant_value(key, item));
  return out;
}

Poly poly_value(const std::string& key, std::string_view v, std::size_t arity,
                std::string_view alias = {}) {
  try {
    return parse_polynomial(v, arity, alias);
  } catch (const ParseError& e) {
    throw ConfigError(key, e.what());
  }
}

const std::string& required(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError(key, "missing required key");
  return it->second;
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    const std::set<std::string>& allowed) {
  for (const auto& [k, v] : kv) {
    if (!allowed.count(k)) throw ConfigError(k, "unknown key");
  }
}

std::string format_list(const std::vector<Cx>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += format_cx(v[k]);
  }
  return out + "]";
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::string_view doc) {
  std::map<std::string, std::string> kv;
  std::size_t line_no = 0;
  while (!doc.empty()) {
    const auto nl = doc.find('\n');
    std::string_view line = doc.substr(0, nl);
    doc = nl == std::string_view::npos ? std::string_view{} : doc.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }
  return kv;
}

std::vector<std::string> split_list(std::string_view text, const std::string& key) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ConfigError(key, "expected a bracketed list '[x, y, ...]'");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<std::string> out;
  if (text.empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k == text.size() || (text[k] == ',' && depth == 0)) {
      const auto item = trim(text.substr(start, k - start));
      if (item.empty()) throw ConfigError(key, "empty list element");
      out.emplace_back(item);
      start = k + 1;
    } else if (text[k] == '(' || text[k] == '[') {
      ++depth;
    } else if (text[k] == ')' || text[k] == ']') {
      --depth;
    }
  }
  return out;
}

TrinomialPDDE parse_equation_config(std::string_view doc) {
  const auto kv = parse_key_values(doc);
  reject_unknown(kv, {"n", "i", "j", "a", "b", "omega", "alpha", "beta", "c", "g", "variant",
                      "abs_tol", "rel_tol"});
  const auto n = parse_int<std::size_t>("n", required(kv, "n"));
  const auto i = parse_int<long>("i", required(kv, "i"));
  const auto j = parse_int<long>("j", required(kv, "j"));
  const Cx a = constant_value("a", required(kv, "a"));
  const Cx b = constant_value("b", required(kv, "b"));
  const Cx omega = constant_value("omega", required(kv, "omega"));
  const Cx alpha = constant_value("alpha", required(kv, "alpha"));
  const Cx beta = constant_value("beta", required(kv, "beta"));
  const auto c = constant_list("c", required(kv, "c"));
  if (c.size() != n) {
    throw ConfigError("c", "has " + std::to_string(c.size()) + " components, n = " + std::to_string(n));
  }
  const Poly g = poly_value("g", required(kv, "g"), n);
  const std::string& vs = required(kv, "variant");
  Variant variant;
  if (vs == "shift") {
    variant = Variant::Shift;
  } else if (vs == "difference") {
    variant = Variant::Difference;
  } else {
    throw ConfigError("variant", "expected 'shift' or 'difference'");
  }
  Tolerance tol;
  if (kv.count("abs_tol")) tol.abs_tol = parse_positive("abs_tol", kv.at("abs_tol"));
  if (kv.count("rel_tol")) tol.rel_tol = parse_positive("rel_tol", kv.at("rel_tol"));
  if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n || i >= j) {
    throw ValidationError("hypothesis violated: 1 ≤ i < j ≤ n");
  }
  return TrinomialPDDE(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), a, b,
                       omega, alpha, beta, c, g, variant, tol);
}

std::string format_equation_config(const TrinomialPDDE& eq) {
  std::string out;
  out += "n = " + std::to_string(eq.arity()) + "\n";
  out += "i = " + std::to_string(eq.i() + 1) + "\n";
  out += "j = " + std::to_string(eq.j() + 1) + "\n";
  out += "a = " + format_cx(eq.a()) + "\n";
  out += "b = " + format_cx(eq.b()) + "\n";
  out += "omega = " + format_cx(eq.omega()) + "\n";
  out += "alpha = " + format_cx(eq.alpha()) + "\n";
  out += "beta = " + format_cx(eq.beta()) + "\n";
  out += "c = " + format_list(eq.c()) + "\n";
  out += "g = " + format_poly(eq.g()) + "\n";
  out += std::string("variant = ") + (eq.variant() == Variant::Shift ? "shift" : "difference") + "\n";
  const Tolerance def;
  if (eq.tolerance().abs_tol != def.abs_tol) out += "abs_tol = " + format_double(eq.tolerance().abs_tol) + "\n";
  if (eq.tolerance().rel_tol != def.rel_tol) out += "rel_tol = " + format_double(eq.tolerance().rel_tol) + "\n";
  return out;
}

Theorem parse_theorem(std::string_view text) {
  text = trim(text);
  if (text == "2.1") return Theorem::T21;
  if (text == "2.2") return Theorem::T22;
  throw ConfigError("theorem", "expected 2.1 or 2.2");
}

CaseId parse_case(std::string_view text) {
  text = trim(text);
  if (text == "i") return CaseId::I;
  if (text == "ii") return CaseId::II;
  if (text == "iii") return CaseId::III;
  if (text == "iv") return CaseId::IV;
  throw ConfigError("case", "expected i, ii, iii or iv");
}

CaseParameters parse_case_parameters(std::string_view doc, const TrinomialPDDE& eq) {
  const auto kv = parse_key_values(doc);
  reject_unknown(kv, {"theorem", "case", "L", "k", "L1", "L2", "d", "H", "H1", "H2", "B1", "E1",
                      "E2", "R", "R2", "R3", "R4", "xi", "sign", "branch", "log_branch",
                      "component_w", "periodic", "periodic_tau"});
  const std::size_t n = eq.arity();
  CaseParameters p;
  p.theorem = eq.variant() == Variant::Shift ? Theorem::T21 : Theorem::T22;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("theorem")) p.theorem = parse_theorem(*v);
  if (auto v = get("case")) p.case_id = parse_case(*v);
  if (get("L") && get("k")) throw ConfigError("k", "give either L or k, not both");
  for (const auto& [key, dst] : {std::pair<std::string, std::vector<Cx>*>{"L", &p.L},
                                 {"k", &p.L}, {"L1", &p.L1}, {"L2", &p.L2}, {"d", &p.d}}) {
    if (auto v = get(key)) {
      *dst = constant_list(key, *v);
      if (dst->size() != n) throw ConfigError(key, "must have n = " + std::to_string(n) + " entries");
    }
  }
  for (const auto& [key, dst] :
       {std::pair<std::string, Poly*>{"H", &p.H}, {"H1", &p.H1}, {"H2", &p.H2}}) {
    if (auto v = get(key)) *dst = poly_value(key, *v, 1, "s");
  }
  for (const auto& [key, dst] :
       {std::pair<std::string, Cx*>{"B1", &p.B1}, {"E1", &p.E1}, {"E2", &p.E2}, {"R", &p.R},
        {"R2", &p.R2}, {"R3", &p.R3}, {"R4", &p.R4}}) {
    if (auto v = get(key)) *dst = constant_value(key, *v);
  }
  if (auto v = get("xi")) p.xi = constant_value("xi", *v);
  if (auto v = get("sign")) {
    const auto s = trim(*v);
    if (s == "+" || s == "+1" || s == "1") {
      p.sign = 1;
    } else if (s == "-" || s == "-1") {
      p.sign = -1;
    } else {
      throw ConfigError("sign", "expected +1 or -1");
    }
  }
  if (auto v = get("branch")) {
    if (*v == "plus") {
      p.branch = Branch::Plus;
    } else if (*v == "minus") {
      p.branch = Branch::Minus;
    } else {
      throw ConfigError("branch", "expected plus or minus");
    }
  }
  if (auto v = get("log_branch")) p.log_branch = parse_int<long>("log_branch", *v);
  if (get("component_w") && get("periodic")) {
    throw ConfigError("periodic", "give either component_w or periodic, not both");
  }
  if (auto v = get("component_w")) {
    try {
      p.component.in_w = parse_expression(*v, 1, "w");
    } catch (const ParseError& e) {
      throw ConfigError("component_w", e.what());
    }
  }
  if (auto v = get("periodic")) {
    std::vector<std::pair<long, Cx>> terms;
    for (const auto& item : split_list(*v, "periodic")) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("periodic", "expected 'k: coeff' entries");
      terms.emplace_back(parse_int<long>("periodic", std::string_view(item).substr(0, colon)),
                         constant_value("periodic", std::string_view(item).substr(colon + 1)));
    }
    Cx tau = eq.period();
    if (auto t = get("periodic_tau")) tau = constant_value("periodic_tau", *t);
    try {
      p.component = build_periodic(tau, std::move(terms));
    } catch (const DomainError& e) {
      throw ConfigError("periodic_tau", e.what());
    }
  } else if (get("periodic_tau")) {
    throw ConfigError("periodic_tau", "given without 'periodic'");
  }
  return p;
}

std::string format_case_parameters(const CaseParameters& p) {
  std::string out;
  out += "theorem = " + to_string(p.theorem) + "\n";
  out += "case = " + to_string(p.case_id) + "\n";
  const bool k_name = p.theorem == Theorem::T22 && p.case_id == CaseId::III;
  for (const auto& [key, v] : {std::pair<const char*, const std::vector<Cx>*>{k_name ? "k" : "L", &p.L},
                               {"L1", &p.L1}, {"L2", &p.L2}, {"d", &p.d}}) {
    if (!v->empty()) out += std::string(key) + " = " + format_list(*v) + "\n";
  }
  for (const auto& [key, h] : {std::pair<const char*, const Poly*>{"H", &p.H}, {"H1", &p.H1}, {"H2", &p.H2}}) {
    if (!h->is_zero()) out += std::string(key) + " = " + format_poly(*h) + "\n";
  }
  for (const auto& [key, v] : {std::pair<const char*, Cx>{"B1", p.B1}, {"E1", p.E1}, {"E2", p.E2},
                               {"R", p.R}, {"R2", p.R2}, {"R3", p.R3}, {"R4", p.R4}}) {
    if (v != Cx{}) out += std::string(key) + " = " + format_cx(v) + "\n";
  }
  if (p.xi) out += "xi = " + format_cx(*p.xi) + "\n";
  if (p.sign != 1) out += "sign = -1\n";
  out += std::string("branch = ") + (p.branch == Branch::Plus ? "plus" : "minus") + "\n";
  if (p.log_branch != 0) out += "log_branch = " + std::to_string(p.log_branch) + "\n";
  const auto& u = p.component;
  if (!u.empty()) {
    if (u.kind == UnivariateComponent::Kind::FourierPeriodic) {
      std::string list = "[";
      for (std::size_t k = 0; k < u.fourier.size(); ++k) {
        list += (k ? ", " : "") + std::to_string(u.fourier[k].first) + ": " + format_cx(u.fourier[k].second);
      }
      out += "periodic = " + list + "]\n";
      out += "periodic_tau = " + format_cx(u.period) + "\n";
    } else {
      out += "component_w = " + format_expression(u.in_w) + "\n";
    }
  }
  return out;
}

}  // namespace tpdde
