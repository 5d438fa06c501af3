#include "tpdde/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tpdde/config.hpp"
#include "tpdde/errors.hpp"

namespace tpdde {

const std::vector<FuzzCase>& fuzz_cases() {
  static const std::vector<FuzzCase> all = {
      {Theorem::T21, CaseId::I},   {Theorem::T21, CaseId::II}, {Theorem::T21, CaseId::III},
      {Theorem::T22, CaseId::I},   {Theorem::T22, CaseId::II}, {Theorem::T22, CaseId::III},
      {Theorem::T22, CaseId::IV},
  };
  return all;
}

std::string to_string(const FuzzCase& fc) {
  return to_string(fc.theorem) + "(" + to_string(fc.case_id) + ")";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

bool coin(Rng& rng) { return uniform_int(rng, 0, 1) == 1; }

double uniform(Rng& rng, double r) { return std::uniform_real_distribution<double>(-r, r)(rng); }

Cx rand_cx(Rng& rng, double r) { return {uniform(rng, r), uniform(rng, r)}; }

// Multiples of 1/den in [-r, r]; products and sums of these stay exact.
Cx dyadic_cx(Rng& rng, double r, long den) {
  const long m = static_cast<long>(r * den);
  return {static_cast<double>(uniform_int(rng, -m, m)) / den,
          static_cast<double>(uniform_int(rng, -m, m)) / den};
}

Cx nonzero_small_int(Rng& rng) {
  const long v = uniform_int(rng, 1, 2);
  return coin(rng) ? Cx(static_cast<double>(v)) : Cx(static_cast<double>(-v));
}

struct Base {
  std::size_t n, i, j, m;
  Cx a, b, omega, alpha, beta;
  std::vector<Cx> c;
};

// Throws when the draw is degenerate; the caller redraws.
Base draw_base(Rng& rng, std::size_t n) {
  Base s{};
  s.n = n;
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) idx[k] = k;
  std::shuffle(idx.begin(), idx.end(), rng);
  s.i = std::min(idx[0], idx[1]);
  s.j = std::max(idx[0], idx[1]);
  s.m = n > 2 ? idx[2] : n;
  s.a = rand_cx(rng, 2.0);
  s.b = rand_cx(rng, 2.0);
  s.omega = rand_cx(rng, 3.0);
  if (std::abs(s.a) < 0.5 || std::abs(s.b) < 0.5 || std::abs(s.omega * s.omega - s.a * s.b) < 0.5) {
    throw ValidationError("degenerate coefficients");
  }
  s.alpha = nonzero_small_int(rng);
  s.beta = nonzero_small_int(rng);
  s.c.assign(n, Cx{});
  for (auto& v : s.c) v = static_cast<double>(uniform_int(rng, -2, 2));
  // c_m = +-1 keeps d_m = -(d_i c_i + d_j c_j)/c_m an integer.
  if (n > 2) s.c[s.m] = coin(rng) ? 1.0 : -1.0;
  const Cx tau = s.c[s.j] - (s.beta / s.alpha) * s.c[s.i];
  if (std::abs(tau) < 1.0) throw ValidationError("period too small");
  return s;
}

TrinomialPDDE make_eq(const Base& s, Poly g, Variant v) {
  return TrinomialPDDE(s.i, s.j, s.a, s.b, s.omega, s.alpha, s.beta, s.c, std::move(g), v);
}

// d with d.c = 0 and given d_i, d_j.
std::vector<Cx> direction(const Base& s, Cx di, Cx dj) {
  std::vector<Cx> d(s.n, Cx{});
  d[s.i] = di;
  d[s.j] = dj;
  d[s.m] = -(di * s.c[s.i] + dj * s.c[s.j]) / s.c[s.m];
  return d;
}

std::vector<Cx> rand_linear(Rng& rng, std::size_t n, double r) {
  std::vector<Cx> v(n);
  for (auto& x : v) x = rand_cx(rng, r);
  return v;
}

Poly univariate(std::vector<Cx> coeffs) {
  Poly p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(MultiIndex{static_cast<unsigned>(k)}, coeffs[k]);
  return p;
}

UnivariateComponent rand_component(Rng& rng, const TrinomialPDDE& eq) {
  if (!coin(rng)) return {};
  std::vector<std::pair<long, Cx>> terms;
  const long count = uniform_int(rng, 1, 2);
  for (long t = 0; t < count; ++t) terms.emplace_back(uniform_int(rng, -1, 1), rand_cx(rng, 1.0));
  return build_periodic(eq.period(), std::move(terms));
}

Branch rand_branch(Rng& rng) { return coin(rng) ? Branch::Plus : Branch::Minus; }

FuzzDraw draw_21_i(Rng& rng) {
  const Base s = draw_base(rng, static_cast<std::size_t>(uniform_int(rng, 2, 3)));
  const long deg = uniform_int(rng, 0, 2);
  std::vector<Cx> psi;
  for (long k = 0; k <= deg; ++k) psi.push_back(dyadic_cx(rng, k == 2 ? 0.25 : 1.0, 8));
  psi[0] = rand_cx(rng, 1.0);
  const Poly w = characteristic_coordinate(s.n, s.alpha, s.beta, s.i, s.j);
  CaseParameters p;
  p.theorem = Theorem::T21;
  p.case_id = CaseId::I;
  p.branch = rand_branch(rng);
  p.sign = coin(rng) ? 1 : -1;
  return {make_eq(s, compose_univariate(univariate(psi), w), Variant::Shift), p};
}

FuzzDraw draw_21_ii(Rng& rng) {
  const Base s = draw_base(rng, static_cast<std::size_t>(uniform_int(rng, 2, 3)));
  CaseParameters p;
  p.theorem = Theorem::T21;
  p.case_id = CaseId::II;
  p.branch = rand_branch(rng);
  p.L = rand_linear(rng, s.n, 1.0);
  p.B1 = rand_cx(rng, 1.0);
  Poly g = Poly::linear(p.L, p.B1);
  if (s.n > 2 && coin(rng)) {
    // alpha d_i + beta d_j = 0 keeps D(L + H(s)) constant for any H.
    p.d = direction(s, s.beta, -s.alpha);
    p.H = univariate({Cx{}, dyadic_cx(rng, 0.5, 8), dyadic_cx(rng, 0.125, 16)});
    g += h_of_s(p.H, p.d, s.n);
  }
  const TrinomialPDDE eq = make_eq(s, g, Variant::Shift);
  const auto xs = solve_xi(eq, Theorem::T21, p.L, p.branch);
  p.xi = xs[static_cast<std::size_t>(uniform_int(rng, 0, 1))];
  return {eq, p};
}

FuzzDraw draw_split(Rng& rng, Theorem th) {
  const Base s = draw_base(rng, static_cast<std::size_t>(uniform_int(rng, 2, 3)));
  const Variant v = th == Theorem::T21 ? Variant::Shift : Variant::Difference;
  const Poly g = Poly::linear(rand_linear(rng, s.n, 1.0), rand_cx(rng, 1.0));
  TrinomialPDDE eq = make_eq(s, g, v);
  CaseParameters p = solve_split(eq, rand_branch(rng), static_cast<int>(uniform_int(rng, 0, 1)),
                                 uniform_int(rng, -1, 1));
  if (th == Theorem::T21 && s.n > 2 && coin(rng)) {
    // Purely quadratic H keeps its monomials apart from the linear split.
    p.d = direction(s, s.beta, -s.alpha);
    p.H1 = univariate({Cx{}, Cx{}, dyadic_cx(rng, 0.125, 16)});
    p.H2 = univariate({Cx{}, Cx{}, dyadic_cx(rng, 0.125, 16)});
    eq = eq.with_g(g + h_of_s(p.H1, p.d, s.n) + h_of_s(p.H2, p.d, s.n));
  }
  if (th == Theorem::T22) p.component = rand_component(rng, eq);
  return {eq, p};
}

FuzzDraw draw_22_i(Rng& rng) {
  const Base s = draw_base(rng, static_cast<std::size_t>(uniform_int(rng, 2, 3)));
  const Poly w = characteristic_coordinate(s.n, s.alpha, s.beta, s.i, s.j);
  std::vector<Cx> psi{rand_cx(rng, 1.0)};
  if (uniform_int(rng, 0, 3) != 0) psi.push_back(dyadic_cx(rng, 1.0, 8));
  const TrinomialPDDE eq = make_eq(s, compose_univariate(univariate(psi), w), Variant::Difference);
  CaseParameters p;
  p.theorem = Theorem::T22;
  p.case_id = CaseId::I;
  p.branch = rand_branch(rng);
  p.sign = coin(rng) ? 1 : -1;
  p.component = rand_component(rng, eq);
  return {eq, p};
}

FuzzDraw draw_22_ii(Rng& rng) {
  const Base s = draw_base(rng, static_cast<std::size_t>(uniform_int(rng, 2, 3)));
  CaseParameters p;
  p.theorem = Theorem::T22;
  p.case_id = CaseId::II;
  p.branch = rand_branch(rng);
  p.sign = coin(rng) ? 1 : -1;
  p.R = rand_cx(rng, 1.0);
  p.log_branch = uniform_int(rng, -1, 1);
  const bool secular = uniform_int(rng, 0, 2) == 0;
  const bool with_h = !secular && s.n > 2 && coin(rng);
  p.L = rand_linear(rng, s.n, 1.0);
  {
    // L(c) = 4 pi i k; the secular draws also get D L = 0.
    const TrinomialPDDE probe = make_eq(s, Poly(s.n), Variant::Difference);
    const Cx dl = s.alpha * p.L[s.i] + s.beta * p.L[s.j];
    const Cx target = Cx(0.0, 4.0 * kPi * static_cast<double>(p.log_branch));
    const auto u = least_norm_linear(probe, secular ? -dl : Cx{}, target - dot(p.L, s.c));
    for (std::size_t k = 0; k < s.n; ++k) p.L[k] += u[k];
  }
  Poly g = Poly::linear(p.L, p.R);
  if (with_h) {
    Cx di, dj;
    do {
      di = static_cast<double>(uniform_int(rng, -2, 2));
      dj = static_cast<double>(uniform_int(rng, -2, 2));
    } while (s.alpha * di + s.beta * dj == Cx{});
    p.d = direction(s, di, dj);
    p.H = univariate({Cx{}, dyadic_cx(rng, 0.5, 8)});
    g += h_of_s(p.H, p.d, s.n);
  }
  const TrinomialPDDE eq = make_eq(s, g, Variant::Difference);
  p.component = rand_component(rng, eq);
  return {eq, p};
}

FuzzDraw draw_22_iii(Rng& rng) {
  const Base s = draw_base(rng, static_cast<std::size_t>(uniform_int(rng, 2, 3)));
  CaseParameters p;
  p.theorem = Theorem::T22;
  p.case_id = CaseId::III;
  p.branch = rand_branch(rng);
  p.L = rand_linear(rng, s.n, 1.0);
  p.R2 = rand_cx(rng, 1.0);
  const TrinomialPDDE eq = make_eq(s, Poly::linear(p.L, p.R2), Variant::Difference);
  const auto xs = solve_xi(eq, Theorem::T22, p.L, p.branch);
  p.xi = xs[static_cast<std::size_t>(uniform_int(rng, 0, 1))];
  p.component = rand_component(rng, eq);
  return {eq, p};
}

FuzzDraw draw_once(const FuzzCase& fc, Rng& rng) {
  if (fc.theorem == Theorem::T21) {
    switch (fc.case_id) {
      case CaseId::I: return draw_21_i(rng);
      case CaseId::II: return draw_21_ii(rng);
      case CaseId::III: return draw_split(rng, Theorem::T21);
      case CaseId::IV: break;
    }
    throw ValidationError("theorem 2.1 has no case iv");
  }
  switch (fc.case_id) {
    case CaseId::I: return draw_22_i(rng);
    case CaseId::II: return draw_22_ii(rng);
    case CaseId::III: return draw_22_iii(rng);
    case CaseId::IV: return draw_split(rng, Theorem::T22);
  }
  throw ValidationError("unknown case");
}

// Largest ratio of the summands of the left side (with S evaluated the way
// verify_numeric does, as f(z+c) and f(z)) to 1 + |e^g| over the sample points.
double condition(const TrinomialPDDE& eq, const ExpPoly& f, std::uint64_t seed) {
  const ExpPoly df = eq.D(f);
  double worst = 0.0;
  for (const auto& z : sample_points(eq.arity(), 100, seed)) {
    std::vector<Cx> zc(z);
    for (std::size_t k = 0; k < zc.size(); ++k) zc[k] += eq.c()[k];
    const double d = std::abs(ep_eval(df, z));
    double sm = std::abs(ep_eval(f, zc));
    if (eq.variant() == Variant::Difference) sm += std::abs(ep_eval(f, z));
    const double t = std::abs(eq.a()) * d * d + 2.0 * std::abs(eq.omega()) * d * sm +
                     std::abs(eq.b()) * sm * sm;
    worst = std::max(worst, t / (1.0 + std::abs(cexp(poly_eval(eq.g(), z)))));
  }
  return worst;
}

}  // namespace

FuzzDraw draw_admissible(const FuzzCase& fc, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0;; ++attempt) {
    try {
      FuzzDraw d = draw_once(fc, rng);
      // Degenerate denominators surface here; redraw instead of reporting.
      const auto built = construct(d.eq, d.params);
      d.redraws = attempt;
      d.condition = condition(d.eq, built.first.f, seed);
      if (d.condition <= kMaxCondition) return d;
    } catch (const Error&) {
      if (attempt > 1000) throw;
    }
  }
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t case_index, std::size_t trial) {
  return splitmix64(splitmix64(master ^ (0xA24BAED4963EE407ULL * (case_index + 1))) + trial);
}

TrialResult run_trial(const FuzzCase& fc, std::uint64_t seed, std::size_t samples) {
  TrialResult r;
  r.fc = fc;
  r.seed = seed;
  try {
    const FuzzDraw d = draw_admissible(fc, seed);
    r.redraws = d.redraws;
    auto [cand, rows] = construct(d.eq, d.params);
    r.rows = std::move(rows);
    r.report = verify_numeric(d.eq, cand.f, samples, seed, 1e-8, Exec::Serial);
    r.report.symbolic_zero = verify_symbolic(d.eq, cand.f, d.eq.tolerance());
    r.ok = r.report.symbolic_zero && r.report.numeric_pass && r.rows.all_satisfied();
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

FuzzSummary run_fuzz(const FuzzOptions& opt) {
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  const auto& cases = fuzz_cases();
  for (std::size_t k = 0; k < cases.size(); ++k) {
    if (opt.theorem && cases[k].theorem != *opt.theorem) continue;
    if (opt.case_id && cases[k].case_id != *opt.case_id) continue;
    for (std::size_t t = 0; t < opt.trials; ++t) jobs.emplace_back(k, t);
  }
  std::vector<TrialResult> results(jobs.size());
  const auto one = [&](std::size_t q) {
    const auto [k, t] = jobs[q];
    results[q] = run_trial(cases[k], trial_seed(opt.seed, k, t), opt.samples);
  };
  const long count = static_cast<long>(jobs.size());
  if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long q = 0; q < count; ++q) one(static_cast<std::size_t>(q));
  } else {
    for (long q = 0; q < count; ++q) one(static_cast<std::size_t>(q));
  }
  FuzzSummary s;
  s.trials = results.size();
  for (auto& r : results) {
    s.redraws += static_cast<std::size_t>(r.redraws);
    if (r.error.empty()) s.max_rel_residual = std::max(s.max_rel_residual, r.report.max_rel_residual);
    if (!r.ok) s.violations.push_back(std::move(r));
  }
  return s;
}

std::string describe_trial(const FuzzCase& fc, std::uint64_t seed) {
  const FuzzDraw d = draw_admissible(fc, seed);
  return "# case " + to_string(fc) + ", trial seed " + std::to_string(seed) + "\n# equation\n" +
         format_equation_config(d.eq) + "# parameters\n" + format_case_parameters(d.params);
}

}  // namespace tpdde
