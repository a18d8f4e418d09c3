// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "cb/monopole.hpp"
#include "cb/trace.hpp"
#include "examples.hpp"
#include "numeric_oracle.hpp"
#include "parse.hpp"

using namespace cb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

const GQ kI = GQ::I();

double rel(ComplexF a, ComplexF b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(const char* f, double a, double b = 0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

GammaState one_term(std::vector<int> b, MultiPoly p, std::vector<GammaFactor> g) {
  GammaState s(static_cast<int>(b.size()));
  s.add(StateTerm{std::move(b), RationalFunction(std::move(p)), std::move(g)});
  return s;
}

AffineForm a1(GQ c, GQ g) { return AffineForm(std::move(c), {std::move(g)}); }

double max_pointwise(const GammaState& a, const GammaState& b, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-2, 2);
  auto sup = a.supports();
  double worst = 0;
  for (int p = 0; p < points; ++p) {
    std::vector<double> x(a.dim());
    for (auto& v : x) v = U(rng);
    for (const auto& bb : sup) worst = std::max(worst, rel(eval_state(a, x, bb), eval_state(b, x, bb)));
  }
  return worst;
}

Outcome c1() {
  Outcome o;
  int n_checks = 0;
  for (int n : {1, 2, 3}) {
    auto rep = verify_relations(n);
    n_checks += static_cast<int>(rep.checks.size());
    for (const auto& c : rep.checks)
      if (!c.ok) {
        o.ok = false;
        o.detail += " failed: " + c.name;
      }
  }
  if (o.ok) o.detail = std::to_string(n_checks) + " relations, all symbolic zero";
  return o;
}

Outcome c2() {
  Outcome o;
  auto t = csxc_theory(0);
  GammaState one = ground_state(t);
  MultiPoly s = MultiPoly::var(1, 0);
  int count = 0;
  for (int m = 1; m <= 5; ++m) {
    OperatorWord w;
    w.factors.assign(m, Generator::X(0));
    auto want = one_term({m}, MultiPoly::constant(1, GQ(1)), {{a1(GQ(Q(1 + m, 2)), -kI), 1}});
    o.ok &= state_equal(apply_word(w, one), want).exact;
    ++count;
  }
  for (int n = 1; n <= 5; ++n) {
    OperatorWord w;
    w.factors.assign(n, Generator::P(0));
    MultiPoly p = MultiPoly::constant(1, GQ(1));
    for (int k = 1; k <= n; ++k) p = p * (s.scaled(kI) + MultiPoly::constant(1, GQ(Q(-n, 2) + Q(2 * k - 1, 2))));
    o.ok &= state_equal(apply_word(w, one), one_term({-n}, p, {{a1(GQ(Q(1 - n, 2)), -kI), 1}})).exact;
    ++count;
  }
  auto mu = apply_expr(t, parse_expr("X1 P1 + 1/2", 1), one);
  o.ok &= state_equal(mu, one_term({0}, s.scaled(kI), {{a1(GQ(Q(1, 2)), -kI), 1}})).exact;
  ++count;
  o.detail = std::to_string(count) + " ground-state actions compared after canonicalization";
  return o;
}

Outcome c3() {
  Outcome o;
  auto t = csxc_theory(0);
  auto one = ground_state(t);
  bool xx = state_equal(apply_generator(Generator::X(0), one), apply_generator(Generator::Xt(0), one).scaled(GQ(-1))).exact;
  bool pp = state_equal(apply_generator(Generator::P(0), one), apply_generator(Generator::Pt(0), one).scaled(GQ(-1))).exact;
  auto t2 = csxc2_theory(Q(1, 3), Q(1, 5));
  auto one2 = ground_state(t2);
  bool lem = true;
  for (long l : {1L, -1L, 2L, -2L})
    lem &= state_equal(apply_atom(t2, Atom::r({l}, true), one2), apply_atom(t2, Atom::r({-l}, false), one2)).exact;
  o.ok = xx && pp && lem;
  o.detail = std::string("X|1> = -Xt|1> ") + (xx ? "exact" : "FAIL") + ", P|1> = -Pt|1> " + (pp ? "exact" : "FAIL") +
             ", flavored lemma on (C*, C^2) for l = +-1, +-2 " + (lem ? "exact" : "FAIL");
  return o;
}

Outcome c4() {
  Outcome o;
  auto t = gl2_theory();
  auto vp = ground_state(t);
  auto v10 = apply_expr(t, parse_expr("V[1,0]", 2), vp);
  auto prod = apply_expr(t, parse_expr("V[0,-1] V[1,0]", 2), vp);
  auto d10 = gl2_display_V10(), dp = gl2_display_product();
  bool s1 = state_equal(v10, d10).exact, s2 = state_equal(prod, dp).exact;
  double p1 = max_pointwise(v10, d10, 100, 41), p2 = max_pointwise(prod, dp, 100, 42);
  GammaState psi0(2);
  for (const auto& term : prod.terms())
    if (term.b == std::vector<int>{0, 0}) psi0.add(term);
  auto h = normalize(hyperbolic_pairing(ground_state(t, true), psi0, t.fi_form(), TwistConvention::Imaginary));
  bool ig = same_expression(h, gl2_display_integrand(t));
  o.ok = s1 && s2 && p1 <= 1e-10 && p2 <= 1e-10 && ig && prod.supports().size() == 3;
  o.detail = std::string("symbolic ") + (s1 && s2 ? "match" : "MISMATCH") + fmt(", pointwise max rel %.2g / %.2g", p1, p2) +
             ", integrand " + (ig ? "equal" : "DIFFERENT");
  return o;
}

Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-3, 3);
  double worst = 0;
  for (auto t : {csxc_theory(0), csxc2_theory(Q(1, 3), Q(1, 5)), gl2_theory(), gl2_3flav_theory()}) {
    auto m = build_measure(t);
    for (int p = 0; p < 1000; ++p) {
      std::vector<double> x(t.rank());
      for (auto& v : x) v = U(rng);
      worst = std::max(worst, rel(measure_gamma_form(t, x.data()), m.eval(x.data(), false)));
    }
  }
  o.ok = worst < 1e-11;
  o.detail = fmt("4 theories x 1000 points, max rel %.2g", worst);
  return o;
}

Outcome c6() {
  Outcome o;
  TraceOptions opt;
  opt.tol = 1e-10;
  double slowest = 0, worst = 0;
  auto timed = [&](const TheoryConfig& t, const char* p) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = trace_polynomial(t, parse_poly(p, 1), opt);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return r.quad.value;
  };
  for (int q4 : {0, 1, 2}) {
    double z = q4 / 4.0;
    double e = rel(timed(csxc_theory(Q(q4, 4)), "1"), M_PI / std::cosh(M_PI * z));
    worst = std::max(worst, e);
    o.ok &= e < 1e-8;
  }
  auto t0 = csxc_theory(0);
  double odd = std::abs(timed(t0, "i s1"));
  double e2 = rel(timed(t0, "(i s1)^2"), -M_PI / 4);
  o.ok &= odd < 1e-10 && e2 < 1e-8 && slowest < 0.5;
  o.detail = fmt("Tr(1) max rel %.2g, |Tr(i s)| %.2g", worst, odd) + fmt(", Tr((i s)^2) rel %.2g, slowest %.3g s", e2, slowest);
  return o;
}

Outcome c7() {
  Outcome o;
  auto a = check_conical(csxc_theory(0));
  auto b = check_conical(build_theory({{"gauge_dims", {1}}, {"fi", {"0"}}}));
  auto c = check_conical(gl2_theory());
  auto d = check_conical(gl2_3flav_theory());
  o.ok = a.conical && !b.conical && !c.conical && c.witness == std::vector<long>{1, -1} && d.conical;
  o.detail = std::string("(C*,C) ") + (a.conical ? "true" : "false") + ", (C*,0) " + (b.conical ? "true" : "false") +
             ", (GL2,C^2) " + (c.conical ? "true" : "false") + " witness (" +
             (c.witness.size() == 2 ? std::to_string(c.witness[0]) + "," + std::to_string(c.witness[1]) : "") +
             "), (GL2,3 flavors) " + (d.conical ? "true" : "false");
  return o;
}

Outcome c8() {
  Outcome o;
  auto t = csxc2_theory(Q(1, 3), Q(1, 5));
  auto g = twist_for(t, TwistConvention::Imaginary);
  OpExpr e = parse_expr("r[1]", 1), me = parse_expr("r[-1]", 1), mu = parse_expr("X1 P1 + 1/2", 1);
  auto rep = verify_twisted_property(t, {{e, me}, {e * mu, me}, {mu, mu * mu}}, g);
  double worst = 0;
  for (const auto& p : rep.pairs) {
    double r = p.residual / std::max(std::abs(p.lhs), 1.0);
    worst = std::max(worst, r);
    o.ok &= r < 1e-6;
  }
  auto z1 = trace_word(t, e), z2 = trace_word(t, me);
  bool zeros = z1.exact_zero && z2.exact_zero && z1.quad.value == ComplexF(0) && z2.quad.value == ComplexF(0);
  o.ok &= zeros && rep.ok;
  o.detail = "g = " + g.str() + fmt(", max scaled residual %.2g", worst) + ", Tr(r^{+-e}) " +
             (zeros ? "exactly 0" : "NONZERO");
  return o;
}

Outcome c9() {
  Outcome o;
  auto t = gl2_3flav_theory();
  TraceOptions opt;
  opt.tol = 1e-9;
  auto v = trace_word(t, parse_expr("V[0,-1] V[1,0]", 2), opt);
  auto v2 = trace_word(t, parse_expr("Vb[1,0] V[1,0]", 2), opt);
  o.ok = v.quad.converged && v2.quad.converged;
  double worst = 0;
  std::vector<std::pair<const char*, const char*>> cartan = {
      {"1", "1"}, {"X1 P1 + X2 P2 + 1", "i s1 + i s2"}, {"(X1 P1 + 1/2)(X2 P2 + 1/2)", "(i s1)(i s2)"}};
  for (auto [w, p] : cartan) {
    auto a = trace_word(t, parse_expr(w, 2), opt), b = trace_polynomial(t, parse_poly(p, 2), opt);
    double allowed = 2 * (opt.tol * std::max(a.quad.l1, b.quad.l1) * 2 + a.quad.abs_error + b.quad.abs_error);
    double d = std::abs(a.quad.value - b.quad.value);
    worst = std::max(worst, d / allowed);
    o.ok &= a.quad.converged && b.quad.converged && d <= allowed;
  }
  o.detail = fmt("Tr(V(0,-1)V(1,0)) = %.10g%+.10gi", v.quad.value.real(), v.quad.value.imag()) +
             (v.quad.converged ? " converged" : " NOT converged") +
             fmt(", Cartan words vs polynomials: worst diff / allowed %.2g", worst);
  return o;
}

Outcome c10() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> letter(0, 3), len(1, 4), dim(1, 2);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  double worst = 0;
  int words = 0;
  for (; words < 200; ++words) {
    int n = dim(rng);
    std::uniform_int_distribution<int> coord(0, n - 1);
    std::vector<oracle::Letter> w;
    OperatorWord ow;
    for (int i = len(rng); i > 0; --i) {
      oracle::Letter L{static_cast<oracle::G>(letter(rng)), coord(rng)};
      w.push_back(L);
      Generator g = L.g == oracle::G::X    ? Generator::X(L.k)
                    : L.g == oracle::G::P  ? Generator::P(L.k)
                    : L.g == oracle::G::Xt ? Generator::Xt(L.k)
                                           : Generator::Pt(L.k);
      ow.factors.push_back(g);
    }
    nlohmann::json weights = nlohmann::json::array();
    for (int k = 0; k < n; ++k) {
      std::vector<int> row(n, 0);
      row[k] = 1;
      weights.push_back(row);
    }
    auto t = build_theory({{"gauge_dims", std::vector<int>(n, 1)}, {"weights", weights}});
    auto st = apply_word(ow, ground_state(t));
    auto sup = st.supports();
    for (int p = 0; p < 50; ++p) {
      std::vector<double> x(n);
      std::vector<ComplexF> xc(n);
      for (int k = 0; k < n; ++k) xc[k] = x[k] = U(rng);
      std::vector<int> b = sup.empty() ? std::vector<int>(n, 0) : sup[0];
      ComplexF a = eval_state(st, x, b), r = oracle::eval(w, 0, xc, b);
      double e = rel(a, r);
      worst = std::max(worst, e);
      o.ok &= e <= 1e-10;
    }
  }
  o.detail = std::to_string(words) + " words x 50 points" + fmt(", max rel %.2g", worst);
  return o;
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* title;
    double budget;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  std::vector<Row> rows = {
      {1, "operator relations", 1, c1},
      {2, "ground-state actions", 1, c2},
      {3, "adjoint relations", 0, c3},
      {4, "GL2 regression", 10, c4},
      {5, "measure identity", 0, c5},
      {6, "closed-form traces", 0, c6},
      {7, "conical checker", 0, c7},
      {8, "twisted-trace property", 30, c8},
      {9, "conical nonabelian trace", 0, c9},
      {10, "numeric/symbolic oracle", 60, c10},
  };
  int failures = 0;
  for (const auto& r : rows) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = r.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.budget > 0 && secs > r.budget) {
      o.ok = false;
      o.detail += fmt(" (over the %.0f s budget)", r.budget);
    }
    failures += !o.ok;
    std::printf("criterion %2d %s: %s (%.3f s) %s\n", r.id, o.ok ? "PASS" : "FAIL", r.title, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(rows.size()) - failures, rows.size());
  return failures;
}
