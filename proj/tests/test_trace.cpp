#include "catch_amalgamated.hpp"

#include <fstream>
#include <random>

#include "cb/trace.hpp"
#include "examples.hpp"
#include "parse.hpp"

using namespace cb;

namespace {

nlohmann::json oracles() {
  std::ifstream f(CB_ORACLES);
  return nlohmann::json::parse(f);
}

ComplexF cj(const nlohmann::json& v) { return {v[0].get<double>(), v[1].get<double>()}; }

double rel(ComplexF a, ComplexF b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ComplexF tr_poly(const TheoryConfig& t, const std::string& p, TraceOptions o = {}) {
  return trace_polynomial(t, parse_poly(p, t.rank()), o).quad.value;
}

ComplexF tr_word(const TheoryConfig& t, const std::string& w, TraceOptions o = {}) {
  return trace_word(t, parse_expr(w, t.rank()), o).quad.value;
}

}  // namespace

TEST_CASE("measure displays") {
  CHECK(build_measure(csxc_theory(0)).str() == "exp(2*pi*i*0) * pi / (cosh(pi*s1))");
  auto m2 = build_measure(csxc2_theory(Q(1, 3), Q(1, 5)));
  CHECK(m2.cosh.size() == 2);
  CHECK(m2.pi_power == 2);
  CHECK(m2.str() == "exp(2*pi*i*(1/5*s1)) * pi^2 / (cosh(pi*(s1 + 1/3))^2)");
  auto g = build_measure(gl2_theory());
  CHECK(g.sinh2.size() == 1);
  CHECK(g.pi_power == 0);
  CHECK(g.str() == "exp(2*pi*i*0) * sinh(pi*(s1 - s2))^2 / (cosh(pi*s2) * cosh(pi*s1))");
  auto bare = build_measure(csxc_theory(0), TwistConvention::Real, MeasureNorm::Bare);
  CHECK(bare.pi_power == 0);
  CHECK(bare.twist == TwistConvention::Real);
}

TEST_CASE("one-dimensional quadrature oracles") {
  QuadOptions q;
  q.tol = 1e-12;
  auto r1 = integrate([](const double* x) { return ComplexF(1 / std::cosh(M_PI * x[0])); }, 1, q);
  CHECK(std::abs(r1.value - 1.0) < 1e-10);
  auto r2 = integrate([](const double* x) { return ComplexF(std::pow(1 / std::cosh(M_PI * x[0]), 2)); }, 1, q);
  CHECK(std::abs(r2.value - 2 / M_PI) < 1e-10);
  auto r3 = integrate([](const double* x) { return ComplexF(1 / (std::cosh(M_PI * x[0]) * std::cosh(M_PI * x[1]))); },
                      2, q);
  CHECK(std::abs(r3.value - 1.0) < 1e-10);
  CHECK(r3.converged);
}

TEST_CASE("closed-form traces on C* with C") {
  auto o = oracles();
  TraceOptions opt;
  opt.tol = 1e-10;
  for (const auto& row : o["csxc"]) {
    auto t = csxc_theory(parse_rational(row["zeta"].get<std::string>()));
    std::string p = row["poly"];
    if (p.rfind("(i s1)^", 0) == 0) p = "(i s1)^" + p.substr(7);
    INFO(p << " at zeta " << row["zeta"]);
    auto r = trace_polynomial(t, parse_poly(p, 1), opt);
    CHECK(r.quad.converged);
    ComplexF want = cj(row["value"]);
    if (std::abs(want) < 1e-12)
      CHECK(std::abs(r.quad.value) < 1e-10);
    else
      CHECK(rel(r.quad.value, want) < 1e-8);
  }
  for (double z : {0.0, 0.25, 0.5}) {
    auto t = csxc_theory(Q(static_cast<long>(z * 4), 4));
    CHECK(rel(tr_poly(t, "1"), M_PI / std::cosh(M_PI * z)) < 1e-8);
  }
}

TEST_CASE("alternative conventions") {
  TraceOptions real;
  real.twist = TwistConvention::Real;
  // int pi sech(pi s) e^{2 pi s / 4} ds = pi / cos(pi / 4)
  CHECK(rel(tr_poly(csxc_theory(Q(1, 4)), "1", real), M_PI * std::sqrt(2.0)) < 1e-8);
  TraceOptions bare;
  bare.norm = MeasureNorm::Bare;
  CHECK(rel(tr_poly(csxc_theory(0), "1", bare), 1.0) < 1e-8);
}

TEST_CASE("abelian flavored measure") {
  auto o = oracles();
  auto t = csxc2_theory(Q(1, 3), Q(1, 5));
  ComplexF got = tr_word(t, "1");
  CHECK(rel(got, cj(o["csxc2_trace_one"]["value"])) < 1e-9);
  CHECK(rel(got, csxc2_trace_one(1.0 / 3, 0.2)) < 1e-9);
  CHECK(rel(tr_word(csxc2_theory(0, 0), "1"), 2 * M_PI) < 1e-9);
}

TEST_CASE("charged words have exactly zero trace") {
  auto t = csxc_theory(0);
  auto r = trace_word(t, parse_expr("r[1]", 1));
  CHECK(r.exact_zero);
  CHECK(r.quad.value == ComplexF(0));
  CHECK(r.quad.evaluations == 0);
  CHECK(trace_word(t, parse_expr("X1 X1 P1", 1)).exact_zero);
}

TEST_CASE("mu moments") {
  auto t = csxc_theory(0);
  TraceOptions opt;
  opt.tol = 1e-11;
  OpExpr mu = parse_expr("X1 P1 + 1/2", 1);
  for (int n = 0; n <= 4; ++n) {
    INFO(n);
    ComplexF w = trace_word(t, mu.pow(n), opt).quad.value;
    ComplexF p = trace_polynomial(t, parse_poly("(i s1)^" + std::to_string(n), 1), opt).quad.value;
    CHECK(std::abs(w - p) < 1e-9);
    CHECK(std::abs(w - mu_moment(n)) < 1e-9);
  }
}

TEST_CASE("GL2 trace integrand") {
  auto t = gl2_theory();
  TraceOptions opt;
  CHECK_THROWS_AS(trace_word(t, parse_expr("V[0,-1] V[1,0]", 2), opt), NotConical);
  try {
    trace_word(t, parse_expr("V[0,-1] V[1,0]", 2), opt);
  } catch (const NotConical& e) {
    CHECK(e.witness == std::vector<long>{1, -1});
  }
  auto prod = apply_expr(t, parse_expr("V[0,-1] V[1,0]", 2), ground_state(t));
  GammaState psi0(2);
  for (const auto& term : prod.terms())
    if (term.b == std::vector<int>{0, 0}) psi0.add(term);
  auto h = normalize(hyperbolic_pairing(ground_state(t, true), psi0, t.fi_form(), TwistConvention::Imaginary));
  CHECK(same_expression(h, gl2_display_integrand(t)));
  CHECK(h.str() ==
        "exp(2*pi*i*zeta(s)) * (-i*s1 - i*s2 - 1) * sinh(pi*(s1 - s2))^2 / ((s1 - s2)^2 * cosh(pi*s1) * cosh(pi*s2))");
}

TEST_CASE("GL2 integrand is regular across the diagonal") {
  auto h = gl2_display_integrand(gl2_theory());
  for (double a : {-0.7, 0.0, 0.4}) {
    for (double d : {1e-7, -3e-7, 9e-7, 0.0}) {
      double x[2] = {a + d, a};
      // sinh(pi d)^2 / d^2 = pi^2 (1 + (pi d)^2 / 3 + ...)
      double r = M_PI * M_PI * (1 + std::pow(M_PI * d, 2) / 3);
      ComplexF want = ComplexF(-1, -(2 * a + d)) * r / (std::cosh(M_PI * (a + d)) * std::cosh(M_PI * a));
      ComplexF v = h.eval(x);
      CHECK(std::isfinite(v.real()));
      CHECK(std::abs(v - want) < 1e-9 * std::abs(want));
    }
  }
}

TEST_CASE("end-to-end trace on GL2 with three flavors") {
  auto o = oracles();
  auto t = gl2_3flav_theory();
  TraceOptions opt;
  opt.tol = 1e-9;
  for (const auto& row : o["gl2_3flav_trace_poly"]) {
    std::string p = row["poly"];
    auto r = trace_polynomial(t, parse_poly(p, 2), opt);
    CHECK(r.quad.converged);
    CHECK(rel(r.quad.value, cj(row["value"])) < 1e-8);
  }
  auto w = trace_word(t, parse_expr("V[0,-1] V[1,0]", 2), opt);
  CHECK(w.quad.converged);
  CHECK(w.normalization == GQ(-1));
  CHECK(std::isfinite(std::abs(w.quad.value)));
}

TEST_CASE("twist automorphism") {
  auto t = csxc2_theory(Q(1, 3), Q(1, 5));
  auto g = twist_for(t, TwistConvention::Imaginary);
  auto [w1, c1] = apply_twist(t, g, OpExpr::scalar(GQ(1)));
  CHECK(c1 == ComplexF(1));
  CHECK(w1.str(1) == OpExpr::scalar(GQ(1)).str(1));
  auto [wp, cp] = apply_twist(t, g, parse_expr("poly{s1^2 + i}", 1));
  CHECK(cp == ComplexF(1));
  auto [wr, cr] = apply_twist(t, g, parse_expr("r[1]", 1));
  CHECK(std::abs(std::abs(cr) - std::exp(2 * M_PI * 0.2)) < 1e-12);
  auto cal = calibrate();
  CHECK(cal.residual < 1e-9);
  CHECK(cal.tried.size() == 24);
  CHECK(cal.g.str() == "(-1)^<w,lambda> * exp(2*pi*zeta(lambda))");
}

TEST_CASE("twisted trace property") {
  auto t = csxc2_theory(Q(1, 3), Q(1, 5));
  auto g = twist_for(t, TwistConvention::Imaginary);
  OpExpr e = parse_expr("r[1]", 1), me = parse_expr("r[-1]", 1), mu = parse_expr("X1 P1 + 1/2", 1);
  auto rep = verify_twisted_property(t, {{e, me}, {e * mu, me}, {mu, mu * mu}, {e, OpExpr::scalar(GQ(1))}}, g);
  for (const auto& l : rep.lines) UNSCOPED_INFO(l);
  CHECK(rep.ok);
  for (const auto& p : rep.pairs) CHECK(p.residual < 1e-6 * std::max(std::abs(p.lhs), 1.0));
  CHECK(rep.pairs[3].lhs == ComplexF(0));
  CHECK(rep.pairs[3].rhs == ComplexF(0));
}

TEST_CASE("measure identity", "[property]") {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> U(-3, 3);
  for (auto t : {csxc_theory(0), csxc2_theory(Q(1, 3), Q(1, 5)), gl2_theory(), gl2_3flav_theory()}) {
    INFO(t.label);
    auto m = build_measure(t);
    int n = t.rank();
    double worst = 0;
    for (int p = 0; p < 1000; ++p) {
      std::vector<double> x(n);
      for (auto& v : x) v = U(rng);
      ComplexF a = measure_gamma_form(t, x.data()), b = m.eval(x.data(), false);
      worst = std::max(worst, rel(a, b));
    }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("Cartan words trace like their polynomials", "[property]") {
  auto t = gl2_3flav_theory();
  TraceOptions opt;
  opt.tol = 1e-9;
  std::vector<std::pair<std::string, std::string>> cases = {
      {"1", "1"},
      {"X1 P1 + X2 P2 + 1", "i s1 + i s2"},
      {"(X1 P1 + 1/2) (X2 P2 + 1/2)", "(i s1) (i s2)"},
      {"poly{s1^2 + s2^2}", "s1^2 + s2^2"},
  };
  for (const auto& [w, p] : cases) {
    INFO(w);
    auto a = trace_word(t, parse_expr(w, 2), opt), b = trace_polynomial(t, parse_poly(p, 2), opt);
    CHECK(a.quad.converged);
    CHECK(std::abs(a.quad.value - b.quad.value) <=
          2 * opt.tol * (a.quad.l1 + b.quad.l1) + 2 * (a.quad.abs_error + b.quad.abs_error));
  }
}

TEST_CASE("trace is linear", "[property]") {
  auto t = csxc2_theory(Q(1, 3), Q(1, 5));
  TraceOptions opt;
  opt.tol = 1e-11;
  std::vector<std::string> words = {"1", "X1 P1", "r[1] r[-1]", "r[-1] r[1] X1 P1", "poly{s1^3}"};
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 4), c(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = words[pick(rng)], b = words[pick(rng)];
    GQ x(Q(c(rng), 2), Q(c(rng))), y(Q(c(rng)), Q(1, 3));
    auto ea = parse_expr(a, 1), eb = parse_expr(b, 1);
    ComplexF lhs = trace_word(t, ea.scaled(x) + eb.scaled(y), opt).quad.value;
    ComplexF rhs = x.to_complex() * trace_word(t, ea, opt).quad.value + y.to_complex() * trace_word(t, eb, opt).quad.value;
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(std::abs(rhs), 1.0));
  }
}

TEST_CASE("twist invariance of single traces", "[property]") {
  auto t = csxc2_theory(Q(1, 3), Q(1, 5));
  auto g = twist_for(t, TwistConvention::Imaginary);
  for (const char* w : {"r[1]", "r[-1] X1", "rb[2]", "poly{s1}", "X1 P1 X1 P1"}) {
    auto e = parse_expr(w, 1);
    auto [ge, c] = apply_twist(t, g, e);
    auto tr = trace_word(t, e);
    if (tr.exact_zero)
      CHECK(trace_word(t, ge).exact_zero);
    else
      CHECK(c == ComplexF(1));
  }
}

TEST_CASE("report json carries the conventions") {
  auto t = csxc_theory(0);
  auto r = trace_polynomial(t, parse_poly("1", 1));
  auto j = r.to_json();
  for (const char* k : {"value", "abs_error", "converged", "conical", "convention", "integrand"}) CHECK(j.contains(k));
  CHECK(j["value"][0].get<double>() == Catch::Approx(M_PI).epsilon(1e-9));
}
