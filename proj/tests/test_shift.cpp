#include "catch_amalgamated.hpp"

#include <random>

#include "cb/shift.hpp"
#include "examples.hpp"
#include "numeric_oracle.hpp"

using namespace cb;

namespace {

const GQ kI = GQ::I();

AffineForm a1(GQ c, GQ g) { return AffineForm(std::move(c), {std::move(g)}); }

GammaState one_term(std::vector<int> b, MultiPoly p, std::vector<GammaFactor> g) {
  GammaState s(static_cast<int>(b.size()));
  StateTerm t;
  t.b = std::move(b);
  t.pre = RationalFunction(std::move(p));
  t.gammas = std::move(g);
  s.add(t);
  return s;
}

TheoryConfig flat(int n) {
  nlohmann::json w = nlohmann::json::array();
  for (int k = 0; k < n; ++k) {
    std::vector<int> row(n, 0);
    row[k] = 1;
    w.push_back(row);
  }
  return build_theory({{"label", "flat"}, {"gauge_dims", std::vector<int>(n, 1)}, {"weights", w}});
}

Generator gen(oracle::G g, int k) {
  switch (g) {
    case oracle::G::X: return Generator::X(k);
    case oracle::G::P: return Generator::P(k);
    case oracle::G::Xt: return Generator::Xt(k);
    default: return Generator::Pt(k);
  }
}

}  // namespace

TEST_CASE("relation suite") {
  for (int n : {1, 3}) {
    auto rep = verify_relations(n);
    for (const auto& c : rep.checks) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.ok);
    }
    CHECK(rep.ok);
    CHECK_FALSE(rep.checks.empty());
  }
}

TEST_CASE("powers of X and P on the ground state") {
  GammaState one = ground_state(csxc_theory(0));
  MultiPoly s = MultiPoly::var(1, 0);
  for (int m = 0; m <= 4; ++m) {
    OperatorWord w;
    w.factors.assign(m, Generator::X(0));
    // delta_{b,m} Gamma(1/2 + b/2 - i s)
    auto want = one_term({m}, MultiPoly::constant(1, GQ(1)), {{a1(GQ(Q(1 + m, 2)), -kI), 1}});
    CHECK(state_equal(apply_word(w, one), want).exact);
  }
  for (int n = 0; n <= 4; ++n) {
    OperatorWord w;
    w.factors.assign(n, Generator::P(0));
    // delta_{b,-n} Gamma(b/2 + 1/2 - i s) prod_k (i s + b/2 + (2k-1)/2)
    MultiPoly p = MultiPoly::constant(1, GQ(1));
    for (int k = 1; k <= n; ++k) p = p * (s.scaled(kI) + MultiPoly::constant(1, GQ(Q(-n, 2) + Q(2 * k - 1, 2))));
    auto want = one_term({-n}, p, {{a1(GQ(Q(1 - n, 2)), -kI), 1}});
    CHECK(state_equal(apply_word(w, one), want).exact);
  }
}

TEST_CASE("XP, PX and mu") {
  int n = 1;
  MultiPoly s = cartan_sigma(n, 0), b = cartan_b(n, 0);
  // psi = s^2 Gamma(1/2 - i s) at b = 2, an arbitrary test vector
  auto psi = one_term({2}, MultiPoly::var(1, 0).pow(2), {{a1(GQ(Q(1, 2)), -kI), 1}});
  OperatorWord xp{GQ(1), {Generator::X(0), Generator::P(0)}}, px{GQ(1), {Generator::P(0), Generator::X(0)}};
  auto lhs = apply_word(xp, psi);
  auto rhs = apply_generator(Generator::mult(MultiPoly::constant(2, GQ(Q(-1, 2))) + s.scaled(kI) + b.scaled(GQ(Q(1, 2)))), psi);
  CHECK(state_equal(lhs, rhs).exact);
  auto lhs2 = apply_word(px, psi);
  auto rhs2 = apply_generator(Generator::mult(MultiPoly::constant(2, GQ(Q(1, 2))) + s.scaled(kI) + b.scaled(GQ(Q(1, 2)))), psi);
  CHECK(state_equal(lhs2, rhs2).exact);

  auto t = csxc_theory(0);
  auto one = ground_state(t);
  auto mu = apply_word(xp, one) + one.scaled(GQ(Q(1, 2)));
  // (b + 2 i s)/2 Gamma((1 + b - 2 i s)/2) at b = 0
  auto want = one_term({0}, MultiPoly::var(1, 0).scaled(kI), {{a1(GQ(Q(1, 2)), -kI), 1}});
  CHECK(state_equal(mu, want).exact);
  CHECK(state_equal(apply_word(px, one) - one.scaled(GQ(Q(1, 2))), want).exact);
}

TEST_CASE("identity multiplication") {
  auto one = ground_state(gl2_3flav_theory());
  CHECK(state_equal(apply_generator(Generator::mult(MultiPoly::constant(4, GQ(1))), one), one).exact);
}

TEST_CASE("abelian monopole words") {
  auto w = abelian_monopole({1}, true);
  REQUIRE(w.factors.size() == 1);
  CHECK(w.factors[0].kind == GenKind::X);
  CHECK(w.coeff == GQ(1));
  auto wb = abelian_monopole({-1}, false);
  REQUIRE(wb.factors.size() == 1);
  CHECK(wb.factors[0].kind == GenKind::Xt);
  CHECK(wb.coeff == GQ(-1));
  CHECK(abelian_monopole({0, 0}, true).factors.empty());
  auto w2 = abelian_monopole({2, -1}, true);
  CHECK(w2.factors.size() == 3);
}

TEST_CASE("adjoint relations on the ground state") {
  auto one = ground_state(csxc_theory(0));
  auto X = apply_generator(Generator::X(0), one), Xt = apply_generator(Generator::Xt(0), one);
  auto P = apply_generator(Generator::P(0), one), Pt = apply_generator(Generator::Pt(0), one);
  CHECK(state_equal(X, Xt.scaled(GQ(-1))).exact);
  CHECK(state_equal(P, Pt.scaled(GQ(-1))).exact);
  CHECK_FALSE(state_equal(X, Xt).exact);
}

TEST_CASE("words agree with the pointwise recursion", "[property]") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> letter(0, 3), len(1, 4);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 2;
    std::uniform_int_distribution<int> coord(0, n - 1);
    std::vector<oracle::Letter> w;
    OperatorWord ow;
    for (int i = len(rng); i > 0; --i) {
      oracle::Letter L{static_cast<oracle::G>(letter(rng)), coord(rng)};
      w.push_back(L);
      ow.factors.push_back(gen(L.g, L.k));
    }
    auto st = apply_word(ow, ground_state(flat(n)));
    auto sup = st.supports();
    REQUIRE(sup.size() == 1);
    for (int p = 0; p < 50; ++p) {
      std::vector<double> x(n);
      std::vector<ComplexF> xc(n);
      for (int k = 0; k < n; ++k) xc[k] = x[k] = U(rng);
      std::vector<int> b = sup[0];
      if (p % 5 == 4) b[0] += 1;
      ComplexF sym = eval_state(st, x, b), num = oracle::eval(w, 0, xc, b);
      CHECK(std::abs(sym - num) <= 1e-10 * std::max(std::abs(num), 1e-300));
    }
  }
}

TEST_CASE("z coordinates commute with X and P words", "[property]") {
  std::mt19937_64 rng(3);
  int n = 2;
  // symmetric in z1, z2
  MultiPoly e1 = cartan_z(n, 0) + cartan_z(n, 1), e2 = cartan_z(n, 0) * cartan_z(n, 1);
  MultiPoly sym = e1 * e1 + e2.scaled(GQ(Q(3), Q(1)));
  Generator mult = Generator::mult(sym);
  auto psi = apply_word(OperatorWord{GQ(1), {Generator::Pt(0), Generator::Xt(1)}}, ground_state(flat(n)));
  std::uniform_int_distribution<int> pick(0, 3), len(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    OperatorWord w;
    for (int i = len(rng); i > 0; --i) {
      int c = pick(rng);
      w.factors.push_back(c < 2 ? Generator::X(c) : Generator::P(c - 2));
    }
    auto a = apply_word(w, apply_generator(mult, psi));
    auto b = apply_generator(mult, apply_word(w, psi));
    CHECK(state_equal(a, b).exact);
  }
}

TEST_CASE("support arithmetic", "[property]") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> letter(0, 3), len(0, 4), coord(0, 2);
  int n = 3;
  auto base = apply_word(OperatorWord{GQ(1), {Generator::X(2)}}, ground_state(flat(n)));
  for (int trial = 0; trial < 30; ++trial) {
    OperatorWord w;
    for (int i = len(rng); i > 0; --i) w.factors.push_back(gen(static_cast<oracle::G>(letter(rng)), coord(rng)));
    auto shift = w.support_shift(n);
    auto out = apply_word(w, base);
    REQUIRE(out.supports().size() == 1);
    std::vector<int> want = base.supports()[0];
    for (int k = 0; k < n; ++k) want[k] += static_cast<int>(shift[k]);
    CHECK(out.supports()[0] == want);
  }
}
