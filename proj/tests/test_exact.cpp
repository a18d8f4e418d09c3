#include "catch_amalgamated.hpp"

#include <random>

#include "cb/exact.hpp"

using namespace cb;

namespace {

MultiPoly v(int n, int k) { return MultiPoly::var(n, k); }
MultiPoly c(int n, GQ x) { return MultiPoly::constant(n, x); }

MultiPoly random_poly(std::mt19937_64& rng, int n, int maxdeg, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), deg(0, maxdeg);
  MultiPoly p(n);
  for (int t = 0; t < terms; ++t) {
    Monomial m(n, 0);
    int left = deg(rng);
    for (int k = 0; k < n && left > 0; ++k) {
      std::uniform_int_distribution<int> d(0, left);
      m[k] = d(rng);
      left -= m[k];
    }
    p.add_term(m, GQ(Q(coef(rng), den(rng)), Q(coef(rng), den(rng))));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/3") == Q(1, 3));
  CHECK(parse_rational("-4/6") == Q(-2, 3));
  CHECK(parse_rational("7") == Q(7));
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK(rational_str(Q(-2, 4)) == "-1/2");
}

TEST_CASE("gaussian rationals") {
  GQ a(Q(1, 2), Q(3)), b(Q(-1), Q(1, 3));
  CHECK(a * a.inv() == GQ(1));
  CHECK((a + b) - b == a);
  CHECK(GQ::I() * GQ::I() == GQ(-1));
  CHECK((a / b) * b == a);
  CHECK(a.conj().conj() == a);
  CHECK_THROWS(GQ(0).inv());
}

TEST_CASE("polynomial products from the worked examples") {
  int n = 2;
  MultiPoly s1 = v(n, 0), s2 = v(n, 1), i = c(n, GQ::I());
  CHECK((s1 + i) * (s1 - i) == s1 * s1 + c(n, 1));
  CHECK(s1 + MultiPoly(n) == s1);
  CHECK((s1 - s2) * (s1 + s2) == s1 * s1 - s2 * s2);
}

TEST_CASE("exact division") {
  int n = 2;
  MultiPoly s1 = v(n, 0), s2 = v(n, 1);
  CHECK(poly_divexact(s1 * s1 - s2 * s2, s1 - s2) == s1 + s2);
  CHECK_THROWS_AS(poly_divexact(s1 * s1 + c(n, 1), s1 - s2), DivisibilityFailure);
  CHECK(poly_divexact(MultiPoly(n), s1 - s2).is_zero());
  CHECK_FALSE(poly_divides(s1 * s1 + c(n, 1), s1 - s2));
}

TEST_CASE("affine forms") {
  int n = 2;
  AffineForm beta = AffineForm::coordinate(n, 0) - AffineForm::coordinate(n, 1);
  CHECK(eval_affine(beta, {GQ(1), GQ(2)}) == GQ(-1));
  AffineForm w = AffineForm::coordinate(1, 0) + GQ(Q(1, 2));
  CHECK(eval_affine(w, {GQ(0)}) == GQ(Q(1, 2)));
  CHECK(eval_affine(AffineForm(3), {GQ(4), GQ(Q(1, 7)), GQ(-2)}).is_zero());
  CHECK(beta.vanishes_on_reals());
  CHECK_FALSE((AffineForm::coordinate(1, 0, GQ::I()) + GQ(Q(1, 2))).vanishes_on_reals());
}

TEST_CASE("gcd and rational function reduction") {
  int n = 2;
  MultiPoly s1 = v(n, 0), s2 = v(n, 1);
  MultiPoly g = s1 - s2 + c(n, GQ::I());
  MultiPoly a = g * (s1 + c(n, 2)), b = g * g * s2;
  MultiPoly d = poly_gcd(a, b);
  CHECK(poly_divides(a, d));
  CHECK(poly_divides(b, d));
  CHECK(make_monic(d) == make_monic(g));
  RationalFunction r(a, b);
  CHECK(r.num().degree() == 1);
  CHECK(r.den().degree() == 2);
}

TEST_CASE("ring axioms on random polynomials", "[property]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 4;
    MultiPoly a = random_poly(rng, n, 6, 5), b = random_poly(rng, n, 6, 5), cc = random_poly(rng, n, 6, 5);
    CHECK((a * b) * cc == a * (b * cc));
    CHECK(a * (b + cc) == a * b + a * cc);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("exact division recovers the quotient", "[property]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 4;
    MultiPoly q = random_poly(rng, n, 4, 4), d = random_poly(rng, n, 3, 3);
    if (d.is_zero()) continue;
    CHECK(poly_divexact(q * d, d) == q);
  }
}

TEST_CASE("rational function reduction is idempotent", "[property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + trial % 3;
    MultiPoly g = random_poly(rng, n, 2, 2), a = random_poly(rng, n, 3, 3), b = random_poly(rng, n, 3, 3);
    if (g.is_zero() || b.is_zero()) continue;
    RationalFunction r(a * g, b * g);
    RationalFunction once = r.reduced();
    CHECK(once.reduced() == once);
    CHECK(once == r);
    std::vector<cplx> x;
    for (int k = 0; k < n; ++k) x.push_back({0.3 + 0.17 * k, -0.4 + 0.05 * k});
    cplx lhs = once.eval(x), rhs = a.eval(x) / b.eval(x);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}
