#include "cb/monopole.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <random>

#include "cb/shift.hpp"
#include "cb/trace.hpp"

namespace cb {

namespace {

const GQ kI = GQ::I();
const GQ kHalf = GQ(Q(1, 2));

MultiPoly weight_poly_2n(const TheoryConfig& t, int j) {
  int n = t.rank();
  return t.weight_form(j).to_poly().extended(2 * n);
}

MultiPoly weight_b(const TheoryConfig& t, int j) {
  int n = t.rank();
  auto gw = t.gauge_weight(j);
  MultiPoly p(2 * n);
  for (int k = 0; k < n; ++k)
    if (gw[k] != 0) p += cartan_b(n, k).scaled(GQ(Q(gw[k], 2)));
  return p;
}

// z_a - z_b (holomorphic) or zt_a - zt_b, in the 2n Cartan variables
MultiPoly root_factor(int n, int a, int b, bool holo) {
  if (holo) return cartan_z(n, a) - cartan_z(n, b);
  return cartan_zt(n, a) - cartan_zt(n, b);
}

}  // namespace

ShiftAction abelian_action(const TheoryConfig& t, const std::vector<long>& lambda, bool holomorphic) {
  int n = t.rank();
  if (static_cast<int>(lambda.size()) != n)
    throw std::invalid_argument("coweight length " + std::to_string(lambda.size()) + " != rank " + std::to_string(n));
  ShiftAction a = ShiftAction::identity(n);
  for (int k = 0; k < n; ++k) {
    a.s[k] = GQ(Q(0), Q(lambda[k], 2));
    a.db[k] = static_cast<int>(holomorphic ? lambda[k] : -lambda[k]);
  }
  for (size_t j = 0; j < t.weights.size(); ++j) {
    auto gw = t.gauge_weight(static_cast<int>(j));
    long d = 0;
    for (int k = 0; k < n; ++k) d += gw[k] * lambda[k];
    if (!holomorphic && (std::labs(d) % 2 == 1)) a.coeff = -a.coeff;
    if (d >= 0) continue;
    MultiPoly iw = weight_poly_2n(t, static_cast<int>(j)).scaled(kI);
    MultiPoly bw = weight_b(t, static_cast<int>(j));
    MultiPoly base = holomorphic ? iw + bw : iw - bw;
    for (long k = 1; k <= -d; ++k) a.F = a.F * (base + MultiPoly::constant(2 * n, GQ(Q(2 * k - 1, 2))));
  }
  return a;
}

MonopoleOp make_monopole(const TheoryConfig& t, const std::vector<long>& lambda, bool holomorphic) {
  MonopoleOp v;
  v.lambda = lambda;
  v.holomorphic = holomorphic;
  v.orbit = weyl_orbit(lambda, t);
  if (!minuscule(lambda, t))
    std::cerr << "warning: coweight is not minuscule; the Weyl-sum formula is only established for minuscule closures\n";
  return v;
}

namespace {

GammaState orbit_term(const TheoryConfig& t, const OrbitEntry& e, bool holo, const GammaState& s) {
  int n = t.rank();
  GammaState out = apply_shift(abelian_action(t, e.wlambda, holo), s);
  if (e.denominator.empty()) return out;
  MultiPoly D = MultiPoly::constant(2 * n, GQ(1));
  for (auto [a, b] : e.denominator) D = D * root_factor(n, a, b, holo);
  for (auto& term : out.terms()) {
    std::vector<GQ> bv(term.b.begin(), term.b.end());
    term.pre = term.pre.div_poly(D.fix_tail(n, bv));
  }
  return out;
}

}  // namespace

std::vector<AffineForm> real_poles(const TheoryConfig& t, const GammaState& s) {
  int n = t.rank();
  std::vector<AffineForm> out;
  for (const auto& r : t.roots().positive) {
    MultiPoly h = MultiPoly::var(n, r.r) - MultiPoly::var(n, r.s);
    for (const auto& term : s.terms()) {
      if (poly_divides(term.pre.den(), h)) {
        out.push_back(AffineForm::coordinate(n, r.r) - AffineForm::coordinate(n, r.s));
        break;
      }
    }
  }
  return out;
}

GammaState apply_monopole(const TheoryConfig& t, const MonopoleOp& v, const GammaState& s, const MonopoleOptions& opt) {
  int n = t.rank();
  if (s.dim() != n) throw std::invalid_argument("state dimension does not match the theory rank");
  std::vector<GammaState> parts(v.orbit.size(), GammaState(n));
  if (v.orbit.size() > 1 && std::thread::hardware_concurrency() > 1) {
    std::vector<std::future<GammaState>> fut;
    for (const auto& e : v.orbit)
      fut.push_back(std::async(std::launch::async, [&t, &e, &v, &s] { return orbit_term(t, e, v.holomorphic, s); }));
    for (size_t i = 0; i < fut.size(); ++i) parts[i] = fut[i].get();
  } else {
    for (size_t i = 0; i < v.orbit.size(); ++i) parts[i] = orbit_term(t, v.orbit[i], v.holomorphic, s);
  }
  GammaState sum(n);
  for (const auto& p : parts) sum += p;
  GammaState out = canonicalize(sum);
  if (opt.cancel) {
    for (const auto& r : t.roots().positive) {
      MultiPoly h = MultiPoly::var(n, r.r) - MultiPoly::var(n, r.s);
      for (const auto& term : out.terms()) {
        if (!poly_divides(term.pre.den(), h)) continue;
        AffineForm hf = AffineForm::coordinate(n, r.r) - AffineForm::coordinate(n, r.s);
        std::string b;
        for (int x : term.b) b += (b.empty() ? "" : ",") + std::to_string(x);
        throw CancellationFailure(hf, term.b,
                                  "root factor " + hf.str(default_names(n)) + " not cancelled at b=(" + b +
                                      "); remaining denominator " + term.pre.den().str());
      }
    }
  }
  return out;
}

AdjointReport check_w0_adjoint(const TheoryConfig& t_in, const std::vector<long>& lambda, bool force, double tol) {
  AdjointReport rep;
  // the relations hold for the symmetric root-Gamma ground state
  TheoryConfig t = t_in;
  t.root_gamma = RootGamma::Symmetric;
  auto mw = minus_w0(lambda, t);
  GammaState vp = ground_state(t);
  auto A = [&](const std::vector<long>& l, bool holo, const GammaState& s) {
    return apply_monopole(t, make_monopole(t, l, holo), s);
  };
  auto str = [](const std::vector<long>& l) {
    std::string s = "(";
    for (size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s + ")";
  };
  auto e1 = state_equal(A(lambda, true, vp), A(mw, false, vp));
  rep.ket = e1.exact;
  rep.lines.push_back("alpha(V" + str(lambda) + ")|v'> = alphabar(V" + str(mw) + ")|v'>: " +
                      (e1.exact ? "exact" : (e1.numeric ? "numeric only" : "FAIL")));
  auto e2 = state_equal(A(mw, true, vp), A(lambda, false, vp));
  rep.ket_swapped = e2.exact;
  rep.lines.push_back("alpha(V" + str(mw) + ")|v'> = alphabar(V" + str(lambda) + ")|v'>: " +
                      (e2.exact ? "exact" : (e2.numeric ? "numeric only" : "FAIL")));
  rep.ok = rep.ket && rep.ket_swapped;
  if (t_in.root_gamma == RootGamma::Squared && !t.roots().positive.empty()) {
    TheoryConfig sq = t_in;
    GammaState g = ground_state(sq);
    auto e3 = state_equal(apply_monopole(sq, make_monopole(sq, lambda, true), g),
                          apply_monopole(sq, make_monopole(sq, mw, false), g));
    rep.lines.push_back(std::string("with the squared root-Gamma ground state the same relation ") +
                        (e3.exact ? "holds" : "fails (sectors differ by a rational factor)"));
  }

  bool can_pair = check_conical(t).conical || force;
  if (!can_pair) {
    rep.lines.push_back("bra relations skipped: theory is not conical");
    return rep;
  }
  // probe state of the right charge so both sides land on the b = 0 sector
  GammaState phi = A(mw, true, vp);
  GammaState bra = ground_state(t, true);
  QuadOptions q;
  q.tol = 1e-11;
  auto lhs = inner_product(bra, A(lambda, true, phi), nullptr, q);
  auto rhs = inner_product(bra, A(mw, false, phi).scaled(GQ(-1)), nullptr, q);
  rep.bra_lhs = lhs.value;
  rep.bra_rhs = rhs.value;
  double scale = std::max({std::abs(lhs.value), std::abs(rhs.value), 1e-300});
  rep.bra_direct = std::abs(lhs.value - rhs.value) <= tol * scale;
  rep.bra_conjugate = std::abs(lhs.value - std::conj(rhs.value)) <= tol * scale;
  char buf[256];
  std::snprintf(buf, sizeof buf, "<v|alpha(V%s) phi> = %.12g%+.12gi, -<v|alphabar(V%s) phi> = %.12g%+.12gi",
                str(lambda).c_str(), lhs.value.real(), lhs.value.imag(), str(mw).c_str(), rhs.value.real(),
                rhs.value.imag());
  rep.lines.push_back(buf);
  rep.lines.push_back(std::string("bra relation as printed: ") + (rep.bra_direct ? "holds" : "fails") +
                      "; up to complex conjugation: " + (rep.bra_conjugate ? "holds" : "fails"));
  return rep;
}

PoleProbeReport pole_probe(const GammaState& s, const AffineForm& hyperplane, std::uint64_t seed) {
  PoleProbeReport rep;
  int n = s.dim();
  MultiPoly h = hyperplane.to_poly();
  for (const auto& term : s.terms())
    if (!h.is_constant() && poly_divides(term.pre.den(), h)) rep.symbolic_pole = true;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  std::vector<double> g(n), x0(n);
  double g2 = 0, h0 = hyperplane.constant().re.get_d();
  for (int k = 0; k < n; ++k) {
    g[k] = hyperplane.gradient()[k].re.get_d();
    g2 += g[k] * g[k];
  }
  if (g2 == 0) return rep;
  double gn = std::sqrt(g2);
  // random point on the hyperplane
  double val = h0;
  for (int k = 0; k < n; ++k) {
    x0[k] = U(rng);
    val += g[k] * x0[k];
  }
  for (int k = 0; k < n; ++k) x0[k] -= val * g[k] / g2;

  auto supports = s.supports();
  std::vector<double> ld, lv;
  for (int e = 2; e <= 8; ++e) {
    double dist = std::pow(10.0, -e);
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[k] = x0[k] + dist * g[k] / gn;
    double m = 0;
    for (const auto& b : supports) {
      try {
        m = std::max(m, std::abs(eval_state(s, x, b)));
      } catch (const SingularPoint&) {
        m = INFINITY;
      }
    }
    rep.samples.emplace_back(dist, m);
    if (m > 0 && std::isfinite(m)) {
      ld.push_back(-std::log10(dist));
      lv.push_back(std::log10(m));
    }
  }
  if (ld.size() >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < ld.size(); ++i) mx += ld[i], my += lv[i];
    mx /= ld.size();
    my /= ld.size();
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < ld.size(); ++i) {
      sxy += (ld[i] - mx) * (lv[i] - my);
      sxx += (ld[i] - mx) * (ld[i] - mx);
    }
    rep.growth_exponent = sxy / sxx;
  }
  rep.bounded = rep.growth_exponent < 0.5 && ld.size() == rep.samples.size();
  return rep;
}

}  // namespace cb
