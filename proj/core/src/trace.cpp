#include "cb/trace.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

namespace cb {

namespace {

const GQ kI = GQ::I();

// sign of the first nonzero gradient entry (real forms)
int leading_sign(const AffineForm& f) {
  for (const auto& g : f.gradient())
    if (sgn(g.re) != 0) return sgn(g.re);
  return sgn(f.constant().re);
}

double eval_real(const AffineForm& f, const double* x) {
  double s = f.constant().re.get_d();
  for (int k = 0; k < f.dim(); ++k) s += f.gradient()[k].re.get_d() * x[k];
  return s;
}

std::string pi_arg(const AffineForm& f, const std::vector<std::string>& names) {
  MultiPoly p = f.to_poly();
  if (p.terms().size() == 1 && p.degree() == 1 && p.leading_coeff() == GQ(1)) return "pi*" + p.str(names);
  return "pi*(" + p.str(names) + ")";
}

std::string paren(const std::string& s) {
  bool simple = s.find_first_of(" +-*/") == std::string::npos;
  return simple ? s : "(" + s + ")";
}

long weyl_sign_parity(const TheoryConfig& t) { return static_cast<long>(t.roots().positive.size()) % 2; }

double x_max_for(const Measure& m, const QuadOptions& q) {
  double rate = M_PI * m.margin.get_d();
  if (m.twist == TwistConvention::Real) {
    double z = 0;
    for (const auto& g : m.zeta.gradient()) z = std::max(z, std::abs(g.re.get_d()));
    rate -= 2 * M_PI * z;
  }
  if (rate <= 0) return q.x_max;
  return std::clamp(50.0 / rate, 20.0, 400.0);
}

}  // namespace

std::string to_string(TwistConvention c) { return c == TwistConvention::Imaginary ? "exp(2*pi*i*zeta)" : "exp(2*pi*zeta)"; }
std::string to_string(MeasureNorm c) {
  return c == MeasureNorm::Theorem ? "prod (sinh(pi*beta)/pi)^2 / prod cosh(pi*w)/pi" : "prod sinh(pi*beta)^2 / prod cosh(pi*w)";
}

// ---------------------------------------------------------------- measure

ComplexF Measure::log_twist(const double* sigma) const {
  double z = eval_real(zeta, sigma);
  if (twist == TwistConvention::Imaginary) return ComplexF(0, 2 * M_PI * z);
  return ComplexF(2 * M_PI * z, 0);
}

double Measure::log_density(const double* sigma) const {
  double l = pi_power * std::log(M_PI);
  for (const auto& s : sinh2) {
    double x = M_PI * eval_real(s, sigma);
    if (x == 0) return -INFINITY;
    l += 2 * log_abs_sinh(x);
  }
  for (const auto& c : cosh) l -= log_cosh(M_PI * eval_real(c, sigma));
  return l;
}

ComplexF Measure::eval(const double* sigma, bool with_twist) const {
  ComplexF l = log_density(sigma);
  if (with_twist) l += log_twist(sigma);
  return std::exp(l);
}

std::string Measure::str() const {
  auto names = default_names(dim);
  std::string num, den;
  if (pi_power > 0) num = pi_power == 1 ? "pi" : "pi^" + std::to_string(pi_power);
  if (pi_power < 0) den = pi_power == -1 ? "pi" : "pi^" + std::to_string(-pi_power);
  std::map<AffineForm, int> ch;
  for (const auto& c : cosh) ch[leading_sign(c) < 0 ? c.scaled(GQ(-1)) : c]++;
  for (const auto& s : sinh2) num += (num.empty() ? "" : " * ") + std::string("sinh(") + pi_arg(s, names) + ")^2";
  for (const auto& [c, e] : ch)
    den += (den.empty() ? "" : " * ") + std::string("cosh(") + pi_arg(c, names) + ")" + (e > 1 ? "^" + std::to_string(e) : "");
  std::string tw = twist == TwistConvention::Imaginary ? "exp(2*pi*i*" : "exp(2*pi*";
  tw += paren(zeta.to_poly().str(names)) + ")";
  std::string s = tw + " * " + (num.empty() ? "1" : num);
  if (!den.empty()) s += " / (" + den + ")";
  return s;
}

nlohmann::json Measure::to_json() const {
  auto names = default_names(dim);
  nlohmann::json j;
  j["density"] = str();
  j["twist"] = to_string(twist);
  j["normalization"] = to_string(norm);
  j["pi_power"] = pi_power;
  j["zeta"] = zeta.to_poly().str(names);
  for (const auto& s : sinh2) j["sinh2"].push_back(s.str(names));
  for (const auto& c : cosh) j["cosh"].push_back(c.str(names));
  j["conical_margin"] = rational_str(margin);
  return j;
}

Measure build_measure(const TheoryConfig& t, TwistConvention tw, MeasureNorm norm) {
  Measure m;
  int n = t.rank();
  m.dim = n;
  m.zeta = t.fi_form();
  m.twist = tw;
  m.norm = norm;
  m.sinh2 = t.roots().positive_forms(n);
  for (size_t j = 0; j < t.weights.size(); ++j) {
    AffineForm w = t.weight_form(static_cast<int>(j));
    if (w.is_constant()) continue;  // gauge-neutral matter only rescales the measure
    m.cosh.push_back(w);
  }
  if (norm == MeasureNorm::Theorem) m.pi_power = static_cast<int>(m.cosh.size()) - 2 * static_cast<int>(m.sinh2.size());
  m.margin = check_conical(t).margin;
  return m;
}

ComplexF measure_gamma_form(const TheoryConfig& t, const double* sigma) {
  int n = t.rank();
  ComplexF l = 0;
  for (size_t j = 0; j < t.weights.size(); ++j) {
    AffineForm w = t.weight_form(static_cast<int>(j));
    if (w.is_constant()) continue;
    double x = eval_real(w, sigma);
    l += log_gamma(ComplexF(0.5, x)) + log_gamma(ComplexF(0.5, -x));
  }
  for (const auto& b : t.roots().positive_forms(n)) {
    double x = eval_real(b, sigma);
    l -= 2.0 * (log_gamma(ComplexF(0, x)) + log_gamma(ComplexF(0, -x)) + std::log(ComplexF(x, 0)));
  }
  return std::exp(l);
}

// ---------------------------------------------------------------- pairing

QuadResult inner_product(const GammaState& bra, const GammaState& ket, const Measure* twist, const QuadOptions& opt) {
  if (bra.dim() != ket.dim()) throw std::invalid_argument("state dimension mismatch");
  int n = ket.dim();
  struct Pair {
    CompiledTerm k, b;
  };
  std::vector<Pair> pairs;
  for (const auto& kt : ket.terms())
    for (const auto& bt : bra.terms())
      if (kt.b == bt.b) pairs.push_back({CompiledTerm(kt), CompiledTerm(bt)});
  QuadResult r;
  if (pairs.empty()) {
    r.converged = true;
    return r;
  }
  auto f = [&](const double* x) {
    std::vector<ComplexF> z(x, x + n);
    ComplexF tw = twist ? twist->log_twist(x) : ComplexF(0);
    ComplexF s = 0;
    for (const auto& p : pairs) s += std::exp(p.k.log_eval(z.data()) + std::conj(p.b.log_eval(z.data())) + tw);
    return s;
  };
  return integrate(f, n, opt);
}

// ---------------------------------------------------------------- hyperbolic form

std::string HyperbolicTerm::signature() const {
  std::string s = std::to_string(pi_power) + "|";
  int n = rf.nvars();
  auto names = default_names(n);
  for (auto& [a, e] : lin_den) s += a.str(names) + "^" + std::to_string(e) + ";";
  s += "|";
  for (auto& [a, e] : sinh) s += a.str(names) + "^" + std::to_string(e) + ";";
  s += "|";
  for (auto& [a, e] : cosh) s += a.str(names) + "^" + std::to_string(e) + ";";
  s += "|";
  for (auto& g : gammas) s += g.arg.str(names) + "^" + std::to_string(g.exponent) + ";";
  return s;
}

namespace {

// pull real linear factors L (from the sinh arguments) out of the denominator
void split_linear(HyperbolicTerm& h) {
  MultiPoly den = h.rf.den();
  for (const auto& [L, p] : h.sinh) {
    MultiPoly lp = L.to_poly();
    MultiPoly q;
    while (!den.is_constant() && poly_divides(den, lp, &q)) {
      den = q;
      h.lin_den[L]++;
    }
  }
  if (h.lin_den.empty()) return;
  // leading coefficients: den = c * prod L^e * rest
  MultiPoly prod = MultiPoly::constant(den.nvars(), GQ(1));
  for (const auto& [L, e] : h.lin_den) prod = prod * L.to_poly().pow(e);
  MultiPoly full = h.rf.den();
  MultiPoly rest = poly_divexact(full, prod);
  h.rf = RationalFunction(h.rf.num(), rest);
}

HyperbolicTerm pair_term(const StateTerm& bt, const StateTerm& kt) {
  HyperbolicTerm h;
  int n = static_cast<int>(kt.b.size());
  RationalFunction rf = RationalFunction(bt.pre.num().conj(), bt.pre.den().conj()) * kt.pre;
  std::map<AffineForm, int> g;
  for (const auto& x : bt.gammas) g[x.arg.conj()] += x.exponent;
  for (const auto& x : kt.gammas) g[x.arg] += x.exponent;
  for (auto it = g.begin(); it != g.end();) it = it->second == 0 ? g.erase(it) : std::next(it);

  GQ scalar(1);
  MultiPoly num = MultiPoly::constant(n, GQ(1)), den = MultiPoly::constant(n, GQ(1));
  for (auto& [A, ea] : g) {
    if (ea == 0) continue;
    bool imag_grad = true;
    for (const auto& c : A.gradient()) imag_grad &= sgn(c.re) == 0;
    if (!imag_grad) continue;
    for (auto& [B, eb] : g) {
      if (eb == 0 || &A == &B) continue;
      if ((ea > 0) != (eb > 0)) continue;
      AffineForm s = A + B;
      if (!s.is_constant() || !s.constant().is_real() || s.constant().re.get_den() != 1) continue;
      long k = s.constant().re.get_num().get_si();
      Q are = A.constant().re;
      Q twice = 2 * are;
      if (twice.get_den() != 1) continue;
      int m = std::min(std::abs(ea), std::abs(eb));
      int sign = ea > 0 ? 1 : -1;
      // Gamma(A) Gamma(k - A) = pi / sin(pi A) * P_k(A)
      MultiPoly a = A.to_poly();
      MultiPoly pk = MultiPoly::constant(n, GQ(1)), pkd = MultiPoly::constant(n, GQ(1));
      for (long j = 1; j <= k - 1; ++j) pk = pk * (MultiPoly::constant(n, GQ(j)) - a);
      for (long j = k; j <= 0; ++j) pkd = pkd * (MultiPoly::constant(n, GQ(j)) - a);
      // M = (A - Re A)/i, real
      AffineForm M = (A + GQ(-are)).scaled(GQ(Q(0), Q(-1)));
      long p;
      bool is_cosh = twice.get_num().get_si() % 2 != 0;
      GQ c(1);
      if (is_cosh) {
        // sin(pi(p + 1/2) + i pi M) = (-1)^p cosh(pi M)
        p = (twice.get_num().get_si() - 1) / 2;
      } else {
        // sin(pi p + i pi M) = (-1)^p i sinh(pi M)
        p = are.get_num().get_si();
        c = kI;
      }
      if (p % 2 != 0) c = -c;
      if (leading_sign(M) < 0) {
        M = M.scaled(GQ(-1));
        if (!is_cosh) c = -c;
      }
      for (int r = 0; r < m; ++r) {
        if (sign > 0) {
          num = num * pk;
          den = den * pkd;
          scalar /= c;
        } else {
          num = num * pkd;
          den = den * pk;
          scalar *= c;
        }
      }
      h.pi_power += sign * m;
      (is_cosh ? h.cosh : h.sinh)[M] -= sign * m;
      ea -= sign * m;
      eb -= sign * m;
      if (ea == 0) break;
    }
  }
  for (auto& [A, e] : g)
    if (e != 0) h.gammas.push_back({A, e});
  for (auto it = h.sinh.begin(); it != h.sinh.end();) it = it->second == 0 ? h.sinh.erase(it) : std::next(it);
  for (auto it = h.cosh.begin(); it != h.cosh.end();) it = it->second == 0 ? h.cosh.erase(it) : std::next(it);
  h.rf = rf * RationalFunction(num.scaled(scalar), den);
  split_linear(h);
  return h;
}

std::string factor_str(const std::string& name, const std::string& arg, int e) {
  std::string s = name + "(" + arg + ")";
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace

HyperbolicExpr hyperbolic_pairing(const GammaState& bra, const GammaState& ket, const AffineForm& zeta,
                                  TwistConvention tw) {
  HyperbolicExpr e;
  e.dim = ket.dim();
  e.zeta = zeta;
  e.twist = tw;
  for (const auto& kt : ket.terms())
    for (const auto& bt : bra.terms())
      if (kt.b == bt.b) e.terms.push_back(pair_term(bt, kt));
  return normalize(std::move(e));
}

HyperbolicExpr normalize(HyperbolicExpr e) {
  std::map<std::string, HyperbolicTerm> acc;
  std::vector<std::string> order;
  for (auto& t : e.terms) {
    auto sig = t.signature();
    auto it = acc.find(sig);
    if (it == acc.end()) {
      acc.emplace(sig, t);
      order.push_back(sig);
    } else {
      it->second.rf += t.rf;
    }
  }
  e.terms.clear();
  std::sort(order.begin(), order.end());
  for (auto& s : order)
    if (!acc[s].rf.is_zero()) e.terms.push_back(acc[s]);
  return e;
}

std::string HyperbolicExpr::str() const {
  auto names = default_names(dim);
  std::string tw = twist == TwistConvention::Imaginary ? "exp(2*pi*i*zeta(s))" : "exp(2*pi*zeta(s))";
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    std::vector<std::string> num, den;
    if (t.pi_power > 0) num.push_back(t.pi_power == 1 ? "pi" : "pi^" + std::to_string(t.pi_power));
    if (t.pi_power < 0) den.push_back(t.pi_power == -1 ? "pi" : "pi^" + std::to_string(-t.pi_power));
    num.push_back(paren(t.rf.num().str(names)));
    if (!t.rf.den().is_constant() || t.rf.den() != MultiPoly::constant(dim, GQ(1)))
      den.push_back(paren(t.rf.den().str(names)));
    for (const auto& [L, e] : t.lin_den) den.push_back(factor_str("", L.str(names), e));
    for (const auto* m : {&t.sinh, &t.cosh}) {
      std::vector<std::pair<std::string, int>> fs;
      for (const auto& [L, e] : *m) fs.emplace_back(pi_arg(L, names), e);
      std::sort(fs.begin(), fs.end());
      for (const auto& [a, e] : fs) (e > 0 ? num : den).push_back(factor_str(m == &t.sinh ? "sinh" : "cosh", a, std::abs(e)));
    }
    for (const auto& g : t.gammas)
      (g.exponent > 0 ? num : den).push_back(factor_str("Gamma", g.arg.str(names), std::abs(g.exponent)));
    std::string s;
    for (size_t k = 0; k < num.size(); ++k) s += (k ? " * " : "") + num[k];
    if (!den.empty()) {
      std::string d;
      for (size_t k = 0; k < den.size(); ++k) d += (k ? " * " : "") + den[k];
      s += den.size() == 1 ? " / " + d : " / (" + d + ")";
    }
    out += (i ? " + " : "") + s;
  }
  return tw + " * " + (terms.size() > 1 ? "(" + out + ")" : out);
}

ComplexF HyperbolicExpr::eval(const double* sigma, bool with_twist) const {
  std::vector<ComplexF> z(sigma, sigma + dim);
  ComplexF total = 0;
  for (const auto& t : terms) {
    ComplexF v = t.rf.eval(z) * std::pow(M_PI, t.pi_power);
    // sinh(pi L)/L pairs through the series near L = 0
    std::map<AffineForm, int> lin = t.lin_den;
    for (const auto& [L, e] : t.sinh) {
      double x = eval_real(L, sigma);
      int paired = 0;
      auto it = lin.find(L);
      if (e > 0 && it != lin.end()) {
        paired = std::min(e, it->second);
        it->second -= paired;
        v *= std::pow(sinhc_pi(x), paired);
      }
      v *= std::pow(std::sinh(M_PI * x), e - paired);
    }
    for (const auto& [L, e] : lin) v /= std::pow(eval_real(L, sigma), e);
    double lc = 0;
    for (const auto& [L, e] : t.cosh) lc += e * log_cosh(M_PI * eval_real(L, sigma));
    ComplexF lg = lc;
    for (const auto& g : t.gammas) lg += double(g.exponent) * log_gamma(eval_affine(g.arg, z));
    total += v * std::exp(lg);
  }
  if (with_twist) {
    double zz = eval_real(zeta, sigma);
    total *= twist == TwistConvention::Imaginary ? std::exp(ComplexF(0, 2 * M_PI * zz)) : std::exp(2 * M_PI * zz);
  }
  return total;
}

bool same_expression(const HyperbolicExpr& a, const HyperbolicExpr& b) {
  return normalize(a).str() == normalize(b).str();
}

// ---------------------------------------------------------------- traces

nlohmann::json TraceResult::to_json() const {
  nlohmann::json j;
  j["value"] = {quad.value.real(), quad.value.imag()};
  j["abs_error"] = quad.abs_error;
  j["converged"] = quad.converged;
  j["exact_zero"] = exact_zero;
  j["evaluations"] = quad.evaluations;
  j["subdivisions"] = quad.subdivisions;
  j["conical"] = conical;
  if (!witness.empty()) j["witness"] = witness;
  j["convention"] = {{"twist", convention_twist}, {"scale_base", convention_scale}};
  j["integrand"] = integrand.str();
  j["zeta"] = integrand.zeta.to_poly().str(default_names(integrand.dim));
  j["normalization"] = normalization.str();
  return j;
}

namespace {

void conical_gate(const TheoryConfig& t, const TraceOptions& opt, TraceResult& r) {
  auto c = check_conical(t);
  r.conical = c.conical;
  r.witness = c.witness;
  if (!c.conical && !opt.force) {
    std::string w;
    for (long x : c.witness) w += (w.empty() ? "" : ",") + std::to_string(x);
    throw NotConical(c.witness, "theory '" + t.label + "' is not conical (witness (" + w +
                                    ")); numeric integration needs --force");
  }
}

void finish(TraceResult& r, const TraceOptions& opt) {
  if (!r.quad.converged && opt.throw_on_nonconvergence)
    throw NonConvergent(r.quad, "quadrature did not converge: error estimate " + std::to_string(r.quad.abs_error) +
                                    " after " + std::to_string(r.quad.subdivisions) + " refinements");
}

bool weyl_invariant(const TheoryConfig& t, const MultiPoly& R) {
  int n = t.rank();
  for (const auto& root : t.roots().positive) {
    std::vector<MultiPoly> img;
    for (int k = 0; k < n; ++k) img.push_back(MultiPoly::var(n, k));
    std::swap(img[root.r], img[root.s]);
    if (R.substitute(img) != R) return false;
  }
  return true;
}

}  // namespace

TraceResult trace_polynomial(const TheoryConfig& t, const MultiPoly& Rin, const TraceOptions& opt) {
  int n = t.rank();
  MultiPoly R = Rin;
  if (R.nvars() == 2 * n) R = R.fix_tail(n, std::vector<GQ>(n, GQ(0)));
  if (R.nvars() != n) throw std::invalid_argument("polynomial variable count does not match rank");
  if (!weyl_invariant(t, R)) throw std::invalid_argument("polynomial is not Weyl invariant");
  TraceResult r;
  r.convention_twist = to_string(opt.twist);
  Measure m = build_measure(t, opt.twist, opt.norm);
  HyperbolicTerm h;
  h.pi_power = m.pi_power;
  h.rf = RationalFunction(R);
  for (const auto& s : m.sinh2) h.sinh[s] += 2;
  for (const auto& c : m.cosh) h.cosh[leading_sign(c) < 0 ? c.scaled(GQ(-1)) : c] -= 1;
  r.integrand.dim = n;
  r.integrand.zeta = m.zeta;
  r.integrand.twist = opt.twist;
  r.integrand.terms.push_back(h);
  r.integrand = normalize(r.integrand);
  conical_gate(t, opt, r);
  if (R.is_zero()) {
    r.exact_zero = true;
    r.quad.converged = true;
    return r;
  }
  QuadOptions q = opt.quad;
  q.tol = opt.tol;
  q.x_max = x_max_for(m, q);
  auto f = [&](const double* x) {
    std::vector<ComplexF> z(x, x + n);
    ComplexF l = m.log_density(x) + m.log_twist(x);
    return R.eval(z) * std::exp(l);
  };
  r.quad = integrate(f, n, q);
  finish(r, opt);
  return r;
}

TraceResult trace_word(const TheoryConfig& t, const OpExpr& w, const TraceOptions& opt) {
  int n = t.rank();
  TraceResult r;
  r.convention_twist = to_string(opt.twist);
  r.normalization = weyl_sign_parity(t) ? GQ(-1) : GQ(1);
  GammaState vp = ground_state(t);
  GammaState bra = ground_state(t, true);
  GammaState psi = apply_expr(t, w, vp);
  GammaState psi0(n);
  for (const auto& term : psi.terms())
    if (std::all_of(term.b.begin(), term.b.end(), [](int x) { return x == 0; })) psi0.add(term);
  Measure m = build_measure(t, opt.twist, opt.norm);
  r.integrand = hyperbolic_pairing(bra, psi0, m.zeta, opt.twist);
  if (psi0.empty()) {
    r.exact_zero = true;
    r.quad.converged = true;
    auto c = check_conical(t);
    r.conical = c.conical;
    r.witness = c.witness;
    return r;
  }
  conical_gate(t, opt, r);
  QuadOptions q = opt.quad;
  q.tol = opt.tol;
  q.x_max = x_max_for(m, q);
  r.quad = inner_product(bra, psi0, &m, q);
  r.quad.value *= r.normalization.to_complex();
  finish(r, opt);
  return r;
}

// ---------------------------------------------------------------- twist automorphism

ComplexF TwistAutomorphism::scalar(const TheoryConfig& t, const std::vector<long>& lambda) const {
  int n = t.rank();
  double z = 0;
  for (int k = 0; k < n; ++k) z += zeta.gradient().at(k).re.get_d() * lambda.at(k);
  long par = 0;
  if (sign == SignMode::WeightParity) {
    for (size_t j = 0; j < t.weights.size(); ++j) {
      auto gw = t.gauge_weight(static_cast<int>(j));
      for (int k = 0; k < n; ++k) par += gw[k] * lambda[k];
    }
  } else if (sign == SignMode::CoweightParity) {
    for (long l : lambda) par += l;
  }
  double s = (std::labs(par) % 2) ? -1.0 : 1.0;
  return s * std::exp(kappa * M_PI * z);
}

std::string TwistAutomorphism::str() const {
  std::string s = sign == SignMode::WeightParity ? "(-1)^<w,lambda> * " : sign == SignMode::CoweightParity ? "(-1)^|lambda| * " : "";
  auto k = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", v);
    return std::string(b);
  };
  std::string kap;
  if (kappa.imag() == 0)
    kap = k(kappa.real());
  else if (kappa.real() == 0)
    kap = k(kappa.imag()) + "*i";
  else
    kap = "(" + k(kappa.real()) + "+" + k(kappa.imag()) + "*i)";
  return s + "exp(" + kap + "*pi*zeta(lambda))";
}

std::pair<OpExpr, ComplexF> apply_twist(const TheoryConfig& t, const TwistAutomorphism& g, const OpExpr& w) {
  return {w, g.scalar(t, w.charge(t.rank()))};
}

TwistedReport verify_twisted_property(const TheoryConfig& t, const std::vector<std::pair<OpExpr, OpExpr>>& pairs,
                                      const TwistAutomorphism& g, const TraceOptions& opt, double tol) {
  TwistedReport rep;
  int n = t.rank();
  for (const auto& [a, b] : pairs) {
    TwistedPair p;
    p.a = a.str(n);
    p.b = b.str(n);
    auto lhs = trace_word(t, a * b, opt);
    auto [ga, c] = apply_twist(t, g, a);
    auto rhs = trace_word(t, b * ga, opt);
    p.lhs = lhs.quad.value;
    p.rhs = c * rhs.quad.value;
    p.residual = std::abs(p.lhs - p.rhs);
    p.ok = p.residual < tol * std::max(std::abs(p.lhs), 1.0);
    if (lhs.exact_zero && rhs.exact_zero) p.ok = true;
    rep.ok &= p.ok;
    char buf[512];
    std::snprintf(buf, sizeof buf, "Tr((%s)(%s)) = %.12g%+.12gi, Tr((%s) g(%s)) = %.12g%+.12gi, residual %.3g",
                  p.a.c_str(), p.b.c_str(), p.lhs.real(), p.lhs.imag(), p.b.c_str(), p.a.c_str(), p.rhs.real(),
                  p.rhs.imag(), p.residual);
    rep.lines.push_back(buf);
    rep.pairs.push_back(p);
    // Tr(g(a)) = Tr(a)
    auto ta = trace_word(t, a, opt);
    bool inv = ta.exact_zero || std::abs(c - 1.0) == 0;
    if (!ta.exact_zero) {
      auto tga = ta.quad.value * c;
      inv = std::abs(tga - ta.quad.value) <= tol * std::max(std::abs(ta.quad.value), 1.0);
    }
    rep.ok &= inv;
    rep.lines.push_back("Tr(g(" + p.a + ")) = Tr(" + p.a + "): " + (inv ? "ok" : "FAIL") +
                        (ta.exact_zero ? " (both exactly 0)" : ""));
  }
  return rep;
}

Calibration calibrate(TwistConvention tw) {
  static std::mutex mu;
  static std::map<int, Calibration> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(static_cast<int>(tw));
  if (it != cache.end()) return it->second;

  TheoryConfig t = build_theory(nlohmann::json::parse(
      R"({"label":"calibration","gauge_dims":[1],"flavor_dim":1,"weights":[[1,1],[-1,-1]],"mass":["1/3"],"fi":["1/5"]})"));
  TraceOptions opt;
  opt.twist = tw;
  opt.tol = 1e-12;
  OpExpr a = OpExpr::atom(Atom::r({1})), b = OpExpr::atom(Atom::r({-1}));
  ComplexF ab = trace_word(t, a * b, opt).quad.value;
  ComplexF ba = trace_word(t, b * a, opt).quad.value;
  Calibration cal;
  cal.residual = INFINITY;
  const ComplexF kappas[] = {{1, 0}, {-1, 0}, {2, 0}, {-2, 0}, {0, 1}, {0, -1}, {0, 2}, {0, -2}};
  for (SignMode s : {SignMode::WeightParity, SignMode::Plus, SignMode::CoweightParity})
    for (ComplexF k : kappas) {
      TwistAutomorphism g;
      g.zeta = t.fi_form();
      g.sign = s;
      g.kappa = k;
      double res = std::abs(ab - g.scalar(t, {1}) * ba) / std::max(std::abs(ab), 1.0);
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: relative residual %.3g", g.str().c_str(), res);
      cal.tried.push_back(buf);
      if (res < cal.residual - 1e-12) {
        cal.residual = res;
        cal.g = g;
      }
    }
  cache[static_cast<int>(tw)] = cal;
  return cal;
}

TwistAutomorphism twist_for(const TheoryConfig& t, TwistConvention tw) {
  TwistAutomorphism g = calibrate(tw).g;
  g.zeta = t.fi_form();
  return g;
}

}  // namespace cb
