#include "cb/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "cb/theory.hpp"

namespace cb {

void GammaState::add(StateTerm t) {
  if (static_cast<int>(t.b.size()) != dim_) throw std::invalid_argument("support dimension mismatch");
  if (t.pre.is_zero()) return;
  terms_.push_back(std::move(t));
}

GammaState& GammaState::operator+=(const GammaState& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("state dimension mismatch");
  for (const auto& t : o.terms_) terms_.push_back(t);
  return *this;
}

GammaState operator+(GammaState a, const GammaState& b) { return a += b; }
GammaState operator-(GammaState a, const GammaState& b) { return a += b.scaled(GQ(-1)); }

GammaState GammaState::scaled(const GQ& c) const {
  GammaState r(dim_);
  if (c.is_zero()) return r;
  for (auto t : terms_) {
    t.pre = RationalFunction(t.pre.num().scaled(c), t.pre.den());
    r.terms_.push_back(std::move(t));
  }
  return r;
}

GammaState GammaState::times(const RationalFunction& f) const {
  GammaState r(dim_);
  for (auto t : terms_) {
    t.pre *= f;
    r.add(std::move(t));
  }
  return r;
}

std::vector<std::vector<int>> GammaState::supports() const {
  std::set<std::vector<int>> s;
  for (const auto& t : terms_) s.insert(t.b);
  return {s.begin(), s.end()};
}

std::string GammaState::str() const {
  if (terms_.empty()) return "0";
  auto names = default_names(dim_);
  std::string out;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) out += "\n+ ";
    out += "[b=(";
    for (int k = 0; k < dim_; ++k) out += (k ? "," : "") + std::to_string(t.b[k]);
    out += ")] (" + t.pre.str(names) + ")";
    for (const auto& g : t.gammas) {
      out += " * Gamma(" + g.arg.str(names) + ")";
      if (g.exponent != 1) out += "^" + std::to_string(g.exponent);
    }
  }
  return out;
}

void canonical_gamma(const GammaFactor& g, GammaFactor& out, MultiPoly& num, MultiPoly& den) {
  const Q& r = g.arg.constant().re;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  long n = mpz_class(c - 1).get_si();
  out = g;
  out.arg.constant() -= GQ(Q(n));
  int nv = g.arg.dim();
  bool constant_arg = g.arg.is_constant();
  if (n != 0) {
    MultiPoly base = out.arg.to_poly();
    MultiPoly p = MultiPoly::constant(nv, GQ(1));
    long lo = n > 0 ? 0 : n, hi = n > 0 ? n - 1 : -1;
    for (long k = lo; k <= hi; ++k) p = p * (base + MultiPoly::constant(nv, GQ(k)));
    if (p.is_zero()) throw SingularPoint("Gamma pole at constant argument " + g.arg.constant().str());
    bool up = (n > 0) == (g.exponent > 0);
    MultiPoly pe = p.pow(std::abs(g.exponent));
    if (up)
      num = num * pe;
    else
      den = den * pe;
  }
  if (constant_arg && out.arg.constant() == GQ(1)) out.exponent = 0;
}

namespace {

struct TermKey {
  std::vector<int> b;
  std::vector<GammaFactor> gammas;
  friend bool operator<(const TermKey& x, const TermKey& y) {
    if (x.b != y.b) return x.b < y.b;
    return std::lexicographical_compare(x.gammas.begin(), x.gammas.end(), y.gammas.begin(), y.gammas.end());
  }
};

}  // namespace

GammaState canonicalize(const GammaState& s) {
  std::map<TermKey, RationalFunction> acc;
  for (const auto& t : s.terms()) {
    MultiPoly num = t.pre.num(), den = t.pre.den();
    std::map<AffineForm, int> exps;
    for (const auto& g : t.gammas) {
      GammaFactor c;
      canonical_gamma(g, c, num, den);
      if (c.exponent != 0) exps[c.arg] += c.exponent;
    }
    TermKey key{t.b, {}};
    for (const auto& [a, e] : exps)
      if (e != 0) key.gammas.push_back({a, e});
    RationalFunction f(std::move(num), std::move(den));
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(std::move(key), std::move(f));
    else
      it->second += f;
  }
  GammaState out(s.dim());
  for (auto& [k, f] : acc)
    if (!f.is_zero()) out.add({k.b, f, k.gammas});
  return out;
}

CompiledTerm::CompiledTerm(const StateTerm& t) {
  for (const auto& [m, c] : t.pre.num().terms()) num_.push_back({c.to_complex(), m});
  for (const auto& [m, c] : t.pre.den().terms()) den_.push_back({c.to_complex(), m});
  for (const auto& g : t.gammas) {
    G cg{g.arg.constant().to_complex(), {}, g.exponent};
    for (const auto& x : g.arg.gradient()) cg.g.push_back(x.to_complex());
    gam_.push_back(std::move(cg));
  }
}

ComplexF CompiledTerm::poly(const std::vector<Mono>& p, const ComplexF* x) {
  ComplexF s = 0;
  for (const auto& m : p) {
    ComplexF t = m.c;
    for (size_t i = 0; i < m.e.size(); ++i)
      for (int k = 0; k < m.e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

ComplexF CompiledTerm::log_eval(const ComplexF* sigma) const {
  ComplexF n = poly(num_, sigma), d = poly(den_, sigma);
  if (d == 0.0) throw SingularPoint("prefactor denominator vanishes");
  ComplexF l = std::log(n / d);
  for (const auto& g : gam_) {
    ComplexF a = g.c;
    for (size_t i = 0; i < g.g.size(); ++i) a += g.g[i] * sigma[i];
    l += double(g.e) * log_gamma(a);
  }
  return l;
}

ComplexF CompiledTerm::eval(const ComplexF* sigma) const {
  ComplexF n = poly(num_, sigma);
  if (n == 0.0) return 0;
  ComplexF d = poly(den_, sigma);
  if (d == 0.0) throw SingularPoint("prefactor denominator vanishes");
  ComplexF l = 0;
  for (const auto& g : gam_) {
    ComplexF a = g.c;
    for (size_t i = 0; i < g.g.size(); ++i) a += g.g[i] * sigma[i];
    l += double(g.e) * log_gamma(a);
  }
  return n / d * std::exp(l);
}

CompiledState::CompiledState(const GammaState& s, const std::vector<int>& b) : dim_(s.dim()) {
  for (const auto& t : s.terms())
    if (t.b == b) terms_.emplace_back(t);
}

ComplexF CompiledState::eval(const ComplexF* sigma) const {
  ComplexF s = 0;
  for (const auto& t : terms_) s += t.eval(sigma);
  return s;
}

ComplexF eval_state(const GammaState& s, const std::vector<ComplexF>& sigma, const std::vector<int>& b) {
  if (static_cast<int>(sigma.size()) != s.dim() || static_cast<int>(b.size()) != s.dim())
    throw std::invalid_argument("evaluation point dimension mismatch");
  return CompiledState(s, b).eval(sigma.data());
}

ComplexF eval_state(const GammaState& s, const std::vector<double>& sigma, const std::vector<int>& b) {
  return eval_state(s, std::vector<ComplexF>(sigma.begin(), sigma.end()), b);
}

StateEquality state_equal(const GammaState& a, const GammaState& b, std::uint64_t seed, int points, double rel_tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("state dimension mismatch");
  StateEquality r;
  GammaState ca = canonicalize(a), cb_ = canonicalize(b);
  if (ca.terms().size() == cb_.terms().size()) {
    r.exact = true;
    for (size_t i = 0; i < ca.terms().size() && r.exact; ++i) {
      const auto &x = ca.terms()[i], &y = cb_.terms()[i];
      r.exact = x.b == y.b && x.gammas == y.gammas && x.pre == y.pre;
    }
  }
  auto sup = ca.supports();
  for (auto& s : cb_.supports()) sup.push_back(s);
  if (sup.empty()) {
    r.numeric = true;
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  r.numeric = true;
  int done = 0;
  for (int attempt = 0; done < points && attempt < 5 * points; ++attempt) {
    std::vector<double> x(a.dim());
    for (auto& v : x) v = U(rng);
    const auto& bb = sup[attempt % sup.size()];
    ComplexF va, vb;
    try {
      va = eval_state(ca, x, bb);
      vb = eval_state(cb_, x, bb);
    } catch (const std::runtime_error&) {
      continue;
    }
    ++done;
    double scale = std::max(std::abs(va), std::abs(vb));
    if (scale == 0) continue;
    double rel = std::abs(va - vb) / scale;
    r.max_rel = std::max(r.max_rel, rel);
    if (!(rel <= rel_tol)) r.numeric = false;
  }
  return r;
}

namespace {

nlohmann::json coeff_map(const MultiPoly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [m, c] : p.terms()) {
    std::string key;
    for (size_t i = 0; i < m.size(); ++i) key += (i ? "," : "") + std::to_string(m[i]);
    j[key] = {c.re.get_str(), c.im.get_str()};
  }
  return j;
}

MultiPoly poly_from_map(const nlohmann::json& j, int n) {
  MultiPoly p(n);
  for (auto it = j.begin(); it != j.end(); ++it) {
    Monomial m;
    std::string key = it.key();
    size_t pos = 0;
    while (pos <= key.size() && !key.empty()) {
      size_t comma = key.find(',', pos);
      m.push_back(std::stoi(key.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(m.size()) != n) throw std::invalid_argument("monomial key '" + key + "' has wrong length");
    p.add_term(m, GQ(parse_rational(it.value().at(0)), parse_rational(it.value().at(1))));
  }
  return p;
}

}  // namespace

nlohmann::json state_to_json(const GammaState& s) {
  nlohmann::json j;
  j["dimension"] = s.dim();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : s.terms()) {
    nlohmann::json jt;
    jt["b"] = t.b;
    jt["prefactor"] = {{"num", coeff_map(t.pre.num())}, {"den", coeff_map(t.pre.den())}};
    jt["gammas"] = nlohmann::json::array();
    for (const auto& g : t.gammas) {
      nlohmann::json grad = nlohmann::json::array();
      for (const auto& x : g.arg.gradient()) grad.push_back({x.re.get_str(), x.im.get_str()});
      jt["gammas"].push_back({{"const_re", g.arg.constant().re.get_str()},
                              {"const_im", g.arg.constant().im.get_str()},
                              {"gradient", grad},
                              {"exponent", g.exponent}});
    }
    j["terms"].push_back(jt);
  }
  return j;
}

GammaState state_from_json(const nlohmann::json& j) {
  int n = j.at("dimension").get<int>();
  GammaState s(n);
  for (const auto& jt : j.at("terms")) {
    StateTerm t;
    t.b = jt.at("b").get<std::vector<int>>();
    t.pre = RationalFunction(poly_from_map(jt.at("prefactor").at("num"), n),
                             poly_from_map(jt.at("prefactor").at("den"), n));
    for (const auto& jg : jt.at("gammas")) {
      std::vector<GQ> grad;
      for (const auto& x : jg.at("gradient")) grad.emplace_back(parse_rational(x.at(0)), parse_rational(x.at(1)));
      GQ c(parse_rational(jg.at("const_re")), parse_rational(jg.at("const_im")));
      t.gammas.push_back({AffineForm(c, grad), jg.at("exponent").get<int>()});
    }
    s.add(std::move(t));
  }
  return s;
}

GammaState ground_state(const TheoryConfig& t, bool bra) {
  int n = t.rank();
  StateTerm term;
  term.b.assign(n, 0);
  term.pre = RationalFunction(MultiPoly::constant(n, GQ(1)));
  for (size_t j = 0; j < t.weights.size(); ++j) {
    AffineForm w = t.weight_form(static_cast<int>(j));
    // 1/2 - i w(sigma + m)
    AffineForm arg = w.scaled(GQ(Q(0), Q(-1))) + GQ(Q(1, 2));
    term.gammas.push_back({arg, 1});
  }
  const GQ I = GQ::I();
  MultiPoly bra_den = MultiPoly::constant(n, GQ(1));
  for (const auto& beta : t.roots().positive_forms(n)) {
    AffineForm ib = beta.scaled(I), mib = beta.scaled(-I);
    if (t.root_gamma == RootGamma::Symmetric) {
      term.gammas.push_back({ib, -1});
      term.gammas.push_back({mib, -1});
    } else {
      // z_r - z_s = -i beta at b = 0
      term.gammas.push_back({mib, -2});
    }
    MultiPoly c = mib.to_poly();
    bra_den = bra_den * c * c;
  }
  if (bra) term.pre = RationalFunction(term.pre.num(), bra_den);
  GammaState s(n);
  s.add(std::move(term));
  return canonicalize(s);
}

}  // namespace cb
