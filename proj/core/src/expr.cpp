#include "cb/expr.hpp"

namespace cb {

namespace {

std::string vec_str(const std::vector<long>& l) {
  std::string s = "[";
  for (size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s + "]";
}

}  // namespace

Atom Atom::of(Generator g) {
  Atom a;
  a.kind = AtomKind::Gen;
  a.gen = std::move(g);
  return a;
}

Atom Atom::r(std::vector<long> l, bool holo) {
  Atom a;
  a.kind = AtomKind::R;
  a.lambda = std::move(l);
  a.holomorphic = holo;
  return a;
}

Atom Atom::V(std::vector<long> l, bool holo) {
  Atom a;
  a.kind = AtomKind::V;
  a.lambda = std::move(l);
  a.holomorphic = holo;
  return a;
}

std::vector<long> Atom::charge(int n) const {
  if (kind != AtomKind::Gen) return lambda;
  std::vector<long> c(n, 0);
  switch (gen.kind) {
    case GenKind::X:
    case GenKind::Pt:
      c.at(gen.coord) = 1;
      break;
    case GenKind::P:
    case GenKind::Xt:
      c.at(gen.coord) = -1;
      break;
    case GenKind::Mult:
      break;
  }
  return c;
}

std::string Atom::str(int) const {
  switch (kind) {
    case AtomKind::Gen:
      return gen.str();
    case AtomKind::R:
      return (holomorphic ? "r" : "rb") + vec_str(lambda);
    case AtomKind::V:
      return (holomorphic ? "V" : "Vb") + vec_str(lambda);
  }
  return "?";
}

std::vector<long> WordTerm::charge(int n) const {
  std::vector<long> c(n, 0);
  for (const auto& a : atoms) {
    auto x = a.charge(n);
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("coweight length does not match rank");
    for (int k = 0; k < n; ++k) c[k] += x[k];
  }
  return c;
}

std::string WordTerm::str(int n) const {
  std::string s;
  if (coeff != GQ(1) || atoms.empty()) s = coeff.str();
  for (const auto& a : atoms) s += (s.empty() ? "" : " ") + a.str(n);
  return s;
}

OpExpr OpExpr::atom(Atom a) {
  OpExpr e;
  e.terms.push_back({GQ(1), {std::move(a)}});
  return e;
}

OpExpr OpExpr::scalar(const GQ& c) {
  OpExpr e;
  if (!c.is_zero()) e.terms.push_back({c, {}});
  return e;
}

OpExpr OpExpr::operator*(const OpExpr& o) const {
  OpExpr e;
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      WordTerm w{a.coeff * b.coeff, a.atoms};
      w.atoms.insert(w.atoms.end(), b.atoms.begin(), b.atoms.end());
      if (!w.coeff.is_zero()) e.terms.push_back(std::move(w));
    }
  return e;
}

OpExpr OpExpr::operator+(const OpExpr& o) const {
  OpExpr e = *this;
  e.terms.insert(e.terms.end(), o.terms.begin(), o.terms.end());
  return e;
}

OpExpr OpExpr::scaled(const GQ& c) const {
  OpExpr e;
  if (c.is_zero()) return e;
  for (auto t : terms) {
    t.coeff *= c;
    e.terms.push_back(std::move(t));
  }
  return e;
}

OpExpr OpExpr::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power of an operator expression");
  OpExpr r = scalar(GQ(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::vector<long> OpExpr::charge(int n) const {
  if (terms.empty()) return std::vector<long>(n, 0);
  auto c = terms.front().charge(n);
  for (const auto& t : terms)
    if (t.charge(n) != c) throw std::invalid_argument("expression mixes charges " + vec_str(c) + " and " + vec_str(t.charge(n)));
  return c;
}

bool OpExpr::homogeneous(int n) const {
  try {
    charge(n);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string OpExpr::str(int n) const {
  if (terms.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i].str(n);
  return s;
}

GammaState apply_atom(const TheoryConfig& t, const Atom& a, const GammaState& s, const MonopoleOptions& opt) {
  switch (a.kind) {
    case AtomKind::Gen:
      return apply_generator(a.gen, s);
    case AtomKind::R:
      return canonicalize(apply_shift(abelian_action(t, a.lambda, a.holomorphic), s));
    case AtomKind::V:
      return apply_monopole(t, make_monopole(t, a.lambda, a.holomorphic), s, opt);
  }
  return s;
}

GammaState apply_expr(const TheoryConfig& t, const OpExpr& e, const GammaState& s, const MonopoleOptions& opt) {
  GammaState out(s.dim());
  for (const auto& term : e.terms) {
    GammaState cur = s;
    for (auto it = term.atoms.rbegin(); it != term.atoms.rend(); ++it) cur = apply_atom(t, *it, cur, opt);
    out += cur.scaled(term.coeff);
  }
  return canonicalize(out);
}

}  // namespace cb
