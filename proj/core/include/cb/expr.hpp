#pragma once

#include <string>
#include <vector>

#include "cb/monopole.hpp"

namespace cb {

enum class AtomKind { Gen, R, V };

struct Atom {
  AtomKind kind = AtomKind::Gen;
  Generator gen;              // Gen
  std::vector<long> lambda;   // R, V
  bool holomorphic = true;    // R, V

  static Atom of(Generator g);
  static Atom r(std::vector<long> l, bool holo = true);
  static Atom V(std::vector<long> l, bool holo = true);

  // algebra charge (monopole coweight); Xt = -rb[-e], Pt = -rb[e]
  std::vector<long> charge(int n) const;
  std::string str(int n) const;
};

// coeff * atoms[0] atoms[1] ... (rightmost acts first)
struct WordTerm {
  GQ coeff{1};
  std::vector<Atom> atoms;
  std::vector<long> charge(int n) const;
  std::string str(int n) const;
};

struct OpExpr {
  std::vector<WordTerm> terms;

  static OpExpr atom(Atom a);
  static OpExpr scalar(const GQ& c);
  OpExpr operator*(const OpExpr& o) const;  // composition
  OpExpr operator+(const OpExpr& o) const;
  OpExpr scaled(const GQ& c) const;
  OpExpr pow(int e) const;
  // single well-defined charge, or throws when terms disagree
  std::vector<long> charge(int n) const;
  bool homogeneous(int n) const;
  std::string str(int n) const;
};

GammaState apply_atom(const TheoryConfig& t, const Atom& a, const GammaState& s, const MonopoleOptions& opt = {});
GammaState apply_expr(const TheoryConfig& t, const OpExpr& e, const GammaState& s, const MonopoleOptions& opt = {});

}  // namespace cb
