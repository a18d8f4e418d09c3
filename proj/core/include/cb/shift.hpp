#pragma once

#include <string>
#include <vector>

#include "cb/state.hpp"

namespace cb {

// Cartan polynomials live in 2n variables: sigma_1..sigma_n, then b_1..b_n.
MultiPoly cartan_sigma(int n, int k);
MultiPoly cartan_b(int n, int k);
MultiPoly cartan_z(int n, int k);   // 1/2 - i sigma_k + b_k / 2
MultiPoly cartan_zt(int n, int k);  // 1/2 - i sigma_k - b_k / 2
MultiPoly cartan_u(int n, int k);   // i sigma_k + b_k / 2
std::vector<std::string> cartan_names(int n);

// (T psi)(sigma, b) = coeff * F(sigma, b) * psi(sigma + s, b - db)
struct ShiftAction {
  std::vector<int> db;
  std::vector<GQ> s;
  MultiPoly F;
  GQ coeff{1};

  static ShiftAction identity(int n);
  static ShiftAction multiply(const MultiPoly& F);
};

// result is not canonicalized
GammaState apply_shift(const ShiftAction& a, const GammaState& psi);

enum class GenKind { X, P, Xt, Pt, Mult };

struct Generator {
  GenKind kind = GenKind::Mult;
  int coord = 0;
  MultiPoly poly;  // Cartan polynomial for Mult

  static Generator X(int k) { return {GenKind::X, k, {}}; }
  static Generator P(int k) { return {GenKind::P, k, {}}; }
  static Generator Xt(int k) { return {GenKind::Xt, k, {}}; }
  static Generator Pt(int k) { return {GenKind::Pt, k, {}}; }
  static Generator mult(MultiPoly p) { return {GenKind::Mult, 0, std::move(p)}; }

  std::string str() const;
};

ShiftAction generator_action(const Generator& g, int n);

// applied right to left: factors.back() acts first
struct OperatorWord {
  GQ coeff{1};
  std::vector<Generator> factors;

  std::vector<long> support_shift(int n) const;
  std::string str() const;
};

GammaState apply_generator(const Generator& g, const GammaState& s);
GammaState apply_word(const OperatorWord& w, const GammaState& s);

// r^lambda for the flat theory (C*, C)^n: X_i^{l_i} / P_i^{-l_i}, or -Pt / -Xt antiholomorphically
OperatorWord abelian_monopole(const std::vector<long>& lambda, bool holomorphic);

struct RelationCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct RelationReport {
  bool ok = true;
  std::vector<RelationCheck> checks;
  std::vector<std::string> notes;
};

RelationReport verify_relations(int n);

}  // namespace cb
