#pragma once

#include "json.hpp"

#include "cb/trace.hpp"

namespace cb {

// Worked examples written out term by term from their closed forms, independent of the monopole code.
TheoryConfig gl2_theory();         // GL2 with C^2, squared root-Gamma ground state
TheoryConfig csxc_theory(Q zeta);  // C* with C
TheoryConfig csxc2_theory(Q mass, Q zeta);
TheoryConfig gl2_3flav_theory();

GammaState gl2_display_V10();         // alpha(V(1,0))|v'>
GammaState gl2_display_product();     // alpha(V(0,-1)) alpha(V(1,0))|v'>, three sectors
HyperbolicExpr gl2_display_integrand(const TheoryConfig& t);

// int (i s)^n pi / cosh(pi s) ds through Euler numbers
ComplexF mu_moment(int n);
// Tr(1) for (C*, C^2): 2 pi^2 zeta exp(-2 pi i zeta m) / sinh(pi zeta), i-twist
ComplexF csxc2_trace_one(double mass, double zeta);

struct Reproduction {
  bool ok = true;
  nlohmann::json report;
};

Reproduction reproduce_gl2(bool force, double tol);
Reproduction reproduce_mu_chain(double tol);
Reproduction reproduce_abelian_measure(double tol);

}  // namespace cb
