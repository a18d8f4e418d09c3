#pragma once

#include <string>
#include <vector>

#include "cb/shift.hpp"
#include "cb/theory.hpp"

namespace cb {

// abelian monopole r^lambda of the theory, holomorphic (alpha) or antiholomorphic (alpha-bar)
ShiftAction abelian_action(const TheoryConfig& t, const std::vector<long>& lambda, bool holomorphic);

struct MonopoleOp {
  std::vector<long> lambda;
  bool holomorphic = true;
  std::vector<OrbitEntry> orbit;
};

MonopoleOp make_monopole(const TheoryConfig& t, const std::vector<long>& lambda, bool holomorphic);

struct CancellationFailure : std::runtime_error {
  AffineForm hyperplane;
  std::vector<int> b;
  CancellationFailure(AffineForm h, std::vector<int> support, const std::string& what)
      : std::runtime_error(what), hyperplane(std::move(h)), b(std::move(support)) {}
};

struct MonopoleOptions {
  bool cancel = true;  // false keeps real root poles for pole_probe
};

GammaState apply_monopole(const TheoryConfig& t, const MonopoleOp& v, const GammaState& s,
                          const MonopoleOptions& opt = {});

// root hyperplanes sigma_r = sigma_s along which some term of s still has a pole
std::vector<AffineForm> real_poles(const TheoryConfig& t, const GammaState& s);

struct AdjointReport {
  bool ok = true;
  std::vector<std::string> lines;
  bool ket = false, ket_swapped = false;
  bool bra_direct = false, bra_conjugate = false;
  ComplexF bra_lhs, bra_rhs;
};

// Lemma relations for the longest Weyl element; the bra side is checked numerically when
// the theory admits convergent pairings (conical, or `force`)
AdjointReport check_w0_adjoint(const TheoryConfig& t, const std::vector<long>& lambda, bool force = false,
                               double tol = 1e-8);

struct PoleProbeReport {
  bool bounded = true;
  bool symbolic_pole = false;
  double growth_exponent = 0;
  std::vector<std::pair<double, double>> samples;  // (distance, max |psi|)
};

PoleProbeReport pole_probe(const GammaState& s, const AffineForm& hyperplane, std::uint64_t seed = 11);

}  // namespace cb
