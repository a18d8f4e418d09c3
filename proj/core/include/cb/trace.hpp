#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cb/expr.hpp"
#include "cb/quad.hpp"

namespace cb {

// e^{2 pi i zeta(sigma)} (default) or e^{2 pi zeta(sigma)}
enum class TwistConvention { Imaginary, Real };
// Theorem: prod (sinh(pi beta)/pi)^2 / prod cosh(pi w)/pi.  Bare: no powers of pi.
enum class MeasureNorm { Theorem, Bare };

std::string to_string(TwistConvention c);
std::string to_string(MeasureNorm c);

struct Measure {
  int dim = 0;
  AffineForm zeta;  // zeta(sigma), real
  TwistConvention twist = TwistConvention::Imaginary;
  MeasureNorm norm = MeasureNorm::Theorem;
  std::vector<AffineForm> sinh2;  // real arguments, each squared
  std::vector<AffineForm> cosh;   // real arguments, mass folded in
  int pi_power = 0;
  Q margin;  // conical margin; decay rate is pi * margin without twist

  ComplexF log_twist(const double* sigma) const;
  // log of the density without the twist; sinh zeros give -inf real part
  double log_density(const double* sigma) const;
  ComplexF eval(const double* sigma, bool with_twist = true) const;
  std::string str() const;
  nlohmann::json to_json() const;
};

Measure build_measure(const TheoryConfig& t, TwistConvention tw = TwistConvention::Imaginary,
                      MeasureNorm norm = MeasureNorm::Theorem);

// prod_w Gamma(1/2 + i w) Gamma(1/2 - i w) / [prod_beta Gamma(i beta) Gamma(-i beta) beta]^2, no twist
ComplexF measure_gamma_form(const TheoryConfig& t, const double* sigma);

struct NotConical : std::runtime_error {
  std::vector<long> witness;
  NotConical(std::vector<long> w, const std::string& what) : std::runtime_error(what), witness(std::move(w)) {}
};

struct NonConvergent : std::runtime_error {
  QuadResult result;
  NonConvergent(QuadResult r, const std::string& what) : std::runtime_error(what), result(r) {}
};

struct TraceOptions {
  double tol = 1e-9;
  bool force = false;
  TwistConvention twist = TwistConvention::Imaginary;
  MeasureNorm norm = MeasureNorm::Theorem;
  QuadOptions quad;
  bool throw_on_nonconvergence = true;
};

// sum_b int ket conj(bra) twist
QuadResult inner_product(const GammaState& bra, const GammaState& ket, const Measure* twist, const QuadOptions& opt);

// hyperbolic closed form of a pairing at b = 0:
//   twist * pi^k * R(sigma) * prod sinh(pi L)^p * prod cosh(pi M)^q * prod Gamma(...)^e
struct HyperbolicTerm {
  int pi_power = 0;
  RationalFunction rf;
  std::map<AffineForm, int> lin_den;      // real linear factors split off the denominator of rf
  std::map<AffineForm, int> sinh, cosh;  // real arguments, first nonzero gradient entry positive
  std::vector<GammaFactor> gammas;        // unpaired leftovers
  std::string signature() const;
};

struct HyperbolicExpr {
  int dim = 0;
  AffineForm zeta;
  TwistConvention twist = TwistConvention::Imaginary;
  std::vector<HyperbolicTerm> terms;

  std::string str() const;
  ComplexF eval(const double* sigma, bool with_twist = true) const;
};

HyperbolicExpr hyperbolic_pairing(const GammaState& bra, const GammaState& ket, const AffineForm& zeta,
                                  TwistConvention tw);
// merges terms with equal hyperbolic signature and drops zero terms
HyperbolicExpr normalize(HyperbolicExpr e);
bool same_expression(const HyperbolicExpr& a, const HyperbolicExpr& b);

struct TraceResult {
  QuadResult quad;
  bool exact_zero = false;
  bool conical = true;
  std::vector<long> witness;
  GQ normalization{1};
  HyperbolicExpr integrand;
  std::string convention_twist, convention_scale;
  nlohmann::json to_json() const;
};

// Tr(R) = int twist * R * measure; R must be Weyl invariant (polynomial in sigma)
TraceResult trace_polynomial(const TheoryConfig& t, const MultiPoly& R, const TraceOptions& opt = {});
// Tr(w) = (-1)^{|Delta+|} <v| alpha(w) g |v'>
TraceResult trace_word(const TheoryConfig& t, const OpExpr& w, const TraceOptions& opt = {});

// WeightParity: (-1)^{sum_j <w_j, l>}; CoweightParity: (-1)^{sum_k l_k}
enum class SignMode { WeightParity, Plus, CoweightParity };

struct TwistAutomorphism {
  AffineForm zeta;  // over gauge coordinates
  SignMode sign = SignMode::WeightParity;
  ComplexF kappa{2, 0};  // g(r^l) = sign(l) exp(kappa pi zeta(l)) r^l

  ComplexF scalar(const TheoryConfig& t, const std::vector<long>& lambda) const;
  std::string str() const;
};

TwistAutomorphism twist_for(const TheoryConfig& t, TwistConvention tw);
std::pair<OpExpr, ComplexF> apply_twist(const TheoryConfig& t, const TwistAutomorphism& g, const OpExpr& w);

struct TwistedPair {
  std::string a, b;
  ComplexF lhs, rhs;
  double residual = 0;
  bool ok = false;
};

struct TwistedReport {
  bool ok = true;
  std::vector<TwistedPair> pairs;
  std::vector<std::string> lines;
};

TwistedReport verify_twisted_property(const TheoryConfig& t, const std::vector<std::pair<OpExpr, OpExpr>>& pairs,
                                      const TwistAutomorphism& g, const TraceOptions& opt = {}, double tol = 1e-6);

struct Calibration {
  TwistAutomorphism g;
  double residual = 0;
  std::vector<std::string> tried;
};

// fixes sign mode and kappa on (C*, C^2), m = 1/3, zeta = 1/5
Calibration calibrate(TwistConvention tw = TwistConvention::Imaginary);

}  // namespace cb
