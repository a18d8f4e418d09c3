#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "cb/exact.hpp"
#include "cb/special.hpp"

namespace cb {

struct TheoryConfig;

// Gamma(arg)^exponent. Canonical: the rational real part of the constant lies in (0, 1].
struct GammaFactor {
  AffineForm arg;
  int exponent = 1;
  friend bool operator==(const GammaFactor& a, const GammaFactor& b) {
    return a.exponent == b.exponent && a.arg == b.arg;
  }
  friend bool operator<(const GammaFactor& a, const GammaFactor& b) {
    if (!(a.arg == b.arg)) return a.arg < b.arg;
    return a.exponent < b.exponent;
  }
};

struct StateTerm {
  std::vector<int> b;
  RationalFunction pre;
  std::vector<GammaFactor> gammas;
};

class GammaState {
 public:
  explicit GammaState(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<StateTerm>& terms() const { return terms_; }
  std::vector<StateTerm>& terms() { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(StateTerm t);
  GammaState& operator+=(const GammaState& o);
  GammaState scaled(const GQ& c) const;
  GammaState times(const RationalFunction& f) const;
  std::vector<std::vector<int>> supports() const;

  std::string str() const;

 private:
  int dim_;
  std::vector<StateTerm> terms_;
};

GammaState operator+(GammaState a, const GammaState& b);
GammaState operator-(GammaState a, const GammaState& b);

GammaState canonicalize(const GammaState& s);
// Gamma(a)^e written as Gamma(a0)^e times a rational prefactor, Re const(a0) in (0, 1]
void canonical_gamma(const GammaFactor& g, GammaFactor& out, MultiPoly& num, MultiPoly& den);

struct SingularPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ComplexF eval_state(const GammaState& s, const std::vector<double>& sigma, const std::vector<int>& b);
ComplexF eval_state(const GammaState& s, const std::vector<ComplexF>& sigma, const std::vector<int>& b);

// double-precision snapshot of a state for repeated evaluation at one support point
class CompiledTerm {
 public:
  CompiledTerm() = default;
  explicit CompiledTerm(const StateTerm& t);
  ComplexF eval(const ComplexF* sigma) const;
  // log of |value| and its phase, for products in log space
  ComplexF log_eval(const ComplexF* sigma) const;

 private:
  struct Mono {
    ComplexF c;
    std::vector<int> e;
  };
  static ComplexF poly(const std::vector<Mono>& p, const ComplexF* x);
  std::vector<Mono> num_, den_;
  struct G {
    ComplexF c;
    std::vector<ComplexF> g;
    int e;
  };
  std::vector<G> gam_;
};

class CompiledState {
 public:
  CompiledState(const GammaState& s, const std::vector<int>& b);
  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  ComplexF eval(const ComplexF* sigma) const;

 private:
  int dim_;
  std::vector<CompiledTerm> terms_;
};

struct StateEquality {
  bool exact = false;    // canonical forms identical
  bool numeric = false;  // agreement at random points
  double max_rel = 0;
};

StateEquality state_equal(const GammaState& a, const GammaState& b, std::uint64_t seed = 7, int points = 20,
                          double rel_tol = 1e-9);

nlohmann::json state_to_json(const GammaState& s);
GammaState state_from_json(const nlohmann::json& j);

// |1> or |v'> of the theory; bra=true returns |v> = |v'> / prod (z_r - z_s)^2
GammaState ground_state(const TheoryConfig& t, bool bra = false);

}  // namespace cb
