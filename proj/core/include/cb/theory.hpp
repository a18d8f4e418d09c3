#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cb/exact.hpp"

namespace cb {

struct SchemaError : std::runtime_error {
  std::string path;
  SchemaError(std::string p, const std::string& what) : std::runtime_error(p + ": " + what), path(std::move(p)) {}
};

// Root-Gamma factors of the nonabelian ground state |v'>:
//   Symmetric: 1 / prod Gamma(i beta) Gamma(-i beta)
//   Squared:   1 / prod Gamma(z_r - z_s)^2
enum class RootGamma { Symmetric, Squared };

struct Root {
  int r, s;  // sigma_r - sigma_s, r < s inside one GL block
};

struct RootSystem {
  std::vector<int> block_sizes;
  std::vector<Root> positive;
  std::vector<int> weyl_factors;  // symmetric-group degrees
  long weyl_order() const;
  std::vector<AffineForm> positive_forms(int n) const;
};

struct TheoryConfig {
  std::string label;
  std::vector<int> gauge_dims;
  int flavor_dim = 0;
  std::vector<std::vector<long>> weights;  // gauge block then flavor block
  std::vector<Q> mass;
  std::vector<Q> fi;
  RootGamma root_gamma = RootGamma::Symmetric;

  int rank() const;
  bool abelian() const;
  RootSystem roots() const;
  std::vector<int> block_of() const;
  // w_j(sigma + m) over gauge coordinates, mass folded into the constant
  AffineForm weight_form(int j) const;
  std::vector<long> gauge_weight(int j) const;
  AffineForm fi_form() const;
  void validate() const;
};

TheoryConfig build_theory(const nlohmann::json& cfg);
TheoryConfig load_theory(const std::string& path);
nlohmann::json theory_to_json(const TheoryConfig& t);

// linear type-A quiver with framing; node i carries GL(dims[i]) and framing[i] fundamentals
TheoryConfig a_type_quiver(const std::vector<int>& dims, const std::vector<int>& framing,
                           const std::vector<Q>& mass = {}, const std::vector<Q>& fi = {});

struct ConicalResult {
  bool conical = false;
  std::vector<long> witness;  // empty when conical
  // min over the l1 unit sphere of sum_j |a_j(beta)| - sum_{alpha in Delta} |alpha(beta)|
  Q margin;
};

ConicalResult check_conical(const TheoryConfig& t);

struct OrbitEntry {
  std::vector<int> perm;                          // w as a coordinate permutation
  std::vector<long> wlambda;                      // w . lambda
  std::vector<std::pair<int, int>> denominator;   // roots (a, b) meaning x_a - x_b
  MultiPoly denominator_sigma;                    // prod (sigma_a - sigma_b)
};

std::vector<OrbitEntry> weyl_orbit(const std::vector<long>& lambda, const TheoryConfig& t);
// -w0 lambda: reverse each block and negate
std::vector<long> minus_w0(const std::vector<long>& lambda, const TheoryConfig& t);
// true when lambda is minuscule in every block (entries differ by at most one)
bool minuscule(const std::vector<long>& lambda, const TheoryConfig& t);

}  // namespace cb
