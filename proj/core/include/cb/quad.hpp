#pragma once

#include <functional>

#include "cb/special.hpp"

namespace cb {

struct QuadResult {
  ComplexF value;
  double abs_error = 0;
  bool converged = false;
  int subdivisions = 0;  // refinement levels used
  long evaluations = 0;
  double l1 = 0;  // integral of |f|, the scale for the relative target
};

struct QuadOptions {
  double tol = 1e-10;  // relative to the L1 norm of the integrand
  int min_level = 3;
  int max_level = 7;
  double h0 = 0.5;
  double x_max = 60;  // truncation of the real line after the sinh-sinh map
  int threads = 0;    // 0: hardware concurrency
};

using Integrand = std::function<ComplexF(const double* x)>;

// tensorized sinh-sinh double-exponential rule over R^dim with nested step halving
QuadResult integrate(const Integrand& f, int dim, const QuadOptions& opt = {});

ComplexF pairwise_sum(const ComplexF* v, size_t n);

}  // namespace cb
